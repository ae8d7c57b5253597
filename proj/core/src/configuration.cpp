#include "hshift/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "hshift/error.hpp"

namespace hshift {

  struct Configuration::Impl {
    Kind     kind;
    GroupPtr group;

    Symbol              fill = 0;
    std::optional<Pattern> exceptions;
    std::int64_t        cut = 0;
    std::vector<Symbol> left, right;

    std::optional<Subgroup>                                    period;
    std::optional<Pattern>                                     domain;
    std::unordered_map<GroupElement, Symbol, GroupElementHash> by_coset;

    Rule                                                               rule;
    mutable std::mutex                                                 memo_mutex;
    mutable std::unordered_map<GroupElement, Symbol, GroupElementHash> memo;

    Impl(Kind k, GroupPtr g) : kind(k), group(std::move(g)) {}
  };

  namespace {
    std::int64_t mod(std::int64_t a, std::int64_t n) {
      auto r = a % n;
      return r < 0 ? r + n : r;
    }

    void require_z(Group const& g, char const* what) {
      if (g.kind() != GroupKind::z_lattice || g.rank() != 1) {
        throw StructuralError(std::string(what) + " configurations live on Z");
      }
    }
  }  // namespace

  Configuration::Configuration(std::shared_ptr<Impl const> impl) : _impl(std::move(impl)) {}

  Configuration Configuration::finite_support(GroupPtr group, Symbol fill) {
    Pattern empty(group);
    return finite_support(fill, std::move(empty));
  }

  Configuration Configuration::finite_support(Symbol fill, Pattern exceptions) {
    auto impl        = std::make_shared<Impl>(Kind::finite_support, exceptions.group_ptr());
    impl->fill       = fill;
    impl->exceptions = std::move(exceptions);
    return Configuration(std::move(impl));
  }

  Configuration Configuration::step(GroupPtr            group,
                                    std::int64_t        cut,
                                    std::vector<Symbol> left,
                                    std::vector<Symbol> right) {
    Pattern empty(group);
    return step(cut, std::move(left), std::move(right), std::move(empty));
  }

  Configuration Configuration::step(std::int64_t        cut,
                                    std::vector<Symbol> left,
                                    std::vector<Symbol> right,
                                    Pattern             exceptions) {
    require_z(exceptions.group(), "step");
    if (left.empty() || right.empty()) {
      throw StructuralError("step configuration needs nonempty left and right periods");
    }
    auto impl        = std::make_shared<Impl>(Kind::step, exceptions.group_ptr());
    impl->cut        = cut;
    impl->left       = std::move(left);
    impl->right      = std::move(right);
    impl->exceptions = std::move(exceptions);
    return Configuration(std::move(impl));
  }

  Configuration Configuration::h_periodic(Subgroup period, Pattern domain) {
    if (!same_group(period.group(), domain.group())) {
      throw StructuralError("periodic configuration: subgroup and domain over different groups");
    }
    auto index = period.index();
    if (!index) {
      throw StructuralError("periodic configuration needs a subgroup of finite index");
    }
    if (domain.size() != *index) {
      throw StructuralError("periodic configuration needs one cell per coset (index "
                            + std::to_string(*index) + ", got "
                            + std::to_string(domain.size()) + ")");
    }
    auto impl = std::make_shared<Impl>(Kind::h_periodic, domain.group_ptr());
    for (auto const& c : domain.cells()) {
      if (!impl->by_coset.emplace(period.coset_key(c.g), c.a).second) {
        throw StructuralError("periodic configuration: cells " + c.g.to_string()
                              + " and an earlier cell share a coset");
      }
    }
    impl->period = std::move(period);
    impl->domain = std::move(domain);
    return Configuration(std::move(impl));
  }

  Configuration Configuration::procedural(GroupPtr group, Rule rule) {
    auto impl  = std::make_shared<Impl>(Kind::procedural, std::move(group));
    impl->rule = std::move(rule);
    return Configuration(std::move(impl));
  }

  Configuration Configuration::from_table(GroupPtr group, std::vector<Symbol> const& values) {
    if (!group->is_finite()) {
      throw StructuralError("from_table needs a finite group");
    }
    auto const& elems = group->elements();
    if (values.size() != elems.size()) {
      throw StructuralError("from_table: expected " + std::to_string(elems.size())
                            + " values, got " + std::to_string(values.size()));
    }
    std::vector<Cell> cells;
    cells.reserve(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      cells.push_back({elems[i], values[i]});
    }
    return h_periodic(Subgroup::trivial(group), Pattern(group, std::move(cells)));
  }

  Configuration::Kind Configuration::kind() const noexcept {
    return _impl->kind;
  }

  GroupPtr const& Configuration::group_ptr() const noexcept {
    return _impl->group;
  }

  Symbol Configuration::evaluate(GroupElement const& g) const {
    auto const& m = *_impl;
    switch (m.kind) {
      case Kind::finite_support: {
        m.group->check(g);
        auto v = m.exceptions->at(g);
        return v ? *v : m.fill;
      }
      case Kind::step: {
        m.group->check(g);
        if (auto v = m.exceptions->at(g)) {
          return *v;
        }
        auto n = g[0] - m.cut;
        auto const& w = g[0] < m.cut ? m.left : m.right;
        return w[static_cast<std::size_t>(mod(n, static_cast<std::int64_t>(w.size())))];
      }
      case Kind::h_periodic: return m.by_coset.at(m.period->coset_key(g));
      case Kind::procedural: {
        m.group->check(g);
        {
          std::lock_guard lock(m.memo_mutex);
          if (auto it = m.memo.find(g); it != m.memo.end()) {
            return it->second;
          }
        }
        auto v = m.rule(g);
        std::lock_guard lock(m.memo_mutex);
        m.memo.emplace(g, v);
        return v;
      }
    }
    throw StructuralError("unknown configuration kind");
  }

  Symbol Configuration::fill() const {
    if (_impl->kind != Kind::finite_support) {
      throw PreconditionError("fill() needs a finite-support configuration");
    }
    return _impl->fill;
  }

  Pattern const& Configuration::exceptions() const {
    if (!_impl->exceptions) {
      throw PreconditionError("exceptions() needs a finite-support or step configuration");
    }
    return *_impl->exceptions;
  }

  std::int64_t Configuration::cut() const {
    if (_impl->kind != Kind::step) {
      throw PreconditionError("cut() needs a step configuration");
    }
    return _impl->cut;
  }

  std::vector<Symbol> const& Configuration::left() const {
    if (_impl->kind != Kind::step) {
      throw PreconditionError("left() needs a step configuration");
    }
    return _impl->left;
  }

  std::vector<Symbol> const& Configuration::right() const {
    if (_impl->kind != Kind::step) {
      throw PreconditionError("right() needs a step configuration");
    }
    return _impl->right;
  }

  Subgroup const& Configuration::period() const {
    if (_impl->kind != Kind::h_periodic) {
      throw PreconditionError("period() needs a periodic configuration");
    }
    return *_impl->period;
  }

  Pattern const& Configuration::domain() const {
    if (_impl->kind != Kind::h_periodic) {
      throw PreconditionError("domain() needs a periodic configuration");
    }
    return *_impl->domain;
  }

  Pattern Configuration::restricted(std::span<GroupElement const> cells) const {
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (auto const& g : cells) {
      out.push_back({g, evaluate(g)});
    }
    return Pattern(group_ptr(), std::move(out));
  }

  std::vector<Symbol> Configuration::tabulate() const {
    if (!group().is_finite()) {
      throw PreconditionError("tabulate() needs a finite group");
    }
    std::vector<Symbol> v;
    for (auto const& g : group().elements()) {
      v.push_back(evaluate(g));
    }
    return v;
  }

  std::string Configuration::describe() const {
    std::ostringstream os;
    auto const&        m = *_impl;
    switch (m.kind) {
      case Kind::finite_support:
        os << "finite_support(fill " << m.fill << ", " << m.exceptions->to_string() << ")";
        break;
      case Kind::step: {
        auto word = [](std::vector<Symbol> const& w) {
          std::string s;
          for (auto a : w) {
            s += (s.empty() ? "" : " ") + std::to_string(a);
          }
          return s;
        };
        os << "step(cut " << m.cut << ", left [" << word(m.left) << "], right ["
           << word(m.right) << "], " << m.exceptions->to_string() << ")";
        break;
      }
      case Kind::h_periodic: os << "h_periodic(" << m.domain->to_string() << ")"; break;
      case Kind::procedural: os << "procedural"; break;
    }
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Shifts, cylinders, equality, distance
  ////////////////////////////////////////////////////////////////////////

  Configuration shift_config(GroupElement const& g, Configuration const& x) {
    auto const& G = x.group();
    G.check(g);
    auto gi = G.inv(g);
    switch (x.kind()) {
      case Configuration::Kind::finite_support:
        return Configuration::finite_support(x.fill(), shift_pattern(gi, x.exceptions()));
      case Configuration::Kind::step:
        // The period words stay anchored at the cut, which moves by -g.
        return Configuration::step(
            x.cut() - g[0], x.left(), x.right(), shift_pattern(gi, x.exceptions()));
      case Configuration::Kind::h_periodic:
        return Configuration::h_periodic(x.period().conjugate(g),
                                         shift_pattern(gi, x.domain()));
      case Configuration::Kind::procedural: {
        auto gp = x.group_ptr();
        return Configuration::procedural(
            gp, [x, g, gp](GroupElement const& l) { return x.evaluate(gp->mul(g, l)); });
      }
    }
    throw StructuralError("unknown configuration kind");
  }

  bool cylinder_contains(Cylinder const& c, Configuration const& x) {
    if (!same_group(c.base.group(), x.group())) {
      throw StructuralError("cylinder and configuration over different groups");
    }
    for (auto const& cell : c.base.cells()) {
      if (x.evaluate(cell.g) != cell.a) {
        return false;
      }
    }
    return true;
  }

  namespace {
    // Eventually periodic description of a configuration on Z.
    struct ZForm {
      std::int64_t                  lo, hi;  // all irregularity lies in [lo, hi]
      std::int64_t                  left_period, right_period;
    };

    std::optional<ZForm> z_form(Configuration const& x) {
      switch (x.kind()) {
        case Configuration::Kind::finite_support: {
          std::int64_t lo = 0, hi = 0;
          for (auto const& c : x.exceptions().cells()) {
            lo = std::min(lo, c.g[0]);
            hi = std::max(hi, c.g[0]);
          }
          return ZForm{lo, hi, 1, 1};
        }
        case Configuration::Kind::step: {
          std::int64_t lo = x.cut(), hi = x.cut();
          for (auto const& c : x.exceptions().cells()) {
            lo = std::min(lo, c.g[0]);
            hi = std::max(hi, c.g[0]);
          }
          return ZForm{lo, hi,
                       static_cast<std::int64_t>(x.left().size()),
                       static_cast<std::int64_t>(x.right().size())};
        }
        case Configuration::Kind::h_periodic: {
          auto n = *x.period().z_period();
          return ZForm{0, 0, n, n};
        }
        case Configuration::Kind::procedural: return std::nullopt;
      }
      return std::nullopt;
    }
  }  // namespace

  std::optional<bool> provably_equal(Configuration const& x, Configuration const& y) {
    auto const& G = x.group();
    if (!same_group(G, y.group())) {
      throw StructuralError("provably_equal: configurations over different groups");
    }
    if (G.is_finite()) {
      return x.tabulate() == y.tabulate();
    }
    using K = Configuration::Kind;
    if (x.kind() == K::finite_support && y.kind() == K::finite_support) {
      if (x.fill() != y.fill()) {
        return false;
      }
      for (auto const* p : {&x.exceptions(), &y.exceptions()}) {
        for (auto const& c : p->cells()) {
          if (x.evaluate(c.g) != y.evaluate(c.g)) {
            return false;
          }
        }
      }
      return true;
    }
    if (G.kind() != GroupKind::z_lattice || G.rank() != 1) {
      return std::nullopt;
    }
    auto fx = z_form(x), fy = z_form(y);
    if (!fx || !fy) {
      return std::nullopt;
    }
    // Left of min(lo) both are periodic with period dividing the lcm, so
    // agreement on one lcm-length stretch there propagates to the whole
    // ray; likewise on the right.
    auto lo = std::min(fx->lo, fy->lo) - std::lcm(fx->left_period, fy->left_period);
    auto hi = std::max(fx->hi, fy->hi) + std::lcm(fx->right_period, fy->right_period);
    for (auto n = lo; n <= hi; ++n) {
      GroupElement g{n};
      if (x.evaluate(g) != y.evaluate(g)) {
        return false;
      }
    }
    return true;
  }

  double Distance::value() const noexcept {
    return kind == Kind::zero ? 0.0 : std::ldexp(1.0, -k);
  }

  Distance distance(Configuration const& x, Configuration const& y, std::size_t depth) {
    auto const& G = x.group();
    if (!same_group(G, y.group())) {
      throw StructuralError("distance: configurations over different groups");
    }
    auto e = G.enumerate(depth + 1);
    for (std::size_t i = 0; i < e.elements.size(); ++i) {
      if (x.evaluate(e.elements[i]) != y.evaluate(e.elements[i])) {
        // Agreement on V_{i-1} = first i elements.
        return Distance{Distance::Kind::exact, static_cast<int>(i) - 1};
      }
    }
    if (e.truncated) {
      return Distance{Distance::Kind::zero, 0};
    }
    if (auto eq = provably_equal(x, y); eq && *eq) {
      return Distance{Distance::Kind::zero, 0};
    }
    return Distance{Distance::Kind::at_most, static_cast<int>(depth)};
  }

}  // namespace hshift
