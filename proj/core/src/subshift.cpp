#include "hshift/subshift.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "hshift/error.hpp"

namespace hshift {

  std::size_t SymbolsHash::operator()(std::vector<Symbol> const& v) const noexcept {
    std::size_t h = v.size();
    for (auto a : v) {
      h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  ForbiddenSet::ForbiddenSet(GroupPtr group, std::vector<Pattern> patterns) {
    PatternSet unique;
    for (auto& p : patterns) {
      if (!same_group(*group, p.group())) {
        throw StructuralError("forbidden pattern " + p.to_string()
                              + " is over a different group");
      }
      unique.insert(std::move(p));
    }
    _patterns = unique.sorted();
    for (std::size_t i = 0; i < _patterns.size(); ++i) {
      auto dom = _patterns[i].domain();
      auto it  = std::find(_domains.begin(), _domains.end(), dom);
      if (it == _domains.end()) {
        for (auto const& g : dom) {
          _reach = std::max(_reach, group->word_length(g));
        }
        _domains.push_back(dom);
        _by_domain.emplace_back();
        it = _domains.end() - 1;
      }
      _by_domain[static_cast<std::size_t>(it - _domains.begin())].emplace(_patterns[i].values(),
                                                                           i);
    }
  }

  std::optional<std::size_t> ForbiddenSet::lookup(std::size_t                domain,
                                                  std::vector<Symbol> const& values) const {
    auto const& m  = _by_domain[domain];
    auto        it = m.find(values);
    if (it == m.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  Subshift::Subshift(Alphabet alphabet, Subgroup invariance, std::vector<Pattern> forbidden)
      : _alphabet(std::move(alphabet)),
        _invariance(std::move(invariance)),
        _forbidden(_invariance.parent(), std::move(forbidden)) {
    for (auto const& p : _forbidden.patterns()) {
      for (auto const& c : p.cells()) {
        if (!_alphabet.valid(c.a)) {
          throw StructuralError("forbidden pattern " + p.to_string()
                                + " uses a symbol outside the alphabet");
        }
      }
    }
  }

  Verdict Verdict::allowed(Configuration witness, std::string certificate) {
    Verdict v;
    v.state       = State::certified_allowed;
    v.witness     = std::move(witness);
    v.certificate = std::move(certificate);
    return v;
  }

  Verdict Verdict::forbidden(std::optional<Violation> violation, std::string certificate) {
    Verdict v;
    v.state       = State::certified_forbidden;
    v.violation   = std::move(violation);
    v.certificate = std::move(certificate);
    return v;
  }

  Verdict Verdict::unknown(std::size_t radius, std::string certificate) {
    Verdict v;
    v.state       = State::unknown;
    v.radius      = radius;
    v.certificate = std::move(certificate);
    return v;
  }

  char const* to_string(Verdict::State s) noexcept {
    switch (s) {
      case Verdict::State::certified_allowed: return "CertifiedAllowed";
      case Verdict::State::certified_forbidden: return "CertifiedForbidden";
      case Verdict::State::unknown: return "Unknown";
    }
    return "Unknown";
  }

  ////////////////////////////////////////////////////////////////////////
  // Local admissibility
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void check_compatible(Group const& g, Subshift const& x) {
      if (!same_group(g, x.group())) {
        throw StructuralError("object and subshift are over different groups");
      }
    }

    std::optional<std::size_t> empty_forbidden(Subshift const& x) {
      auto const& doms = x.forbidden().domains();
      for (std::size_t d = 0; d < doms.size(); ++d) {
        if (doms[d].empty()) {
          return x.forbidden().lookup(d, {});
        }
      }
      return std::nullopt;
    }

    // Forbidden index of the translate h of domain d inside p, if it fits.
    std::optional<std::size_t> probe(Pattern const& p, Subshift const& x, std::size_t d,
                                     GroupElement const& h, std::vector<Symbol>& values) {
      auto const& G = x.group();
      values.clear();
      for (auto const& l : x.forbidden().domains()[d]) {
        auto v = p.at(G.mul(h, l));
        if (!v) {
          return std::nullopt;
        }
        values.push_back(*v);
      }
      return x.forbidden().lookup(d, values);
    }
  }  // namespace

  Admissibility locally_admissible(Pattern const& p, Subshift const& x, bool first_only) {
    check_compatible(p.group(), x);
    Admissibility out;
    if (auto e = empty_forbidden(x)) {
      out.admissible = false;
      out.violations.push_back({x.group().identity(), *e});
      return out;
    }
    auto const&         G    = x.group();
    auto const&         doms = x.forbidden().domains();
    std::vector<Symbol> values;
    for (std::size_t d = 0; d < doms.size(); ++d) {
      // h dom Q lies in dom P only if h = p q0^-1 for some p in dom P.
      auto                      q0inv = G.inv(doms[d].front());
      std::vector<GroupElement> hs;
      for (auto const& c : p.cells()) {
        auto h = G.mul(c.g, q0inv);
        if (x.invariance().contains(h)) {
          hs.push_back(h);
        }
      }
      std::sort(hs.begin(), hs.end(),
                [&G](GroupElement const& a, GroupElement const& b) { return G.less(a, b); });
      for (auto const& h : hs) {
        if (auto f = probe(p, x, d, h, values)) {
          out.admissible = false;
          out.violations.push_back({h, *f});
          if (first_only) {
            return out;
          }
        }
      }
    }
    return out;
  }

  std::optional<Violation> violation_at(Pattern const& p, GroupElement const& cell,
                                        Subshift const& x) {
    if (auto e = empty_forbidden(x)) {
      return Violation{x.group().identity(), *e};
    }
    auto const&         G    = x.group();
    auto const&         doms = x.forbidden().domains();
    std::vector<Symbol> values;
    for (std::size_t d = 0; d < doms.size(); ++d) {
      for (auto const& l : doms[d]) {
        auto h = G.mul(cell, G.inv(l));
        if (!x.invariance().contains(h)) {
          continue;
        }
        if (auto f = probe(p, x, d, h, values)) {
          return Violation{h, *f};
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Membership
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class TranslateChecker {
     public:
      TranslateChecker(Configuration const& c, Subshift const& x) : _c(c), _x(x) {}

      std::optional<Violation> check(GroupElement const& h, std::size_t d) {
        auto const& G = _x.group();
        _values.clear();
        for (auto const& l : _x.forbidden().domains()[d]) {
          _values.push_back(_c.evaluate(G.mul(h, l)));
        }
        ++_checked;
        if (auto f = _x.forbidden().lookup(d, _values)) {
          return Violation{h, *f};
        }
        return std::nullopt;
      }

      std::optional<Violation> check_all(GroupElement const& h) {
        for (std::size_t d = 0; d < _x.forbidden().domains().size(); ++d) {
          if (auto v = check(h, d)) {
            return v;
          }
        }
        return std::nullopt;
      }

      std::size_t checked() const noexcept {
        return _checked;
      }

     private:
      Configuration const& _c;
      Subshift const&      _x;
      std::vector<Symbol>  _values;
      std::size_t          _checked = 0;
    };

    std::int64_t floor_to_multiple(std::int64_t a, std::int64_t n) {
      auto r = a % n;
      if (r < 0) {
        r += n;
      }
      return a - r;
    }

    Verdict result(std::optional<Violation> v, Configuration const& c, std::string how,
                   std::size_t checked) {
      how += " (" + std::to_string(checked) + " window checks)";
      if (v) {
        return Verdict::forbidden(v, how);
      }
      return Verdict::allowed(c, how);
    }
  }  // namespace

  Verdict config_member(Configuration const& c, Subshift const& x, std::size_t budget) {
    check_compatible(c.group(), x);
    if (budget == 0) {
      throw PreconditionError("config_member needs a budget of at least 1");
    }
    if (auto e = empty_forbidden(x)) {
      return Verdict::forbidden(Violation{x.group().identity(), *e},
                                "the empty pattern is forbidden");
    }
    auto const&      G = x.group();
    auto const&      H = x.invariance();
    auto const&      doms = x.forbidden().domains();
    TranslateChecker tc(c, x);

    if (doms.empty()) {
      return Verdict::allowed(c, "no forbidden patterns");
    }

    if (auto order = H.order()) {
      for (auto const& h : H.ball(*order).elements) {
        if (auto v = tc.check_all(h)) {
          return result(v, c, "finite H", tc.checked());
        }
      }
      return result(std::nullopt, c, "finite H", tc.checked());
    }

    switch (c.kind()) {
      case Configuration::Kind::finite_support: {
        // Windows meeting an exception, plus one window entirely on the fill.
        auto const& ex = c.exceptions();
        for (std::size_t d = 0; d < doms.size(); ++d) {
          std::vector<GroupElement> hs;
          for (auto const& e : ex.cells()) {
            for (auto const& l : doms[d]) {
              auto h = G.mul(e.g, G.inv(l));
              if (H.contains(h)) {
                hs.push_back(h);
              }
            }
          }
          std::sort(hs.begin(), hs.end(),
                    [&G](GroupElement const& a, GroupElement const& b) { return G.less(a, b); });
          hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
          for (auto const& h : hs) {
            if (auto v = tc.check(h, d)) {
              return result(v, c, "finite support", tc.checked());
            }
          }
          for (std::size_t m = 4 + hs.size();; m *= 2) {
            auto ball = H.ball(m).elements;
            auto far  = std::find_if(ball.begin(), ball.end(), [&](GroupElement const& h) {
              return std::none_of(doms[d].begin(), doms[d].end(), [&](GroupElement const& l) {
                return ex.defines(G.mul(h, l));
              });
            });
            if (far != ball.end()) {
              if (auto v = tc.check(*far, d)) {
                return result(v, c, "finite support", tc.checked());
              }
              break;
            }
          }
        }
        return result(std::nullopt, c, "finite support", tc.checked());
      }
      case Configuration::Kind::step: {
        // H = nZ; beyond the irregular stretch the window contents repeat
        // with period lcm(n, tail period).
        auto n  = *H.z_period();
        auto lo = c.cut(), hi = c.cut();
        for (auto const& e : c.exceptions().cells()) {
          lo = std::min(lo, e.g[0]);
          hi = std::max(hi, e.g[0]);
        }
        auto lp = std::lcm(n, static_cast<std::int64_t>(c.left().size()));
        auto rp = std::lcm(n, static_cast<std::int64_t>(c.right().size()));
        for (std::size_t d = 0; d < doms.size(); ++d) {
          std::int64_t dmin = doms[d].front()[0], dmax = dmin;
          for (auto const& l : doms[d]) {
            dmin = std::min(dmin, l[0]);
            dmax = std::max(dmax, l[0]);
          }
          auto first = floor_to_multiple(lo - dmax - lp, n);
          auto last  = hi - dmin + rp;
          for (auto h = first; h <= last; h += n) {
            if (auto v = tc.check(GroupElement{h}, d)) {
              return result(v, c, "eventually periodic on Z", tc.checked());
            }
          }
        }
        return result(std::nullopt, c, "eventually periodic on Z", tc.checked());
      }
      case Configuration::Kind::h_periodic: {
        // sigma^h(x) depends only on the coset K h.
        auto const& K      = c.period();
        auto        target = H.cosets_modulo(K);
        std::vector<GroupElement> reps;
        std::set<GroupElement>    keys;
        for (std::size_t m = 2 * target + 2; reps.size() < target; m *= 2) {
          for (auto const& h : H.ball(m).elements) {
            if (keys.insert(K.coset_key(h)).second) {
              reps.push_back(h);
              if (reps.size() == target) {
                break;
              }
            }
          }
        }
        for (auto const& h : reps) {
          if (auto v = tc.check_all(h)) {
            return result(v, c, "periodic", tc.checked());
          }
        }
        return result(std::nullopt, c, "periodic", tc.checked());
      }
      case Configuration::Kind::procedural: {
        for (auto const& h : H.ball(budget).elements) {
          if (auto v = tc.check_all(h)) {
            return result(v, c, "procedural", tc.checked());
          }
        }
        return Verdict::unknown(budget, "procedural configuration, no violation among the first "
                                            + std::to_string(budget) + " translates");
      }
    }
    throw StructuralError("unknown configuration kind");
  }

  ////////////////////////////////////////////////////////////////////////
  // Exhaustive oracle
  ////////////////////////////////////////////////////////////////////////

  BruteForceResult brute_force_subshift(Subshift const& x, std::size_t node_budget) {
    auto const& G = x.group();
    if (!G.is_finite()) {
      throw PreconditionError("brute_force_subshift needs a finite group");
    }
    if (!x.alphabet().is_finite()) {
      throw PreconditionError("brute_force_subshift needs an explicit finite alphabet");
    }
    auto const  n    = G.elements().size();
    auto const  k    = *x.alphabet().size();
    auto const& doms = x.forbidden().domains();
    std::size_t worst = 1;
    for (std::size_t i = 0; i < n; ++i) {
      worst = worst > std::numeric_limits<std::size_t>::max() / k
                  ? std::numeric_limits<std::size_t>::max()
                  : worst * k;
    }

    BruteForceResult out;
    if (empty_forbidden(x)) {
      return out;
    }

    struct Window {
      std::vector<std::size_t> cells;
      std::size_t              domain;
    };
    // Windows indexed by their last cell in well-order.
    std::vector<std::vector<Window>> closing(n);
    auto const hs = x.invariance().ball(*x.invariance().order()).elements;
    for (std::size_t d = 0; d < doms.size(); ++d) {
      for (auto const& h : hs) {
        Window w{{}, d};
        for (auto const& l : doms[d]) {
          w.cells.push_back(G.position(G.mul(h, l)));
        }
        auto last = *std::max_element(w.cells.begin(), w.cells.end());
        closing[last].push_back(std::move(w));
      }
    }

    std::vector<Symbol> table(n, 0);
    std::vector<Symbol> values;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (i == n) {
        out.tables.push_back(table);
        return;
      }
      for (Symbol a = 0; a < k; ++a) {
        if (++out.nodes > node_budget) {
          throw RefusalError("exhaustive enumeration exceeds the node budget of "
                                 + std::to_string(node_budget),
                             worst);
        }
        table[i] = a;
        bool ok  = true;
        for (auto const& w : closing[i]) {
          values.clear();
          for (auto c : w.cells) {
            values.push_back(table[c]);
          }
          if (x.forbidden().lookup(w.domain, values)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          dfs(i + 1);
        }
      }
    };
    dfs(0);
    for (auto const& t : out.tables) {
      out.configurations.push_back(Configuration::from_table(x.group_ptr(), t));
    }
    return out;
  }

  std::vector<Symbol> shift_table(Group const& g, GroupElement const& by,
                                  std::vector<Symbol> const& table) {
    auto const&         elems = g.elements();
    std::vector<Symbol> out(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      out[i] = table[g.position(g.mul(by, elems[i]))];
    }
    return out;
  }

  bool check_h_invariance(std::vector<std::vector<Symbol>> const& tables, Subgroup const& h) {
    auto const& G = h.group();
    if (!G.is_finite()) {
      throw PreconditionError("check_h_invariance needs a finite group");
    }
    std::set<std::vector<Symbol>> set(tables.begin(), tables.end());
    for (auto const& g : h.ball(*h.order()).elements) {
      for (auto const& t : tables) {
        if (!set.count(shift_table(G, g, t))) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace hshift
