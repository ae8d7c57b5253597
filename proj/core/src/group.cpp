#include "hshift/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_set>

#include "hshift/error.hpp"

namespace hshift {

  std::ostream& operator<<(std::ostream& os, GroupElement const& g) {
    return os << g.to_string();
  }

  ////////////////////////////////////////////////////////////////////////
  // GroupElement
  ////////////////////////////////////////////////////////////////////////

  GroupElement::GroupElement(std::initializer_list<std::int64_t> c)
      : GroupElement(std::span<std::int64_t const>(c.begin(), c.size())) {}

  GroupElement::GroupElement(std::span<std::int64_t const> c) {
    if (c.size() > max_width) {
      throw StructuralError("group element has more than "
                            + std::to_string(max_width) + " components");
    }
    std::copy(c.begin(), c.end(), _c.begin());
    _size = static_cast<std::uint8_t>(c.size());
  }

  bool operator==(GroupElement const& a, GroupElement const& b) noexcept {
    return a._size == b._size
           && std::equal(a._c.begin(), a._c.begin() + a._size, b._c.begin());
  }

  std::strong_ordering operator<=>(GroupElement const& a,
                                   GroupElement const& b) noexcept {
    if (auto c = a._size <=> b._size; c != 0) {
      return c;
    }
    for (std::size_t i = 0; i < a._size; ++i) {
      if (auto c = a._c[i] <=> b._c[i]; c != 0) {
        return c;
      }
    }
    return std::strong_ordering::equal;
  }

  std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < _size; ++i) {
      os << (i ? "," : "") << _c[i];
    }
    os << ')';
    return os.str();
  }

  std::size_t GroupElementHash::operator()(GroupElement const& g) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ g.width();
    for (auto c : g.components()) {
      h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6)
           + (h >> 2);
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  GroupPtr Group::z_lattice(std::size_t rank) {
    if (rank == 0 || rank > GroupElement::max_width) {
      throw StructuralError("lattice rank must be in [1, "
                            + std::to_string(GroupElement::max_width) + "]");
    }
    auto g   = std::shared_ptr<Group>(new Group());
    g->_kind = GroupKind::z_lattice;
    g->_rank = rank;
    g->_width = rank;
    for (std::size_t i = 0; i < rank; ++i) {
      std::vector<std::int64_t> v(rank, 0);
      v[i] = 1;
      g->_generators.emplace_back(std::span<std::int64_t const>(v));
      v[i] = -1;
      g->_generators.emplace_back(std::span<std::int64_t const>(v));
    }
    return g;
  }

  GroupPtr Group::finite_cayley(std::vector<std::vector<std::uint32_t>> table,
                                std::uint32_t                           identity,
                                std::vector<std::uint32_t> generators) {
    std::size_t const n = table.size();
    if (n == 0) {
      throw StructuralError("Cayley table is empty");
    }
    if (identity >= n) {
      throw StructuralError("identity index out of range");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) {
        throw StructuralError("Cayley table is not square (row "
                              + std::to_string(a) + ")");
      }
      for (auto v : table[a]) {
        if (v >= n) {
          throw StructuralError("Cayley table entry out of range in row "
                                + std::to_string(a));
        }
      }
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      if (table[identity][a] != a || table[a][identity] != a) {
        throw StructuralError("identity does not act neutrally on element "
                              + std::to_string(a));
      }
    }
    std::vector<std::uint32_t> inverse(n, static_cast<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        if (table[a][b] == identity && table[b][a] == identity) {
          inverse[a] = b;
          break;
        }
      }
      if (inverse[a] == n) {
        throw StructuralError("element " + std::to_string(a)
                              + " has no two-sided inverse");
      }
    }
    auto assoc = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
      return table[table[a][b]][c] == table[a][table[b][c]];
    };
    if (n <= 256) {
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
          for (std::uint32_t c = 0; c < n; ++c) {
            if (!assoc(a, b, c)) {
              throw StructuralError("Cayley table is not associative at ("
                                    + std::to_string(a) + ","
                                    + std::to_string(b) + ","
                                    + std::to_string(c) + ")");
            }
          }
        }
      }
    } else {
      std::mt19937_64                              rng(0x5eed);
      std::uniform_int_distribution<std::uint32_t> pick(
          0, static_cast<std::uint32_t>(n - 1));
      for (int t = 0; t < 100000; ++t) {
        auto a = pick(rng), b = pick(rng), c = pick(rng);
        if (!assoc(a, b, c)) {
          throw StructuralError("Cayley table is not associative (sampled)");
        }
      }
    }
    for (auto s : generators) {
      if (s >= n) {
        throw StructuralError("generator index out of range");
      }
    }

    auto g       = std::shared_ptr<Group>(new Group());
    g->_kind     = GroupKind::finite_cayley;
    g->_width    = 1;
    g->_table    = std::move(table);
    g->_identity = identity;
    g->_inverse  = std::move(inverse);
    for (auto s : generators) {
      g->_generators.push_back(GroupElement{static_cast<std::int64_t>(s)});
    }

    // BFS from the identity appending generators on the right; the first
    // word found for each element is its length-lex least word.
    g->_words.assign(n, {});
    std::vector<bool>          seen(n, false);
    std::vector<std::uint32_t> queue{identity};
    seen[identity] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto a = queue[head];
      for (std::uint32_t i = 0; i < generators.size(); ++i) {
        auto b = g->_table[a][generators[i]];
        if (!seen[b]) {
          seen[b]      = true;
          g->_words[b] = g->_words[a];
          g->_words[b].push_back(i);
          queue.push_back(b);
        }
      }
    }
    if (queue.size() != n) {
      throw StructuralError("generators do not generate the group (closure has "
                            + std::to_string(queue.size()) + " of "
                            + std::to_string(n) + " elements)");
    }
    g->finish_construction();
    return g;
  }

  GroupPtr Group::product(std::vector<GroupPtr> factors) {
    if (factors.empty()) {
      throw StructuralError("direct product needs at least one factor");
    }
    auto        g = std::shared_ptr<Group>(new Group());
    g->_kind      = GroupKind::product;
    std::size_t w = 0;
    for (auto const& f : factors) {
      if (!f) {
        throw StructuralError("null factor in direct product");
      }
      g->_offsets.push_back(w);
      w += f->width();
    }
    if (w > GroupElement::max_width) {
      throw StructuralError("direct product too wide");
    }
    g->_width   = w;
    g->_factors = std::move(factors);
    for (std::size_t i = 0; i < g->_factors.size(); ++i) {
      for (auto const& s : g->_factors[i]->generators()) {
        std::vector<GroupElement> parts;
        for (std::size_t j = 0; j < g->_factors.size(); ++j) {
          parts.push_back(j == i ? s : g->_factors[j]->identity());
        }
        g->_generators.push_back(g->combine(parts));
      }
    }
    g->finish_construction();
    return g;
  }

  GroupPtr Group::cyclic(std::uint32_t n) {
    if (n == 0) {
      throw StructuralError("cyclic group order must be positive");
    }
    std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        t[a][b] = (a + b) % n;
      }
    }
    std::vector<std::uint32_t> gens;
    if (n > 1) {
      gens.push_back(1);
    }
    return finite_cayley(std::move(t), 0, std::move(gens));
  }

  void Group::finish_construction() {
    if (!order()) {
      return;
    }
    // Breadth-first listing; also validates that generators reach every
    // element of a finite product.
    std::size_t n = *order();
    auto        e = enumerate(n);
    _listing      = std::move(e.elements);
    if (_listing.size() != n) {
      throw StructuralError("generators do not generate the group");
    }
    for (std::size_t i = 0; i < _listing.size(); ++i) {
      _position.emplace(_listing[i], i);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Arithmetic
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::size_t> Group::order() const noexcept {
    switch (_kind) {
      case GroupKind::z_lattice: return std::nullopt;
      case GroupKind::finite_cayley: return _table.size();
      case GroupKind::product: {
        std::size_t n = 1;
        for (auto const& f : _factors) {
          auto o = f->order();
          if (!o) {
            return std::nullopt;
          }
          n *= *o;
        }
        return n;
      }
    }
    return std::nullopt;
  }

  GroupElement Group::identity() const {
    switch (_kind) {
      case GroupKind::z_lattice: {
        std::vector<std::int64_t> z(_rank, 0);
        return GroupElement(std::span<std::int64_t const>(z));
      }
      case GroupKind::finite_cayley:
        return GroupElement{static_cast<std::int64_t>(_identity)};
      case GroupKind::product: {
        std::vector<GroupElement> parts;
        for (auto const& f : _factors) {
          parts.push_back(f->identity());
        }
        return combine(parts);
      }
    }
    return {};
  }

  bool Group::belongs(GroupElement const& g) const noexcept {
    if (g.width() != _width) {
      return false;
    }
    switch (_kind) {
      case GroupKind::z_lattice: return true;
      case GroupKind::finite_cayley:
        return g[0] >= 0 && static_cast<std::size_t>(g[0]) < _table.size();
      case GroupKind::product:
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          if (!_factors[i]->belongs(component(g, i))) {
            return false;
          }
        }
        return true;
    }
    return false;
  }

  void Group::check(GroupElement const& g) const {
    if (!belongs(g)) {
      throw StructuralError("element " + g.to_string()
                            + " does not belong to group " + describe());
    }
  }

  GroupElement Group::mul(GroupElement const& a, GroupElement const& b) const {
    check(a);
    check(b);
    switch (_kind) {
      case GroupKind::z_lattice: {
        GroupElement r = a;
        for (std::size_t i = 0; i < _rank; ++i) {
          r.set(i, a[i] + b[i]);
        }
        return r;
      }
      case GroupKind::finite_cayley:
        return GroupElement{static_cast<std::int64_t>(
            _table[static_cast<std::size_t>(a[0])][static_cast<std::size_t>(b[0])])};
      case GroupKind::product: {
        std::vector<GroupElement> parts;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          parts.push_back(_factors[i]->mul(component(a, i), component(b, i)));
        }
        return combine(parts);
      }
    }
    return {};
  }

  GroupElement Group::inv(GroupElement const& a) const {
    check(a);
    switch (_kind) {
      case GroupKind::z_lattice: {
        GroupElement r = a;
        for (std::size_t i = 0; i < _rank; ++i) {
          r.set(i, -a[i]);
        }
        return r;
      }
      case GroupKind::finite_cayley:
        return GroupElement{
            static_cast<std::int64_t>(_inverse[static_cast<std::size_t>(a[0])])};
      case GroupKind::product: {
        std::vector<GroupElement> parts;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          parts.push_back(_factors[i]->inv(component(a, i)));
        }
        return combine(parts);
      }
    }
    return {};
  }

  GroupElement Group::component(GroupElement const& g, std::size_t i) const {
    auto const& f = _factors.at(i);
    return GroupElement(g.components().subspan(_offsets[i], f->width()));
  }

  GroupElement Group::combine(std::span<GroupElement const> parts) const {
    std::vector<std::int64_t> c;
    for (auto const& p : parts) {
      c.insert(c.end(), p.components().begin(), p.components().end());
    }
    return GroupElement(std::span<std::int64_t const>(c));
  }

  ////////////////////////////////////////////////////////////////////////
  // Well-order
  ////////////////////////////////////////////////////////////////////////

  std::size_t Group::word_length(GroupElement const& g) const {
    check(g);
    switch (_kind) {
      case GroupKind::z_lattice: {
        std::size_t n = 0;
        for (auto c : g.components()) {
          n += static_cast<std::size_t>(c < 0 ? -c : c);
        }
        return n;
      }
      case GroupKind::finite_cayley:
        return _words[static_cast<std::size_t>(g[0])].size();
      case GroupKind::product: {
        std::size_t n = 0;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          n += _factors[i]->word_length(component(g, i));
        }
        return n;
      }
    }
    return 0;
  }

  // Lexicographic comparison of least words where running out of letters
  // compares greater than any letter: in a product the next letters come
  // from later factors, whose generator indices are all larger.
  std::weak_ordering Group::compare_words(GroupElement const& a,
                                          GroupElement const& b) const {
    switch (_kind) {
      case GroupKind::z_lattice: {
        // The least word of v is sorted: |v_i| copies of generator 2i
        // (v_i > 0) or 2i+1 (v_i < 0). The first generator whose
        // multiplicity differs decides; more copies is smaller.
        for (std::size_t i = 0; i < _rank; ++i) {
          std::int64_t pa = a[i] > 0 ? a[i] : 0, pb = b[i] > 0 ? b[i] : 0;
          if (pa != pb) {
            return pa > pb ? std::weak_ordering::less : std::weak_ordering::greater;
          }
          std::int64_t na = a[i] < 0 ? -a[i] : 0, nb = b[i] < 0 ? -b[i] : 0;
          if (na != nb) {
            return na > nb ? std::weak_ordering::less : std::weak_ordering::greater;
          }
        }
        return std::weak_ordering::equivalent;
      }
      case GroupKind::finite_cayley: {
        auto const& wa = _words[static_cast<std::size_t>(a[0])];
        auto const& wb = _words[static_cast<std::size_t>(b[0])];
        std::size_t n  = std::min(wa.size(), wb.size());
        for (std::size_t i = 0; i < n; ++i) {
          if (wa[i] != wb[i]) {
            return wa[i] < wb[i] ? std::weak_ordering::less
                                 : std::weak_ordering::greater;
          }
        }
        if (wa.size() == wb.size()) {
          return std::weak_ordering::equivalent;
        }
        return wa.size() > wb.size() ? std::weak_ordering::less
                                     : std::weak_ordering::greater;
      }
      case GroupKind::product:
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          auto c = _factors[i]->compare_words(component(a, i), component(b, i));
          if (c != 0) {
            return c;
          }
        }
        return std::weak_ordering::equivalent;
    }
    return std::weak_ordering::equivalent;
  }

  std::weak_ordering Group::compare(GroupElement const& a,
                                    GroupElement const& b) const {
    if (!_position.empty()) {
      auto ia = _position.find(a), ib = _position.find(b);
      if (ia == _position.end() || ib == _position.end()) {
        check(a);
        check(b);
      }
      return ia->second <=> ib->second;
    }
    if (auto c = word_length(a) <=> word_length(b); c != 0) {
      return c;
    }
    return compare_words(a, b);
  }

  Enumeration Group::enumerate(std::size_t n) const {
    Enumeration out;
    if (!_listing.empty()) {
      out.elements.assign(_listing.begin(),
                          _listing.begin()
                              + static_cast<std::ptrdiff_t>(std::min(n, _listing.size())));
      out.truncated = n > _listing.size();
      return out;
    }
    if (n == 0) {
      return out;
    }
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement>&                         queue = out.elements;
    queue.push_back(identity());
    seen.insert(queue.back());
    for (std::size_t head = 0; head < queue.size() && queue.size() < n; ++head) {
      GroupElement a = queue[head];
      for (auto const& s : _generators) {
        auto b = mul(a, s);
        if (seen.insert(b).second) {
          queue.push_back(b);
          if (queue.size() == n) {
            break;
          }
        }
      }
    }
    out.truncated = queue.size() < n;
    return out;
  }

  std::vector<GroupElement> Group::ball(std::size_t radius) const {
    std::vector<GroupElement> out;
    if (!_listing.empty()) {
      for (auto const& g : _listing) {
        if (word_length(g) <= radius) {
          out.push_back(g);
        }
      }
      return out;
    }
    std::unordered_set<GroupElement, GroupElementHash> seen;
    out.push_back(identity());
    seen.insert(out.back());
    std::size_t level_begin = 0;
    for (std::size_t level = 0; level < radius; ++level) {
      std::size_t level_end = out.size();
      for (std::size_t i = level_begin; i < level_end; ++i) {
        GroupElement a = out[i];
        for (auto const& s : _generators) {
          auto b = mul(a, s);
          if (seen.insert(b).second) {
            out.push_back(b);
          }
        }
      }
      if (level_end == out.size()) {
        break;
      }
      level_begin = level_end;
    }
    return out;
  }

  std::vector<GroupElement> const& Group::elements() const {
    if (_listing.empty()) {
      throw StructuralError("elements() requires a finite group");
    }
    return _listing;
  }

  std::size_t Group::position(GroupElement const& g) const {
    auto it = _position.find(g);
    if (it == _position.end()) {
      if (_listing.empty()) {
        throw StructuralError("position() requires a finite group");
      }
      check(g);
    }
    return it->second;
  }

  bool same_group(Group const& a, Group const& b) noexcept {
    if (&a == &b) {
      return true;
    }
    if (a._kind != b._kind || a._width != b._width) {
      return false;
    }
    switch (a._kind) {
      case GroupKind::z_lattice: return a._rank == b._rank;
      case GroupKind::finite_cayley:
        return a._identity == b._identity && a._table == b._table
               && a._generators == b._generators;
      case GroupKind::product:
        if (a._factors.size() != b._factors.size()) {
          return false;
        }
        for (std::size_t i = 0; i < a._factors.size(); ++i) {
          if (!same_group(*a._factors[i], *b._factors[i])) {
            return false;
          }
        }
        return true;
    }
    return false;
  }

  std::string Group::describe() const {
    switch (_kind) {
      case GroupKind::z_lattice: return "Z^" + std::to_string(_rank);
      case GroupKind::finite_cayley:
        return "FiniteCayley(" + std::to_string(_table.size()) + ")";
      case GroupKind::product: {
        std::string s;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          s += (i ? " x " : "") + _factors[i]->describe();
        }
        return s;
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // GL(2, F_p)
  ////////////////////////////////////////////////////////////////////////

  std::uint32_t GeneralLinear2::determinant(GroupElement const& g) const {
    auto const& m = matrices.at(static_cast<std::size_t>(g[0]));
    return static_cast<std::uint32_t>(((m[0] * m[3]) % p + p - (m[1] * m[2]) % p)
                                      % p);
  }

  GeneralLinear2 make_gl2(std::uint32_t p) {
    if (p < 2) {
      throw StructuralError("GL(2, F_p) needs p >= 2");
    }
    for (std::uint32_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw StructuralError("GL(2, F_p) needs p prime");
      }
    }
    GeneralLinear2 out;
    out.p = p;
    std::map<std::array<std::uint32_t, 4>, std::uint32_t> index;
    for (std::uint32_t a = 0; a < p; ++a) {
      for (std::uint32_t b = 0; b < p; ++b) {
        for (std::uint32_t c = 0; c < p; ++c) {
          for (std::uint32_t d = 0; d < p; ++d) {
            if ((a * d + p * p - b * c) % p != 0) {
              index[{a, b, c, d}] = static_cast<std::uint32_t>(out.matrices.size());
              out.matrices.push_back({a, b, c, d});
            }
          }
        }
      }
    }
    std::size_t const n = out.matrices.size();
    auto product = [p](std::array<std::uint32_t, 4> const& x,
                       std::array<std::uint32_t, 4> const& y) {
      return std::array<std::uint32_t, 4>{(x[0] * y[0] + x[1] * y[2]) % p,
                                          (x[0] * y[1] + x[1] * y[3]) % p,
                                          (x[2] * y[0] + x[3] * y[2]) % p,
                                          (x[2] * y[1] + x[3] * y[3]) % p};
    };
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        table[i][j] = index.at(product(out.matrices[i], out.matrices[j]));
      }
    }
    // Primitive root for the diagonal generator.
    std::uint32_t root = 1;
    for (std::uint32_t r = 1; r < p; ++r) {
      std::uint32_t x = 1, k = 0;
      do {
        x = (x * r) % p;
        ++k;
      } while (x != 1);
      if (k == p - 1) {
        root = r;
        break;
      }
    }
    std::vector<std::uint32_t> gens{index.at({1, 1, 0, 1}), index.at({0, 1, 1, 0})};
    if (root != 1 && root != p - 1) {
      gens.push_back(index.at({root, 0, 0, 1}));
    }
    out.group = Group::finite_cayley(std::move(table), index.at({1, 0, 0, 1}),
                                     std::move(gens));
    return out;
  }

}  // namespace hshift
