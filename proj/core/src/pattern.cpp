#include "hshift/pattern.hpp"

#include <algorithm>
#include <sstream>

#include "hshift/error.hpp"

namespace hshift {

  Pattern::Pattern(GroupPtr group) : _group(std::move(group)) {
    if (!_group) {
      throw StructuralError("pattern needs a group");
    }
  }

  Pattern::Pattern(GroupPtr group, std::vector<Cell> cells)
      : _group(std::move(group)), _cells(std::move(cells)) {
    if (!_group) {
      throw StructuralError("pattern needs a group");
    }
    for (auto const& c : _cells) {
      _group->check(c.g);
    }
    std::sort(_cells.begin(), _cells.end(), [this](Cell const& x, Cell const& y) {
      return _group->less(x.g, y.g);
    });
    for (std::size_t i = 1; i < _cells.size(); ++i) {
      if (_cells[i - 1].g == _cells[i].g) {
        throw StructuralError("pattern has duplicate cell " + _cells[i].g.to_string());
      }
    }
  }

  std::vector<Cell>::const_iterator Pattern::find(GroupElement const& g) const {
    auto it = std::lower_bound(
        _cells.begin(), _cells.end(), g,
        [this](Cell const& c, GroupElement const& x) { return _group->less(c.g, x); });
    if (it != _cells.end() && it->g == g) {
      return it;
    }
    return _cells.end();
  }

  std::optional<Symbol> Pattern::at(GroupElement const& g) const {
    auto it = find(g);
    if (it == _cells.end()) {
      return std::nullopt;
    }
    return it->a;
  }

  bool Pattern::defines(GroupElement const& g) const {
    return find(g) != _cells.end();
  }

  std::vector<GroupElement> Pattern::domain() const {
    std::vector<GroupElement> d;
    d.reserve(_cells.size());
    for (auto const& c : _cells) {
      d.push_back(c.g);
    }
    return d;
  }

  std::vector<Symbol> Pattern::values() const {
    std::vector<Symbol> v;
    v.reserve(_cells.size());
    for (auto const& c : _cells) {
      v.push_back(c.a);
    }
    return v;
  }

  Pattern Pattern::restricted(std::span<GroupElement const> cells) const {
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (auto const& g : cells) {
      auto it = find(g);
      if (it == _cells.end()) {
        throw PreconditionError("restriction cell " + g.to_string()
                                + " is outside the pattern's domain");
      }
      out.push_back(*it);
    }
    return Pattern(_group, std::move(out));
  }

  Pattern Pattern::without(GroupElement const& g) const {
    Pattern p(_group);
    p._cells.reserve(_cells.size());
    for (auto const& c : _cells) {
      if (!(c.g == g)) {
        p._cells.push_back(c);
      }
    }
    return p;
  }

  Pattern Pattern::with(GroupElement const& g, Symbol a) const {
    _group->check(g);
    Pattern p(_group);
    p._cells.reserve(_cells.size() + 1);
    bool placed = false;
    for (auto const& c : _cells) {
      if (c.g == g) {
        throw PreconditionError("cell " + g.to_string() + " already defined");
      }
      if (!placed && _group->less(g, c.g)) {
        p._cells.push_back({g, a});
        placed = true;
      }
      p._cells.push_back(c);
    }
    if (!placed) {
      p._cells.push_back({g, a});
    }
    return p;
  }

  std::weak_ordering Pattern::compare(Pattern const& other) const {
    if (auto c = _cells.size() <=> other._cells.size(); c != 0) {
      return c;
    }
    for (std::size_t i = 0; i < _cells.size(); ++i) {
      if (auto c = _group->compare(_cells[i].g, other._cells[i].g); c != 0) {
        return c;
      }
    }
    for (std::size_t i = 0; i < _cells.size(); ++i) {
      if (auto c = _cells[i].a <=> other._cells[i].a; c != 0) {
        return c;
      }
    }
    return std::weak_ordering::equivalent;
  }

  std::string Pattern::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < _cells.size(); ++i) {
      os << (i ? ", " : "") << _cells[i].g.to_string() << "->" << _cells[i].a;
    }
    os << '}';
    return os.str();
  }

  std::size_t PatternHash::operator()(Pattern const& p) const noexcept {
    std::size_t      h = p.size();
    GroupElementHash gh;
    for (auto const& c : p.cells()) {
      h ^= gh(c.g) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<Symbol>{}(c.a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  bool PatternSet::insert(Pattern p) {
    return _set.insert(std::move(p)).second;
  }

  std::vector<Pattern> PatternSet::sorted() const {
    std::vector<Pattern> v(_set.begin(), _set.end());
    std::sort(v.begin(), v.end(), PatternLess{});
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  Pattern shift_pattern(GroupElement const& g, Pattern const& p) {
    auto const&       G = p.group();
    std::vector<Cell> cells;
    cells.reserve(p.size());
    for (auto const& c : p.cells()) {
      cells.push_back({G.mul(g, c.g), c.a});
    }
    return Pattern(p.group_ptr(), std::move(cells));
  }

  bool subpattern_of(Pattern const& q, Pattern const& p) {
    if (!same_group(q.group(), p.group())) {
      throw StructuralError("subpattern_of: patterns over different groups");
    }
    if (q.size() > p.size()) {
      return false;
    }
    for (auto const& c : q.cells()) {
      auto v = p.at(c.g);
      if (!v || *v != c.a) {
        return false;
      }
    }
    return true;
  }

  Pattern merge(Pattern const& p, Pattern const& q) {
    if (!same_group(q.group(), p.group())) {
      throw StructuralError("merge: patterns over different groups");
    }
    auto const&       G = p.group();
    std::vector<Cell> out;
    out.reserve(p.size() + q.size());
    auto a = p.cells().begin(), ae = p.cells().end();
    auto b = q.cells().begin(), be = q.cells().end();
    while (a != ae || b != be) {
      if (b == be || (a != ae && G.less(a->g, b->g))) {
        out.push_back(*a++);
      } else if (a == ae || G.less(b->g, a->g)) {
        out.push_back(*b++);
      } else {
        if (a->a != b->a) {
          throw IncompatibleError("patterns conflict at cell " + a->g.to_string());
        }
        out.push_back(*a++);
        ++b;
      }
    }
    return Pattern(p.group_ptr(), std::move(out));
  }

  ExtendedPattern make_extended(Pattern p) {
    auto order               = p.group().order();
    bool complement_infinite = !order || p.size() < *order;
    return ExtendedPattern{std::move(p), complement_infinite};
  }

  ChainUnion chain_union(std::span<Pattern const> chain) {
    if (chain.empty()) {
      throw PreconditionError("chain_union needs a nonempty chain");
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!subpattern_of(chain[i], chain[i + 1])) {
        throw PreconditionError("chain is not increasing at members "
                                + std::to_string(i) + " and "
                                + std::to_string(i + 1));
      }
    }
    // In an increasing chain every member is a subpattern of the last.
    ChainUnion out{make_extended(chain.back()), true};
    out.proper = !chain.back().group().is_finite();
    return out;
  }

}  // namespace hshift
