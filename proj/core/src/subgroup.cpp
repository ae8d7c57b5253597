#include "hshift/subgroup.hpp"

#include <algorithm>

#include "hshift/error.hpp"

namespace hshift {

  namespace {
    GroupElement from_vector(IntVector const& v) {
      return GroupElement(std::span<std::int64_t const>(v));
    }
  }  // namespace

  Subgroup Subgroup::whole(GroupPtr parent) {
    switch (parent->kind()) {
      case GroupKind::z_lattice: {
        IntMatrix id(parent->rank(), IntVector(parent->rank(), 0));
        for (std::size_t i = 0; i < parent->rank(); ++i) {
          id[i][i] = 1;
        }
        return lattice(std::move(parent), id);
      }
      case GroupKind::finite_cayley: {
        auto const& all = parent->elements();
        return elements(parent, all);
      }
      case GroupKind::product: {
        std::vector<Subgroup> f;
        for (auto const& p : parent->factors()) {
          f.push_back(whole(p));
        }
        return product(std::move(parent), std::move(f));
      }
    }
    throw StructuralError("unsupported group kind");
  }

  Subgroup Subgroup::trivial(GroupPtr parent) {
    switch (parent->kind()) {
      case GroupKind::z_lattice: return lattice(std::move(parent), {});
      case GroupKind::finite_cayley: {
        auto e = parent->identity();
        return elements(std::move(parent), {e});
      }
      case GroupKind::product: {
        std::vector<Subgroup> f;
        for (auto const& p : parent->factors()) {
          f.push_back(trivial(p));
        }
        return product(std::move(parent), std::move(f));
      }
    }
    throw StructuralError("unsupported group kind");
  }

  Subgroup Subgroup::lattice(GroupPtr parent, IntMatrix const& basis) {
    if (parent->kind() != GroupKind::z_lattice) {
      throw StructuralError("lattice basis given for a non-lattice group");
    }
    Subgroup h;
    h._kind   = Kind::lattice;
    h._basis  = hermite_normal_form(basis, parent->rank());
    h._parent = std::move(parent);
    return h;
  }

  Subgroup Subgroup::elements(GroupPtr parent, std::vector<GroupElement> const& elems) {
    if (!parent->is_finite()) {
      throw StructuralError("explicit subgroup elements require a finite group");
    }
    Subgroup h;
    h._kind = Kind::finite;
    h._member_flag.assign(*parent->order(), false);
    for (auto const& g : elems) {
      parent->check(g);
      h._member_flag[parent->position(g)] = true;
    }
    if (!h._member_flag[parent->position(parent->identity())]) {
      throw StructuralError("subgroup does not contain the identity");
    }
    for (auto const& g : parent->elements()) {
      if (h._member_flag[parent->position(g)]) {
        h._members.push_back(g);
      }
    }
    for (auto const& a : h._members) {
      if (!h._member_flag[parent->position(parent->inv(a))]) {
        throw StructuralError("subgroup is not closed under inverses at "
                              + a.to_string());
      }
      for (auto const& b : h._members) {
        if (!h._member_flag[parent->position(parent->mul(a, b))]) {
          throw StructuralError("subgroup is not closed under products at "
                                + a.to_string() + "*" + b.to_string());
        }
      }
    }
    h._parent = std::move(parent);
    return h;
  }

  Subgroup Subgroup::generated(GroupPtr parent, std::vector<GroupElement> const& gens) {
    if (!parent->is_finite()) {
      throw StructuralError("generated subgroups require a finite group");
    }
    std::vector<bool>         seen(*parent->order(), false);
    std::vector<GroupElement> queue{parent->identity()};
    seen[parent->position(queue[0])] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto const& s : gens) {
        auto b = parent->mul(queue[i], s);
        if (!seen[parent->position(b)]) {
          seen[parent->position(b)] = true;
          queue.push_back(b);
        }
      }
    }
    return elements(std::move(parent), queue);
  }

  Subgroup Subgroup::product(GroupPtr parent, std::vector<Subgroup> factors) {
    if (parent->kind() != GroupKind::product
        || parent->factors().size() != factors.size()) {
      throw StructuralError("product subgroup needs one factor per group factor");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!same_group(*parent->factors()[i], *factors[i].parent())) {
        throw StructuralError("product subgroup factor " + std::to_string(i)
                              + " belongs to a different group");
      }
    }
    Subgroup h;
    h._kind    = Kind::product;
    h._factors = std::move(factors);
    h._parent  = std::move(parent);
    return h;
  }

  bool Subgroup::contains(GroupElement const& g) const {
    _parent->check(g);
    switch (_kind) {
      case Kind::lattice: return lattice_contains(_basis, g.components());
      case Kind::finite: return _member_flag[_parent->position(g)];
      case Kind::product:
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          if (!_factors[i].contains(_parent->component(g, i))) {
            return false;
          }
        }
        return true;
    }
    return false;
  }

  std::optional<std::size_t> Subgroup::order() const {
    switch (_kind) {
      case Kind::lattice:
        return _basis.empty() ? std::optional<std::size_t>(1) : std::nullopt;
      case Kind::finite: return _members.size();
      case Kind::product: {
        std::size_t n = 1;
        for (auto const& f : _factors) {
          auto o = f.order();
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

  std::optional<std::size_t> Subgroup::index() const {
    switch (_kind) {
      case Kind::lattice: {
        auto d = lattice_index(_basis, _parent->rank());
        return d == 0 ? std::nullopt : std::optional<std::size_t>(d);
      }
      case Kind::finite: return *_parent->order() / _members.size();
      case Kind::product: {
        std::size_t n = 1;
        for (auto const& f : _factors) {
          auto i = f.index();
          if (!i) {
            return std::nullopt;
          }
          n *= *i;
        }
        return n;
      }
    }
    return std::nullopt;
  }

  bool Subgroup::is_whole() const {
    auto i = index();
    return i && *i == 1;
  }

  bool Subgroup::is_trivial() const {
    auto o = order();
    return o && *o == 1;
  }

  SubgroupBall Subgroup::ball(std::size_t n) const {
    SubgroupBall out;
    auto         limit = order();
    std::size_t  want  = limit ? std::min(n, *limit) : n;
    out.truncated      = limit && n > *limit;
    if (want == 0) {
      return out;
    }
    if (_parent->is_finite()) {
      for (auto const& g : _parent->elements()) {
        if (contains(g)) {
          out.elements.push_back(g);
          if (out.elements.size() == want) {
            break;
          }
        }
      }
      return out;
    }
    // Scan the parent's enumeration, doubling the prefix until enough
    // members appear. Prefix stability makes the rescans consistent.
    std::size_t scanned = 0;
    std::size_t m       = std::max<std::size_t>(want * 4, 16);
    while (out.elements.size() < want) {
      auto e = _parent->enumerate(m);
      for (std::size_t i = scanned; i < e.elements.size(); ++i) {
        if (contains(e.elements[i])) {
          out.elements.push_back(e.elements[i]);
          if (out.elements.size() == want) {
            break;
          }
        }
      }
      scanned = e.elements.size();
      m *= 2;
    }
    return out;
  }

  Subgroup Subgroup::conjugate(GroupElement const& g) const {
    _parent->check(g);
    switch (_kind) {
      case Kind::lattice: return *this;
      case Kind::finite: {
        auto                      gi = _parent->inv(g);
        std::vector<GroupElement> c;
        for (auto const& h : _members) {
          c.push_back(_parent->mul(_parent->mul(gi, h), g));
        }
        return elements(_parent, c);
      }
      case Kind::product: {
        std::vector<Subgroup> f;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          f.push_back(_factors[i].conjugate(_parent->component(g, i)));
        }
        return product(_parent, std::move(f));
      }
    }
    return *this;
  }

  GroupElement Subgroup::coset_key(GroupElement const& g) const {
    _parent->check(g);
    switch (_kind) {
      case Kind::lattice: return from_vector(lattice_reduce(_basis, g.components()));
      case Kind::finite: {
        GroupElement best = _parent->mul(_members.front(), g);
        for (auto const& h : _members) {
          auto c = _parent->mul(h, g);
          if (_parent->less(c, best)) {
            best = c;
          }
        }
        return best;
      }
      case Kind::product: {
        std::vector<GroupElement> parts;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          parts.push_back(_factors[i].coset_key(_parent->component(g, i)));
        }
        return _parent->combine(parts);
      }
    }
    return g;
  }

  std::size_t Subgroup::cosets_modulo(Subgroup const& k) const {
    if (!same_group(*_parent, *k._parent)) {
      throw StructuralError("cosets_modulo: subgroups of different groups");
    }
    if (!k.index()) {
      throw StructuralError("cosets_modulo: K must have finite index");
    }
    if (_parent->is_finite() && (_kind != k._kind || _kind == Kind::finite)) {
      auto        members = ball(*order()).elements;
      std::size_t common  = 0;
      for (auto const& h : members) {
        common += k.contains(h) ? 1 : 0;
      }
      return members.size() / common;
    }
    if (_kind != k._kind) {
      throw StructuralError("cosets_modulo: incompatible subgroup representations");
    }
    switch (_kind) {
      case Kind::lattice: {
        if (_basis.empty()) {
          return 1;
        }
        IntMatrix rows = _basis;
        rows.insert(rows.end(), k._basis.begin(), k._basis.end());
        auto sum = hermite_normal_form(rows, _parent->rank());
        return static_cast<std::size_t>(lattice_index(k._basis, _parent->rank())
                                        / lattice_index(sum, _parent->rank()));
      }
      case Kind::finite: return 1;
      case Kind::product: {
        std::size_t n = 1;
        for (std::size_t i = 0; i < _factors.size(); ++i) {
          n *= _factors[i].cosets_modulo(k._factors[i]);
        }
        return n;
      }
    }
    return 1;
  }

  std::optional<std::int64_t> Subgroup::z_period() const {
    if (_kind != Kind::lattice || _parent->rank() != 1) {
      return std::nullopt;
    }
    return _basis.empty() ? 0 : _basis[0][0];
  }

  bool operator==(Subgroup const& a, Subgroup const& b) {
    if (!same_group(*a._parent, *b._parent)) {
      return false;
    }
    if (a._parent->is_finite() && (a._kind != b._kind || a._kind == Subgroup::Kind::finite)) {
      for (auto const& g : a._parent->elements()) {
        if (a.contains(g) != b.contains(g)) {
          return false;
        }
      }
      return true;
    }
    if (a._kind != b._kind) {
      return false;
    }
    switch (a._kind) {
      case Subgroup::Kind::lattice: return a._basis == b._basis;
      case Subgroup::Kind::finite: return a._member_flag == b._member_flag;
      case Subgroup::Kind::product: return a._factors == b._factors;
    }
    return false;
  }

}  // namespace hshift
