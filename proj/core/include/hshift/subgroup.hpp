#pragma once

#include <optional>
#include <vector>

#include "hshift/group.hpp"
#include "hshift/lattice.hpp"

namespace hshift {

  struct SubgroupBall {
    std::vector<GroupElement> elements;
    // Set when more elements were requested than the subgroup has.
    bool truncated = false;
  };

  // A subgroup H of a supported group. Lattice subgroups are stored as a
  // Hermite normal form basis, subgroups of finite groups either as an
  // explicit element set or componentwise, and subgroups of infinite
  // products componentwise.
  class Subgroup {
   public:
    enum class Kind { lattice, finite, product };

    static Subgroup whole(GroupPtr parent);
    static Subgroup trivial(GroupPtr parent);
    // Lattice spanned by `basis` (any generating vectors; reduced to HNF).
    static Subgroup lattice(GroupPtr parent, IntMatrix const& basis);
    // Explicit element set; must already be closed under product and
    // inverse, otherwise StructuralError.
    static Subgroup elements(GroupPtr parent, std::vector<GroupElement> const& elems);
    // Closure of `gens` in a finite group.
    static Subgroup generated(GroupPtr parent, std::vector<GroupElement> const& gens);
    static Subgroup product(GroupPtr parent, std::vector<Subgroup> factors);

    GroupPtr const& parent() const noexcept {
      return _parent;
    }
    Group const& group() const noexcept {
      return *_parent;
    }
    Kind kind() const noexcept {
      return _kind;
    }
    IntMatrix const& basis() const noexcept {
      return _basis;
    }
    // Finite kind: members in well-order.
    std::vector<GroupElement> const& members() const noexcept {
      return _members;
    }
    std::vector<Subgroup> const& factors() const noexcept {
      return _factors;
    }

    bool                       contains(GroupElement const& g) const;
    std::optional<std::size_t> order() const;
    bool                       is_whole() const;
    bool                       is_trivial() const;
    // [G : H] when finite.
    std::optional<std::size_t> index() const;

    // First n elements of H in the well-order induced from the parent group.
    SubgroupBall ball(std::size_t n) const;

    // g^{-1} H g.
    Subgroup conjugate(GroupElement const& g) const;

    // Canonical representative of the right coset H*g.
    GroupElement coset_key(GroupElement const& g) const;

    // [H : H n K] for K of finite index in the parent group.
    std::size_t cosets_modulo(Subgroup const& k) const;

    // For subgroups of Z: the n >= 0 with H = nZ.
    std::optional<std::int64_t> z_period() const;

    friend bool operator==(Subgroup const& a, Subgroup const& b);

   private:
    Subgroup() = default;

    GroupPtr                  _parent;
    Kind                      _kind = Kind::lattice;
    IntMatrix                 _basis;
    std::vector<GroupElement> _members;
    std::vector<bool>         _member_flag;
    std::vector<Subgroup>     _factors;
  };

  bool operator==(Subgroup const& a, Subgroup const& b);

}  // namespace hshift
