#pragma once

#include <compare>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "hshift/alphabet.hpp"
#include "hshift/group.hpp"

namespace hshift {

  struct Cell {
    GroupElement g;
    Symbol       a = 0;

    friend bool operator==(Cell const&, Cell const&) = default;
  };

  // A finite partial map from group elements to symbols. Cells are kept in
  // the group's canonical well-order, so iteration and serialization are
  // deterministic.
  class Pattern {
   public:
    explicit Pattern(GroupPtr group);
    // Cells may come in any order; duplicate elements are a StructuralError.
    Pattern(GroupPtr group, std::vector<Cell> cells);

    GroupPtr const& group_ptr() const noexcept {
      return _group;
    }
    Group const& group() const noexcept {
      return *_group;
    }

    std::span<Cell const> cells() const noexcept {
      return _cells;
    }
    std::size_t size() const noexcept {
      return _cells.size();
    }
    bool empty() const noexcept {
      return _cells.empty();
    }

    std::optional<Symbol>     at(GroupElement const& g) const;
    bool                      defines(GroupElement const& g) const;
    std::vector<GroupElement> domain() const;
    std::vector<Symbol>       values() const;

    // P restricted to `cells` (each must lie in dom P).
    Pattern restricted(std::span<GroupElement const> cells) const;
    Pattern without(GroupElement const& g) const;
    // Adds a cell; g must not be in dom P.
    Pattern with(GroupElement const& g, Symbol a) const;

    // Canonical order: by size, then domain in well-order, then symbols.
    std::weak_ordering compare(Pattern const& other) const;

    friend bool operator==(Pattern const& a, Pattern const& b) noexcept {
      return a._cells == b._cells;
    }

    std::string to_string() const;

   private:
    std::vector<Cell>::const_iterator find(GroupElement const& g) const;

    GroupPtr          _group;
    std::vector<Cell> _cells;
  };

  struct PatternHash {
    std::size_t operator()(Pattern const& p) const noexcept;
  };

  struct PatternLess {
    bool operator()(Pattern const& a, Pattern const& b) const {
      return a.compare(b) < 0;
    }
  };

  // A set of patterns over one group, with hashed membership and iteration
  // in canonical order.
  class PatternSet {
   public:
    PatternSet() = default;
    template <typename It>
    PatternSet(It first, It last) {
      for (; first != last; ++first) {
        insert(*first);
      }
    }

    bool insert(Pattern p);
    bool contains(Pattern const& p) const {
      return _set.count(p) != 0;
    }
    std::size_t size() const noexcept {
      return _set.size();
    }
    bool empty() const noexcept {
      return _set.empty();
    }
    std::vector<Pattern> sorted() const;

    friend bool operator==(PatternSet const& a, PatternSet const& b) {
      return a._set == b._set;
    }

   private:
    std::unordered_set<Pattern, PatternHash> _set;
  };

  // An extended pattern: a pattern of possibly infinite domain. Only finite
  // domains are materialized here; `complement_infinite` records whether
  // G \ dom P is infinite (for finite groups: whether dom P misses any
  // element).
  struct ExtendedPattern {
    Pattern pattern;
    bool    complement_infinite = true;
  };

  struct ChainUnion {
    ExtendedPattern result;
    // G minus the union of domains is infinite.
    bool proper = true;
  };

  struct Cylinder {
    Pattern base;
  };

  // gP: domain g*dom P, (gP)(g l) = P(l).
  Pattern shift_pattern(GroupElement const& g, Pattern const& p);

  // True iff P extends Q: dom Q is contained in dom P and P agrees with Q there.
  bool subpattern_of(Pattern const& q, Pattern const& p);

  // The pattern on dom P u dom Q extending both; IncompatibleError naming
  // the first conflicting cell in well-order otherwise.
  Pattern merge(Pattern const& p, Pattern const& q);

  // Union of an increasing chain (each member a subpattern of the next);
  // PreconditionError identifying the first violating adjacent pair.
  ChainUnion chain_union(std::span<Pattern const> chain);

  ExtendedPattern make_extended(Pattern p);

}  // namespace hshift
