#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hshift {

  // A group element in canonical form: a short vector of integer
  // components. ZLattice(d) elements are coordinate vectors, FiniteCayley
  // elements are a single table index, and DirectProduct elements are the
  // concatenation of their factors' components. Two elements of the same
  // group are equal iff their components are identical.
  //
  // The built-in ordering is a raw lexicographic order used for container
  // keys only; the canonical well-order lives in Group::compare.
  class GroupElement {
   public:
    static constexpr std::size_t max_width = 8;

    GroupElement() = default;
    GroupElement(std::initializer_list<std::int64_t> c);
    explicit GroupElement(std::span<std::int64_t const> c);

    std::size_t width() const noexcept {
      return _size;
    }
    std::int64_t operator[](std::size_t i) const noexcept {
      return _c[i];
    }
    std::span<std::int64_t const> components() const noexcept {
      return {_c.data(), _size};
    }
    void set(std::size_t i, std::int64_t v) noexcept {
      _c[i] = v;
    }

    friend bool operator==(GroupElement const& a, GroupElement const& b) noexcept;
    friend std::strong_ordering operator<=>(GroupElement const& a,
                                            GroupElement const& b) noexcept;

    std::string to_string() const;

   private:
    std::array<std::int64_t, max_width> _c{};
    std::uint8_t                        _size = 0;
  };

  std::ostream& operator<<(std::ostream& os, GroupElement const& g);

  struct GroupElementHash {
    std::size_t operator()(GroupElement const& g) const noexcept;
  };

  enum class GroupKind { z_lattice, finite_cayley, product };

  class Group;
  using GroupPtr = std::shared_ptr<Group const>;

  struct Enumeration {
    std::vector<GroupElement> elements;
    // Set when more elements were requested than the group has.
    bool truncated = false;
  };

  // A finitely generated group of one of the supported kinds.
  //
  // The canonical well-order is length-lex over the declared generator
  // list: elements are ordered by the length of their shortest generator
  // word, ties broken by comparing the lexicographically least such words
  // letter by letter (generator indices in declared order). Words are read
  // left to right, i.e. the word s1 s2 ... sk denotes s1*s2*...*sk.
  // Breadth-first search from the identity, appending generators in order,
  // visits elements in exactly this order.
  //
  // Groups are immutable after construction and shared by pointer.
  class Group {
   public:
    // Z^d with generators +e1, -e1, +e2, -e2, ...
    static GroupPtr z_lattice(std::size_t rank);

    // Finite group from a multiplication table (table[a][b] = a*b). The
    // table is validated: identity, inverses, associativity (exhaustive up
    // to order 256, 100000 sampled triples above) and generation by
    // `generators`.
    static GroupPtr finite_cayley(std::vector<std::vector<std::uint32_t>> table,
                                  std::uint32_t              identity,
                                  std::vector<std::uint32_t> generators);

    // Generators of a product are the factors' generators, embedded, in
    // factor order.
    static GroupPtr product(std::vector<GroupPtr> factors);

    // Z_n as a Cayley table with generator 1.
    static GroupPtr cyclic(std::uint32_t n);

    GroupKind kind() const noexcept {
      return _kind;
    }
    // Lattice rank (ZLattice only).
    std::size_t rank() const noexcept {
      return _rank;
    }
    // Number of integer components of an element.
    std::size_t width() const noexcept {
      return _width;
    }
    std::optional<std::size_t> order() const noexcept;
    bool is_finite() const noexcept {
      return order().has_value();
    }
    std::vector<GroupPtr> const& factors() const noexcept {
      return _factors;
    }
    std::vector<std::vector<std::uint32_t>> const& table() const noexcept {
      return _table;
    }
    std::vector<GroupElement> const& generators() const noexcept {
      return _generators;
    }

    GroupElement identity() const;
    GroupElement mul(GroupElement const& a, GroupElement const& b) const;
    GroupElement inv(GroupElement const& a) const;

    bool belongs(GroupElement const& g) const noexcept;
    // Throws StructuralError if g is not an element of this group.
    void check(GroupElement const& g) const;

    // Canonical well-order.
    std::weak_ordering compare(GroupElement const& a, GroupElement const& b) const;
    bool less(GroupElement const& a, GroupElement const& b) const {
      return compare(a, b) < 0;
    }
    std::size_t word_length(GroupElement const& g) const;

    // First n elements of the well-order (prefix-stable).
    Enumeration enumerate(std::size_t n) const;
    // All elements of word length <= radius, in well-order.
    std::vector<GroupElement> ball(std::size_t radius) const;
    // Finite groups: all elements in well-order, and the position of an
    // element in that order.
    std::vector<GroupElement> const& elements() const;
    std::size_t                      position(GroupElement const& g) const;

    // Component i of a product element.
    GroupElement component(GroupElement const& g, std::size_t i) const;
    GroupElement combine(std::span<GroupElement const> parts) const;

    friend bool same_group(Group const& a, Group const& b) noexcept;

    std::string describe() const;

   private:
    Group() = default;
    void finish_construction();
    std::weak_ordering compare_words(GroupElement const& a,
                                     GroupElement const& b) const;

    GroupKind   _kind  = GroupKind::z_lattice;
    std::size_t _rank  = 0;
    std::size_t _width = 0;

    // FiniteCayley
    std::vector<std::vector<std::uint32_t>> _table;
    std::uint32_t                           _identity = 0;
    std::vector<std::uint32_t>              _inverse;
    std::vector<std::vector<std::uint32_t>> _words;

    // DirectProduct
    std::vector<GroupPtr>    _factors;
    std::vector<std::size_t> _offsets;

    std::vector<GroupElement> _generators;

    // Finite groups (any kind): well-order listing and positions.
    std::vector<GroupElement>                                       _listing;
    std::unordered_map<GroupElement, std::size_t, GroupElementHash> _position;
  };

  bool same_group(Group const& a, Group const& b) noexcept;

  // GL(2, F_p) as a Cayley table. Elements are the invertible matrices
  // (a, b; c, d) listed in lexicographic order of (a, b, c, d); matrices[i]
  // is the matrix of table index i.
  struct GeneralLinear2 {
    GroupPtr                                  group;
    std::uint32_t                             p = 0;
    std::vector<std::array<std::uint32_t, 4>> matrices;

    std::uint32_t determinant(GroupElement const& g) const;
  };

  GeneralLinear2 make_gl2(std::uint32_t p);

}  // namespace hshift
