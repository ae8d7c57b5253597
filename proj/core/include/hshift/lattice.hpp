#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hshift {

  using IntVector = std::vector<std::int64_t>;
  using IntMatrix = std::vector<IntVector>;

  // Row-style Hermite normal form of the lattice spanned by `rows` (each of
  // length `cols`). The result has no zero rows; row i has its first
  // nonzero entry (the pivot) strictly right of row i-1's pivot, pivots are
  // positive, and entries above a pivot lie in [0, pivot). The form is
  // unique for a given lattice. Throws StructuralError on int64 overflow.
  IntMatrix hermite_normal_form(IntMatrix const& rows, std::size_t cols);

  // Pivot column of each row of a Hermite normal form.
  std::vector<std::size_t> hnf_pivots(IntMatrix const& hnf);

  // Canonical representative of v + L for the lattice L with basis `hnf`:
  // every pivot coordinate reduced into [0, pivot).
  IntVector lattice_reduce(IntMatrix const& hnf, std::span<std::int64_t const> v);

  bool lattice_contains(IntMatrix const& hnf, std::span<std::int64_t const> v);

  // Index [Z^cols : L], or 0 when L is not of full rank.
  std::int64_t lattice_index(IntMatrix const& hnf, std::size_t cols);

}  // namespace hshift
