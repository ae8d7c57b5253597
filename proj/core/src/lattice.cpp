#include "hshift/lattice.hpp"

#include <algorithm>
#include <utility>

#include "hshift/error.hpp"

namespace hshift {

  namespace {

    std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw StructuralError("integer overflow in lattice arithmetic");
      }
      return r;
    }

    std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_sub_overflow(a, b, &r)) {
        throw StructuralError("integer overflow in lattice arithmetic");
      }
      return r;
    }

    std::int64_t checked_add(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_add_overflow(a, b, &r)) {
        throw StructuralError("integer overflow in lattice arithmetic");
      }
      return r;
    }

    std::int64_t floor_div(std::int64_t a, std::int64_t b) {
      std::int64_t q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
      }
      return q;
    }

    // row_a <- x*row_a + y*row_b, row_b <- u*row_a + v*row_b (old values)
    void combine_rows(IntVector& ra, IntVector& rb, std::int64_t x, std::int64_t y,
                      std::int64_t u, std::int64_t v) {
      for (std::size_t j = 0; j < ra.size(); ++j) {
        std::int64_t a = ra[j], b = rb[j];
        ra[j] = checked_add(checked_mul(x, a), checked_mul(y, b));
        rb[j] = checked_add(checked_mul(u, a), checked_mul(v, b));
      }
    }

    // Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
    void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s,
                 std::int64_t& t) {
      std::int64_t old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
      while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp;
        tmp   = checked_sub(old_r, checked_mul(q, r));
        old_r = r;
        r     = tmp;
        tmp   = checked_sub(old_s, checked_mul(q, ss));
        old_s = ss;
        ss    = tmp;
        tmp   = checked_sub(old_t, checked_mul(q, tt));
        old_t = tt;
        tt    = tmp;
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      g = old_r;
      s = old_s;
      t = old_t;
    }

  }  // namespace

  IntMatrix hermite_normal_form(IntMatrix const& rows, std::size_t cols) {
    IntMatrix m;
    for (auto const& r : rows) {
      if (r.size() != cols) {
        throw StructuralError("lattice basis vector has wrong dimension");
      }
      m.push_back(r);
    }
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < m.size(); ++col) {
      // Fold every lower row into pivot_row via unimodular 2x2 steps so that
      // only pivot_row is nonzero in this column.
      for (std::size_t i = pivot_row + 1; i < m.size(); ++i) {
        std::int64_t a = m[pivot_row][col], b = m[i][col];
        if (b == 0) {
          continue;
        }
        std::int64_t g, s, t;
        ext_gcd(a, b, g, s, t);
        // [s t; -b/g a/g] has determinant (s*a + t*b)/g = 1.
        combine_rows(m[pivot_row], m[i], s, t, -b / g, a / g);
      }
      if (m[pivot_row][col] == 0) {
        continue;
      }
      if (m[pivot_row][col] < 0) {
        for (auto& x : m[pivot_row]) {
          x = -x;
        }
      }
      std::int64_t p = m[pivot_row][col];
      for (std::size_t i = 0; i < pivot_row; ++i) {
        std::int64_t q = floor_div(m[i][col], p);
        if (q != 0) {
          for (std::size_t j = 0; j < cols; ++j) {
            m[i][j] = checked_sub(m[i][j], checked_mul(q, m[pivot_row][j]));
          }
        }
      }
      ++pivot_row;
    }
    m.resize(pivot_row);
    return m;
  }

  std::vector<std::size_t> hnf_pivots(IntMatrix const& hnf) {
    std::vector<std::size_t> p;
    for (auto const& r : hnf) {
      auto it = std::find_if(r.begin(), r.end(), [](auto x) { return x != 0; });
      p.push_back(static_cast<std::size_t>(it - r.begin()));
    }
    return p;
  }

  IntVector lattice_reduce(IntMatrix const& hnf, std::span<std::int64_t const> v) {
    IntVector r(v.begin(), v.end());
    auto      pivots = hnf_pivots(hnf);
    for (std::size_t i = 0; i < hnf.size(); ++i) {
      std::size_t  c = pivots[i];
      std::int64_t q = floor_div(r[c], hnf[i][c]);
      if (q != 0) {
        for (std::size_t j = 0; j < r.size(); ++j) {
          r[j] = checked_sub(r[j], checked_mul(q, hnf[i][j]));
        }
      }
    }
    return r;
  }

  bool lattice_contains(IntMatrix const& hnf, std::span<std::int64_t const> v) {
    IntVector r      = lattice_reduce(hnf, v);
    return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
  }

  std::int64_t lattice_index(IntMatrix const& hnf, std::size_t cols) {
    if (hnf.size() != cols) {
      return 0;
    }
    std::int64_t d      = 1;
    auto         pivots = hnf_pivots(hnf);
    for (std::size_t i = 0; i < hnf.size(); ++i) {
      d = checked_mul(d, hnf[i][pivots[i]]);
    }
    return d;
  }

}  // namespace hshift
