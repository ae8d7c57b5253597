#pragma once

#include <string>
#include <vector>

#include "hshift/subshift.hpp"

// The named subshifts used throughout the tests, built directly in code.
namespace hshift::testing {

  GroupPtr z();
  Alphabet binary();

  // Pattern on Z from a word placed at `start`.
  Pattern word(GroupPtr g, std::int64_t start, std::vector<Symbol> const& w);
  Pattern cells(GroupPtr g, std::vector<std::pair<GroupElement, Symbol>> const& c);

  // Z, H = 2Z, forbids (1,0) and (0,1) on {-1, 0}: x(n) = x(n-1) for even n.
  Subshift even_pairs();
  // Z, H = Z, forbids 11.
  Subshift golden_mean();
  // Z, H = Z, forbids 01, 10, 11: the only point is all zeros, and 1 can sit
  // in no bi-infinite word.
  Subshift poisoned();
  // Z^2 analog of the above along the first axis.
  Subshift poisoned_z2();
  // Z_2, H = G, forbids {0 -> 1}.
  Subshift z2_no_ones();
  // Z_2, H = G, forbids the two non-constant patterns on G.
  Subshift z2_constants();

  struct Determinant {
    GeneralLinear2 gl;
    Subshift       shift;
    // Symbol index s stands for the field element s + 1.
  };
  // GL(2, F_3), A = {1, 2}, H = SL(2, F_3), forbids every single-cell
  // pattern disagreeing with det.
  Determinant determinant();

}  // namespace hshift::testing
