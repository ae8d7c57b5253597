#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hshift/subshift.hpp"

namespace hshift {

  struct TraceStep {
    GroupElement cell;
    Symbol       symbol = 0;
    // Larger symbols not yet tried at this cell when the search finished.
    std::size_t alternatives = 0;
    // How often a later dead end forced this cell to change its symbol.
    std::size_t backtracks = 0;

    friend bool operator==(TraceStep const&, TraceStep const&) = default;
  };

  // The cells of target \ dom P in well-order with the symbols finally
  // chosen; `witness` describes the completed pattern or configuration, and
  // is empty when the search failed.
  struct RealizationTrace {
    std::vector<TraceStep>     steps;
    std::size_t                nodes = 0;
    std::optional<std::string> witness;
    // A failure is certified over the target only if every symbol of the
    // alphabet was tried (false under a truncated enumerable alphabet).
    bool exhaustive = true;
  };

  struct ExtendOptions {
    std::size_t                node_budget = 1'000'000;
    std::optional<std::size_t> symbol_budget;
  };

  struct Extension {
    std::optional<Pattern> pattern;
    RealizationTrace       trace;
  };

  // Depth-first completion of P to `target`, visiting target \ dom P in
  // well-order and trying symbols in index order; every intermediate
  // pattern is locally admissible. An empty result from an exhaustive
  // search means no admissible pattern on the target extends P, so P is
  // forbidden. Success proves nothing on its own: on Z^d with d >= 2 an
  // admissible extension may still die further out.
  // errors: PreconditionError if P is not locally admissible or dom P is
  // not inside target; RefusalError past the node budget.
  Extension extend_pattern(Subshift const& x, Pattern const& p,
                           std::span<GroupElement const> target, ExtendOptions const& options = {});

  // Applies the trace's choices to P.
  Pattern replay(Pattern const& p, RealizationTrace const& trace);

  // { d b : d in cells, |b| <= radius } in well-order.
  std::vector<GroupElement> inflate(Group const& g, std::span<GroupElement const> cells,
                                    std::size_t radius);

  // Finitely described configurations agreeing with `extension` (and so
  // with P), verified by config_member: constant outside, then on Z step
  // configurations with constant or periodically continued tails, then
  // periodic ones. Empty if none of them lies in X.
  std::optional<Configuration> close_witness(Subshift const& x, Pattern const& extension,
                                             std::optional<std::size_t> symbol_budget = {},
                                             std::size_t h_budget = 1000);

  struct RealizeOptions {
    ExtendOptions extend;
    std::size_t   h_budget = 1000;
    // On Z with H = nZ, fall back to a lasso witness from the exact path.
    bool z_lasso = true;
  };

  struct Realization {
    Verdict                verdict;
    std::optional<Pattern> extension;
    RealizationTrace       trace;
    // The search proved that no admissible pattern on the ball (or on all
    // of a finite group) extends P. The verdict stays Unknown; mapping this
    // to CertifiedForbidden is left to the caller.
    bool non_extendable = false;
  };

  // CertifiedAllowed with a re-verifiable witness, or Unknown(radius).
  Realization realize_witness(Subshift const& x, Pattern const& p, std::size_t radius,
                              RealizeOptions const& options = {});

  struct Reconstruction {
    std::optional<Subshift> subshift;
    BruteForceResult        configurations;
    PatternSet              language;
    // Extracted language equals the input set; otherwise the first pattern
    // (canonical order) in one but not the other.
    bool                   equal = false;
    std::optional<Pattern> difference;
  };

  // Finite G: forbids every pattern over G missing from `language` and
  // compares the language of the resulting X_F^H with the input. The input
  // must pass L1, L2 over all of G and L3 for all of H (PreconditionError
  // naming the failed property otherwise).
  Reconstruction realize_from_language(Alphabet const& alphabet, Subgroup const& h,
                                       PatternSet const& language,
                                       std::size_t       node_budget = default_node_budget);

}  // namespace hshift
