#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hshift/subshift.hpp"

namespace hshift {

  enum class Method { brute_force, z_exact, inflation };

  struct LanguageOptions {
    Method                     method = Method::inflation;
    std::size_t                radius = 8;
    std::optional<std::size_t> symbol_budget;
    std::size_t                node_budget = default_node_budget;
    std::size_t                h_budget    = 1000;
  };

  struct LanguageEntry {
    Pattern pattern;
    Verdict verdict;
  };

  class LanguageTable {
   public:
    LanguageTable(std::vector<GroupElement> window, std::vector<LanguageEntry> entries,
                  std::string provenance);

    // Window cells in well-order.
    std::vector<GroupElement> const& window() const noexcept {
      return _window;
    }
    // Canonical pattern order.
    std::vector<LanguageEntry> const& entries() const noexcept {
      return _entries;
    }
    // "BruteForce", "ZExact" or "Inflation(r)".
    std::string const& provenance() const noexcept {
      return _provenance;
    }

    std::size_t          count(Verdict::State s) const;
    std::vector<Pattern> patterns(Verdict::State s) const;
    Verdict const*       find(Pattern const& p) const;

   private:
    std::vector<GroupElement>  _window;
    std::vector<LanguageEntry> _entries;
    std::string                _provenance;
  };

  // One verdict per candidate pattern on the window. Enumerable alphabets
  // need options.symbol_budget; verdicts then concern the first symbols only
  // and Forbidden is only reported on a local violation.
  // errors: empty window or repeated cells (PreconditionError), brute force
  // on an infinite group or z-exact off Z with H = nZ (StructuralError).
  LanguageTable window_language(Subshift const& x, std::vector<GroupElement> window,
                                LanguageOptions const& options = {});

  std::string to_string(Method m, std::size_t radius);

  // Every restriction of every table, empty pattern included.
  PatternSet extract_language(GroupPtr g, std::vector<std::vector<Symbol>> const& tables);

  struct PropertyReport {
    bool holds = true;
    // The offending pattern, and what it was tested against: the missing
    // restriction (L1), the cell (L2), the translate (L3).
    std::optional<Pattern>      counterexample;
    std::optional<Pattern>      missing;
    std::optional<GroupElement> element;
    std::optional<std::size_t>  chain;
    std::string                 scope;
  };

  // L1: closed under restriction. Removing one cell at a time suffices;
  // patterns are scanned largest first and cells in reverse well-order.
  PropertyReport check_L1(PatternSet const& set);
  // L2 with "for every g" truncated to `cells`.
  PropertyReport check_L2(PatternSet const& set, std::span<GroupElement const> cells);
  // L3 over the first `budget` elements of H, testing only translates that
  // land inside the union of the set's domains.
  PropertyReport check_L3(PatternSet const& set, Subgroup const& h, std::size_t budget);
  // L4: the union of every chain satisfies the predicate.
  PropertyReport check_L4(std::vector<std::vector<Pattern>> const&        chains,
                          std::function<bool(ExtendedPattern const&)> const& predicate);

  struct LanguageComparison {
    bool                   equal = false;
    std::optional<Pattern> distinguishing;
    // Finite groups only: whether the configuration sets coincide.
    std::optional<bool> sets_equal;
  };

  // Finite groups: exact over every finite domain. No windows given on an
  // infinite group is a PreconditionError; with windows, every verdict of
  // the chosen method must be certified (RefusalError otherwise).
  LanguageComparison language_equal(Subshift const& x, Subshift const& y,
                                    std::vector<std::vector<GroupElement>> const& windows = {},
                                    LanguageOptions const& options = {});

  struct SingletonLanguage {
    GroupElement        cell;
    std::vector<Symbol> allowed, forbidden, unknown;
    bool                certified_finite = false;
  };

  enum class Compactness { compact, not_certified, non_compact_evidence };
  char const* to_string(Compactness c) noexcept;

  struct CompactnessReport {
    std::vector<SingletonLanguage> cells;
    Compactness                    summary = Compactness::compact;
    std::string                    method;
  };

  // Singleton languages at the first `cells` elements of G, using the exact
  // method when there is one (finite G, or Z with H = nZ) and Inflation
  // otherwise. On an enumerable alphabet a cell where every budgeted symbol
  // is allowed counts as evidence of non-compactness.
  CompactnessReport compactness_check(Subshift const& x, std::size_t symbol_budget,
                                      std::size_t cells = 8, LanguageOptions options = {});

}  // namespace hshift
