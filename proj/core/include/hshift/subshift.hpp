#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hshift/configuration.hpp"
#include "hshift/pattern.hpp"
#include "hshift/subgroup.hpp"

namespace hshift {

  struct SymbolsHash {
    std::size_t operator()(std::vector<Symbol> const& v) const noexcept;
  };

  // The forbidden patterns of a subshift, deduplicated and kept in
  // canonical order, grouped by domain for lookup: lookup(d, values) finds
  // the forbidden pattern on domains()[d] with the given values.
  class ForbiddenSet {
   public:
    ForbiddenSet(GroupPtr group, std::vector<Pattern> patterns);

    std::vector<Pattern> const& patterns() const noexcept {
      return _patterns;
    }
    std::vector<std::vector<GroupElement>> const& domains() const noexcept {
      return _domains;
    }
    std::size_t size() const noexcept {
      return _patterns.size();
    }
    bool empty() const noexcept {
      return _patterns.empty();
    }
    // Index into patterns(), if forbidden.
    std::optional<std::size_t> lookup(std::size_t domain, std::vector<Symbol> const& values) const;
    // Largest word length of a domain element; 0 if there are none.
    std::size_t reach() const noexcept {
      return _reach;
    }

   private:
    std::vector<Pattern>                   _patterns;
    std::vector<std::vector<GroupElement>> _domains;
    std::vector<std::unordered_map<std::vector<Symbol>, std::size_t, SymbolsHash>> _by_domain;
    std::size_t _reach = 0;
  };

  // X_F^H: configurations x with sigma^h(x)|_L not in F for all h in H and
  // all domains L of F.
  class Subshift {
   public:
    Subshift(Alphabet alphabet, Subgroup invariance, std::vector<Pattern> forbidden);

    GroupPtr const& group_ptr() const noexcept {
      return _invariance.parent();
    }
    Group const& group() const noexcept {
      return _invariance.group();
    }
    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    Subgroup const& invariance() const noexcept {
      return _invariance;
    }
    ForbiddenSet const& forbidden() const noexcept {
      return _forbidden;
    }

   private:
    Alphabet     _alphabet;
    Subgroup     _invariance;
    ForbiddenSet _forbidden;
  };

  // sigma^translate(x) restricted to dom F_index is F_index; for patterns,
  // shift_pattern(translate, F_index) is a subpattern of the queried one.
  struct Violation {
    GroupElement translate;
    std::size_t  forbidden_index = 0;

    friend bool operator==(Violation const&, Violation const&) = default;
  };

  struct Verdict {
    enum class State { certified_allowed, certified_forbidden, unknown };

    State                        state = State::unknown;
    std::optional<Configuration> witness;
    std::optional<Pattern>       witness_pattern;
    std::optional<Violation>     violation;
    // Radius or budget examined.
    std::size_t radius = 0;
    // How the verdict was obtained.
    std::string certificate;

    static Verdict allowed(Configuration witness, std::string certificate);
    static Verdict forbidden(std::optional<Violation> v, std::string certificate);
    static Verdict unknown(std::size_t radius, std::string certificate);

    bool is_allowed() const noexcept {
      return state == State::certified_allowed;
    }
    bool is_forbidden() const noexcept {
      return state == State::certified_forbidden;
    }
    bool is_unknown() const noexcept {
      return state == State::unknown;
    }
  };

  char const* to_string(Verdict::State s) noexcept;

  struct Admissibility {
    bool                   admissible = true;
    std::vector<Violation> violations;
  };

  // All fitting H-translates of forbidden patterns inside P, in order of
  // forbidden domain then translate well-order.
  Admissibility locally_admissible(Pattern const& p, Subshift const& x, bool first_only = false);

  // Only the translates whose window contains `cell` (which must be in dom P).
  std::optional<Violation> violation_at(Pattern const& p, GroupElement const& cell,
                                        Subshift const& x);

  // Exact for finite H and for finite_support, step and h_periodic
  // configurations; procedural configurations on infinite H are checked on
  // the first `budget` elements of H.
  Verdict config_member(Configuration const& c, Subshift const& x, std::size_t budget);

  struct BruteForceResult {
    // Canonical order: lexicographic on tabulated values.
    std::vector<Configuration>       configurations;
    std::vector<std::vector<Symbol>> tables;
    std::size_t                      nodes = 0;
  };

  inline constexpr std::size_t default_node_budget = 10'000'000;

  // Finite G, finite alphabet. Depth-first over cells in well-order,
  // pruning as soon as a window is complete and forbidden; RefusalError
  // when more than `node_budget` partial assignments would be visited.
  BruteForceResult brute_force_subshift(Subshift const& x,
                                        std::size_t     node_budget = default_node_budget);

  // True iff sigma^h maps the set (given as tables over a finite group)
  // into itself for every h in H.
  bool check_h_invariance(std::vector<std::vector<Symbol>> const& tables,
                          Subgroup const&                         h);

  // Table of sigma^g(x) over a finite group, from the table of x.
  std::vector<Symbol> shift_table(Group const& g, GroupElement const& by,
                                  std::vector<Symbol> const& table);

}  // namespace hshift
