#include "hshift/language.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hshift/error.hpp"
#include "hshift/realize.hpp"
#include "hshift/zexact.hpp"

namespace hshift {

  namespace {

    constexpr std::size_t max_candidates = 1u << 20;

    bool is_z_nz(Subshift const& x) {
      auto const& g = x.group();
      if (g.kind() != GroupKind::z_lattice || g.rank() != 1) {
        return false;
      }
      auto n = x.invariance().z_period();
      return n && *n >= 1;
    }

    std::vector<Pattern> candidates(GroupPtr const& g, std::vector<GroupElement> const& window,
                                    std::size_t base) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < window.size(); ++i) {
        if (total > max_candidates / std::max<std::size_t>(base, 1)) {
          throw RefusalError("window_language: more than " + std::to_string(max_candidates)
                                 + " candidate patterns",
                             max_candidates);
        }
        total *= base;
      }
      std::vector<Pattern> out;
      out.reserve(total);
      std::vector<Symbol> digit(window.size(), 0);
      for (std::size_t n = 0; n < total; ++n) {
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < window.size(); ++i) {
          cells.push_back({window[i], digit[i]});
        }
        out.emplace_back(g, std::move(cells));
        for (auto i = window.size(); i-- > 0;) {
          if (++digit[i] < base) {
            break;
          }
          digit[i] = 0;
        }
      }
      std::sort(out.begin(), out.end(), PatternLess{});
      return out;
    }

    Verdict inflation_verdict(Subshift const& x, Pattern const& p,
                              std::vector<GroupElement> const& window,
                              LanguageOptions const& options) {
      auto local = locally_admissible(p, x, true);
      if (!local.admissible) {
        return Verdict::forbidden(local.violations.front(), "local violation");
      }
      ExtendOptions eo{options.node_budget, options.symbol_budget};
      auto const&   g = x.group();
      std::optional<Extension> widest;
      try {
        widest = extend_pattern(x, p, inflate(g, window, options.radius), eo);
      } catch (RefusalError const&) {
        return Verdict::unknown(options.radius, "extension search exceeded its node budget");
      }
      if (!widest->pattern) {
        if (widest->trace.exhaustive) {
          auto v   = Verdict::forbidden(std::nullopt, "no admissible extension over the ball of radius "
                                                          + std::to_string(options.radius));
          v.radius = options.radius;
          return v;
        }
        return Verdict::unknown(options.radius, "no admissible extension within the symbol budget");
      }
      // Closing the extensions of every smaller radius as well keeps a
      // certificate found at radius r available at every larger radius.
      for (std::size_t s = 0; s <= options.radius; ++s) {
        auto ext = s == options.radius ? *widest : extend_pattern(x, p, inflate(g, window, s), eo);
        if (auto c = close_witness(x, *ext.pattern, options.symbol_budget, options.h_budget)) {
          auto v            = Verdict::allowed(*c, "closed the extension over the ball of radius "
                                                       + std::to_string(s));
          v.radius          = options.radius;
          v.witness_pattern = p;
          return v;
        }
      }
      return Verdict::unknown(options.radius, "admissible over the ball of radius "
                                                  + std::to_string(options.radius));
    }

    // Restrictions of a table to every subset of G, keyed by domain mask.
    template <typename F>
    void each_restriction(GroupPtr const& g, std::vector<Symbol> const& table, F&& f) {
      auto const& elems = g->elements();
      if (elems.size() > 20) {
        throw RefusalError("full languages are limited to groups of order 20", elems.size());
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << elems.size()); ++mask) {
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < elems.size(); ++i) {
          if (mask >> i & 1) {
            cells.push_back({elems[i], table[i]});
          }
        }
        f(mask, Pattern(g, std::move(cells)));
      }
    }

    std::string describe_cells(std::span<GroupElement const> cells) {
      std::string s = "[";
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += (i ? ", " : "") + cells[i].to_string();
      }
      return s + "]";
    }

  }  // namespace

  LanguageTable::LanguageTable(std::vector<GroupElement> window, std::vector<LanguageEntry> entries,
                               std::string provenance)
      : _window(std::move(window)), _entries(std::move(entries)), _provenance(std::move(provenance)) {}

  std::size_t LanguageTable::count(Verdict::State s) const {
    return static_cast<std::size_t>(std::count_if(
        _entries.begin(), _entries.end(), [s](LanguageEntry const& e) { return e.verdict.state == s; }));
  }

  std::vector<Pattern> LanguageTable::patterns(Verdict::State s) const {
    std::vector<Pattern> out;
    for (auto const& e : _entries) {
      if (e.verdict.state == s) {
        out.push_back(e.pattern);
      }
    }
    return out;
  }

  Verdict const* LanguageTable::find(Pattern const& p) const {
    auto it = std::lower_bound(_entries.begin(), _entries.end(), p,
                               [](LanguageEntry const& e, Pattern const& q) { return e.pattern.compare(q) < 0; });
    return it != _entries.end() && it->pattern == p ? &it->verdict : nullptr;
  }

  std::string to_string(Method m, std::size_t radius) {
    switch (m) {
      case Method::brute_force: return "BruteForce";
      case Method::z_exact: return "ZExact";
      case Method::inflation: return "Inflation(" + std::to_string(radius) + ")";
    }
    return "";
  }

  LanguageTable window_language(Subshift const& x, std::vector<GroupElement> window,
                                LanguageOptions const& options) {
    auto const& gp = x.group_ptr();
    if (window.empty()) {
      throw PreconditionError("window_language: the window is empty");
    }
    for (auto const& g : window) {
      gp->check(g);
    }
    auto sorted = window;
    std::sort(sorted.begin(), sorted.end(),
              [&](GroupElement const& a, GroupElement const& b) { return gp->less(a, b); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw PreconditionError("window_language: the window repeats a cell");
    }
    window = std::move(sorted);

    bool        enumerable = !x.alphabet().is_finite();
    auto        budget     = enumerable ? options.symbol_budget : std::nullopt;
    std::size_t base       = x.alphabet().truncated_size(budget);
    auto        cands      = candidates(gp, window, base);
    std::string suffix     = enumerable ? " (first " + std::to_string(base) + " symbols)" : "";

    std::vector<LanguageEntry> entries;
    entries.reserve(cands.size());
    switch (options.method) {
      case Method::brute_force: {
        if (!gp->is_finite()) {
          throw StructuralError("window_language: brute force needs a finite group");
        }
        if (enumerable) {
          throw PreconditionError("window_language: brute force needs a finite alphabet");
        }
        auto result = brute_force_subshift(x, options.node_budget);
        std::map<std::vector<Symbol>, std::size_t> first;
        std::vector<std::size_t>                   pos;
        for (auto const& g : window) {
          pos.push_back(gp->position(g));
        }
        for (std::size_t t = 0; t < result.tables.size(); ++t) {
          std::vector<Symbol> key;
          for (auto i : pos) {
            key.push_back(result.tables[t][i]);
          }
          first.emplace(std::move(key), t);
        }
        for (auto& p : cands) {
          std::vector<Symbol> key;
          for (auto const& g : window) {
            key.push_back(*p.at(g));
          }
          auto it = first.find(key);
          if (it != first.end()) {
            entries.push_back({p, Verdict::allowed(result.configurations[it->second],
                                                   "found by exhaustive search over G")});
          } else {
            auto local = locally_admissible(p, x, true);
            entries.push_back(
                {p, Verdict::forbidden(local.admissible ? std::nullopt
                                                        : std::optional(local.violations.front()),
                                       "no configuration of X restricts to it")});
          }
          entries.back().verdict.witness_pattern = p;
        }
        break;
      }
      case Method::z_exact: {
        if (!is_z_nz(x)) {
          throw StructuralError("window_language: z-exact needs the group Z with H = nZ, n >= 1");
        }
        ZExactOracle oracle(x, budget);
        for (auto& p : cands) {
          entries.push_back({p, oracle.decide(p)});
        }
        break;
      }
      case Method::inflation: {
        for (auto& p : cands) {
          entries.push_back({p, inflation_verdict(x, p, window, options)});
        }
        break;
      }
    }
    if (enumerable) {
      for (auto& e : entries) {
        e.verdict.certificate += suffix;
      }
    }
    return LanguageTable(std::move(window), std::move(entries),
                         to_string(options.method, options.radius));
  }

  PatternSet extract_language(GroupPtr g, std::vector<std::vector<Symbol>> const& tables) {
    PatternSet out;
    for (auto const& t : tables) {
      each_restriction(g, t, [&](std::size_t, Pattern p) { out.insert(std::move(p)); });
    }
    return out;
  }

  PropertyReport check_L1(PatternSet const& set) {
    PropertyReport r;
    r.scope = "single-cell removals from " + std::to_string(set.size()) + " patterns";
    auto all = set.sorted();
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      auto dom = it->domain();
      for (auto c = dom.rbegin(); c != dom.rend(); ++c) {
        auto q = it->without(*c);
        if (!set.contains(q)) {
          r.holds          = false;
          r.counterexample = *it;
          r.missing        = q;
          r.element        = *c;
          return r;
        }
      }
    }
    return r;
  }

  PropertyReport check_L2(PatternSet const& set, std::span<GroupElement const> cells) {
    PropertyReport r;
    r.scope = "g ranges over " + describe_cells(cells);
    std::set<Symbol> symbols;
    auto             all = set.sorted();
    for (auto const& p : all) {
      for (auto const& c : p.cells()) {
        symbols.insert(c.a);
      }
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      for (auto const& g : cells) {
        if (it->defines(g)) {
          continue;
        }
        bool found = std::any_of(symbols.begin(), symbols.end(),
                                 [&](Symbol a) { return set.contains(it->with(g, a)); });
        if (!found) {
          r.holds          = false;
          r.counterexample = *it;
          r.element        = g;
          return r;
        }
      }
    }
    return r;
  }

  PropertyReport check_L3(PatternSet const& set, Subgroup const& h, std::size_t budget) {
    PropertyReport         r;
    auto                   all = set.sorted();
    std::set<GroupElement> universe;
    for (auto const& p : all) {
      for (auto const& c : p.cells()) {
        universe.insert(c.g);
      }
    }
    auto        ball    = h.ball(budget).elements;
    std::size_t skipped = 0;
    for (auto const& t : ball) {
      for (auto const& p : all) {
        auto q      = shift_pattern(t, p);
        bool inside = std::all_of(q.cells().begin(), q.cells().end(),
                                  [&](Cell const& c) { return universe.count(c.g) != 0; });
        if (!inside) {
          ++skipped;
          continue;
        }
        if (!set.contains(q)) {
          r.holds          = false;
          r.counterexample = p;
          r.element        = t;
          r.missing        = q;
          return r;
        }
      }
    }
    r.scope = "first " + std::to_string(ball.size()) + " elements of H; " + std::to_string(skipped)
              + " translates leaving the " + std::to_string(universe.size())
              + " cells of the set were not tested";
    return r;
  }

  PropertyReport check_L4(std::vector<std::vector<Pattern>> const&        chains,
                          std::function<bool(ExtendedPattern const&)> const& predicate) {
    PropertyReport r;
    r.scope = std::to_string(chains.size()) + " chains";
    for (std::size_t i = 0; i < chains.size(); ++i) {
      auto u = chain_union(chains[i]);
      if (!predicate(u.result)) {
        r.holds          = false;
        r.counterexample = u.result.pattern;
        r.chain          = i;
        return r;
      }
    }
    return r;
  }

  LanguageComparison language_equal(Subshift const& x, Subshift const& y,
                                    std::vector<std::vector<GroupElement>> const& windows,
                                    LanguageOptions const& options) {
    if (!same_group(x.group(), y.group())) {
      throw StructuralError("language_equal: subshifts over different groups");
    }
    auto const&        gp = x.group_ptr();
    LanguageComparison out;
    if (windows.empty()) {
      if (!gp->is_finite()) {
        throw PreconditionError("language_equal: an infinite group needs explicit windows");
      }
      auto a = brute_force_subshift(x, options.node_budget).tables;
      auto b = brute_force_subshift(y, options.node_budget).tables;
      out.sets_equal = a == b;
      // Compare restriction sets domain by domain; the first difference in
      // canonical order distinguishes.
      auto n = gp->elements().size();
      std::vector<std::set<std::vector<Symbol>>> ra(std::size_t{1} << n), rb(std::size_t{1} << n);
      auto collect = [&](std::vector<std::vector<Symbol>> const& tables,
                         std::vector<std::set<std::vector<Symbol>>>& into) {
        for (auto const& t : tables) {
          each_restriction(gp, t, [&](std::size_t mask, Pattern p) { into[mask].insert(p.values()); });
        }
      };
      collect(a, ra);
      collect(b, rb);
      std::vector<Pattern> diff;
      for (std::size_t mask = 0; mask < ra.size(); ++mask) {
        if (ra[mask] == rb[mask]) {
          continue;
        }
        std::vector<GroupElement> dom;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask >> i & 1) {
            dom.push_back(gp->elements()[i]);
          }
        }
        std::vector<std::vector<Symbol>> sym;
        std::set_symmetric_difference(ra[mask].begin(), ra[mask].end(), rb[mask].begin(),
                                      rb[mask].end(), std::back_inserter(sym));
        for (auto const& v : sym) {
          std::vector<Cell> cells;
          for (std::size_t i = 0; i < dom.size(); ++i) {
            cells.push_back({dom[i], v[i]});
          }
          diff.emplace_back(gp, std::move(cells));
        }
      }
      out.equal = diff.empty();
      if (!diff.empty()) {
        out.distinguishing = *std::min_element(diff.begin(), diff.end(), PatternLess{});
      }
      return out;
    }
    if (options.method == Method::inflation) {
      throw PreconditionError("language_equal: window comparison needs an exact method");
    }
    out.equal = true;
    for (auto const& w : windows) {
      auto ta = window_language(x, w, options);
      auto tb = window_language(y, w, options);
      for (std::size_t i = 0; i < ta.entries().size(); ++i) {
        auto const& ea = ta.entries()[i];
        auto const& eb = tb.entries()[i];
        if (ea.verdict.is_unknown() || eb.verdict.is_unknown()) {
          throw RefusalError("language_equal: an Unknown verdict on " + ea.pattern.to_string(), 0);
        }
        if (ea.verdict.state != eb.verdict.state) {
          out.equal          = false;
          out.distinguishing = ea.pattern;
          return out;
        }
      }
    }
    return out;
  }

  char const* to_string(Compactness c) noexcept {
    switch (c) {
      case Compactness::compact: return "Compact";
      case Compactness::not_certified: return "NotCertified";
      case Compactness::non_compact_evidence: return "NonCompactEvidence";
    }
    return "NotCertified";
  }

  CompactnessReport compactness_check(Subshift const& x, std::size_t symbol_budget,
                                      std::size_t cells, LanguageOptions options) {
    auto const& gp = x.group_ptr();
    if (gp->is_finite() && x.alphabet().is_finite()) {
      options.method = Method::brute_force;
    } else if (is_z_nz(x)) {
      options.method = Method::z_exact;
    } else {
      options.method = Method::inflation;
    }
    options.symbol_budget = symbol_budget;
    CompactnessReport out;
    out.method   = to_string(options.method, options.radius);
    bool finite  = x.alphabet().is_finite();
    bool evident = false, all_certified = true;
    for (auto const& g : gp->enumerate(cells).elements) {
      auto              t = window_language(x, {g}, options);
      SingletonLanguage s;
      s.cell = g;
      for (auto const& e : t.entries()) {
        auto a = e.pattern.cells()[0].a;
        (e.verdict.is_allowed() ? s.allowed : e.verdict.is_forbidden() ? s.forbidden : s.unknown)
            .push_back(a);
      }
      s.certified_finite = finite;
      evident            = evident || (!finite && s.allowed.size() == t.entries().size());
      all_certified      = all_certified && s.certified_finite;
      out.cells.push_back(std::move(s));
    }
    out.summary = all_certified ? Compactness::compact
                  : evident     ? Compactness::non_compact_evidence
                                : Compactness::not_certified;
    return out;
  }

}  // namespace hshift
