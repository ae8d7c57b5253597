#include "support/oracles.hpp"

#include <algorithm>
#include <functional>

namespace hshift::testing {

  ZRule z_rule(Subshift const& x, std::size_t symbols) {
    ZRule r;
    r.period  = *x.invariance().z_period();
    r.symbols = symbols;
    for (auto const& p : x.forbidden().patterns()) {
      ZRule::Forbidden f;
      for (auto const& c : p.cells()) {
        f.offsets.push_back(c.g[0]);
        f.values.push_back(c.a);
      }
      if (!f.offsets.empty()) {
        auto [lo, hi] = std::minmax_element(f.offsets.begin(), f.offsets.end());
        r.span        = std::max(r.span, *hi - *lo + 1);
      }
      r.forbidden.push_back(std::move(f));
    }
    return r;
  }

  namespace {
    std::int64_t mod(std::int64_t a, std::int64_t n) {
      return ((a % n) + n) % n;
    }

    // Does any forbidden translate lie inside [start, start + w.size())
    // and touch position `must` (or anywhere when must is out of range)?
    bool clean(ZRule const& r, std::int64_t start, std::vector<Symbol> const& w,
               std::int64_t must) {
      auto end = start + static_cast<std::int64_t>(w.size());
      for (auto const& f : r.forbidden) {
        if (f.offsets.empty()) {
          return false;
        }
        auto [lo, hi] = std::minmax_element(f.offsets.begin(), f.offsets.end());
        for (auto h = start - *lo; h + *hi < end; ++h) {
          if (mod(h, r.period) != 0 || h + *lo < start) {
            continue;
          }
          if (must >= start && must < end && (must < h + *lo || must > h + *hi)) {
            continue;
          }
          bool hit = true;
          for (std::size_t i = 0; i < f.offsets.size() && hit; ++i) {
            hit = w[static_cast<std::size_t>(h + f.offsets[i] - start)] == f.values[i];
          }
          if (hit) {
            return false;
          }
        }
      }
      return true;
    }

    std::int64_t pump_length(ZRule const& r) {
      std::int64_t states = r.period;
      for (std::int64_t i = 0; i + 1 < r.span; ++i) {
        states *= static_cast<std::int64_t>(r.symbols);
      }
      return states + r.span - 1;
    }

    // Extend w by `left` cells on the left or `right` on the right, one
    // cell at a time, keeping everything clean.
    bool extend(ZRule const& r, std::int64_t start, std::vector<Symbol>& w, std::int64_t todo,
                bool to_right) {
      if (todo == 0) {
        return true;
      }
      for (Symbol a = 0; a < r.symbols; ++a) {
        std::vector<Symbol> next;
        std::int64_t        s = start;
        if (to_right) {
          next = w;
          next.push_back(a);
        } else {
          next.push_back(a);
          next.insert(next.end(), w.begin(), w.end());
          --s;
        }
        auto fresh = to_right ? s + static_cast<std::int64_t>(next.size()) - 1 : s;
        if (clean(r, s, next, fresh) && extend(r, s, next, todo - 1, to_right)) {
          return true;
        }
      }
      return false;
    }
  }  // namespace

  bool z_word_allowed(ZRule const& r, std::int64_t start, std::vector<Symbol> const& word) {
    if (!clean(r, start, word, start - 1)) {
      return false;
    }
    auto need = r.span - 1;
    if (static_cast<std::int64_t>(word.size()) < need) {
      // Pad on the right until left and right extensions cannot interact.
      for (Symbol a = 0; a < r.symbols; ++a) {
        auto w = word;
        w.push_back(a);
        if (z_word_allowed(r, start, w)) {
          return true;
        }
      }
      return false;
    }
    auto n = pump_length(r);
    // Keep only the boundary blocks: the extensions see nothing else.
    auto       keep  = std::max<std::int64_t>(need, 0);
    auto       len   = static_cast<std::int64_t>(word.size());
    std::vector<Symbol> left(word.begin(), word.begin() + keep);
    std::vector<Symbol> right(word.end() - keep, word.end());
    return extend(r, start, left, n, false) && extend(r, start + len - keep, right, n, true);
  }

  std::vector<std::vector<Symbol>> all_words(std::size_t k, std::size_t length) {
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol>              w(length, 0);
    while (true) {
      out.push_back(w);
      std::size_t i = length;
      while (i > 0 && w[i - 1] + 1 == k) {
        w[--i] = 0;
      }
      if (i == 0) {
        return out;
      }
      ++w[i - 1];
    }
  }

  std::size_t z_count_allowed(ZRule const& r, std::int64_t start, std::size_t length) {
    std::size_t n = 0;
    for (auto const& w : all_words(r.symbols, length)) {
      n += z_word_allowed(r, start, w) ? 1 : 0;
    }
    return n;
  }

  bool naive_member(Subshift const& x, std::vector<Symbol> const& table) {
    auto const& G = x.group();
    for (auto const& h : G.elements()) {
      if (!x.invariance().contains(h)) {
        continue;
      }
      for (auto const& q : x.forbidden().patterns()) {
        bool all_match = true;
        for (auto const& c : q.cells()) {
          if (table[G.position(G.mul(h, c.g))] != c.a) {
            all_match = false;
            break;
          }
        }
        if (all_match) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<std::vector<Symbol>> naive_subshift(Subshift const& x) {
    std::vector<std::vector<Symbol>> out;
    for (auto const& t : all_words(*x.alphabet().size(), *x.group().order())) {
      if (naive_member(x, t)) {
        out.push_back(t);
      }
    }
    return out;
  }

  PatternSet naive_language(GroupPtr g, std::vector<std::vector<Symbol>> const& tables) {
    PatternSet  out;
    auto const& el = g->elements();
    auto        n  = el.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      for (auto const& t : tables) {
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask >> i & 1) {
            cells.push_back({el[i], t[i]});
          }
        }
        out.insert(Pattern(g, std::move(cells)));
      }
    }
    return out;
  }

  bool naive_admissible(Pattern const& p, Subshift const& x) {
    auto const& G = x.group();
    for (auto const& f : x.forbidden().patterns()) {
      if (f.empty()) {
        return false;
      }
      auto anchor = f.cells()[0];
      for (auto const& c : p.cells()) {
        auto h = G.mul(c.g, G.inv(anchor.g));
        if (!x.invariance().contains(h)) {
          continue;
        }
        bool hit = true;
        for (auto const& d : f.cells()) {
          auto v = p.at(G.mul(h, d.g));
          if (!v || *v != d.a) {
            hit = false;
            break;
          }
        }
        if (hit) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<Pattern> lex_first_extension(Subshift const& x, Pattern const& p,
                                             std::vector<GroupElement> const& target,
                                             std::size_t symbols) {
    auto const&               G = x.group();
    std::vector<GroupElement> free;
    for (auto const& g : target) {
      if (!p.defines(g) && std::find(free.begin(), free.end(), g) == free.end()) {
        free.push_back(g);
      }
    }
    std::sort(free.begin(), free.end(),
              [&](GroupElement const& a, GroupElement const& b) { return G.less(a, b); });
    for (auto const& w : all_words(symbols, free.size())) {
      auto q = p;
      for (std::size_t i = 0; i < free.size(); ++i) {
        q = q.with(free[i], w[i]);
      }
      if (naive_admissible(q, x)) {
        return q;
      }
    }
    return std::nullopt;
  }

}  // namespace hshift::testing
