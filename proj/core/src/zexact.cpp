#include "hshift/zexact.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "hshift/error.hpp"

namespace hshift {

  namespace {

    constexpr std::size_t max_super_symbols  = 1u << 16;
    constexpr std::size_t max_super_patterns = 1'000'000;
    constexpr std::size_t max_vertices       = 1u << 21;

    std::size_t saturating_pow(std::size_t base, std::size_t exp) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
          return std::numeric_limits<std::size_t>::max();
        }
        r *= base;
      }
      return r;
    }

    std::int64_t floor_div(std::int64_t a, std::int64_t b) {
      auto q = a / b;
      return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
    }

    std::int64_t mod(std::int64_t a, std::int64_t b) {
      auto r = a % b;
      return r < 0 ? r + b : r;
    }

    void require_z(Group const& g, char const* what) {
      if (g.kind() != GroupKind::z_lattice || g.rank() != 1) {
        throw StructuralError(std::string(what) + " requires the group Z");
      }
    }

    GroupElement at(std::int64_t i) {
      return GroupElement{i};
    }

    // Outside [lo, hi] the configuration repeats with period `left` to the
    // left and `right` to the right.
    struct Tails {
      std::int64_t lo, hi, left, right;
    };

    std::optional<Tails> tails_of(Configuration const& x) {
      switch (x.kind()) {
        case Configuration::Kind::finite_support: {
          std::int64_t lo = 0, hi = 0;
          for (auto const& c : x.exceptions().cells()) {
            lo = std::min(lo, c.g[0]);
            hi = std::max(hi, c.g[0]);
          }
          return Tails{lo, hi, 1, 1};
        }
        case Configuration::Kind::step: {
          std::int64_t lo = x.cut(), hi = x.cut();
          for (auto const& c : x.exceptions().cells()) {
            lo = std::min(lo, c.g[0]);
            hi = std::max(hi, c.g[0]);
          }
          return Tails{lo, hi, static_cast<std::int64_t>(x.left().size()),
                       static_cast<std::int64_t>(x.right().size())};
        }
        case Configuration::Kind::h_periodic: {
          auto k = x.period().z_period();
          if (!k || *k == 0) {
            return std::nullopt;
          }
          return Tails{0, 0, *k, *k};
        }
        case Configuration::Kind::procedural: return std::nullopt;
      }
      return std::nullopt;
    }

    Configuration assemble(GroupPtr z, Tails const& t,
                           std::function<Symbol(std::int64_t)> const& value) {
      std::vector<Symbol> left(static_cast<std::size_t>(t.left));
      std::vector<Symbol> right(static_cast<std::size_t>(t.right));
      for (std::int64_t i = 0; i < t.left; ++i) {
        left[static_cast<std::size_t>(i)] = value(t.lo - t.left + i);
      }
      for (std::int64_t j = 0; j < t.right; ++j) {
        auto c = t.hi + 1 + j;
        right[static_cast<std::size_t>(mod(c - t.lo, t.right))] = value(c);
      }
      std::vector<Cell> cells;
      for (auto c = t.lo; c <= t.hi; ++c) {
        cells.push_back({at(c), value(c)});
      }
      return Configuration::step(t.lo, std::move(left), std::move(right),
                                 Pattern(std::move(z), std::move(cells)));
    }

    // A forbidden word pattern relative to its least cell.
    struct Matcher {
      std::vector<std::size_t> offsets;
      std::vector<Symbol>      values;
      std::size_t              span = 0;
    };

    std::vector<Matcher> matchers(ForbiddenSet const& f) {
      std::vector<Matcher> out;
      for (auto const& p : f.patterns()) {
        Matcher m;
        if (p.empty()) {
          out.push_back(m);
          continue;
        }
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        for (auto const& c : p.cells()) {
          lo = std::min(lo, c.g[0]);
        }
        for (auto const& c : p.cells()) {
          auto o = static_cast<std::size_t>(c.g[0] - lo);
          m.offsets.push_back(o);
          m.values.push_back(c.a);
          m.span = std::max(m.span, o + 1);
        }
        out.push_back(std::move(m));
      }
      return out;
    }

    // Does some matcher occur in w with its last offset at the end of w?
    bool ends_forbidden(std::vector<Symbol> const& w, std::vector<Matcher> const& ms) {
      for (auto const& m : ms) {
        if (m.offsets.empty()) {
          return true;
        }
        if (m.span > w.size()) {
          continue;
        }
        auto start = w.size() - m.span;
        bool hit   = true;
        for (std::size_t i = 0; i < m.offsets.size() && hit; ++i) {
          hit = w[start + m.offsets[i]] == m.values[i];
        }
        if (hit) {
          return true;
        }
      }
      return false;
    }

    Symbol pack(std::span<Symbol const> digits, std::size_t base) {
      std::size_t s = 0;
      for (auto a : digits) {
        s = s * base + a;
      }
      return static_cast<Symbol>(s);
    }

    std::vector<Symbol> unpack(Symbol s, std::int64_t n, std::size_t base) {
      std::vector<Symbol> out(static_cast<std::size_t>(n));
      std::size_t         v = s;
      for (auto i = out.size(); i-- > 0;) {
        out[i] = static_cast<Symbol>(v % base);
        v /= base;
      }
      return out;
    }

  }  // namespace

  // ZRecoding

  Symbol ZRecoding::encode_block(std::span<Symbol const> block) const {
    if (block.size() != static_cast<std::size_t>(_n)) {
      throw PreconditionError("block of length " + std::to_string(block.size())
                              + ", expected " + std::to_string(_n));
    }
    for (auto a : block) {
      if (a >= _base) {
        throw PreconditionError("symbol " + std::to_string(a)
                                + " outside the recoded alphabet");
      }
    }
    return pack(block, _base);
  }

  std::vector<Symbol> ZRecoding::decode_block(Symbol s) const {
    return unpack(s, _n, _base);
  }

  std::int64_t ZRecoding::super_cell(std::int64_t i) const noexcept {
    return floor_div(i - _offset, _n);
  }

  std::vector<Symbol> ZRecoding::consistent(Pattern const& p, std::int64_t k) const {
    std::vector<std::optional<Symbol>> fixed(static_cast<std::size_t>(_n));
    for (std::int64_t j = 0; j < _n; ++j) {
      auto a = p.at(at(first_cell(k) + j));
      if (a && *a >= _base) {
        return {};
      }
      fixed[static_cast<std::size_t>(j)] = a;
    }
    std::vector<Symbol> out;
    std::vector<Symbol> digits(fixed.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t j) {
      if (j == digits.size()) {
        out.push_back(encode_block(digits));
        return;
      }
      if (fixed[j]) {
        digits[j] = *fixed[j];
        go(j + 1);
        return;
      }
      for (Symbol a = 0; a < _base; ++a) {
        digits[j] = a;
        go(j + 1);
      }
    };
    go(0);
    return out;
  }

  Configuration ZRecoding::encode(Configuration const& x) const {
    require_z(x.group(), "encode");
    auto block_at = [n = _n, off = _offset, base = _base, x](std::int64_t k) {
      std::vector<Symbol> b;
      for (std::int64_t j = 0; j < n; ++j) {
        b.push_back(x.evaluate(at(off + n * k + j)));
      }
      return pack(b, base);
    };
    auto t = tails_of(x);
    if (!t) {
      return Configuration::procedural(_z, [block_at](GroupElement const& g) {
        return block_at(g[0]);
      });
    }
    Tails s{super_cell(t->lo), super_cell(t->hi), std::lcm(t->left, _n) / _n,
            std::lcm(t->right, _n) / _n};
    return assemble(_z, s, block_at);
  }

  Configuration ZRecoding::decode(Configuration const& y) const {
    require_z(y.group(), "decode");
    auto value = [n = _n, off = _offset, base = _base, y](std::int64_t c) {
      auto k = floor_div(c - off, n);
      return unpack(y.evaluate(at(k)), n, base)[static_cast<std::size_t>(c - off - n * k)];
    };
    auto t = tails_of(y);
    if (!t) {
      return Configuration::procedural(_z, [value](GroupElement const& g) {
        return value(g[0]);
      });
    }
    Tails o{first_cell(t->lo), first_cell(t->hi) + _n - 1, t->left * _n, t->right * _n};
    return assemble(_z, o, value);
  }

  ZRecoding recode_to_z(Subshift const& x, std::optional<std::size_t> symbol_budget) {
    require_z(x.group(), "recode_to_z");
    auto n = x.invariance().z_period();
    if (!n || *n < 1) {
      throw StructuralError("recode_to_z: the invariance subgroup must be nZ with n >= 1");
    }
    ZRecoding r;
    r._n    = *n;
    r._base = x.alphabet().truncated_size(symbol_budget);
    r._z    = x.group_ptr();

    auto const& fs       = x.forbidden().patterns();
    bool        any_cell = false;
    for (auto const& p : fs) {
      for (auto const& c : p.cells()) {
        r._offset = any_cell ? std::min(r._offset, c.g[0]) : c.g[0];
        any_cell  = true;
      }
    }

    auto alphabet_size = saturating_pow(r._base, static_cast<std::size_t>(r._n));
    if (alphabet_size > max_super_symbols) {
      throw RefusalError("recode_to_z: " + std::to_string(alphabet_size)
                             + " super symbols exceed the limit",
                         alphabet_size);
    }

    bool short_names = true;
    for (Symbol a = 0; a < r._base; ++a) {
      short_names = short_names && x.alphabet().name(a).size() == 1;
    }
    std::vector<std::string> names;
    for (std::size_t s = 0; s < alphabet_size; ++s) {
      std::string name;
      for (auto a : r.decode_block(static_cast<Symbol>(s))) {
        if (!short_names && !name.empty()) {
          name += ".";
        }
        name += x.alphabet().name(a);
      }
      names.push_back(std::move(name));
    }

    std::size_t total = 0;
    for (auto const& p : fs) {
      bool outside = false;
      for (auto const& c : p.cells()) {
        outside = outside || c.a >= r._base;
      }
      if (outside || p.empty()) {
        continue;
      }
      std::int64_t lo = std::numeric_limits<std::int64_t>::max();
      std::int64_t hi = std::numeric_limits<std::int64_t>::min();
      for (auto const& c : p.cells()) {
        lo = std::min(lo, c.g[0]);
        hi = std::max(hi, c.g[0]);
      }
      auto len  = static_cast<std::size_t>(r.super_cell(hi) - r.super_cell(lo) + 1);
      auto free = static_cast<std::size_t>(r._n) * len - p.size();
      auto add  = saturating_pow(r._base, free);
      total     = add > max_super_patterns ? add : total + add;
      if (total > max_super_patterns) {
        throw RefusalError("recode_to_z: the recoded forbidden set would exceed "
                               + std::to_string(max_super_patterns) + " patterns",
                           total);
      }
    }

    std::vector<Pattern> recoded;
    for (auto const& p : fs) {
      bool outside = false;
      for (auto const& c : p.cells()) {
        outside = outside || c.a >= r._base;
      }
      if (outside) {
        continue;
      }
      if (p.empty()) {
        recoded.emplace_back(r._z);
        continue;
      }
      std::int64_t lo = std::numeric_limits<std::int64_t>::max();
      std::int64_t hi = std::numeric_limits<std::int64_t>::min();
      for (auto const& c : p.cells()) {
        lo = std::min(lo, c.g[0]);
        hi = std::max(hi, c.g[0]);
      }
      auto                             klo = r.super_cell(lo), khi = r.super_cell(hi);
      std::vector<std::vector<Symbol>> choices;
      for (auto k = klo; k <= khi; ++k) {
        choices.push_back(r.consistent(p, k));
      }
      std::vector<Cell>                cells(choices.size());
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == choices.size()) {
          recoded.emplace_back(r._z, cells);
          return;
        }
        for (auto s : choices[i]) {
          cells[i] = {at(klo + static_cast<std::int64_t>(i)), s};
          go(i + 1);
        }
      };
      go(0);
    }
    r._recoded.emplace(Alphabet::explicit_symbols(std::move(names)),
                       Subgroup::whole(r._z), std::move(recoded));
    return r;
  }

  // DeBruijnGraph

  DeBruijnGraph::DeBruijnGraph(Subshift const& z_sft, std::size_t symbols)
      : _symbols(symbols) {
    require_z(z_sft.group(), "DeBruijnGraph");
    if (!z_sft.invariance().is_whole()) {
      throw StructuralError("DeBruijnGraph requires a fully shift-invariant SFT");
    }
    auto        ms   = matchers(z_sft.forbidden());
    std::size_t span = 0;
    for (auto const& m : ms) {
      span = std::max(span, m.span);
    }
    _block = std::max<std::size_t>(span, 2) - 1;

    auto estimate = saturating_pow(symbols, _block);
    if (estimate > max_vertices * 8) {
      throw RefusalError("DeBruijnGraph: " + std::to_string(estimate)
                             + " candidate blocks exceed the limit",
                         estimate);
    }

    std::vector<Symbol>              w;
    std::function<void()> grow = [&]() {
      if (ends_forbidden(w, ms)) {
        return;
      }
      if (w.size() == _block) {
        if (_vertices.size() == max_vertices) {
          throw RefusalError("DeBruijnGraph: more than " + std::to_string(max_vertices)
                                 + " admissible blocks",
                             estimate);
        }
        _index.emplace(w, _vertices.size());
        _vertices.push_back(w);
        return;
      }
      for (Symbol a = 0; a < symbols; ++a) {
        w.push_back(a);
        grow();
        w.pop_back();
      }
    };
    grow();

    auto n = _vertices.size();
    _out.assign(n, {});
    _in.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
      auto e = _vertices[v];
      e.push_back(0);
      for (Symbol a = 0; a < symbols; ++a) {
        e.back() = a;
        if (ends_forbidden(e, ms)) {
          continue;
        }
        std::vector<Symbol> suffix(e.begin() + 1, e.end());
        auto                it = _index.find(suffix);
        if (it != _index.end()) {
          _out[v].push_back(it->second);
          _in[it->second].push_back(v);
        }
      }
    }

    // Tarjan's strongly connected components, iteratively.
    std::vector<std::size_t> comp(n, SIZE_MAX), low(n), num(n, SIZE_MAX), comp_size;
    std::vector<std::size_t> stack;
    std::vector<bool>        on_stack(n, false);
    std::size_t              counter = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (num[root] != SIZE_MAX) {
        continue;
      }
      std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
      num[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        auto& [v, i] = call.back();
        if (i < _out[v].size()) {
          auto u = _out[v][i++];
          if (num[u] == SIZE_MAX) {
            num[u] = low[u] = counter++;
            stack.push_back(u);
            on_stack[u] = true;
            call.push_back({u, 0});
          } else if (on_stack[u]) {
            low[v] = std::min(low[v], num[u]);
          }
          continue;
        }
        if (low[v] == num[v]) {
          std::size_t id = comp_size.size(), size = 0;
          std::size_t u;
          do {
            u = stack.back();
            stack.pop_back();
            on_stack[u] = false;
            comp[u]     = id;
            ++size;
          } while (u != v);
          comp_size.push_back(size);
        }
        auto done = v;
        call.pop_back();
        if (!call.empty()) {
          low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
      }
    }

    _cyclic.assign(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      _cyclic[v] = comp_size[comp[v]] > 1
                   || std::find(_out[v].begin(), _out[v].end(), v) != _out[v].end();
    }
    auto sweep = [&](std::vector<std::vector<std::size_t>> const& adj) {
      std::vector<bool>       seen(_cyclic);
      std::deque<std::size_t> q;
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v]) {
          q.push_back(v);
        }
      }
      while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto u : adj[v]) {
          if (!seen[u]) {
            seen[u] = true;
            q.push_back(u);
          }
        }
      }
      return seen;
    };
    auto from_cycle = sweep(_out);
    auto to_cycle   = sweep(_in);
    _recurrent.assign(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      _recurrent[v] = from_cycle[v] && to_cycle[v];
    }
  }

  std::optional<std::size_t> DeBruijnGraph::find(std::vector<Symbol> const& word) const {
    auto it = _index.find(word);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t DeBruijnGraph::recurrent_count() const noexcept {
    return static_cast<std::size_t>(std::count(_recurrent.begin(), _recurrent.end(), true));
  }

  namespace {
    // Shortest path along adj from `from` to a vertex satisfying `goal`,
    // restricted to vertices satisfying `keep`; empty if none.
    std::vector<std::size_t> bfs_path(std::vector<std::vector<std::size_t>> const& adj,
                                      std::size_t from,
                                      std::function<bool(std::size_t)> const& goal,
                                      std::function<bool(std::size_t)> const& keep,
                                      bool allow_trivial) {
      std::map<std::size_t, std::size_t> parent;
      std::deque<std::size_t>           q;
      if (allow_trivial && goal(from)) {
        return {from};
      }
      parent[from] = from;
      q.push_back(from);
      while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto u : adj[v]) {
          if (!keep(u)) {
            continue;
          }
          if (goal(u)) {
            std::vector<std::size_t> path{u};
            for (auto w = v;; w = parent[w]) {
              path.push_back(w);
              if (w == from) {
                break;
              }
            }
            std::reverse(path.begin(), path.end());
            return path;
          }
          if (!parent.count(u)) {
            parent[u] = v;
            q.push_back(u);
          }
        }
      }
      return {};
    }
  }  // namespace

  DeBruijnGraph::Lasso DeBruijnGraph::forward_lasso(std::size_t v) const {
    if (!_recurrent.at(v)) {
      throw PreconditionError("forward_lasso: vertex is not recurrent");
    }
    auto  all = [](std::size_t) { return true; };
    Lasso l;
    l.path = bfs_path(
        _out, v, [this](std::size_t u) { return _cyclic[u]; }, all, true);
    auto c    = l.path.back();
    auto loop = bfs_path(
        _out, c, [c](std::size_t u) { return u == c; }, all, false);
    l.cycle.assign(loop.begin(), loop.end() - 1);
    return l;
  }

  DeBruijnGraph::Lasso DeBruijnGraph::backward_lasso(std::size_t v) const {
    if (!_recurrent.at(v)) {
      throw PreconditionError("backward_lasso: vertex is not recurrent");
    }
    auto  all = [](std::size_t) { return true; };
    Lasso l;
    l.path = bfs_path(
        _in, v, [this](std::size_t u) { return _cyclic[u]; }, all, true);
    std::reverse(l.path.begin(), l.path.end());
    auto c    = l.path.front();
    auto loop = bfs_path(
        _out, c, [c](std::size_t u) { return u == c; }, all, false);
    l.cycle.assign(loop.begin(), loop.end() - 1);
    return l;
  }

  // ZExactOracle

  ZExactOracle::ZExactOracle(Subshift const& x, std::optional<std::size_t> symbol_budget)
      : _x(x),
        _budget(symbol_budget),
        _recoding(recode_to_z(x, symbol_budget)),
        _graph(_recoding.recoded(), *_recoding.recoded().alphabet().size()) {}

  Verdict ZExactOracle::decide(Pattern const& p) const {
    if (!same_group(p.group(), _x.group())) {
      throw StructuralError("pattern " + p.to_string() + " is over a different group");
    }
    for (auto const& c : p.cells()) {
      if (!_x.alphabet().valid(c.a)) {
        throw StructuralError("pattern symbol " + std::to_string(c.a) + " is not in the alphabet");
      }
    }
    auto local = locally_admissible(p, _x, true);
    if (!local.admissible) {
      return Verdict::forbidden(local.violations.front(), "local violation");
    }
    bool truncated = !_x.alphabet().is_finite() || _recoding.base() < *_x.alphabet().size();
    auto gone      = [&](std::string const& why) {
      if (truncated) {
        return Verdict::unknown(_recoding.base(),
                                why + " within the first " + std::to_string(_recoding.base())
                                    + " symbols");
      }
      return Verdict::forbidden(std::nullopt, why);
    };
    for (auto const& c : p.cells()) {
      if (c.a >= _recoding.base()) {
        return Verdict::unknown(_recoding.base(), "symbol outside the symbol budget");
      }
    }

    std::int64_t klo = 0, khi = 0;
    if (!p.empty()) {
      klo = std::numeric_limits<std::int64_t>::max();
      khi = std::numeric_limits<std::int64_t>::min();
      for (auto const& c : p.cells()) {
        klo = std::min(klo, _recoding.super_cell(c.g[0]));
        khi = std::max(khi, _recoding.super_cell(c.g[0]));
      }
    }
    auto b   = static_cast<std::int64_t>(_graph.block());
    khi      = std::max(khi, klo + b - 1);
    auto len = static_cast<std::size_t>(khi - klo + 1);

    std::vector<std::vector<bool>> allowed(len);
    for (std::size_t i = 0; i < len; ++i) {
      allowed[i].assign(*_recoding.recoded().alphabet().size(), false);
      for (auto s : _recoding.consistent(p, klo + static_cast<std::int64_t>(i))) {
        allowed[i][s] = true;
      }
    }

    // layer[j] maps each admissible vertex ending at super cell klo + b - 1 + j
    // to its predecessor in layer j - 1.
    std::vector<std::unordered_map<std::size_t, std::size_t>> layer(len - b + 1);
    for (std::size_t v = 0; v < _graph.size(); ++v) {
      if (!_graph.recurrent(v)) {
        continue;
      }
      auto const& w  = _graph.vertex(v);
      bool        ok = true;
      for (std::size_t i = 0; i < w.size() && ok; ++i) {
        ok = allowed[i][w[i]];
      }
      if (ok) {
        layer[0].emplace(v, v);
      }
    }
    for (std::size_t j = 1; j < layer.size(); ++j) {
      auto pos = static_cast<std::size_t>(b) - 1 + j;
      for (auto const& [v, _] : layer[j - 1]) {
        for (auto u : _graph.successors(v)) {
          if (_graph.recurrent(u) && allowed[pos][_graph.vertex(u).back()]) {
            layer[j].emplace(u, v);
          }
        }
      }
    }
    if (layer.back().empty()) {
      return gone("no bi-infinite path through the pattern");
    }

    std::vector<std::size_t> middle{layer.back().begin()->first};
    for (auto j = layer.size() - 1; j > 0; --j) {
      middle.push_back(layer[j].at(middle.back()));
    }
    std::reverse(middle.begin(), middle.end());

    auto back = _graph.backward_lasso(middle.front());
    auto fwd  = _graph.forward_lasso(middle.back());
    std::vector<std::size_t> seq(back.path.begin(), back.path.end() - 1);
    seq.insert(seq.end(), middle.begin(), middle.end());
    seq.insert(seq.end(), fwd.path.begin() + 1, fwd.path.end());

    auto last = [this](std::size_t v) { return _graph.vertex(v).back(); };
    auto t0   = klo + b - 1 - static_cast<std::int64_t>(back.path.size() - 1);
    auto span = static_cast<std::int64_t>(seq.size()) - 1;
    auto pl   = static_cast<std::int64_t>(back.cycle.size());
    auto pr   = static_cast<std::int64_t>(fwd.cycle.size());

    std::vector<Symbol> lw(static_cast<std::size_t>(pl)), rw(static_cast<std::size_t>(pr));
    for (std::int64_t i = 0; i < pl; ++i) {
      lw[static_cast<std::size_t>(i)] = last(back.cycle[static_cast<std::size_t>(i)]);
    }
    for (std::int64_t i = 0; i < pr; ++i) {
      rw[static_cast<std::size_t>(i)] = last(fwd.cycle[static_cast<std::size_t>(mod(i - span, pr))]);
    }
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      cells.push_back({at(t0 + static_cast<std::int64_t>(i)), last(seq[i])});
    }
    auto const& z     = _recoding.recoded().group_ptr();
    auto        super = Configuration::step(t0, std::move(lw), std::move(rw),
                                            Pattern(z, std::move(cells)));
    auto witness = _recoding.decode(super);
    auto v       = Verdict::allowed(witness, "recurrent path in the de Bruijn graph of "
                                                 + std::to_string(_recoding.block())
                                                 + "-blocks");
    v.witness_pattern = p;
    return v;
  }

  Verdict z_exact_allowed(Subshift const& x, Pattern const& word,
                          std::optional<std::size_t> symbol_budget) {
    require_z(x.group(), "z_exact_allowed");
    std::vector<std::int64_t> cells;
    for (auto const& c : word.cells()) {
      cells.push_back(c.g[0]);
    }
    std::sort(cells.begin(), cells.end());
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i] != cells[i - 1] + 1) {
        throw PreconditionError("z_exact_allowed: the word must sit on an integer interval");
      }
    }
    return ZExactOracle(x, symbol_budget).decide(word);
  }

}  // namespace hshift
