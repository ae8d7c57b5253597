#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "hshift/subshift.hpp"

namespace hshift {

  // Block recoding of a Z-subshift with H = nZ into a fully shift-invariant
  // SFT over A^n. Super cell k stands for the original cells
  // offset + nk, ..., offset + nk + n - 1, where offset is the least cell
  // used by a forbidden pattern (0 if there are none), so that a forbidden
  // pattern fitting in one block recodes to single super symbols.
  class ZRecoding {
   public:
    std::int64_t block() const noexcept {
      return _n;
    }
    std::int64_t offset() const noexcept {
      return _offset;
    }
    // Size of the original alphabet actually used (truncated if enumerable).
    std::size_t base() const noexcept {
      return _base;
    }
    Subshift const& recoded() const noexcept {
      return *_recoded;
    }

    Symbol              encode_block(std::span<Symbol const> block) const;
    std::vector<Symbol> decode_block(Symbol s) const;

    // Super cell containing original cell i, and the first original cell of
    // super cell k.
    std::int64_t super_cell(std::int64_t i) const noexcept;
    std::int64_t first_cell(std::int64_t k) const noexcept {
      return _offset + _n * k;
    }

    // Super symbols whose blocks agree with p on super cell k.
    std::vector<Symbol> consistent(Pattern const& p, std::int64_t k) const;

    Configuration encode(Configuration const& x) const;
    Configuration decode(Configuration const& y) const;

   private:
    friend ZRecoding recode_to_z(Subshift const&, std::optional<std::size_t>);
    ZRecoding() = default;

    std::int64_t            _n      = 1;
    std::int64_t            _offset = 0;
    std::size_t             _base   = 2;
    GroupPtr                _z;
    std::optional<Subshift> _recoded;
  };

  // errors: group not Z, H not nZ with n >= 1, enumerable alphabet without
  // budget, or recoded alphabet/forbidden set too large (RefusalError).
  ZRecoding recode_to_z(Subshift const& x, std::optional<std::size_t> symbol_budget = {});

  // Vertices are the locally admissible words of length `block` over the
  // recoded alphabet, edges the admissible words of length block + 1.
  // A bi-infinite path spells a configuration and vice versa.
  class DeBruijnGraph {
   public:
    DeBruijnGraph(Subshift const& z_sft, std::size_t symbols);

    std::size_t block() const noexcept {
      return _block;
    }
    std::size_t symbols() const noexcept {
      return _symbols;
    }
    std::size_t size() const noexcept {
      return _vertices.size();
    }
    std::vector<Symbol> const& vertex(std::size_t v) const {
      return _vertices[v];
    }
    std::optional<std::size_t> find(std::vector<Symbol> const& word) const;
    std::vector<std::size_t> const& successors(std::size_t v) const {
      return _out[v];
    }
    std::vector<std::size_t> const& predecessors(std::size_t v) const {
      return _in[v];
    }
    bool on_cycle(std::size_t v) const {
      return _cyclic[v];
    }
    // Reachable from a cycle and reaching a cycle: lies on a bi-infinite path.
    bool recurrent(std::size_t v) const {
      return _recurrent[v];
    }
    std::size_t recurrent_count() const noexcept;

    // A cycle through a vertex reachable from v (forward) or reaching v
    // (backward): the path from v (or to v) and the cycle, as vertex lists.
    struct Lasso {
      std::vector<std::size_t> path;   // forward: v ... c; backward: c ... v
      std::vector<std::size_t> cycle;  // cycle starting (and implicitly ending) at c
    };
    Lasso forward_lasso(std::size_t v) const;
    Lasso backward_lasso(std::size_t v) const;

   private:
    std::size_t                                                        _block;
    std::size_t                                                        _symbols;
    std::vector<std::vector<Symbol>>                                   _vertices;
    std::unordered_map<std::vector<Symbol>, std::size_t, SymbolsHash>  _index;
    std::vector<std::vector<std::size_t>>                              _out, _in;
    std::vector<bool>                                                  _cyclic, _recurrent;
  };

  // Exact allowedness on Z with H = nZ, reusable across queries.
  class ZExactOracle {
   public:
    explicit ZExactOracle(Subshift const& x, std::optional<std::size_t> symbol_budget = {});

    ZRecoding const& recoding() const noexcept {
      return _recoding;
    }
    DeBruijnGraph const& graph() const noexcept {
      return _graph;
    }

    // Any finite pattern. CertifiedAllowed carries an eventually periodic
    // step witness. With a truncated enumerable alphabet, non-extendability
    // inside the truncation is reported as Unknown.
    Verdict decide(Pattern const& p) const;

   private:
    Subshift                   _x;
    std::optional<std::size_t> _budget;
    ZRecoding                  _recoding;
    DeBruijnGraph              _graph;
  };

  // The word must sit on an integer interval (PreconditionError otherwise).
  Verdict z_exact_allowed(Subshift const& x, Pattern const& word,
                          std::optional<std::size_t> symbol_budget = {});

}  // namespace hshift
