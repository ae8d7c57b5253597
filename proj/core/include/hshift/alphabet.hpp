#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hshift {

  // Symbols are identified by their index in the alphabet.
  using Symbol = std::uint32_t;

  // A discrete alphabet with at least two symbols: either an explicit
  // finite list of names or the countable alphabet {prefix0, prefix1, ...}.
  class Alphabet {
   public:
    static Alphabet explicit_symbols(std::vector<std::string> names);
    static Alphabet naturals(std::string prefix = "");

    bool is_finite() const noexcept {
      return !_enumerable;
    }
    // Number of symbols of a finite alphabet.
    std::optional<std::size_t> size() const noexcept;
    // Symbols available under a budget: all of a finite alphabet, or the
    // first `budget` symbols of an enumerable one.
    std::size_t truncated_size(std::optional<std::size_t> budget) const;

    std::string           name(Symbol s) const;
    std::optional<Symbol> lookup(std::string const& name) const;
    bool                  valid(Symbol s) const noexcept;

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::string const& prefix() const noexcept {
      return _prefix;
    }

    friend bool operator==(Alphabet const&, Alphabet const&) = default;

   private:
    std::vector<std::string> _names;
    bool                     _enumerable = false;
    std::string              _prefix;
  };

}  // namespace hshift
