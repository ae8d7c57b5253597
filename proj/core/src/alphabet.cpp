#include "hshift/alphabet.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "hshift/error.hpp"

namespace hshift {

  Alphabet Alphabet::explicit_symbols(std::vector<std::string> names) {
    if (names.size() < 2) {
      throw StructuralError("an alphabet needs at least two symbols");
    }
    std::set<std::string> distinct(names.begin(), names.end());
    if (distinct.size() != names.size()) {
      throw StructuralError("alphabet symbols must be distinct");
    }
    Alphabet a;
    a._names = std::move(names);
    return a;
  }

  Alphabet Alphabet::naturals(std::string prefix) {
    Alphabet a;
    a._enumerable = true;
    a._prefix     = std::move(prefix);
    return a;
  }

  std::optional<std::size_t> Alphabet::size() const noexcept {
    if (_enumerable) {
      return std::nullopt;
    }
    return _names.size();
  }

  std::size_t Alphabet::truncated_size(std::optional<std::size_t> budget) const {
    if (!_enumerable) {
      return budget ? std::min(*budget, _names.size()) : _names.size();
    }
    if (!budget) {
      throw PreconditionError("an enumerable alphabet requires a symbol budget");
    }
    return *budget;
  }

  std::string Alphabet::name(Symbol s) const {
    if (_enumerable) {
      return _prefix + std::to_string(s);
    }
    return _names.at(s);
  }

  std::optional<Symbol> Alphabet::lookup(std::string const& name) const {
    if (_enumerable) {
      if (name.size() <= _prefix.size() || name.compare(0, _prefix.size(), _prefix) != 0) {
        return std::nullopt;
      }
      Symbol      v     = 0;
      char const* first = name.data() + _prefix.size();
      char const* last  = name.data() + name.size();
      auto [p, ec]      = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last
          || (last - first > 1 && *first == '0')) {
        return std::nullopt;
      }
      return v;
    }
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) {
      return std::nullopt;
    }
    return static_cast<Symbol>(it - _names.begin());
  }

  bool Alphabet::valid(Symbol s) const noexcept {
    return _enumerable || s < _names.size();
  }

}  // namespace hshift
