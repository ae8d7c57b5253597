#pragma once

#include <stdexcept>
#include <string>

namespace hshift {

  // Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Objects from different groups/alphabets mixed, malformed elements,
  // invalid Cayley tables.
  class StructuralError : public Error {
   public:
    using Error::Error;
  };

  // Two patterns disagree on a shared cell.
  class IncompatibleError : public Error {
   public:
    using Error::Error;
  };

  // An operation was called outside its precondition (e.g. extending a
  // pattern that is not locally admissible).
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // An exhaustive computation would exceed its budget.
  class RefusalError : public Error {
   public:
    RefusalError(std::string const& what, std::size_t required)
        : Error(what), _required(required) {}
    std::size_t required_budget() const noexcept {
      return _required;
    }

   private:
    std::size_t _required;
  };

  // Descriptor parse failure; `pointer` is a JSON pointer to the offending
  // field.
  class ParseError : public Error {
   public:
    ParseError(std::string const& pointer, std::string const& what)
        : Error(pointer + ": " + what), _pointer(pointer) {}
    std::string const& pointer() const noexcept {
      return _pointer;
    }

   private:
    std::string _pointer;
  };

}  // namespace hshift
