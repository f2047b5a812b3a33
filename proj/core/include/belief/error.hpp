#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace belief {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAtomError : public Error {
 public:
  explicit UnknownAtomError(std::string atom)
      : Error("unknown atom '" + atom + "'"), atom_(std::move(atom)) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// An exhaustive check would exceed its enumeration budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// A chain of next operators runs past the last time of the system.
struct HorizonError : Error {
  using Error::Error;
};

// A system does not have the properties a construction requires.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace belief
