#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cpsi {

using cplx = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group spec, Cayley table or subgroup failed validation. The message
/// names the first violated axiom.
class GroupError : public Error {
 public:
  using Error::Error;
};

/// Arguments that violate an operation's precondition (bad exponents,
/// mismatched spaces, negative time, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative linear-algebra routine failed to converge or produced a
/// result outside its numerical guarantees.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpsi
