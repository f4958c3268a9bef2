// Error types shared by every module.
#ifndef NORMALBASIS_ERRORS_HPP
#define NORMALBASIS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace normalbasis {

/// Precondition violated by the caller (bad sizes, mixed fields, bad group data).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An element that had to be inverted shares a factor with the modulus.
/// The factor is kept as coefficient strings, lowest degree first.
class ZeroDivisorError : public DivisionByZero {
 public:
  ZeroDivisorError(const std::string& what, std::vector<std::string> factor)
      : DivisionByZero(what), factor_(std::move(factor)) {}
  const std::vector<std::string>& factor() const { return factor_; }

 private:
  std::vector<std::string> factor_;
};

/// Inversion requested for a non-unit of a group algebra; d names the
/// cyclotomic component Phi_d where the residue is not invertible.
class NonUnitError : public std::domain_error {
 public:
  NonUnitError(const std::string& what, std::size_t d) : std::domain_error(what), d_(d) {}
  std::size_t witness() const { return d_; }

 private:
  std::size_t d_;
};

/// Algebraic structure assumption failed (non-coprime moduli, broken relations).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Randomized search gave up.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace normalbasis

#endif
