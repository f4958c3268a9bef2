// Dense univariate polynomials over an exact coefficient field.
#ifndef NORMALBASIS_POLY_HPP
#define NORMALBASIS_POLY_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "normalbasis/scalar.hpp"

namespace normalbasis {

/// Degree of the zero polynomial.
inline constexpr long kZeroDegree = std::numeric_limits<long>::min();

/// Coefficients are stored lowest degree first with no trailing zeros; the
/// zero polynomial is the empty sequence.
template <class T>
class Poly {
 public:
  explicit Poly(CoeffField field = {});
  Poly(CoeffField field, std::vector<T> coeffs);

  static Poly constant(CoeffField field, const T& c);
  static Poly monomial(CoeffField field, const T& c, std::size_t k);
  static Poly from_ints(CoeffField field, std::initializer_list<long long> coeffs);

  const CoeffField& field() const { return field_; }
  const std::vector<T>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  long degree() const { return c_.empty() ? kZeroDegree : static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && Scalar<T>::is_one(c_[0]); }
  /// Coefficient of x^i (zero beyond the degree).
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_of<T>(field_); }
  const T& lead() const { return c_.back(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return a.negated(); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  Poly negated() const;
  Poly scaled(const T& s) const;
  /// Divides by the leading coefficient. Zero stays zero.
  Poly monic() const;
  /// Multiplies by x^k.
  Poly shifted(std::size_t k) const;
  /// Keeps the coefficients of x^0..x^{k-1}.
  Poly truncated(std::size_t k) const;
  /// Coefficient reversal with respect to length len (len >= size()).
  Poly reversed(std::size_t len) const;
  /// Coefficients [lo, hi) as a polynomial.
  Poly slice(std::size_t lo, std::size_t hi) const;
  Poly derivative() const;
  T operator()(const T& x) const;

 private:
  void normalize();
  CoeffField field_;
  std::vector<T> c_;
};

template <class T>
void require_same_field(const Poly<T>& a, const Poly<T>& b);

/// Product. Schoolbook below kKaratsubaThreshold coefficients, Karatsuba above.
template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b);
template <class T>
Poly<T> operator*(const Poly<T>& a, const Poly<T>& b) {
  return poly_mul(a, b);
}

inline constexpr std::size_t kKaratsubaThreshold = 32;

/// Raw coefficient-vector product used by the polynomial and ring layers.
template <class T>
std::vector<T> mul_coeffs(const CoeffField& f, std::span<const T> a, std::span<const T> b);

template <class T>
struct DivMod {
  Poly<T> quotient;
  Poly<T> remainder;
};

/// a = q*b + r with deg r < deg b. Throws DivisionByZero when b = 0.
template <class T>
DivMod<T> poly_divmod(const Poly<T>& a, const Poly<T>& b);
template <class T>
Poly<T> poly_rem(const Poly<T>& a, const Poly<T>& b);
template <class T>
Poly<T> poly_quo(const Poly<T>& a, const Poly<T>& b);

/// Power series inverse of f modulo x^prec; f(0) must be invertible.
template <class T>
Poly<T> series_inverse(const Poly<T>& f, std::size_t prec);

template <class T>
struct Egcd {
  Poly<T> g;  // monic
  Poly<T> u;
  Poly<T> v;
};

/// g = u*a + v*b with g = gcd(a, b) monic.
template <class T>
Egcd<T> poly_egcd(const Poly<T>& a, const Poly<T>& b);
template <class T>
Poly<T> poly_gcd(const Poly<T>& a, const Poly<T>& b);

/// Phi_n, built by dividing x^n - 1 by Phi_d over the proper divisors d of n.
template <class T>
Poly<T> cyclotomic(const CoeffField& f, std::size_t n);

/// Remainders of f modulo each modulus, through a remainder tree.
template <class T>
std::vector<Poly<T>> multi_rem(const Poly<T>& f, const std::vector<Poly<T>>& moduli);

/// The unique polynomial of degree < sum(deg moduli) congruent to each
/// residue. Throws StructureError if two moduli share a factor.
template <class T>
Poly<T> poly_crt(const std::vector<Poly<T>>& residues, const std::vector<Poly<T>>& moduli);

inline constexpr std::size_t kSubproductThreshold = 8;

template <class T>
std::vector<T> multipoint_eval(const Poly<T>& f, const std::vector<T>& points);
/// Throws UsageError on repeated points.
template <class T>
Poly<T> interpolate(const CoeffField& f, const std::vector<T>& points, const std::vector<T>& values);

std::size_t euler_phi(std::size_t n);
std::vector<std::size_t> divisors(std::size_t n);
/// Prime factorization by trial division, as (prime, exponent) pairs.
std::vector<std::pair<std::size_t, std::size_t>> factor_small(std::size_t n);

}  // namespace normalbasis

#endif
