// Exact coefficient fields: arbitrary-precision rationals and odd prime fields.
#ifndef NORMALBASIS_SCALAR_HPP
#define NORMALBASIS_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "normalbasis/errors.hpp"

namespace normalbasis {

enum class FieldKind { rational, prime };

/// Runtime description of the base field F.
struct CoeffField {
  FieldKind kind = FieldKind::rational;
  std::uint64_t modulus = 0;  // prime kind only

  static CoeffField rationals() { return {}; }
  /// Throws UsageError unless p is an odd prime below 2^63.
  static CoeffField prime(std::uint64_t p);

  bool is_rational() const { return kind == FieldKind::rational; }
  std::string describe() const;

  friend bool operator==(const CoeffField&, const CoeffField&) = default;
};

/// Element of Z/pZ. Carries its modulus so that mixing fields is caught.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t v, std::uint64_t p);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o);

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP::raw(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  ModP inverse() const;

  static ModP raw(std::uint64_t v, std::uint64_t p) {
    ModP r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }

 private:
  void check(const ModP& o) const {
    if (p_ != o.p_) throw UsageError("ModP: operands from different prime fields");
  }
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);

/// Uniform interface over the two scalar types. Every generic kernel goes
/// through this instead of touching mpq_class / ModP directly when it
/// needs constants or field-level predicates.
template <class T>
struct Scalar;

template <>
struct Scalar<mpq_class> {
  static constexpr FieldKind kind = FieldKind::rational;
  static mpq_class from_int(const CoeffField&, long long v) { return mpq_class(static_cast<long>(v)); }
  static mpq_class from_rational(const CoeffField&, const mpq_class& q) { return q; }
  static bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
  static bool is_one(const mpq_class& a) { return a == 1; }
  static mpq_class inverse(const mpq_class& a);
  static std::string to_string(const mpq_class& a);
  static mpq_class parse(const CoeffField&, std::string_view s);
  static void check_field(const CoeffField& f);
};

template <>
struct Scalar<ModP> {
  static constexpr FieldKind kind = FieldKind::prime;
  static ModP from_int(const CoeffField& f, long long v) { return ModP(v, f.modulus); }
  static ModP from_rational(const CoeffField& f, const mpq_class& q);
  static bool is_zero(const ModP& a) { return a.value() == 0; }
  static bool is_one(const ModP& a) { return a.value() == 1; }
  static ModP inverse(const ModP& a) { return a.inverse(); }
  static std::string to_string(const ModP& a) { return std::to_string(a.value()); }
  static ModP parse(const CoeffField& f, std::string_view s);
  static void check_field(const CoeffField& f);
};

template <class T>
T zero_of(const CoeffField& f) {
  return Scalar<T>::from_int(f, 0);
}
template <class T>
T one_of(const CoeffField& f) {
  return Scalar<T>::from_int(f, 1);
}
template <class T>
bool is_zero(const T& a) {
  return Scalar<T>::is_zero(a);
}

/// Uniform draw from the sample set {0, 1, ..., size-1} embedded in F.
template <class T>
T sample_scalar(const CoeffField& f, std::mt19937_64& rng, std::uint64_t size) {
  std::uniform_int_distribution<std::uint64_t> dist(0, size - 1);
  return Scalar<T>::from_int(f, static_cast<long long>(dist(rng)));
}

/// Dot product of two equal-length ranges. The ModP overload accumulates in
/// 128 bits and reduces lazily.
mpq_class dot(const CoeffField& f, const mpq_class* a, const mpq_class* b, std::size_t n);
ModP dot(const CoeffField& f, const ModP* a, const ModP* b, std::size_t n);

}  // namespace normalbasis

#endif
