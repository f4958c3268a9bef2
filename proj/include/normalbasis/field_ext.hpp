// K = F[x]/<P>: arithmetic, automorphisms given by the image of xi, and the
// baby-step/giant-step kernels for orbits of elements and of linear forms.
#ifndef NORMALBASIS_FIELD_EXT_HPP
#define NORMALBASIS_FIELD_EXT_HPP

#include <functional>
#include <string>
#include <vector>

#include "normalbasis/matrix.hpp"
#include "normalbasis/poly.hpp"

namespace normalbasis {

/// Element of K on the power basis 1, xi, ..., xi^{n-1}.
template <class T>
struct ExtElem {
  std::vector<T> coeffs;
  friend bool operator==(const ExtElem&, const ExtElem&) = default;
};

/// ell(xi^i) for i < n.
template <class T>
struct LinearForm {
  std::vector<T> values;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Field automorphism, stored as g(xi).
template <class T>
struct Automorphism {
  ExtElem<T> gamma;
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

/// P must be monic of degree >= 1. Irreducibility is assumed, not checked;
/// the only place it matters is ext_inv, which reports a factor of P if
/// it meets a zero divisor.
template <class T>
class ExtField {
 public:
  explicit ExtField(Poly<T> P);

  const CoeffField& base() const { return P_.field(); }
  const Poly<T>& modulus() const { return P_; }
  std::size_t degree() const { return n_; }

  ExtElem<T> zero() const;
  ExtElem<T> one() const;
  /// The class of x.
  ExtElem<T> gen() const;
  ExtElem<T> from_scalar(const T& c) const;
  /// Reduces an arbitrary polynomial mod P.
  ExtElem<T> from_poly(const Poly<T>& p) const;
  Poly<T> lift(const ExtElem<T>& a) const { return Poly<T>(base(), a.coeffs); }
  void check(const ExtElem<T>& a) const;
  void check(const LinearForm<T>& l) const;

  /// Remainder mod P of a polynomial of length <= 2n-1.
  Poly<T> reduce(const Poly<T>& a) const;
  /// 1/rev(P) mod x^{2n-1}; rev(P) has constant term 1.
  const Poly<T>& rev_inverse() const { return rinv_; }

 private:
  Poly<T> P_;
  std::size_t n_;
  Poly<T> rinv_;
};

template <class T>
ExtElem<T> ext_add(const ExtField<T>& K, const ExtElem<T>& a, const ExtElem<T>& b);
template <class T>
ExtElem<T> ext_sub(const ExtField<T>& K, const ExtElem<T>& a, const ExtElem<T>& b);
template <class T>
ExtElem<T> ext_scale(const ExtField<T>& K, const ExtElem<T>& a, const T& c);
template <class T>
ExtElem<T> ext_mul(const ExtField<T>& K, const ExtElem<T>& a, const ExtElem<T>& b);
/// Throws ZeroDivisorError carrying gcd(lift(a), P) when a is not invertible.
template <class T>
ExtElem<T> ext_inv(const ExtField<T>& K, const ExtElem<T>& a);
template <class T>
ExtElem<T> ext_pow(const ExtField<T>& K, ExtElem<T> a, std::uint64_t e);
template <class T>
bool ext_is_zero(const ExtElem<T>& a);

/// ell(a).
template <class T>
T pairing(const ExtField<T>& K, const LinearForm<T>& l, const ExtElem<T>& a);

/// alpha(gamma) mod P, Brent-Kung with block size ceil(sqrt(n)).
template <class T>
ExtElem<T> modcomp(const ExtField<T>& K, const ExtElem<T>& alpha, const ExtElem<T>& gamma);
/// Same for a polynomial of any degree, which need not be reduced mod P.
template <class T>
ExtElem<T> modcomp(const ExtField<T>& K, const Poly<T>& alpha, const ExtElem<T>& gamma);
/// Horner evaluation of alpha at gamma; the reference for modcomp.
template <class T>
ExtElem<T> modcomp_horner(const ExtField<T>& K, const ExtElem<T>& alpha, const ExtElem<T>& gamma);

template <class T>
Automorphism<T> identity_auto(const ExtField<T>& K);
/// g(h(.)), with gamma_{g o h} = gamma_h(gamma_g).
template <class T>
Automorphism<T> compose_autos(const ExtField<T>& K, const Automorphism<T>& g, const Automorphism<T>& h);
template <class T>
Automorphism<T> auto_pow(const ExtField<T>& K, const Automorphism<T>& g, std::uint64_t e);
template <class T>
ExtElem<T> apply(const ExtField<T>& K, const Automorphism<T>& g, const ExtElem<T>& a);

/// g(alpha_1), ..., g(alpha_s) with one shared power table of gamma.
template <class T>
std::vector<ExtElem<T>> multi_apply(const ExtField<T>& K, const Automorphism<T>& g,
                                    const std::vector<ExtElem<T>>& alphas);

/// ell' with ell'(a) = ell(gamma * a).
template <class T>
LinearForm<T> transposed_mul(const ExtField<T>& K, const LinearForm<T>& l, const ExtElem<T>& gamma);

/// ell_1 o g, ..., ell_s o g.
template <class T>
std::vector<LinearForm<T>> multi_transpose(const ExtField<T>& K, const std::vector<LinearForm<T>>& ls,
                                           const Automorphism<T>& g);

/// Values indexed by a multi-index (i_1, ..., i_r), 0 <= i_k < bounds[k],
/// stored with the last index varying fastest.
template <class X>
struct OrbitTable {
  std::vector<std::size_t> bounds;
  std::vector<X> entries;

  std::size_t index(const std::vector<std::size_t>& idx) const {
    std::size_t k = 0;
    for (std::size_t j = 0; j < bounds.size(); ++j) k = k * bounds[j] + idx[j];
    return k;
  }
  const X& at(const std::vector<std::size_t>& idx) const { return entries[index(idx)]; }
};

/// Entry (i_1..i_r) is g_1^{i_1}(...g_r^{i_r}(alpha)).
template <class T>
OrbitTable<ExtElem<T>> iterated_orbit(const ExtField<T>& K, const ExtElem<T>& alpha,
                                      const std::vector<Automorphism<T>>& gens,
                                      const std::vector<std::size_t>& bounds);

/// Entry (i_1..i_r) is ell o g_1^{i_1} o ... o g_r^{i_r}.
template <class T>
OrbitTable<LinearForm<T>> iterated_forms(const ExtField<T>& K, const LinearForm<T>& l,
                                         const std::vector<Automorphism<T>>& gens,
                                         const std::vector<std::size_t>& bounds);

/// Receives soft-precondition warnings (oversized orbit tables). Defaults to stderr.
void set_warning_sink(std::function<void(const std::string&)> sink);
void warn(const std::string& msg);

std::size_t isqrt_ceil(std::size_t n);
/// ceil(n^{3/4})
std::size_t iroot34_ceil(std::size_t n);

/// Adapter exposing K to the generic ring polynomial code.
template <class T>
struct ExtRing {
  using Elem = ExtElem<T>;
  const ExtField<T>& K;
  Elem zero() const { return K.zero(); }
  Elem from_int(long long v) const { return K.from_scalar(Scalar<T>::from_int(K.base(), v)); }
  Elem add(const Elem& a, const Elem& b) const { return ext_add(K, a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return ext_sub(K, a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return ext_mul(K, a, b); }
  bool is_zero(const Elem& a) const { return ext_is_zero(a); }
  Elem inv(const Elem& a) const { return ext_inv(K, a); }
};

}  // namespace normalbasis

#endif
