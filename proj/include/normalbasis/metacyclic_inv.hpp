// Unit test in F[G] for metacyclic G through the embedding
//   psi: F[G] -> M_s(A),  A = F[z]/(z^m - 1),
//   psi(sigma) = Diag(zeta, zeta^r, ..., zeta^{r^{s-1}}),
//   psi(tau)   = multiplication by y on A[y]/(y^s - zeta^t).
#ifndef NORMALBASIS_METACYCLIC_INV_HPP
#define NORMALBASIS_METACYCLIC_INV_HPP

#include <random>

#include "normalbasis/group_algebra.hpp"
#include "normalbasis/poly.hpp"

namespace normalbasis {

/// A = F[z]/(z^m - 1). Elements are dense vectors of length m.
template <class T>
struct CycRing {
  using Elem = std::vector<T>;
  CoeffField f;
  std::size_t m;

  Elem zero() const { return Elem(m, zero_of<T>(f)); }
  Elem one() const;
  Elem from_int(long long v) const;
  /// zeta^e
  Elem power_of_zeta(std::size_t e) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const T& c) const;
  /// zeta^e * a, a cyclic shift.
  Elem shift(const Elem& a, std::size_t e) const;
  /// a(zeta^e): the exponent permutation i -> i*e mod m.
  Elem substitute(const Elem& a, std::size_t e) const;
  bool is_zero(const Elem& a) const;
  Poly<T> lift(const Elem& a) const { return Poly<T>(f, a); }
  Elem reduce(const Poly<T>& p) const;
};

/// s x s matrix over A, row-major.
template <class T>
struct PsiMatrix {
  std::size_t s = 0;
  std::vector<std::vector<T>> entries;
  const std::vector<T>& operator()(std::size_t i, std::size_t j) const { return entries[i * s + j]; }
  std::vector<T>& operator()(std::size_t i, std::size_t j) { return entries[i * s + j]; }
  friend bool operator==(const PsiMatrix&, const PsiMatrix&) = default;
};

template <class T>
PsiMatrix<T> psi(const CoeffField& f, const GroupAlgElem<T>& beta);
/// Reads beta back from the first column of psi(beta).
template <class T>
GroupAlgElem<T> psi_preimage(const CoeffField& f, const GroupSpec& g, const PsiMatrix<T>& M);
template <class T>
PsiMatrix<T> psi_mul(const CycRing<T>& A, const PsiMatrix<T>& a, const PsiMatrix<T>& b);
template <class T>
std::vector<std::vector<T>> psi_apply(const CycRing<T>& A, const PsiMatrix<T>& M, const std::vector<std::vector<T>>& v);

/// psi(beta) v without forming psi(beta): beta = sum_i B_i(tau) sigma^i and
/// B_i(psi(tau)) is multiplication by B_i(y) in A[y]/(y^s - zeta^t).
template <class T>
std::vector<std::vector<T>> psi_matvec(const CoeffField& f, const GroupAlgElem<T>& beta,
                                       const std::vector<std::vector<T>>& v);

/// psi(sigma)^m = I, psi(tau)^s = psi(sigma)^t, psi(sigma) psi(tau) = psi(tau) psi(sigma)^r.
bool psi_relations_hold(const GroupSpec& g);

template <class T>
struct BranchRank {
  Poly<T> modulus;
  std::size_t rank;
};

template <class T>
struct MetaVerdict {
  bool unit = false;
  std::string method;
  /// det: the d of a factor Phi_d where psi(beta) is singular (0 if unit)
  std::size_t witness = 0;
  /// mc: ranks per branch of the last repetition run
  std::vector<BranchRank<T>> branches;
  std::size_t repetitions_used = 0;
};

/// Determinant of psi(beta) over every F[z]/Phi_d, d | m. Pivots that are
/// zero divisors (reducible Phi_d over a prime field) split the modulus.
/// Throws UsageError if the characteristic divides |G|.
template <class T>
MetaVerdict<T> is_unit_metacyclic_det(const CoeffField& f, const GroupAlgElem<T>& beta);

template <class T>
struct EeaBranch {
  Poly<T> modulus;
  long rem_degree;  // -1 for a zero remainder
  long cof_degree;  // degree of the cofactor of g
};

/// Euclid on (f, g) in (F[z]/modulus)[y] until the remainder has degree
/// below stop. A leading coefficient that is a nonzero zero divisor splits
/// the modulus and both parts continue. Throws UsageError unless the modulus
/// is squarefree. Polynomials in y are lists of coefficients in F[z].
template <class T>
std::vector<EeaBranch<T>> eea_dynamic(const std::vector<Poly<T>>& f, const std::vector<Poly<T>>& g,
                                      const Poly<T>& modulus, std::size_t stop);

/// Monte Carlo rank test. Each repetition certifies a unit when every branch
/// reaches rank s; a repetition can only under-report the rank.
template <class T>
MetaVerdict<T> is_unit_metacyclic_mc(const CoeffField& f, const GroupAlgElem<T>& beta, std::mt19937_64& rng,
                                     std::size_t repetitions = 3);

template <class T>
bool is_unit_metacyclic(const CoeffField& f, const GroupAlgElem<T>& beta) {
  return is_unit_metacyclic_det(f, beta).unit;
}

}  // namespace normalbasis

#endif
