// Unit test and inversion in F[G] for abelian G, through
//   F[G] = (x) F[x_k]/(x_k^{p^b} - 1)      (one factor per elementary divisor)
//        = prod  (x) F[x_k]/Phi_{p^{c_k}}  (lambda: cyclic CRT on every axis)
//        = prod  (x)_p  F[x_p]/Phi_{p^{c_p}}  (theta: same-prime splitting)
//        = prod  F[z]/Phi_d               (gamma: coprime merging)
#ifndef NORMALBASIS_ABELIAN_INV_HPP
#define NORMALBASIS_ABELIAN_INV_HPP

#include "normalbasis/field_ext.hpp"
#include "normalbasis/group_algebra.hpp"
#include "normalbasis/matrix.hpp"

namespace normalbasis {

/// Gamma for two factors: F[x]/Phi_m (x) F[x']/Phi_m' -> F[z]/Phi_{mm'},
/// x -> z^{a'm'}, x' -> z^{am} with am + a'm' = 1. h has phi(m) rows
/// (powers of x) and phi(m') columns. Throws UsageError unless gcd(m, m') = 1.
template <class T>
Poly<T> coprime_merge(const CoeffField& f, const Matrix<T>& h, std::size_t m, std::size_t m2);
/// z -> x x', then reduction mod Phi_m and Phi_m'.
template <class T>
Matrix<T> coprime_split(const CoeffField& f, const Poly<T>& g, std::size_t m, std::size_t m2);

/// Iterated coprime_merge over pairwise coprime moduli. data is laid out with
/// the last modulus varying fastest, phi(moduli[k]) entries per axis.
template <class T>
Poly<T> merge_distinct_primes(const CoeffField& f, const std::vector<T>& data,
                              const std::vector<std::size_t>& moduli);
template <class T>
std::vector<T> split_distinct_primes(const CoeffField& f, const Poly<T>& g, const std::vector<std::size_t>& moduli);

/// theta: a[y]/Phi_{p^{c2}}(y) -> a^{phi(p^{c2})} with a = K = F[x]/Phi_{p^c},
/// y evaluated at xi^{i p^{c-c2}} for 0 < i < p^{c2}, p not dividing i.
/// Throws UsageError if c < c2.
template <class T>
std::vector<ExtElem<T>> same_prime_split(const ExtField<T>& K, const std::vector<ExtElem<T>>& y_coeffs,
                                         std::size_t p, std::size_t c, std::size_t c2);
template <class T>
std::vector<ExtElem<T>> same_prime_merge(const ExtField<T>& K, const std::vector<ExtElem<T>>& values,
                                         std::size_t p, std::size_t c, std::size_t c2);

/// Theta over all variables of one prime. data is laid out with the last
/// variable fastest, phi(p^{cs[k]}) entries per axis; cs[0] must be the
/// largest. The result lists elements of F[x_1]/Phi_{p^{cs[0]}}.
template <class T>
std::vector<ExtElem<T>> same_prime_split_all(const CoeffField& f, const std::vector<T>& data, std::size_t p,
                                             const std::vector<std::size_t>& cs);
template <class T>
std::vector<T> same_prime_merge_all(const CoeffField& f, const std::vector<ExtElem<T>>& parts, std::size_t p,
                                    const std::vector<std::size_t>& cs);

/// lambda: residues of f modulo Phi_1, Phi_p, ..., Phi_{p^b}.
template <class T>
std::vector<Poly<T>> cyclic_crt(const Poly<T>& f, std::size_t p, std::size_t b);
template <class T>
Poly<T> cyclic_crt_inverse(const CoeffField& f, const std::vector<Poly<T>>& residues, std::size_t p, std::size_t b);

/// The product decomposition of F[G] for one abelian spec. Depends on the
/// group only, so it is shared by every element and coefficient field.
struct FactorCatalog {
  struct Factor {
    std::size_t d;  // modulus Phi_d
    /// lambda exponents c_k per elementary-divisor axis, then the theta
    /// component index of every split axis
    std::vector<std::size_t> slot;
  };
  struct ThetaStep {
    std::size_t keep, split, p, c, c2;
  };
  struct MergeStep {
    std::size_t into, from, d1, d2;
  };
  struct Block {
    std::vector<std::size_t> c;
    std::vector<ThetaStep> theta;
    std::vector<MergeStep> merges;
    std::size_t cyclo_axis;  // the axis left holding Phi_d, or npos if d = 1
    std::size_t first_factor, factor_count;
  };

  GroupSpec spec;
  ElementaryDivisors ed;
  std::vector<Block> blocks;
  std::vector<Factor> factors;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  template <class T>
  Poly<T> modulus(const CoeffField& f, std::size_t j) const {
    return cyclotomic<T>(f, factors[j].d);
  }
};

/// Throws UsageError for a non-abelian spec.
FactorCatalog build_catalog(const GroupSpec& spec);

template <class T>
struct DecomposedElem {
  const FactorCatalog* catalog = nullptr;
  std::vector<Poly<T>> residues;
};

/// Throws UsageError if beta's spec differs from the catalog's, or if the
/// characteristic divides |G|.
template <class T>
DecomposedElem<T> decompose(const CoeffField& f, const FactorCatalog& cat, const GroupAlgElem<T>& beta);
template <class T>
GroupAlgElem<T> recompose(const CoeffField& f, const DecomposedElem<T>& x);

template <class T>
bool is_unit_abelian(const CoeffField& f, const GroupAlgElem<T>& beta);
/// Throws NonUnitError whose witness is the d of a factor where beta vanishes
/// modulo some divisor of Phi_d.
template <class T>
GroupAlgElem<T> invert_abelian(const CoeffField& f, const GroupAlgElem<T>& beta);

}  // namespace normalbasis

#endif
