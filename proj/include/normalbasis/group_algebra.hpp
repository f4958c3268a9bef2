// Abelian and metacyclic group presentations, normal forms, and the naive
// group algebra F[G] used as a reference for the fast algorithms.
#ifndef NORMALBASIS_GROUP_ALGEBRA_HPP
#define NORMALBASIS_GROUP_ALGEBRA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "normalbasis/matrix.hpp"
#include "normalbasis/scalar.hpp"

namespace normalbasis {

enum class GroupKind { abelian, metacyclic };

/// Abelian: <g_1..g_r | g_k^{e_k} = 1>, element g_1^{a_1}...g_r^{a_r} has
/// mixed-radix index with a_r varying fastest. No generators = trivial group.
///
/// Metacyclic: <sigma, tau | sigma^m = 1, tau^s = sigma^t, tau^-1 sigma tau = sigma^r>,
/// element sigma^i tau^j has index i*s + j. t = m is stored as given but
/// acts as sigma^0.
struct GroupSpec {
  GroupKind kind = GroupKind::abelian;
  std::vector<std::size_t> orders;
  std::size_t m = 1, s = 1, r = 1, t = 1;

  /// Throws UsageError if some order is below 2.
  static GroupSpec abelian(std::vector<std::size_t> orders);
  /// Throws UsageError unless r^s = 1 and r*t = t modulo m, 1 <= r, t <= m.
  static GroupSpec metacyclic(std::size_t m, std::size_t s, std::size_t r, std::size_t t);

  bool is_abelian() const { return kind == GroupKind::abelian; }
  std::size_t size() const;
  /// sigma exponent added when tau^s is rewritten.
  std::size_t t_reduced() const { return t % m; }
  /// r^{-1} mod m.
  std::size_t r_inverse() const;
  std::string describe() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

std::vector<std::size_t> abelian_exponents(const GroupSpec& g, std::size_t idx);
std::size_t abelian_index(const GroupSpec& g, const std::vector<std::size_t>& exps);

/// Normal form of the product a*b.
std::size_t nf_mul(const GroupSpec& g, std::size_t a, std::size_t b);
std::size_t nf_inverse(const GroupSpec& g, std::size_t a);
std::size_t nf_pow(const GroupSpec& g, std::size_t a, std::size_t e);
std::size_t element_order(const GroupSpec& g, std::size_t a);
/// Index of sigma^i tau^j.
inline std::size_t meta_index(const GroupSpec& g, std::size_t i, std::size_t j) { return i * g.s + j; }

/// Re-indexing from sigma^i tau^j order to tau^j sigma^i order (index
/// j*m + i) and back. Pure permutations.
template <class T>
std::vector<T> pres_convert(const GroupSpec& g, const std::vector<T>& coeffs);
template <class T>
std::vector<T> pres_convert_back(const GroupSpec& g, const std::vector<T>& coeffs);
/// The permutation behind pres_convert: sigma^i tau^j -> index of tau^j sigma^{i r^j}.
std::vector<std::size_t> pres_permutation(const GroupSpec& g);

template <class T>
struct GroupAlgElem {
  GroupSpec spec;
  std::vector<T> coeffs;
  friend bool operator==(const GroupAlgElem&, const GroupAlgElem&) = default;
};

template <class T>
GroupAlgElem<T> ga_zero(const CoeffField& f, const GroupSpec& g);
template <class T>
GroupAlgElem<T> ga_one(const CoeffField& f, const GroupSpec& g);
template <class T>
GroupAlgElem<T> ga_basis(const CoeffField& f, const GroupSpec& g, std::size_t idx);
template <class T>
GroupAlgElem<T> ga_add(const GroupAlgElem<T>& a, const GroupAlgElem<T>& b);
template <class T>
GroupAlgElem<T> ga_scale(const GroupAlgElem<T>& a, const T& c);
/// Convolution through nf_mul, O(|G|^2).
template <class T>
GroupAlgElem<T> ga_mul(const CoeffField& f, const GroupAlgElem<T>& a, const GroupAlgElem<T>& b);
/// Column h holds the coefficients of beta * h.
template <class T>
Matrix<T> mult_matrix(const CoeffField& f, const GroupAlgElem<T>& beta);
template <class T>
bool ga_is_zero(const GroupAlgElem<T>& a);

/// Sum of the listed elements.
template <class T>
GroupAlgElem<T> subset_sum(const CoeffField& f, const GroupSpec& g, const std::vector<std::size_t>& elems);

/// Every subgroup generated by at most two elements, each as a sorted
/// element list. For the groups handled here this is every subgroup.
std::vector<std::vector<std::size_t>> all_subgroups(const GroupSpec& g);
std::vector<std::size_t> generated_subgroup(const GroupSpec& g, const std::vector<std::size_t>& gens);

/// Prime-power decomposition of an abelian group.
struct ElementaryDivisors {
  struct Axis {
    std::size_t p;
    std::size_t b;       // the cyclic factor has order p^b
    std::size_t source;  // input generator it came from
  };
  /// Ordered by prime, then by b (stable in the input order).
  std::vector<Axis> axes;
  std::map<std::size_t, std::vector<std::size_t>> by_prime;
  /// new_index[old mixed-radix index] = mixed-radix index over axes.
  std::vector<std::size_t> new_index;

  GroupSpec spec() const;
};

ElementaryDivisors elementary_divisors(const std::vector<std::size_t>& orders);

}  // namespace normalbasis

#endif
