// s_{alpha,ell} = sum_g ell(g(alpha)) g in F[G].
#ifndef NORMALBASIS_ORBIT_PROJECTION_HPP
#define NORMALBASIS_ORBIT_PROJECTION_HPP

#include "normalbasis/field_ext.hpp"
#include "normalbasis/group_algebra.hpp"

namespace normalbasis {

/// A Galois group acting on K. For an abelian spec there is one generator
/// image per cyclic factor; for a metacyclic spec the images are (sigma, tau).
template <class T>
struct GaloisAction {
  ExtField<T> K;
  GroupSpec spec;
  std::vector<Automorphism<T>> gens;
};

/// Throws UsageError if the generator count or |G| = deg P does not match.
template <class T>
void check_action(const GaloisAction<T>& act);

/// The automorphism attached to a group element, by normal form.
template <class T>
Automorphism<T> element_auto(const GaloisAction<T>& act, std::size_t idx);

template <class T>
GroupAlgElem<T> project_abelian(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l);
template <class T>
GroupAlgElem<T> project_metacyclic(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l);
/// Dispatches on the group kind.
template <class T>
GroupAlgElem<T> project(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l);

/// Reference: every g(alpha) by repeated matrix-vector products with the
/// n x n matrices of the generators.
template <class T>
GroupAlgElem<T> project_naive(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l);

/// All conjugates g(alpha) in normal-form order, computed the naive way.
template <class T>
std::vector<ExtElem<T>> naive_orbit(const GaloisAction<T>& act, const ExtElem<T>& alpha);

}  // namespace normalbasis

#endif
