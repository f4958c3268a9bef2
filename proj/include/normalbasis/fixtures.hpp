// Verified Galois actions for tests and demos: cyclotomic fields with the
// unit group acting by xi -> xi^a, and composita of two rational
// polynomials with a hand-supplied action on their roots.
#ifndef NORMALBASIS_FIXTURES_HPP
#define NORMALBASIS_FIXTURES_HPP

#include "normalbasis/orbit_projection.hpp"

namespace normalbasis {

template <class T>
struct Fixture {
  GaloisAction<T> action;
  std::string label;
  std::string notes;
};

/// Generators of (Z/n)^x as a direct product of cyclic groups, chosen
/// greedily: largest order first, smallest residue on ties, each new cyclic
/// group meeting the previous ones trivially.
struct UnitGroupBasis {
  std::vector<std::size_t> generators;
  std::vector<std::size_t> orders;
};
UnitGroupBasis unit_group_basis(std::size_t n);

/// P = Phi_n, generator k acting by xi -> xi^{gens[k]}. No size limit;
/// used directly for large synthetic cyclic actions.
template <class T>
Fixture<T> power_map_fixture(const CoeffField& f, std::size_t n, const std::vector<std::size_t>& gens,
                             const std::vector<std::size_t>& orders);

/// 3 <= n <= 64.
template <class T>
Fixture<T> cyclotomic_fixture(const CoeffField& f, std::size_t n);

/// sum of c * a^i * b^j, where a, b are the roots theta_f, theta_g.
struct RootTerm {
  std::size_t i = 0, j = 0;
  mpq_class c;
};
using RootExpr = std::vector<RootTerm>;

/// Images of theta_f and theta_g under one group generator.
struct RootHint {
  RootExpr f_image, g_image;
};

/// Resultant of two polynomials over a field, by Euclid.
template <class T>
T resultant(const Poly<T>& a, const Poly<T>& b);

/// Res_y(f(y), g(x - y)) for monic f, g, by evaluation at deg f * deg g + 1
/// points and interpolation.
Poly<mpq_class> sum_resultant(const Poly<mpq_class>& f, const Poly<mpq_class>& g);

/// K = Q[x]/P with P = Res_y(f(y), g(x - y)) and theta = theta_f + theta_g
/// the class of x. theta_f is the unique common root of f(y) and g(x - y)
/// in K; generator k sends theta to its f-hint image plus its g-hint image.
/// Throws StructureError if P is not squarefree (theta is not primitive)
/// or if the hints fail verification.
Fixture<mpq_class> compositum_fixture(const Poly<mpq_class>& f, const Poly<mpq_class>& g, const GroupSpec& spec,
                                      const std::vector<RootHint>& hints, const std::string& label);

/// theta_f in K for a compositum fixture.
ExtElem<mpq_class> compositum_root(const ExtField<mpq_class>& K, const Poly<mpq_class>& f,
                                   const Poly<mpq_class>& g);

/// Q(2^{1/3}, omega), S_3 as metacyclic (3, 2, 2, 3); precomputed images.
Fixture<mpq_class> s3_fixture();
/// Q(sqrt 2, sqrt 3), C_2 x C_2; precomputed images.
Fixture<mpq_class> biquadratic_fixture();
/// The hints the two precomputed fixtures were generated from.
std::vector<RootHint> s3_hints();
std::vector<RootHint> biquadratic_hints();

struct FixtureReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// P(gamma) = 0 for each generator, every presentation relation, and
/// pairwise distinct images of xi over the whole group.
template <class T>
FixtureReport verify_fixture(const Fixture<T>& fx);

/// Reduces P and the generator images modulo the prime of F.
Fixture<ModP> reduce_fixture(const Fixture<mpq_class>& fx, const CoeffField& F);

}  // namespace normalbasis

#endif
