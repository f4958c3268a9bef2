// Randomized search for a normal element: sample alpha and a linear form ell,
// project the orbit sum to F[G], and certify when the projection is a unit.
#ifndef NORMALBASIS_NORMAL_FINDER_HPP
#define NORMALBASIS_NORMAL_FINDER_HPP

#include <optional>
#include <random>

#include "normalbasis/orbit_projection.hpp"

namespace normalbasis {

enum class SearchMethod { fast, oracle };
/// How a projected element of F[G] is tested for invertibility. Abelian
/// groups always use the cyclotomic decomposition; the choice only matters
/// for metacyclic groups.
enum class UnitMethod { det, mc };

struct SearchConfig {
  std::uint64_t sample_size = 0;  // |X|; 0 means 4n
  std::size_t max_trials = 5;
  std::size_t form_retries = 2;
  std::uint64_t seed = 0;
  SearchMethod method = SearchMethod::fast;
  UnitMethod unit_method = UnitMethod::det;
  std::size_t mc_repetitions = 3;
  std::size_t oracle_cutoff = 64;
  /// run the oracle on the certified alpha as well
  bool verify = false;
};

/// Why alpha was accepted. For kind "projection", s = project(alpha, form)
/// was found to be a unit by unit_test; for abelian groups the inverse is
/// kept so the check is a single product. For kind "oracle", the
/// determinant of M_G(alpha) over K was nonzero.
template <class T>
struct Evidence {
  std::string kind;
  LinearForm<T> form;
  GroupAlgElem<T> projection;
  std::string unit_test;
  std::optional<GroupAlgElem<T>> inverse;
  std::size_t forms_tried = 0;
};

template <class T>
struct FastCheck {
  bool normal = false;  // false means undetermined
  Evidence<T> evidence;
};

/// One-sided: normal == true is a proof, normal == false proves nothing.
template <class T>
FastCheck<T> is_normal_fast(const GaloisAction<T>& act, const ExtElem<T>& alpha, std::mt19937_64& rng,
                            const SearchConfig& cfg = {});

/// M_G(alpha) = [g_i g_j (alpha)] over K.
template <class T>
std::vector<std::vector<ExtElem<T>>> orbit_matrix(const GaloisAction<T>& act, const ExtElem<T>& alpha);
/// Gaussian elimination over K. Throws UsageError above the cutoff.
template <class T>
ExtElem<T> oracle_determinant(const GaloisAction<T>& act, const ExtElem<T>& alpha, std::size_t cutoff = 64);
template <class T>
bool verify_normal_oracle(const GaloisAction<T>& act, const ExtElem<T>& alpha, std::size_t cutoff = 64);
/// F-rank of the coefficient vectors of the conjugates of alpha.
template <class T>
std::size_t conjugate_rank(const GaloisAction<T>& act, const ExtElem<T>& alpha);

template <class T>
struct NormalCertificate {
  ExtElem<T> alpha;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_size = 0;
  Evidence<T> evidence;
  bool verified_by_oracle = false;
};

/// Deterministic in cfg. Throws SearchFailure if every trial is
/// undetermined and the oracle rejects the last alpha too.
template <class T>
NormalCertificate<T> find_normal(const GaloisAction<T>& act, const SearchConfig& cfg = {});

/// Re-runs the cited test. Returns an empty string when the certificate
/// holds, otherwise the first failed check.
template <class T>
std::string check_certificate(const GaloisAction<T>& act, const NormalCertificate<T>& cert,
                              std::size_t mc_repetitions = 3);

}  // namespace normalbasis

#endif
