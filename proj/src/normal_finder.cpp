#include "normalbasis/normal_finder.hpp"

#include "normalbasis/abelian_inv.hpp"
#include "normalbasis/metacyclic_inv.hpp"

namespace normalbasis {

namespace {

std::uint64_t resolve_sample_size(const SearchConfig& cfg, std::size_t n) {
  std::uint64_t x = cfg.sample_size ? cfg.sample_size : 4 * static_cast<std::uint64_t>(n);
  if (x < 2 * n) throw UsageError("sample set size " + std::to_string(x) + " is below 2n = " + std::to_string(2 * n));
  return x;
}

template <class T>
bool projection_is_unit(const GaloisAction<T>& act, Evidence<T>& ev, std::mt19937_64& rng, const SearchConfig& cfg) {
  const auto& F = act.K.base();
  if (act.spec.is_abelian()) {
    ev.unit_test = "abelian";
    try {
      ev.inverse = invert_abelian(F, ev.projection);
      return true;
    } catch (const NonUnitError&) {
      ev.inverse.reset();
      return false;
    }
  }
  if (cfg.unit_method == UnitMethod::mc) {
    ev.unit_test = "mc";
    return is_unit_metacyclic_mc(F, ev.projection, rng, cfg.mc_repetitions).unit;
  }
  ev.unit_test = "det";
  return is_unit_metacyclic_det(F, ev.projection).unit;
}

template <class T>
ExtElem<T> sample_elem(const ExtField<T>& K, std::mt19937_64& rng, std::uint64_t size) {
  ExtElem<T> a = K.zero();
  for (auto& c : a.coeffs) c = sample_scalar<T>(K.base(), rng, size);
  return a;
}

}  // namespace

template <class T>
FastCheck<T> is_normal_fast(const GaloisAction<T>& act, const ExtElem<T>& alpha, std::mt19937_64& rng,
                            const SearchConfig& cfg) {
  check_action(act);
  act.K.check(alpha);
  const std::size_t n = act.K.degree();
  const auto X = resolve_sample_size(cfg, n);
  const std::size_t tries = std::max<std::size_t>(cfg.form_retries, 1);
  FastCheck<T> out;
  out.evidence.kind = "projection";
  for (std::size_t k = 0; k < tries; ++k) {
    auto& ev = out.evidence;
    ev.forms_tried = k + 1;
    ev.form.values.assign(n, zero_of<T>(act.K.base()));
    for (auto& v : ev.form.values) v = sample_scalar<T>(act.K.base(), rng, X);
    ev.projection = project(act, alpha, ev.form);
    if (projection_is_unit(act, ev, rng, cfg)) {
      out.normal = true;
      return out;
    }
  }
  return out;
}

template <class T>
std::vector<std::vector<ExtElem<T>>> orbit_matrix(const GaloisAction<T>& act, const ExtElem<T>& alpha) {
  auto orbit = naive_orbit(act, alpha);
  const std::size_t n = orbit.size();
  std::vector<std::vector<ExtElem<T>>> M(n, std::vector<ExtElem<T>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = orbit[nf_mul(act.spec, i, j)];
  return M;
}

template <class T>
ExtElem<T> oracle_determinant(const GaloisAction<T>& act, const ExtElem<T>& alpha, std::size_t cutoff) {
  check_action(act);
  const auto& K = act.K;
  const std::size_t n = K.degree();
  if (n > cutoff)
    throw UsageError("oracle: n = " + std::to_string(n) + " exceeds the cutoff " + std::to_string(cutoff) +
                     "; use the fast path");
  auto M = orbit_matrix(act, alpha);
  ExtElem<T> det = K.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && ext_is_zero(M[p][c])) ++p;
    if (p == n) return K.zero();
    if (p != c) {
      std::swap(M[p], M[c]);
      det = ext_sub(K, K.zero(), det);
    }
    det = ext_mul(K, det, M[c][c]);
    auto inv = ext_inv(K, M[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ext_is_zero(M[i][c])) continue;
      auto q = ext_mul(K, M[i][c], inv);
      for (std::size_t j = c + 1; j < n; ++j) M[i][j] = ext_sub(K, M[i][j], ext_mul(K, q, M[c][j]));
    }
  }
  return det;
}

template <class T>
bool verify_normal_oracle(const GaloisAction<T>& act, const ExtElem<T>& alpha, std::size_t cutoff) {
  return !ext_is_zero(oracle_determinant(act, alpha, cutoff));
}

template <class T>
std::size_t conjugate_rank(const GaloisAction<T>& act, const ExtElem<T>& alpha) {
  check_action(act);
  auto orbit = naive_orbit(act, alpha);
  const std::size_t n = act.K.degree();
  Matrix<T> A(orbit.size(), n, zero_of<T>(act.K.base()));
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = orbit[i].coeffs[j];
  return rank(act.K.base(), A);
}

template <class T>
NormalCertificate<T> find_normal(const GaloisAction<T>& act, const SearchConfig& cfg) {
  check_action(act);
  if (cfg.max_trials == 0) throw UsageError("find_normal: max_trials must be at least 1");
  const auto& K = act.K;
  const std::size_t n = K.degree();
  NormalCertificate<T> cert;
  cert.seed = cfg.seed;
  cert.sample_size = resolve_sample_size(cfg, n);
  std::mt19937_64 rng(cfg.seed);
  ExtElem<T> alpha;
  for (std::size_t trial = 1; trial <= cfg.max_trials; ++trial) {
    do alpha = sample_elem(K, rng, cert.sample_size);
    while (ext_is_zero(alpha));
    cert.alpha = alpha;
    cert.trials = trial;
    if (cfg.method == SearchMethod::oracle) {
      if (verify_normal_oracle(act, alpha, cfg.oracle_cutoff)) {
        cert.evidence.kind = "oracle";
        cert.verified_by_oracle = true;
        return cert;
      }
      continue;
    }
    SearchConfig sub = cfg;
    sub.sample_size = cert.sample_size;
    auto res = is_normal_fast(act, alpha, rng, sub);
    if (res.normal) {
      cert.evidence = std::move(res.evidence);
      if (cfg.verify) {
        cert.verified_by_oracle = verify_normal_oracle(act, alpha, cfg.oracle_cutoff);
        if (!cert.verified_by_oracle) throw SearchFailure("oracle rejected a certified element (seed " +
                                                          std::to_string(cfg.seed) + ")");
      }
      return cert;
    }
  }
  if (cfg.method == SearchMethod::fast && n <= cfg.oracle_cutoff && verify_normal_oracle(act, alpha, cfg.oracle_cutoff)) {
    cert.evidence = Evidence<T>{};
    cert.evidence.kind = "oracle";
    cert.verified_by_oracle = true;
    return cert;
  }
  throw SearchFailure("no normal element found: seed " + std::to_string(cfg.seed) + ", " +
                      std::to_string(cfg.max_trials) + " trials, |X| = " + std::to_string(cert.sample_size));
}

template <class T>
std::string check_certificate(const GaloisAction<T>& act, const NormalCertificate<T>& cert,
                              std::size_t mc_repetitions) {
  check_action(act);
  act.K.check(cert.alpha);
  const auto& F = act.K.base();
  const auto& ev = cert.evidence;
  if (ev.kind == "oracle")
    return verify_normal_oracle(act, cert.alpha, act.K.degree()) ? "" : "oracle determinant is zero";
  if (ev.kind != "projection") return "unknown evidence kind '" + ev.kind + "'";
  act.K.check(ev.form);
  if (project(act, cert.alpha, ev.form) != ev.projection) return "projection does not match alpha and the form";
  if (ev.unit_test == "abelian") {
    if (!ev.inverse) return "abelian evidence carries no inverse";
    if (ev.inverse->spec != act.spec || ev.inverse->coeffs.size() != act.spec.size())
      return "inverse has the wrong shape";
    return ga_mul(F, ev.projection, *ev.inverse) == ga_one<T>(F, act.spec) ? "" : "projection times inverse is not 1";
  }
  if (ev.unit_test == "det" || ev.unit_test == "mc") {
    if (act.spec.is_abelian()) return "metacyclic unit test cited for an abelian group";
    if (ev.unit_test == "mc") {
      std::mt19937_64 rng(cert.seed);
      if (is_unit_metacyclic_mc(F, ev.projection, rng, mc_repetitions).unit) return "";
    }
    return is_unit_metacyclic_det(F, ev.projection).unit ? "" : "projection is not a unit";
  }
  return "unknown unit test '" + ev.unit_test + "'";
}

#define NB_INSTANTIATE(T)                                                                                          \
  template FastCheck<T> is_normal_fast(const GaloisAction<T>&, const ExtElem<T>&, std::mt19937_64&,               \
                                       const SearchConfig&);                                                       \
  template std::vector<std::vector<ExtElem<T>>> orbit_matrix(const GaloisAction<T>&, const ExtElem<T>&);           \
  template ExtElem<T> oracle_determinant(const GaloisAction<T>&, const ExtElem<T>&, std::size_t);                  \
  template bool verify_normal_oracle(const GaloisAction<T>&, const ExtElem<T>&, std::size_t);                      \
  template std::size_t conjugate_rank(const GaloisAction<T>&, const ExtElem<T>&);                                  \
  template NormalCertificate<T> find_normal(const GaloisAction<T>&, const SearchConfig&);                          \
  template std::string check_certificate(const GaloisAction<T>&, const NormalCertificate<T>&, std::size_t);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
