#include "normalbasis/orbit_projection.hpp"

namespace normalbasis {

template <class T>
void check_action(const GaloisAction<T>& act) {
  const std::size_t want = act.spec.is_abelian() ? act.spec.orders.size() : 2;
  if (act.gens.size() != want)
    throw UsageError("action has " + std::to_string(act.gens.size()) + " generator images, group " +
                     act.spec.describe() + " needs " + std::to_string(want));
  if (act.spec.size() != act.K.degree())
    throw UsageError("|G| = " + std::to_string(act.spec.size()) + " differs from deg P = " +
                     std::to_string(act.K.degree()));
  for (const auto& g : act.gens) act.K.check(g.gamma);
}

template <class T>
Automorphism<T> element_auto(const GaloisAction<T>& act, std::size_t idx) {
  const auto& K = act.K;
  if (act.spec.is_abelian()) {
    auto e = abelian_exponents(act.spec, idx);
    Automorphism<T> a = identity_auto(K);
    for (std::size_t k = 0; k < e.size(); ++k) a = compose_autos(K, a, auto_pow(K, act.gens[k], e[k]));
    return a;
  }
  std::size_t i = idx / act.spec.s, j = idx % act.spec.s;
  return compose_autos(K, auto_pow(K, act.gens[0], i), auto_pow(K, act.gens[1], j));
}

namespace {

// Coefficient of the element whose digits are k_i*step_i + j_i, written from
// (ell o giant^k)(baby^j); digits past the group bound are skipped.
template <class T>
std::vector<T> combine(const CoeffField& F, const OrbitTable<LinearForm<T>>& forms,
                       const OrbitTable<ExtElem<T>>& babies, const std::vector<std::size_t>& steps,
                       const std::vector<std::size_t>& orders, std::size_t n) {
  const std::size_t r = orders.size();
  std::size_t total = 1;
  for (auto e : orders) total *= e;
  std::vector<T> out(total, zero_of<T>(F));
  std::vector<std::size_t> kd(r), jd(r);
  for (std::size_t fi = 0; fi < forms.entries.size(); ++fi) {
    std::size_t x = fi;
    for (std::size_t d = r; d-- > 0;) {
      kd[d] = x % forms.bounds[d];
      x /= forms.bounds[d];
    }
    for (std::size_t bi = 0; bi < babies.entries.size(); ++bi) {
      std::size_t y = bi;
      for (std::size_t d = r; d-- > 0;) {
        jd[d] = y % babies.bounds[d];
        y /= babies.bounds[d];
      }
      std::size_t idx = 0;
      bool in_range = true;
      for (std::size_t d = 0; d < r && in_range; ++d) {
        std::size_t a = kd[d] * steps[d] + jd[d];
        in_range = a < orders[d];
        idx = idx * orders[d] + a;
      }
      if (!in_range) continue;
      out[idx] = dot(F, forms.entries[fi].values.data(), babies.entries[bi].coeffs.data(), n);
    }
  }
  return out;
}

std::size_t ceil_sqrt_ratio(std::size_t a, std::size_t b) {
  // least c with c^2 * b >= a
  std::size_t c = 1;
  while (c * c * b < a) ++c;
  return c;
}

}  // namespace

template <class T>
GroupAlgElem<T> project_abelian(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l) {
  check_action(act);
  if (!act.spec.is_abelian()) throw UsageError("project_abelian needs an abelian group");
  const auto& K = act.K;
  const auto& orders = act.spec.orders;
  std::vector<std::size_t> baby_bounds, giant_bounds;
  std::vector<Automorphism<T>> giants;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::size_t s = isqrt_ceil(orders[i]);
    baby_bounds.push_back(s);
    giant_bounds.push_back((orders[i] + s - 1) / s);
    giants.push_back(auto_pow(K, act.gens[i], s));
  }
  auto babies = iterated_orbit(K, alpha, act.gens, baby_bounds);
  auto forms = iterated_forms(K, l, giants, giant_bounds);
  return {act.spec, combine(K.base(), forms, babies, baby_bounds, orders, K.degree())};
}

template <class T>
GroupAlgElem<T> project_metacyclic(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l) {
  check_action(act);
  if (act.spec.is_abelian()) throw UsageError("project_metacyclic needs a metacyclic group");
  const auto& K = act.K;
  const std::size_t m = act.spec.m, s = act.spec.s;
  const auto& sigma = act.gens[0];
  const auto& tau = act.gens[1];
  if (s <= m) {
    // sigma^{kb+i} tau^j (alpha) paired with ell o sigma^{kb}
    const std::size_t b = ceil_sqrt_ratio(m, s), c = (m + b - 1) / b;
    auto babies = iterated_orbit(K, alpha, {sigma, tau}, {b, s});
    auto forms = iterated_forms(K, l, {auto_pow(K, sigma, b)}, {c});
    OrbitTable<LinearForm<T>> forms2{{c, 1}, forms.entries};
    return {act.spec, combine(K.base(), forms2, babies, {b, 1}, {m, s}, K.degree())};
  }
  // tau^{kb+j} sigma^i, then re-indexed
  const std::size_t b = ceil_sqrt_ratio(s, m), c = (s + b - 1) / b;
  auto babies = iterated_orbit(K, alpha, {tau, sigma}, {b, m});
  auto forms = iterated_forms(K, l, {auto_pow(K, tau, b)}, {c});
  OrbitTable<LinearForm<T>> forms2{{c, 1}, forms.entries};
  auto coeffs5 = combine(K.base(), forms2, babies, {b, 1}, {s, m}, K.degree());
  return {act.spec, pres_convert_back(act.spec, coeffs5)};
}

template <class T>
GroupAlgElem<T> project(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l) {
  return act.spec.is_abelian() ? project_abelian(act, alpha, l) : project_metacyclic(act, alpha, l);
}

template <class T>
std::vector<ExtElem<T>> naive_orbit(const GaloisAction<T>& act, const ExtElem<T>& alpha) {
  check_action(act);
  const auto& K = act.K;
  const auto& F = K.base();
  const std::size_t n = K.degree();
  K.check(alpha);
  std::vector<std::size_t> bounds =
      act.spec.is_abelian() ? act.spec.orders : std::vector<std::size_t>{act.spec.m, act.spec.s};
  std::vector<std::vector<T>> table{alpha.coeffs};
  for (std::size_t k = act.gens.size(); k-- > 0;) {
    // Column j of M is gamma^j, so M * coeffs(a) = g(a).
    Matrix<T> Mt(n, n, zero_of<T>(F));
    ExtElem<T> p = K.one();
    for (std::size_t j = 0; j < n; ++j) {
      std::copy(p.coeffs.begin(), p.coeffs.end(), Mt.row(j));
      p = ext_mul(K, p, act.gens[k].gamma);
    }
    Matrix<T> M = transpose(Mt);
    const std::size_t block = table.size();
    for (std::size_t a = 1; a < bounds[k]; ++a)
      for (std::size_t x = 0; x < block; ++x) table.push_back(matvec(F, M, table[(a - 1) * block + x]));
  }
  std::vector<ExtElem<T>> out;
  out.reserve(table.size());
  for (auto& v : table) out.push_back({std::move(v)});
  return out;
}

template <class T>
GroupAlgElem<T> project_naive(const GaloisAction<T>& act, const ExtElem<T>& alpha, const LinearForm<T>& l) {
  auto orbit = naive_orbit(act, alpha);
  GroupAlgElem<T> out{act.spec, {}};
  out.coeffs.reserve(orbit.size());
  for (const auto& x : orbit) out.coeffs.push_back(pairing(act.K, l, x));
  return out;
}

#define NB_INSTANTIATE(T)                                                                                     \
  template void check_action(const GaloisAction<T>&);                                                        \
  template Automorphism<T> element_auto(const GaloisAction<T>&, std::size_t);                                \
  template GroupAlgElem<T> project_abelian(const GaloisAction<T>&, const ExtElem<T>&, const LinearForm<T>&); \
  template GroupAlgElem<T> project_metacyclic(const GaloisAction<T>&, const ExtElem<T>&,                     \
                                              const LinearForm<T>&);                                         \
  template GroupAlgElem<T> project(const GaloisAction<T>&, const ExtElem<T>&, const LinearForm<T>&);         \
  template GroupAlgElem<T> project_naive(const GaloisAction<T>&, const ExtElem<T>&, const LinearForm<T>&);   \
  template std::vector<ExtElem<T>> naive_orbit(const GaloisAction<T>&, const ExtElem<T>&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
