#include "normalbasis/group_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "normalbasis/poly.hpp"

namespace normalbasis {

namespace {

std::size_t powmod_sz(std::size_t a, std::size_t e, std::size_t m) {
  return static_cast<std::size_t>(powmod(a, e, m));
}

}  // namespace

GroupSpec GroupSpec::abelian(std::vector<std::size_t> orders) {
  for (auto e : orders)
    if (e < 2) throw UsageError("abelian group: generator orders must be at least 2");
  GroupSpec g;
  g.kind = GroupKind::abelian;
  g.orders = std::move(orders);
  return g;
}

GroupSpec GroupSpec::metacyclic(std::size_t m, std::size_t s, std::size_t r, std::size_t t) {
  if (m < 1 || s < 1) throw UsageError("metacyclic group: m and s must be positive");
  if (r < 1 || r > m || t < 1 || t > m) throw UsageError("metacyclic group: need 1 <= r <= m and 1 <= t <= m");
  if (powmod_sz(r, s, m) != 1 % m)
    throw UsageError("metacyclic group: r^s = " + std::to_string(powmod_sz(r, s, m)) + " mod m, expected 1");
  if ((r * t) % m != t % m) throw UsageError("metacyclic group: r*t != t mod m");
  GroupSpec g;
  g.kind = GroupKind::metacyclic;
  g.m = m;
  g.s = s;
  g.r = r;
  g.t = t;
  return g;
}

std::size_t GroupSpec::size() const {
  if (is_abelian()) return std::accumulate(orders.begin(), orders.end(), std::size_t{1}, std::multiplies<>());
  return m * s;
}

std::size_t GroupSpec::r_inverse() const { return s == 0 ? 0 : powmod_sz(r, s - 1, m); }

std::string GroupSpec::describe() const {
  if (is_abelian()) {
    if (orders.empty()) return "C_1";
    std::string out;
    for (std::size_t i = 0; i < orders.size(); ++i) out += (i ? " x C_" : "C_") + std::to_string(orders[i]);
    return out;
  }
  return "metacyclic(m=" + std::to_string(m) + ", s=" + std::to_string(s) + ", r=" + std::to_string(r) +
         ", t=" + std::to_string(t) + ")";
}

std::vector<std::size_t> abelian_exponents(const GroupSpec& g, std::size_t idx) {
  std::vector<std::size_t> e(g.orders.size());
  for (std::size_t k = g.orders.size(); k-- > 0;) {
    e[k] = idx % g.orders[k];
    idx /= g.orders[k];
  }
  return e;
}

std::size_t abelian_index(const GroupSpec& g, const std::vector<std::size_t>& exps) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < g.orders.size(); ++k) idx = idx * g.orders[k] + exps[k] % g.orders[k];
  return idx;
}

std::size_t nf_mul(const GroupSpec& g, std::size_t a, std::size_t b) {
  const std::size_t N = g.size();
  if (a >= N || b >= N) throw UsageError("nf_mul: element index out of range");
  if (g.is_abelian()) {
    // Mixed-radix addition with per-digit wraparound.
    std::size_t out = 0, place = 1;
    for (std::size_t k = g.orders.size(); k-- > 0;) {
      std::size_t e = g.orders[k];
      std::size_t d = (a % e + b % e) % e;
      out += d * place;
      place *= e;
      a /= e;
      b /= e;
    }
    return out;
  }
  const std::size_t m = g.m, s = g.s;
  std::size_t i1 = a / s, j1 = a % s, i2 = b / s, j2 = b % s;
  // tau^{j1} sigma^{i2} = sigma^{i2 r^{-j1}} tau^{j1}
  std::size_t i = (i1 + i2 * powmod_sz(g.r_inverse(), j1, m)) % m;
  std::size_t j = j1 + j2;
  if (j >= s) {
    j -= s;
    i = (i + g.t_reduced()) % m;
  }
  return i * s + j;
}

std::size_t nf_pow(const GroupSpec& g, std::size_t a, std::size_t e) {
  std::size_t r = 0;
  while (e) {
    if (e & 1) r = nf_mul(g, r, a);
    e >>= 1;
    if (e) a = nf_mul(g, a, a);
  }
  return r;
}

std::size_t element_order(const GroupSpec& g, std::size_t a) {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = nf_mul(g, x, a);
    ++k;
  }
  return k;
}

std::size_t nf_inverse(const GroupSpec& g, std::size_t a) { return nf_pow(g, a, element_order(g, a) - 1); }

std::vector<std::size_t> pres_permutation(const GroupSpec& g) {
  if (g.is_abelian()) throw UsageError("pres_convert needs a metacyclic group");
  std::vector<std::size_t> perm(g.size());
  for (std::size_t i = 0; i < g.m; ++i)
    for (std::size_t j = 0; j < g.s; ++j) perm[i * g.s + j] = j * g.m + (i * powmod_sz(g.r, j, g.m)) % g.m;
  return perm;
}

template <class T>
std::vector<T> pres_convert(const GroupSpec& g, const std::vector<T>& coeffs) {
  if (coeffs.size() != g.size()) throw UsageError("pres_convert: wrong coefficient count");
  auto perm = pres_permutation(g);
  std::vector<T> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[perm[k]] = coeffs[k];
  return out;
}

template <class T>
std::vector<T> pres_convert_back(const GroupSpec& g, const std::vector<T>& coeffs) {
  if (coeffs.size() != g.size()) throw UsageError("pres_convert: wrong coefficient count");
  auto perm = pres_permutation(g);
  std::vector<T> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = coeffs[perm[k]];
  return out;
}

template <class T>
GroupAlgElem<T> ga_zero(const CoeffField& f, const GroupSpec& g) {
  return {g, std::vector<T>(g.size(), zero_of<T>(f))};
}

template <class T>
GroupAlgElem<T> ga_one(const CoeffField& f, const GroupSpec& g) {
  return ga_basis<T>(f, g, 0);
}

template <class T>
GroupAlgElem<T> ga_basis(const CoeffField& f, const GroupSpec& g, std::size_t idx) {
  auto e = ga_zero<T>(f, g);
  e.coeffs.at(idx) = one_of<T>(f);
  return e;
}

namespace {

template <class T>
void same_spec(const GroupAlgElem<T>& a, const GroupAlgElem<T>& b) {
  if (!(a.spec == b.spec)) throw UsageError("group algebra elements over different groups");
  if (a.coeffs.size() != a.spec.size() || b.coeffs.size() != b.spec.size())
    throw UsageError("group algebra element has the wrong number of coefficients");
}

}  // namespace

template <class T>
GroupAlgElem<T> ga_add(const GroupAlgElem<T>& a, const GroupAlgElem<T>& b) {
  same_spec(a, b);
  GroupAlgElem<T> r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

template <class T>
GroupAlgElem<T> ga_scale(const GroupAlgElem<T>& a, const T& c) {
  GroupAlgElem<T> r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

template <class T>
GroupAlgElem<T> ga_mul(const CoeffField& f, const GroupAlgElem<T>& a, const GroupAlgElem<T>& b) {
  same_spec(a, b);
  const std::size_t N = a.spec.size();
  auto out = ga_zero<T>(f, a.spec);
  for (std::size_t i = 0; i < N; ++i) {
    if (Scalar<T>::is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < N; ++j) {
      if (Scalar<T>::is_zero(b.coeffs[j])) continue;
      out.coeffs[nf_mul(a.spec, i, j)] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

template <class T>
Matrix<T> mult_matrix(const CoeffField& f, const GroupAlgElem<T>& beta) {
  const std::size_t N = beta.spec.size();
  if (beta.coeffs.size() != N) throw UsageError("mult_matrix: wrong coefficient count");
  Matrix<T> M(N, N, zero_of<T>(f));
  for (std::size_t h = 0; h < N; ++h)
    for (std::size_t g = 0; g < N; ++g)
      if (!Scalar<T>::is_zero(beta.coeffs[g])) M(nf_mul(beta.spec, g, h), h) += beta.coeffs[g];
  return M;
}

template <class T>
bool ga_is_zero(const GroupAlgElem<T>& a) {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const T& x) { return Scalar<T>::is_zero(x); });
}

template <class T>
GroupAlgElem<T> subset_sum(const CoeffField& f, const GroupSpec& g, const std::vector<std::size_t>& elems) {
  auto e = ga_zero<T>(f, g);
  for (auto x : elems) e.coeffs.at(x) += one_of<T>(f);
  return e;
}

std::vector<std::size_t> generated_subgroup(const GroupSpec& g, const std::vector<std::size_t>& gens) {
  std::set<std::size_t> seen{0};
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t x = frontier.back();
    frontier.pop_back();
    for (auto y : gens) {
      std::size_t z = nf_mul(g, x, y);
      if (seen.insert(z).second) frontier.push_back(z);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<std::size_t>> all_subgroups(const GroupSpec& g) {
  std::set<std::vector<std::size_t>> subs;
  const std::size_t N = g.size();
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b) subs.insert(generated_subgroup(g, {a, b}));
  return {subs.begin(), subs.end()};
}

GroupSpec ElementaryDivisors::spec() const {
  std::vector<std::size_t> orders;
  for (const auto& ax : axes) {
    std::size_t q = 1;
    for (std::size_t i = 0; i < ax.b; ++i) q *= ax.p;
    orders.push_back(q);
  }
  return GroupSpec::abelian(orders);
}

ElementaryDivisors elementary_divisors(const std::vector<std::size_t>& orders) {
  GroupSpec g = GroupSpec::abelian(orders);
  ElementaryDivisors ed;
  for (std::size_t k = 0; k < orders.size(); ++k)
    for (auto [p, b] : factor_small(orders[k])) ed.axes.push_back({p, b, k});
  std::stable_sort(ed.axes.begin(), ed.axes.end(), [](const auto& x, const auto& y) {
    return x.p != y.p ? x.p < y.p : x.b < y.b;
  });
  for (const auto& ax : ed.axes) ed.by_prime[ax.p].push_back(ax.b);

  GroupSpec h = ed.spec();
  // CRT: the exponent a_k of generator k splits into a_k mod p^b on each of its axes.
  ed.new_index.resize(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto e = abelian_exponents(g, idx);
    std::vector<std::size_t> ne;
    for (std::size_t i = 0; i < ed.axes.size(); ++i) ne.push_back(e[ed.axes[i].source] % h.orders[i]);
    ed.new_index[idx] = abelian_index(h, ne);
  }
  return ed;
}

#define NB_INSTANTIATE(T)                                                                                   \
  template std::vector<T> pres_convert(const GroupSpec&, const std::vector<T>&);                           \
  template std::vector<T> pres_convert_back(const GroupSpec&, const std::vector<T>&);                      \
  template GroupAlgElem<T> ga_zero(const CoeffField&, const GroupSpec&);                                   \
  template GroupAlgElem<T> ga_one(const CoeffField&, const GroupSpec&);                                    \
  template GroupAlgElem<T> ga_basis(const CoeffField&, const GroupSpec&, std::size_t);                     \
  template GroupAlgElem<T> ga_add(const GroupAlgElem<T>&, const GroupAlgElem<T>&);                         \
  template GroupAlgElem<T> ga_scale(const GroupAlgElem<T>&, const T&);                                     \
  template GroupAlgElem<T> ga_mul(const CoeffField&, const GroupAlgElem<T>&, const GroupAlgElem<T>&);      \
  template Matrix<T> mult_matrix(const CoeffField&, const GroupAlgElem<T>&);                               \
  template bool ga_is_zero(const GroupAlgElem<T>&);                                                        \
  template GroupAlgElem<T> subset_sum(const CoeffField&, const GroupSpec&, const std::vector<std::size_t>&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
