#include "normalbasis/poly.hpp"

#include <algorithm>
#include <map>

#include "normalbasis/ring_poly.hpp"

namespace normalbasis {

namespace {

template <class T>
struct ScalarRing {
  using Elem = T;
  CoeffField f;
  T zero() const { return zero_of<T>(f); }
  T from_int(long long v) const { return Scalar<T>::from_int(f, v); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  bool is_zero(const T& a) const { return Scalar<T>::is_zero(a); }
  T inv(const T& a) const { return Scalar<T>::inverse(a); }
};

}  // namespace

template <class T>
Poly<T>::Poly(CoeffField field) : field_(field) {}

template <class T>
Poly<T>::Poly(CoeffField field, std::vector<T> coeffs) : field_(field), c_(std::move(coeffs)) {
  normalize();
}

template <class T>
void Poly<T>::normalize() {
  while (!c_.empty() && Scalar<T>::is_zero(c_.back())) c_.pop_back();
}

template <class T>
Poly<T> Poly<T>::constant(CoeffField field, const T& c) {
  return Poly(field, {c});
}

template <class T>
Poly<T> Poly<T>::monomial(CoeffField field, const T& c, std::size_t k) {
  std::vector<T> v(k + 1, zero_of<T>(field));
  v[k] = c;
  return Poly(field, std::move(v));
}

template <class T>
Poly<T> Poly<T>::from_ints(CoeffField field, std::initializer_list<long long> coeffs) {
  std::vector<T> v;
  for (auto c : coeffs) v.push_back(Scalar<T>::from_int(field, c));
  return Poly(field, std::move(v));
}

template <class T>
Poly<T>& Poly<T>::operator+=(const Poly& o) {
  require_same_field(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), zero_of<T>(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

template <class T>
Poly<T>& Poly<T>::operator-=(const Poly& o) {
  require_same_field(*this, o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), zero_of<T>(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

template <class T>
Poly<T> Poly<T>::negated() const {
  std::vector<T> v = c_;
  for (auto& x : v) x = -x;
  return Poly(field_, std::move(v));
}

template <class T>
Poly<T> Poly<T>::scaled(const T& s) const {
  if (Scalar<T>::is_zero(s)) return Poly(field_);
  std::vector<T> v = c_;
  for (auto& x : v) x *= s;
  return Poly(field_, std::move(v));
}

template <class T>
Poly<T> Poly<T>::monic() const {
  if (c_.empty() || Scalar<T>::is_one(c_.back())) return *this;
  return scaled(Scalar<T>::inverse(c_.back()));
}

template <class T>
Poly<T> Poly<T>::shifted(std::size_t k) const {
  if (c_.empty()) return *this;
  std::vector<T> v(k, zero_of<T>(field_));
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(field_, std::move(v));
}

template <class T>
Poly<T> Poly<T>::truncated(std::size_t k) const {
  if (k >= c_.size()) return *this;
  return Poly(field_, std::vector<T>(c_.begin(), c_.begin() + static_cast<long>(k)));
}

template <class T>
Poly<T> Poly<T>::reversed(std::size_t len) const {
  if (len < c_.size()) throw UsageError("reversed: length below polynomial size");
  std::vector<T> v(len, zero_of<T>(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) v[len - 1 - i] = c_[i];
  return Poly(field_, std::move(v));
}

template <class T>
Poly<T> Poly<T>::slice(std::size_t lo, std::size_t hi) const {
  hi = std::min(hi, c_.size());
  if (lo >= hi) return Poly(field_);
  return Poly(field_, std::vector<T>(c_.begin() + static_cast<long>(lo), c_.begin() + static_cast<long>(hi)));
}

template <class T>
Poly<T> Poly<T>::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<T> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Scalar<T>::from_int(field_, static_cast<long long>(i));
  return Poly(field_, std::move(v));
}

template <class T>
T Poly<T>::operator()(const T& x) const {
  T acc = zero_of<T>(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

template <class T>
void require_same_field(const Poly<T>& a, const Poly<T>& b) {
  if (!(a.field() == b.field()))
    throw UsageError("polynomials over different fields: " + a.field().describe() + " vs " + b.field().describe());
}

namespace {

// Residues in [0, p). Each output coefficient of the base case is one lazy
// 128-bit sum, reduced once, instead of a reduction per product.
using U64 = std::uint64_t;
using U128 = unsigned __int128;

void convolve_modp(std::span<const U64> a, std::span<const U64> b, std::span<U64> out, U64 p) {
  constexpr U128 fold_at = static_cast<U128>(1) << 127;
  for (std::size_t k = 0; k + 1 < a.size() + b.size(); ++k) {
    std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0, hi = std::min(k, a.size() - 1);
    U128 acc = out[k];
    for (std::size_t i = lo; i <= hi; ++i) {
      acc += static_cast<U128>(a[i]) * b[k - i];
      if (acc >= fold_at) acc %= p;
    }
    out[k] = static_cast<U64>(acc % p);
  }
}

U64 add_modp(U64 x, U64 y, U64 p) { return x >= p - y ? x - (p - y) : x + y; }
U64 sub_modp(U64 x, U64 y, U64 p) { return x >= y ? x - y : x + (p - y); }

void karatsuba_modp(std::span<const U64> a, std::span<const U64> b, std::span<U64> out, U64 p) {
  if (a.empty() || b.empty()) return;
  if (a.size() < b.size()) std::swap(a, b);
  if (b.size() < kKaratsubaThreshold) {
    convolve_modp(a, b, out, p);
    return;
  }
  if (a.size() != b.size()) {
    for (std::size_t lo = 0; lo < a.size(); lo += b.size())
      karatsuba_modp(a.subspan(lo, std::min(b.size(), a.size() - lo)), b, out.subspan(lo), p);
    return;
  }
  const std::size_t n = a.size(), h = n / 2;
  std::vector<U64> z0(2 * h - 1), z2(2 * (n - h) - 1), sa(n - h), sb(n - h), z1(2 * (n - h) - 1);
  karatsuba_modp(a.first(h), b.first(h), z0, p);
  karatsuba_modp(a.subspan(h), b.subspan(h), z2, p);
  for (std::size_t i = 0; i < n - h; ++i) {
    sa[i] = i < h ? add_modp(a[i], a[h + i], p) : a[h + i];
    sb[i] = i < h ? add_modp(b[i], b[h + i], p) : b[h + i];
  }
  karatsuba_modp(sa, sb, z1, p);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = sub_modp(z1[i], z0[i], p);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = sub_modp(z1[i], z2[i], p);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = add_modp(out[i], z0[i], p);
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = add_modp(out[i + h], z1[i], p);
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = add_modp(out[i + 2 * h], z2[i], p);
}

std::vector<ModP> mul_modp(const CoeffField& f, std::span<const ModP> a, std::span<const ModP> b) {
  if (a.empty() || b.empty()) return {};
  const U64 p = f.modulus;
  std::vector<U64> ua(a.size()), ub(b.size()), uo(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) ua[i] = a[i].value();
  for (std::size_t i = 0; i < b.size(); ++i) ub[i] = b[i].value();
  karatsuba_modp(ua, ub, uo, p);
  while (!uo.empty() && uo.back() == 0) uo.pop_back();
  std::vector<ModP> out;
  out.reserve(uo.size());
  for (auto x : uo) out.push_back(ModP::raw(x, p));
  return out;
}

}  // namespace

template <class T>
std::vector<T> mul_coeffs(const CoeffField& f, std::span<const T> a, std::span<const T> b) {
  if constexpr (std::is_same_v<T, ModP>) return mul_modp(f, a, b);
  ScalarRing<T> ring{f};
  return ring::mul(ring, a, b, kKaratsubaThreshold);
}

template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
  require_same_field(a, b);
  return Poly<T>(a.field(), mul_coeffs<T>(a.field(), a.coeffs(), b.coeffs()));
}

template <class T>
Poly<T> series_inverse(const Poly<T>& f, std::size_t prec) {
  const auto& F = f.field();
  if (f.is_zero() || Scalar<T>::is_zero(f.coeff(0))) throw DivisionByZero("series_inverse: zero constant term");
  if (prec == 0) return Poly<T>(F);
  T c0inv = Scalar<T>::inverse(f.coeff(0));
  Poly<T> g = Poly<T>::constant(F, c0inv);
  std::size_t k = 1;
  while (k < prec) {
    k = std::min(2 * k, prec);
    Poly<T> e = (f.truncated(k) * g).truncated(k);
    e = Poly<T>::constant(F, Scalar<T>::from_int(F, 2)) - e;
    g = (g * e).truncated(k);
  }
  return g;
}

namespace {

template <class T>
DivMod<T> divmod_classical(const Poly<T>& a, const Poly<T>& b) {
  const auto& F = a.field();
  std::vector<T> r = a.coeffs();
  const std::size_t db = b.size() - 1;
  std::vector<T> q(r.size() - db, zero_of<T>(F));
  T linv = Scalar<T>::inverse(b.lead());
  const auto& bc = b.coeffs();
  for (std::size_t i = r.size(); i-- > db;) {
    if (Scalar<T>::is_zero(r[i])) continue;
    T c = r[i] * linv;
    q[i - db] = c;
    for (std::size_t j = 0; j < db; ++j) r[i - db + j] -= c * bc[j];
    r[i] = zero_of<T>(F);
  }
  r.resize(db);
  return {Poly<T>(F, std::move(q)), Poly<T>(F, std::move(r))};
}

}  // namespace

template <class T>
DivMod<T> poly_divmod(const Poly<T>& a, const Poly<T>& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const auto& F = a.field();
  if (a.size() < b.size()) return {Poly<T>(F), a};
  const std::size_t qlen = a.size() - b.size() + 1;
  if (b.size() < 64 || qlen < 64) return divmod_classical(a, b);
  const std::size_t la = a.size(), lb = b.size();
  Poly<T> inv = series_inverse(b.reversed(lb), qlen);
  Poly<T> rq = (a.reversed(la).truncated(qlen) * inv).truncated(qlen);
  Poly<T> q = rq.reversed(qlen);
  Poly<T> r = a - q * b;
  return {std::move(q), std::move(r)};
}

template <class T>
Poly<T> poly_rem(const Poly<T>& a, const Poly<T>& b) {
  return poly_divmod(a, b).remainder;
}

template <class T>
Poly<T> poly_quo(const Poly<T>& a, const Poly<T>& b) {
  return poly_divmod(a, b).quotient;
}

template <class T>
Egcd<T> poly_egcd(const Poly<T>& a, const Poly<T>& b) {
  require_same_field(a, b);
  if (a.is_zero() && b.is_zero()) throw UsageError("poly_egcd: both inputs are zero");
  const auto& F = a.field();
  Poly<T> r0 = a, r1 = b;
  Poly<T> u0 = Poly<T>::constant(F, one_of<T>(F)), u1(F);
  Poly<T> v0(F), v1 = Poly<T>::constant(F, one_of<T>(F));
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<T> u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
    Poly<T> v2 = v0 - q * v1;
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (r0.is_zero()) return {r0, u0, v0};
  T linv = Scalar<T>::inverse(r0.lead());
  return {r0.scaled(linv), u0.scaled(linv), v0.scaled(linv)};
}

template <class T>
Poly<T> poly_gcd(const Poly<T>& a, const Poly<T>& b) {
  require_same_field(a, b);
  Poly<T> r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly<T> r = poly_rem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return r0.monic();
}

template <class T>
Poly<T> cyclotomic(const CoeffField& f, std::size_t n) {
  if (n == 0) throw UsageError("cyclotomic: n must be positive");
  Poly<T> p = Poly<T>::monomial(f, one_of<T>(f), n) - Poly<T>::constant(f, one_of<T>(f));
  for (std::size_t d : divisors(n)) {
    if (d == n) continue;
    p = poly_quo(p, cyclotomic<T>(f, d));
  }
  return p;
}

namespace {

template <class T>
struct Tree {
  std::vector<std::vector<Poly<T>>> levels;
};

template <class T>
Tree<T> build_tree(const std::vector<Poly<T>>& leaves) {
  Tree<T> t;
  t.levels.push_back(leaves);
  while (t.levels.back().size() > 1) {
    const auto& prev = t.levels.back();
    std::vector<Poly<T>> next;
    for (std::size_t i = 0; i + 1 < prev.size(); i += 2) next.push_back(prev[i] * prev[i + 1]);
    if (prev.size() % 2) next.push_back(prev.back());
    t.levels.push_back(std::move(next));
  }
  return t;
}

}  // namespace

template <class T>
std::vector<Poly<T>> multi_rem(const Poly<T>& f, const std::vector<Poly<T>>& moduli) {
  if (moduli.empty()) return {};
  for (const auto& m : moduli) require_same_field(f, m);
  Tree<T> t = build_tree(moduli);
  std::vector<Poly<T>> cur{poly_rem(f, t.levels.back().front())};
  for (std::size_t lv = t.levels.size() - 1; lv-- > 0;) {
    const auto& nodes = t.levels[lv];
    std::vector<Poly<T>> next(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) next[i] = poly_rem(cur[i / 2], nodes[i]);
    cur = std::move(next);
  }
  return cur;
}

namespace {

template <class T>
std::pair<Poly<T>, Poly<T>> crt_rec(const std::vector<Poly<T>>& res, const std::vector<Poly<T>>& mod, std::size_t lo,
                                    std::size_t hi) {
  if (hi - lo == 1) return {poly_rem(res[lo], mod[lo]), mod[lo]};
  std::size_t mid = (lo + hi) / 2;
  auto [r1, m1] = crt_rec(res, mod, lo, mid);
  auto [r2, m2] = crt_rec(res, mod, mid, hi);
  Egcd<T> e = poly_egcd(m1, m2);
  if (!e.g.is_one()) throw StructureError("poly_crt: moduli are not pairwise coprime");
  // x = r1 + m1 * ((r2 - r1) * u mod m2) where u*m1 = 1 mod m2
  Poly<T> m = m1 * m2;
  Poly<T> x = r1 + m1 * poly_rem((r2 - r1) * e.u, m2);
  return {poly_rem(x, m), std::move(m)};
}

}  // namespace

template <class T>
Poly<T> poly_crt(const std::vector<Poly<T>>& residues, const std::vector<Poly<T>>& moduli) {
  if (residues.size() != moduli.size()) throw UsageError("poly_crt: residue and modulus counts differ");
  if (moduli.empty()) throw UsageError("poly_crt: no moduli");
  for (const auto& m : moduli)
    if (m.is_zero()) throw DivisionByZero("poly_crt: zero modulus");
  return crt_rec(residues, moduli, 0, moduli.size()).first;
}

template <class T>
std::vector<T> multipoint_eval(const Poly<T>& f, const std::vector<T>& points) {
  const auto& F = f.field();
  if (points.size() < kSubproductThreshold) {
    std::vector<T> out;
    out.reserve(points.size());
    for (const auto& x : points) out.push_back(f(x));
    return out;
  }
  ScalarRing<T> ring{F};
  return ring::multipoint_eval(ring, f.coeffs(), points);
}

template <class T>
Poly<T> interpolate(const CoeffField& f, const std::vector<T>& points, const std::vector<T>& values) {
  if (points.size() != values.size()) throw UsageError("interpolate: point and value counts differ");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw UsageError("interpolate: repeated point");
  if (points.empty()) return Poly<T>(f);
  if (points.size() < kSubproductThreshold) {
    // Lagrange
    Poly<T> acc(f);
    for (std::size_t i = 0; i < points.size(); ++i) {
      Poly<T> basis = Poly<T>::constant(f, one_of<T>(f));
      T denom = one_of<T>(f);
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == i) continue;
        basis = basis * Poly<T>(f, {-points[j], one_of<T>(f)});
        denom *= points[i] - points[j];
      }
      acc += basis.scaled(values[i] / denom);
    }
    return acc;
  }
  ScalarRing<T> ring{f};
  return Poly<T>(f, ring::interpolate(ring, points, values));
}

std::size_t euler_phi(std::size_t n) {
  std::size_t r = n;
  for (auto [p, e] : factor_small(n)) r = r / p * (p - 1);
  return r;
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> lo, hi;
  for (std::size_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::vector<std::pair<std::size_t, std::size_t>> factor_small(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::size_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

#define NB_INSTANTIATE(T)                                                                                   \
  template class Poly<T>;                                                                                   \
  template void require_same_field(const Poly<T>&, const Poly<T>&);                                        \
  template std::vector<T> mul_coeffs(const CoeffField&, std::span<const T>, std::span<const T>);           \
  template Poly<T> poly_mul(const Poly<T>&, const Poly<T>&);                                               \
  template DivMod<T> poly_divmod(const Poly<T>&, const Poly<T>&);                                          \
  template Poly<T> poly_rem(const Poly<T>&, const Poly<T>&);                                               \
  template Poly<T> poly_quo(const Poly<T>&, const Poly<T>&);                                               \
  template Poly<T> series_inverse(const Poly<T>&, std::size_t);                                            \
  template Egcd<T> poly_egcd(const Poly<T>&, const Poly<T>&);                                              \
  template Poly<T> poly_gcd(const Poly<T>&, const Poly<T>&);                                               \
  template Poly<T> cyclotomic(const CoeffField&, std::size_t);                                             \
  template std::vector<Poly<T>> multi_rem(const Poly<T>&, const std::vector<Poly<T>>&);                    \
  template Poly<T> poly_crt(const std::vector<Poly<T>>&, const std::vector<Poly<T>>&);                     \
  template std::vector<T> multipoint_eval(const Poly<T>&, const std::vector<T>&);                          \
  template Poly<T> interpolate(const CoeffField&, const std::vector<T>&, const std::vector<T>&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
