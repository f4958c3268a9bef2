#include "normalbasis/field_ext.hpp"

#include <iostream>

namespace normalbasis {

namespace {

std::function<void(const std::string&)>& warning_sink() {
  static std::function<void(const std::string&)> sink = [](const std::string& m) {
    std::cerr << "warning: " << m << '\n';
  };
  return sink;
}

}  // namespace

void set_warning_sink(std::function<void(const std::string&)> sink) { warning_sink() = std::move(sink); }

void warn(const std::string& msg) {
  if (warning_sink()) warning_sink()(msg);
}

std::size_t isqrt_ceil(std::size_t n) {
  std::size_t t = 0;
  while (t * t < n) ++t;
  return t;
}

std::size_t iroot34_ceil(std::size_t n) {
  using u128 = unsigned __int128;
  u128 n3 = static_cast<u128>(n) * n * n;
  std::size_t t = 0;
  while (static_cast<u128>(t) * t * t * t < n3) ++t;
  return t;
}

template <class T>
ExtField<T>::ExtField(Poly<T> P) : P_(std::move(P)), n_(0), rinv_(P_.field()) {
  if (P_.degree() < 1) throw UsageError("ExtField: modulus must have degree >= 1");
  if (!Scalar<T>::is_one(P_.lead())) throw UsageError("ExtField: modulus must be monic");
  n_ = static_cast<std::size_t>(P_.degree());
  rinv_ = series_inverse(P_.reversed(n_ + 1), 2 * n_ - 1);
}

template <class T>
ExtElem<T> ExtField<T>::zero() const {
  return {std::vector<T>(n_, zero_of<T>(base()))};
}

template <class T>
ExtElem<T> ExtField<T>::one() const {
  return from_scalar(one_of<T>(base()));
}

template <class T>
ExtElem<T> ExtField<T>::gen() const {
  return from_poly(Poly<T>::monomial(base(), one_of<T>(base()), 1));
}

template <class T>
ExtElem<T> ExtField<T>::from_scalar(const T& c) const {
  ExtElem<T> e = zero();
  e.coeffs[0] = c;
  return e;
}

template <class T>
ExtElem<T> ExtField<T>::from_poly(const Poly<T>& p) const {
  Poly<T> r = p.size() <= n_ ? p : (p.size() <= 2 * n_ - 1 ? reduce(p) : poly_rem(p, P_));
  ExtElem<T> e{r.coeffs()};
  e.coeffs.resize(n_, zero_of<T>(base()));
  return e;
}

template <class T>
void ExtField<T>::check(const ExtElem<T>& a) const {
  if (a.coeffs.size() != n_)
    throw UsageError("element has " + std::to_string(a.coeffs.size()) + " coefficients, field degree is " +
                     std::to_string(n_));
}

template <class T>
void ExtField<T>::check(const LinearForm<T>& l) const {
  if (l.values.size() != n_)
    throw UsageError("linear form has " + std::to_string(l.values.size()) + " values, field degree is " +
                     std::to_string(n_));
}

template <class T>
Poly<T> ExtField<T>::reduce(const Poly<T>& a) const {
  if (a.size() <= n_) return a;
  if (a.size() > 2 * n_ - 1) return poly_rem(a, P_);
  if (n_ < 32) return poly_rem(a, P_);
  // Barrett: the quotient is read off rev(a) * rev(P)^{-1}.
  const std::size_t m = a.size() - n_;
  Poly<T> qrev = (a.reversed(a.size()).truncated(m) * rinv_.truncated(m)).truncated(m);
  Poly<T> q = qrev.reversed(m);
  return (a - q * P_).truncated(n_);
}

template <class T>
bool ext_is_zero(const ExtElem<T>& a) {
  for (const auto& c : a.coeffs)
    if (!Scalar<T>::is_zero(c)) return false;
  return true;
}

template <class T>
ExtElem<T> ext_add(const ExtField<T>& K, const ExtElem<T>& a, const ExtElem<T>& b) {
  K.check(a);
  K.check(b);
  ExtElem<T> r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

template <class T>
ExtElem<T> ext_sub(const ExtField<T>& K, const ExtElem<T>& a, const ExtElem<T>& b) {
  K.check(a);
  K.check(b);
  ExtElem<T> r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  return r;
}

template <class T>
ExtElem<T> ext_scale(const ExtField<T>& K, const ExtElem<T>& a, const T& c) {
  K.check(a);
  ExtElem<T> r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

template <class T>
ExtElem<T> ext_mul(const ExtField<T>& K, const ExtElem<T>& a, const ExtElem<T>& b) {
  K.check(a);
  K.check(b);
  auto prod = mul_coeffs<T>(K.base(), a.coeffs, b.coeffs);
  return K.from_poly(Poly<T>(K.base(), std::move(prod)));
}

template <class T>
ExtElem<T> ext_inv(const ExtField<T>& K, const ExtElem<T>& a) {
  K.check(a);
  if (ext_is_zero(a)) throw DivisionByZero("ext_inv: inverse of zero");
  Egcd<T> e = poly_egcd(K.lift(a), K.modulus());
  if (!e.g.is_one()) {
    std::vector<std::string> factor;
    for (const auto& c : e.g.coeffs()) factor.push_back(Scalar<T>::to_string(c));
    throw ZeroDivisorError("ext_inv: element shares a factor of degree " + std::to_string(e.g.degree()) +
                               " with the modulus",
                           factor);
  }
  return K.from_poly(e.u);
}

template <class T>
ExtElem<T> ext_pow(const ExtField<T>& K, ExtElem<T> a, std::uint64_t e) {
  ExtElem<T> r = K.one();
  while (e) {
    if (e & 1) r = ext_mul(K, r, a);
    e >>= 1;
    if (e) a = ext_mul(K, a, a);
  }
  return r;
}

template <class T>
T pairing(const ExtField<T>& K, const LinearForm<T>& l, const ExtElem<T>& a) {
  K.check(l);
  K.check(a);
  return dot(K.base(), l.values.data(), a.coeffs.data(), K.degree());
}

namespace {

// gamma^0 .. gamma^{count-1} as the rows of a matrix.
template <class T>
Matrix<T> power_rows(const ExtField<T>& K, const ExtElem<T>& gamma, std::size_t count, ExtElem<T>& next) {
  const std::size_t n = K.degree();
  Matrix<T> rows(count, n, zero_of<T>(K.base()));
  ExtElem<T> cur = K.one();
  for (std::size_t i = 0; i < count; ++i) {
    std::copy(cur.coeffs.begin(), cur.coeffs.end(), rows.row(i));
    cur = ext_mul(K, cur, gamma);
  }
  next = std::move(cur);
  return rows;
}

}  // namespace

template <class T>
ExtElem<T> modcomp_horner(const ExtField<T>& K, const ExtElem<T>& alpha, const ExtElem<T>& gamma) {
  K.check(alpha);
  K.check(gamma);
  ExtElem<T> acc = K.zero();
  for (std::size_t i = alpha.coeffs.size(); i-- > 0;) {
    acc = ext_mul(K, acc, gamma);
    acc.coeffs[0] += alpha.coeffs[i];
  }
  return acc;
}

namespace {

template <class T>
ExtElem<T> brent_kung(const ExtField<T>& K, const std::vector<T>& alpha, const ExtElem<T>& gamma) {
  const std::size_t n = K.degree(), len = alpha.size();
  const auto& F = K.base();
  if (len <= 1) return len == 0 ? K.zero() : K.from_scalar(alpha[0]);
  const std::size_t t = isqrt_ceil(len), k = (len + t - 1) / t;
  ExtElem<T> gt;
  Matrix<T> baby = power_rows(K, gamma, t, gt);
  Matrix<T> A(k, t, zero_of<T>(F));
  for (std::size_t i = 0; i < len; ++i) A(i / t, i % t) = alpha[i];
  Matrix<T> B = matmul(F, A, baby);
  ExtElem<T> acc{std::vector<T>(B.row(k - 1), B.row(k - 1) + n)};
  for (std::size_t j = k - 1; j-- > 0;) {
    acc = ext_mul(K, acc, gt);
    for (std::size_t c = 0; c < n; ++c) acc.coeffs[c] += B(j, c);
  }
  return acc;
}

}  // namespace

template <class T>
ExtElem<T> modcomp(const ExtField<T>& K, const ExtElem<T>& alpha, const ExtElem<T>& gamma) {
  K.check(alpha);
  K.check(gamma);
  return brent_kung(K, alpha.coeffs, gamma);
}

template <class T>
ExtElem<T> modcomp(const ExtField<T>& K, const Poly<T>& alpha, const ExtElem<T>& gamma) {
  K.check(gamma);
  if (!(alpha.field() == K.base())) throw UsageError("modcomp: polynomial over a different field");
  return brent_kung(K, alpha.coeffs(), gamma);
}

template <class T>
Automorphism<T> identity_auto(const ExtField<T>& K) {
  return {K.gen()};
}

template <class T>
Automorphism<T> compose_autos(const ExtField<T>& K, const Automorphism<T>& g, const Automorphism<T>& h) {
  return {modcomp(K, h.gamma, g.gamma)};
}

template <class T>
Automorphism<T> auto_pow(const ExtField<T>& K, const Automorphism<T>& g, std::uint64_t e) {
  Automorphism<T> r = identity_auto(K), b = g;
  while (e) {
    if (e & 1) r = compose_autos(K, r, b);
    e >>= 1;
    if (e) b = compose_autos(K, b, b);
  }
  return r;
}

template <class T>
ExtElem<T> apply(const ExtField<T>& K, const Automorphism<T>& g, const ExtElem<T>& a) {
  return modcomp(K, a, g.gamma);
}

template <class T>
std::vector<ExtElem<T>> multi_apply(const ExtField<T>& K, const Automorphism<T>& g,
                                    const std::vector<ExtElem<T>>& alphas) {
  if (alphas.empty()) return {};
  for (const auto& a : alphas) K.check(a);
  K.check(g.gamma);
  const std::size_t n = K.degree();
  const auto& F = K.base();
  if (n == 1) return alphas;
  const std::size_t t = iroot34_ceil(n), m = (n + t - 1) / t;
  const std::size_t chunk = isqrt_ceil(n);
  ExtElem<T> gt;
  Matrix<T> gamma_pows = power_rows(K, g.gamma, t, gt);
  const Matrix<T> gamma_cols = transpose(gamma_pows);

  std::vector<ExtElem<T>> out;
  out.reserve(alphas.size());
  for (std::size_t lo = 0; lo < alphas.size(); lo += chunk) {
    const std::size_t s = std::min(chunk, alphas.size() - lo);
    // Row i*m + j of A holds coefficients j*t .. j*t+t-1 of alpha_i.
    Matrix<T> A(s * m, t, zero_of<T>(F));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t c = 0; c < n; ++c) A(i * m + c / t, c % t) = alphas[lo + i].coeffs[c];
    Matrix<T> B = matmul_transB(F, A, gamma_cols);
    for (std::size_t i = 0; i < s; ++i) {
      ExtElem<T> acc{std::vector<T>(B.row(i * m + m - 1), B.row(i * m + m - 1) + n)};
      for (std::size_t j = m - 1; j-- > 0;) {
        acc = ext_mul(K, acc, gt);
        const T* row = B.row(i * m + j);
        for (std::size_t c = 0; c < n; ++c) acc.coeffs[c] += row[c];
      }
      out.push_back(std::move(acc));
    }
  }
  return out;
}

namespace {

// ell(xi^j) for j < 2n-1: the series N / rev(P) with N = ell * rev(P) mod x^n.
template <class T>
Poly<T> power_values(const ExtField<T>& K, const LinearForm<T>& l) {
  const std::size_t n = K.degree();
  Poly<T> N = (Poly<T>(K.base(), l.values) * K.modulus().reversed(n + 1)).truncated(n);
  return (N * K.rev_inverse()).truncated(2 * n - 1);
}

// ell'_i = sum_a gamma_a ell(xi^{a+i}).
template <class T>
LinearForm<T> shifted_form(const ExtField<T>& K, const Poly<T>& H, const ExtElem<T>& gamma) {
  const std::size_t n = K.degree();
  const auto& F = K.base();
  Poly<T> R = Poly<T>(F, gamma.coeffs).reversed(n);
  Poly<T> prod = R * H;
  LinearForm<T> out{std::vector<T>(n, zero_of<T>(F))};
  for (std::size_t i = 0; i < n; ++i) out.values[i] = prod.coeff(n - 1 + i);
  return out;
}

}  // namespace

template <class T>
LinearForm<T> transposed_mul(const ExtField<T>& K, const LinearForm<T>& l, const ExtElem<T>& gamma) {
  K.check(l);
  K.check(gamma);
  return shifted_form(K, power_values(K, l), gamma);
}

template <class T>
std::vector<LinearForm<T>> multi_transpose(const ExtField<T>& K, const std::vector<LinearForm<T>>& ls,
                                           const Automorphism<T>& g) {
  if (ls.empty()) return {};
  for (const auto& l : ls) K.check(l);
  K.check(g.gamma);
  const std::size_t n = K.degree();
  const auto& F = K.base();
  if (n == 1) return ls;
  const std::size_t t = iroot34_ceil(n), m = (n + t - 1) / t;
  const std::size_t chunk = isqrt_ceil(n);
  ExtElem<T> gt;
  Matrix<T> baby = power_rows(K, g.gamma, t, gt);
  std::vector<ExtElem<T>> giant{K.one()};
  for (std::size_t q = 1; q < m; ++q) giant.push_back(ext_mul(K, giant.back(), gt));

  std::vector<LinearForm<T>> out;
  out.reserve(ls.size());
  for (std::size_t lo = 0; lo < ls.size(); lo += chunk) {
    const std::size_t s = std::min(chunk, ls.size() - lo);
    // Row i*m + q is ell_i o (mult by gamma^{tq}); pairing it with gamma^k
    // gives (ell_i o g)(xi^{tq+k}).
    Matrix<T> L(s * m, n, zero_of<T>(F));
    for (std::size_t i = 0; i < s; ++i) {
      const Poly<T> H = m > 1 ? power_values(K, ls[lo + i]) : Poly<T>(F);
      for (std::size_t q = 0; q < m; ++q) {
        LinearForm<T> lq = q == 0 ? ls[lo + i] : shifted_form(K, H, giant[q]);
        std::copy(lq.values.begin(), lq.values.end(), L.row(i * m + q));
      }
    }
    Matrix<T> V = matmul_transB(F, L, baby);
    for (std::size_t i = 0; i < s; ++i) {
      LinearForm<T> r{std::vector<T>(n, zero_of<T>(F))};
      for (std::size_t j = 0; j < n; ++j) r.values[j] = V(i * m + j / t, j % t);
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

void check_bounds(std::size_t n, std::size_t ngens, const std::vector<std::size_t>& bounds, const char* who) {
  if (bounds.size() != ngens) throw UsageError(std::string(who) + ": one bound per generator expected");
  std::size_t prod = 1;
  for (auto b : bounds) {
    if (b == 0) throw UsageError(std::string(who) + ": bounds must be positive");
    prod *= b;
  }
  if (prod > 4 * isqrt_ceil(n))
    warn(std::string(who) + ": table of " + std::to_string(prod) + " entries exceeds 4*ceil(sqrt(" +
         std::to_string(n) + "))");
}

}  // namespace

template <class T>
OrbitTable<ExtElem<T>> iterated_orbit(const ExtField<T>& K, const ExtElem<T>& alpha,
                                      const std::vector<Automorphism<T>>& gens,
                                      const std::vector<std::size_t>& bounds) {
  K.check(alpha);
  check_bounds(K.degree(), gens.size(), bounds, "iterated_orbit");
  std::vector<ExtElem<T>> table{alpha};
  // Innermost generator first, so earlier generators act on the outside.
  for (std::size_t k = gens.size(); k-- > 0;) {
    const std::size_t block = table.size(), b = bounds[k];
    Automorphism<T> eta = gens[k];
    while (table.size() < block * b) {
      std::size_t have = table.size() / block;
      std::size_t take = std::min(have, b - have);
      std::vector<ExtElem<T>> src(table.begin(), table.begin() + static_cast<long>(take * block));
      auto img = multi_apply(K, eta, src);
      table.insert(table.end(), img.begin(), img.end());
      if (table.size() < block * b) eta = compose_autos(K, eta, eta);
    }
  }
  return {bounds, std::move(table)};
}

template <class T>
OrbitTable<LinearForm<T>> iterated_forms(const ExtField<T>& K, const LinearForm<T>& l,
                                         const std::vector<Automorphism<T>>& gens,
                                         const std::vector<std::size_t>& bounds) {
  K.check(l);
  check_bounds(K.degree(), gens.size(), bounds, "iterated_forms");
  std::vector<LinearForm<T>> table{l};
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::size_t block = table.size(), b = bounds[k];
    Automorphism<T> eta = gens[k];
    // Built with the new exponent outermost, then transposed so that it
    // becomes the fastest-varying index.
    std::vector<LinearForm<T>> grown = table;
    while (grown.size() < block * b) {
      std::size_t have = grown.size() / block;
      std::size_t take = std::min(have, b - have);
      std::vector<LinearForm<T>> src(grown.begin(), grown.begin() + static_cast<long>(take * block));
      auto img = multi_transpose(K, src, eta);
      grown.insert(grown.end(), img.begin(), img.end());
      if (grown.size() < block * b) eta = compose_autos(K, eta, eta);
    }
    table.assign(block * b, LinearForm<T>{});
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t old = 0; old < block; ++old) table[old * b + j] = std::move(grown[j * block + old]);
  }
  return {bounds, std::move(table)};
}

#define NB_INSTANTIATE(T)                                                                                          \
  template class ExtField<T>;                                                                                      \
  template bool ext_is_zero(const ExtElem<T>&);                                                                    \
  template ExtElem<T> ext_add(const ExtField<T>&, const ExtElem<T>&, const ExtElem<T>&);                          \
  template ExtElem<T> ext_sub(const ExtField<T>&, const ExtElem<T>&, const ExtElem<T>&);                          \
  template ExtElem<T> ext_scale(const ExtField<T>&, const ExtElem<T>&, const T&);                                 \
  template ExtElem<T> ext_mul(const ExtField<T>&, const ExtElem<T>&, const ExtElem<T>&);                          \
  template ExtElem<T> ext_inv(const ExtField<T>&, const ExtElem<T>&);                                             \
  template ExtElem<T> ext_pow(const ExtField<T>&, ExtElem<T>, std::uint64_t);                                     \
  template T pairing(const ExtField<T>&, const LinearForm<T>&, const ExtElem<T>&);                                \
  template ExtElem<T> modcomp(const ExtField<T>&, const ExtElem<T>&, const ExtElem<T>&);                          \
  template ExtElem<T> modcomp(const ExtField<T>&, const Poly<T>&, const ExtElem<T>&);                             \
  template ExtElem<T> modcomp_horner(const ExtField<T>&, const ExtElem<T>&, const ExtElem<T>&);                   \
  template Automorphism<T> identity_auto(const ExtField<T>&);                                                     \
  template Automorphism<T> compose_autos(const ExtField<T>&, const Automorphism<T>&, const Automorphism<T>&);     \
  template Automorphism<T> auto_pow(const ExtField<T>&, const Automorphism<T>&, std::uint64_t);                   \
  template ExtElem<T> apply(const ExtField<T>&, const Automorphism<T>&, const ExtElem<T>&);                       \
  template std::vector<ExtElem<T>> multi_apply(const ExtField<T>&, const Automorphism<T>&,                        \
                                               const std::vector<ExtElem<T>>&);                                   \
  template LinearForm<T> transposed_mul(const ExtField<T>&, const LinearForm<T>&, const ExtElem<T>&);             \
  template std::vector<LinearForm<T>> multi_transpose(const ExtField<T>&, const std::vector<LinearForm<T>>&,      \
                                                      const Automorphism<T>&);                                    \
  template OrbitTable<ExtElem<T>> iterated_orbit(const ExtField<T>&, const ExtElem<T>&,                           \
                                                 const std::vector<Automorphism<T>>&,                             \
                                                 const std::vector<std::size_t>&);                                \
  template OrbitTable<LinearForm<T>> iterated_forms(const ExtField<T>&, const LinearForm<T>&,                     \
                                                    const std::vector<Automorphism<T>>&,                          \
                                                    const std::vector<std::size_t>&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
