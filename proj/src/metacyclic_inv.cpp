#include "normalbasis/metacyclic_inv.hpp"

#include <span>

namespace normalbasis {

template <class T>
typename CycRing<T>::Elem CycRing<T>::one() const {
  return from_int(1);
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::from_int(long long v) const {
  Elem e = zero();
  e[0] = Scalar<T>::from_int(f, v);
  return e;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::power_of_zeta(std::size_t e) const {
  Elem out = zero();
  out[e % m] = one_of<T>(f);
  return out;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::add(const Elem& a, const Elem& b) const {
  Elem c = a;
  for (std::size_t i = 0; i < m; ++i) c[i] += b[i];
  return c;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::sub(const Elem& a, const Elem& b) const {
  Elem c = a;
  for (std::size_t i = 0; i < m; ++i) c[i] -= b[i];
  return c;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::mul(const Elem& a, const Elem& b) const {
  auto p = mul_coeffs<T>(f, std::span<const T>(a), std::span<const T>(b));
  Elem c = zero();
  for (std::size_t i = 0; i < p.size(); ++i) c[i % m] += p[i];
  return c;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::scale(const Elem& a, const T& s) const {
  Elem c = a;
  for (auto& x : c) x *= s;
  return c;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::shift(const Elem& a, std::size_t e) const {
  Elem c = zero();
  for (std::size_t i = 0; i < m; ++i) c[(i + e) % m] = a[i];
  return c;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::substitute(const Elem& a, std::size_t e) const {
  Elem c = zero();
  for (std::size_t i = 0; i < m; ++i) c[(i * e) % m] += a[i];
  return c;
}

template <class T>
bool CycRing<T>::is_zero(const Elem& a) const {
  for (const auto& x : a)
    if (!Scalar<T>::is_zero(x)) return false;
  return true;
}

template <class T>
typename CycRing<T>::Elem CycRing<T>::reduce(const Poly<T>& p) const {
  Elem c = zero();
  for (std::size_t i = 0; i < p.size(); ++i) c[i % m] += p.coeffs()[i];
  return c;
}

namespace {

void require_metacyclic(const GroupSpec& g) {
  if (g.is_abelian()) throw UsageError("expected a metacyclic group, got " + g.describe());
}

// r^k mod m for k < s
std::vector<std::size_t> sigma_exponents(const GroupSpec& g) {
  std::vector<std::size_t> e(g.s);
  std::size_t x = 1 % g.m;
  for (std::size_t k = 0; k < g.s; ++k) {
    e[k] = x;
    x = x * g.r % g.m;
  }
  return e;
}

template <class T>
std::vector<T> column_poly(const GroupAlgElem<T>& beta, std::size_t j) {
  const auto& g = beta.spec;
  std::vector<T> out(g.m);
  for (std::size_t i = 0; i < g.m; ++i) out[i] = beta.coeffs[meta_index(g, i, j)];
  return out;
}

void check_characteristic(const CoeffField& f, std::size_t order) {
  if (!f.is_rational() && order % f.modulus == 0)
    throw UsageError("characteristic " + std::to_string(f.modulus) + " divides |G| = " + std::to_string(order));
}

template <class T>
Poly<T> inverse_mod(const Poly<T>& a, const Poly<T>& M) {
  auto e = poly_egcd(a, M);
  return poly_rem(e.u, M);
}

template <class T>
std::vector<Poly<T>> reduce_all(std::vector<Poly<T>> a, const Poly<T>& M) {
  for (auto& x : a) x = poly_rem(x, M);
  return a;
}

// True iff the s x s matrix is invertible modulo every factor of M.
template <class T>
bool nonsingular_split(std::vector<Poly<T>> a, std::size_t s, const Poly<T>& M) {
  if (M.degree() < 1) return true;
  auto at = [&](std::size_t i, std::size_t j) -> Poly<T>& { return a[i * s + j]; };
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t piv = s;
    std::size_t nonunit = s;
    Poly<T> split;
    for (std::size_t row = col; row < s && piv == s; ++row) {
      const auto& e = at(row, col);
      if (e.is_zero()) continue;
      auto g = poly_gcd(e, M);
      if (g.is_one()) {
        piv = row;
      } else if (nonunit == s) {
        nonunit = row;
        split = g;
      }
    }
    if (piv == s) {
      if (nonunit == s) return false;
      auto other = poly_quo(M, split);
      return nonsingular_split(reduce_all(a, split), s, split) && nonsingular_split(reduce_all(a, other), s, other);
    }
    if (piv != col)
      for (std::size_t j = 0; j < s; ++j) std::swap(at(piv, j), at(col, j));
    auto inv = inverse_mod(at(col, col), M);
    for (std::size_t row = col + 1; row < s; ++row) {
      if (at(row, col).is_zero()) continue;
      auto factor = poly_rem(at(row, col) * inv, M);
      for (std::size_t j = col; j < s; ++j) at(row, j) = poly_rem(at(row, j) - factor * at(col, j), M);
    }
  }
  return true;
}

template <class T>
using YPoly = std::vector<Poly<T>>;

template <class T>
void trim_y(YPoly<T>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class T>
YPoly<T> reduce_y(YPoly<T> p, const Poly<T>& M) {
  for (auto& c : p) c = poly_rem(c, M);
  trim_y(p);
  return p;
}

template <class T>
YPoly<T> mul_y(const YPoly<T>& a, const YPoly<T>& b, const Poly<T>& M) {
  if (a.empty() || b.empty()) return {};
  const CoeffField& f = M.field();
  YPoly<T> c(a.size() + b.size() - 1, Poly<T>(f));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return reduce_y(std::move(c), M);
}

template <class T>
YPoly<T> sub_y(YPoly<T> a, const YPoly<T>& b, const Poly<T>& M) {
  if (a.size() < b.size()) a.resize(b.size(), Poly<T>(M.field()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return reduce_y(std::move(a), M);
}

template <class T>
bool squarefree(const Poly<T>& M) {
  return poly_gcd(M, M.derivative()).is_one();
}

}  // namespace

template <class T>
PsiMatrix<T> psi(const CoeffField& f, const GroupAlgElem<T>& beta) {
  const auto& g = beta.spec;
  require_metacyclic(g);
  if (beta.coeffs.size() != g.size()) throw UsageError("psi: wrong coefficient count");
  CycRing<T> A{f, g.m};
  const auto e = sigma_exponents(g);
  const std::size_t s = g.s, t = g.t_reduced();
  std::vector<std::vector<T>> F(s);
  for (std::size_t j = 0; j < s; ++j) F[j] = column_poly(beta, j);
  PsiMatrix<T> M{s, std::vector<std::vector<T>>(s * s)};
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t c = 0; c < s; ++c) {
      const std::size_t j = (k + s - c) % s;
      auto v = A.substitute(F[j], e[k]);
      M(k, c) = c + j >= s ? A.shift(v, t) : std::move(v);
    }
  return M;
}

template <class T>
GroupAlgElem<T> psi_preimage(const CoeffField& f, const GroupSpec& g, const PsiMatrix<T>& M) {
  require_metacyclic(g);
  if (M.s != g.s) throw UsageError("psi_preimage: matrix size differs from s");
  CycRing<T> A{f, g.m};
  GroupAlgElem<T> out{g, std::vector<T>(g.size(), zero_of<T>(f))};
  std::size_t einv = 1 % g.m;
  const std::size_t rinv = g.r_inverse();
  for (std::size_t k = 0; k < g.s; ++k) {
    auto Fk = A.substitute(M(k, 0), einv);
    for (std::size_t i = 0; i < g.m; ++i) out.coeffs[meta_index(g, i, k)] = Fk[i];
    einv = einv * rinv % g.m;
  }
  return out;
}

template <class T>
PsiMatrix<T> psi_mul(const CycRing<T>& A, const PsiMatrix<T>& a, const PsiMatrix<T>& b) {
  if (a.s != b.s) throw UsageError("psi_mul: size mismatch");
  const std::size_t s = a.s;
  PsiMatrix<T> c{s, std::vector<std::vector<T>>(s * s, A.zero())};
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t j = 0; j < s; ++j) c(i, j) = A.add(c(i, j), A.mul(a(i, k), b(k, j)));
  return c;
}

template <class T>
std::vector<std::vector<T>> psi_apply(const CycRing<T>& A, const PsiMatrix<T>& M,
                                      const std::vector<std::vector<T>>& v) {
  if (v.size() != M.s) throw UsageError("psi_apply: dimension mismatch");
  std::vector<std::vector<T>> out(M.s, A.zero());
  for (std::size_t i = 0; i < M.s; ++i)
    for (std::size_t j = 0; j < M.s; ++j) out[i] = A.add(out[i], A.mul(M(i, j), v[j]));
  return out;
}

template <class T>
std::vector<std::vector<T>> psi_matvec(const CoeffField& f, const GroupAlgElem<T>& beta,
                                       const std::vector<std::vector<T>>& v) {
  const auto& g = beta.spec;
  require_metacyclic(g);
  const std::size_t m = g.m, s = g.s, t = g.t_reduced(), w = 2 * s - 1;
  if (v.size() != s) throw UsageError("psi_matvec: vector has " + std::to_string(v.size()) + " entries, need s");
  for (const auto& x : v)
    if (x.size() != m) throw UsageError("psi_matvec: entry is not reduced mod z^m - 1");
  CycRing<T> A{f, m};
  const auto e = sigma_exponents(g);
  const auto c5 = pres_convert(g, beta.coeffs);
  std::vector<std::vector<T>> out(s, A.zero());
  std::vector<T> packed(m * w);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<T> B(s);
    bool zero = true;
    for (std::size_t j = 0; j < s; ++j) {
      B[j] = c5[j * m + i];
      zero = zero && Scalar<T>::is_zero(B[j]);
    }
    if (zero) continue;
    // sigma^i scales entry k by zeta^{i r^k}; pack z-degree a, y-degree l at a*w + l
    std::fill(packed.begin(), packed.end(), zero_of<T>(f));
    for (std::size_t k = 0; k < s; ++k) {
      const std::size_t sh = i * e[k] % m;
      for (std::size_t a = 0; a < m; ++a) packed[((a + sh) % m) * w + k] = v[k][a];
    }
    auto P = mul_coeffs<T>(f, std::span<const T>(B), std::span<const T>(packed));
    P.resize(m * w, zero_of<T>(f));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t l = 0; l < w; ++l) {
        const T& x = P[a * w + l];
        if (Scalar<T>::is_zero(x)) continue;
        if (l < s)
          out[l][a] += x;
        else
          out[l - s][(a + t) % m] += x;
      }
  }
  return out;
}

bool psi_relations_hold(const GroupSpec& g) {
  require_metacyclic(g);
  const CoeffField f = CoeffField::rationals();
  CycRing<mpq_class> A{f, g.m};
  auto sig = psi(f, ga_basis<mpq_class>(f, g, meta_index(g, 1 % g.m, 0)));
  auto tau = psi(f, ga_basis<mpq_class>(f, g, meta_index(g, 0, 1 % g.s)));
  auto id = psi(f, ga_one<mpq_class>(f, g));
  auto power = [&](const PsiMatrix<mpq_class>& x, std::size_t e) {
    auto r = id;
    for (std::size_t i = 0; i < e; ++i) r = psi_mul(A, r, x);
    return r;
  };
  return power(sig, g.m) == id && power(tau, g.s) == power(sig, g.t) &&
         psi_mul(A, sig, tau) == psi_mul(A, tau, power(sig, g.r));
}

template <class T>
MetaVerdict<T> is_unit_metacyclic_det(const CoeffField& f, const GroupAlgElem<T>& beta) {
  const auto& g = beta.spec;
  require_metacyclic(g);
  check_characteristic(f, g.size());
  auto M = psi(f, beta);
  MetaVerdict<T> out;
  out.method = "det";
  out.unit = true;
  for (auto d : divisors(g.m)) {
    auto phi = cyclotomic<T>(f, d);
    std::vector<Poly<T>> a;
    a.reserve(M.entries.size());
    for (const auto& x : M.entries) a.push_back(poly_rem(Poly<T>(f, x), phi));
    if (!nonsingular_split(std::move(a), g.s, phi)) {
      out.unit = false;
      out.witness = d;
      break;
    }
  }
  return out;
}

template <class T>
std::vector<EeaBranch<T>> eea_dynamic(const std::vector<Poly<T>>& f, const std::vector<Poly<T>>& g,
                                      const Poly<T>& modulus, std::size_t stop) {
  if (modulus.degree() < 1) throw UsageError("eea_dynamic: modulus must have positive degree");
  if (!squarefree(modulus)) throw UsageError("eea_dynamic: modulus is not squarefree");
  const CoeffField& F = modulus.field();
  struct State {
    YPoly<T> r0, r1, t0, t1;
    Poly<T> M;
  };
  std::vector<State> stack{{f, g, {}, {Poly<T>::constant(F, one_of<T>(F))}, modulus}};
  std::vector<EeaBranch<T>> out;
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();
    const Poly<T>& M = st.M;
    st.r0 = reduce_y(std::move(st.r0), M);
    st.r1 = reduce_y(std::move(st.r1), M);
    st.t0 = reduce_y(std::move(st.t0), M);
    st.t1 = reduce_y(std::move(st.t1), M);
    for (;;) {
      // degrees must not depend on the factor of M
      Poly<T> gl = Poly<T>::constant(F, one_of<T>(F));
      for (const auto* p : {&st.r0, &st.r1}) {
        if (p->empty() || !gl.is_one()) continue;
        gl = poly_gcd(p->back(), M);
      }
      if (!gl.is_one()) {
        auto other = poly_quo(M, gl);
        stack.push_back({st.r0, st.r1, st.t0, st.t1, other});
        stack.push_back({st.r0, st.r1, st.t0, st.t1, gl});
        break;
      }
      if (st.r1.size() <= stop) {
        out.push_back({M, static_cast<long>(st.r1.size()) - 1, static_cast<long>(st.t1.size()) - 1});
        break;
      }
      auto inv = inverse_mod(st.r1.back(), M);
      YPoly<T> rem = st.r0;
      const std::size_t d1 = st.r1.size() - 1;
      YPoly<T> q(rem.size() > d1 ? rem.size() - d1 : 0, Poly<T>(F));
      for (std::size_t k = rem.size(); k-- > d1;) {
        if (rem[k].is_zero()) continue;
        auto c = poly_rem(rem[k] * inv, M);
        q[k - d1] = c;
        for (std::size_t i = 0; i <= d1; ++i) rem[k - d1 + i] = poly_rem(rem[k - d1 + i] - c * st.r1[i], M);
      }
      trim_y(rem);
      trim_y(q);
      auto t = sub_y(st.t0, mul_y(q, st.t1, M), M);
      st.r0 = std::move(st.r1);
      st.r1 = std::move(rem);
      st.t0 = std::move(st.t1);
      st.t1 = std::move(t);
    }
  }
  return out;
}

template <class T>
MetaVerdict<T> is_unit_metacyclic_mc(const CoeffField& f, const GroupAlgElem<T>& beta, std::mt19937_64& rng,
                                     std::size_t repetitions) {
  const auto& g = beta.spec;
  require_metacyclic(g);
  check_characteristic(f, g.size());
  if (repetitions == 0) throw UsageError("is_unit_metacyclic_mc: need at least one repetition");
  const std::size_t m = g.m, s = g.s, N = s + 1;
  CycRing<T> A{f, m};
  const std::uint64_t set_size = 4 * N * m;
  auto rand_elem = [&] {
    auto e = A.zero();
    for (auto& x : e) x = sample_scalar<T>(f, rng, set_size);
    return e;
  };
  MetaVerdict<T> out;
  out.method = "mc";
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    out.repetitions_used = rep + 1;
    std::vector<std::vector<T>> lo(s), up(s), X(N), u(N), v(N);
    lo[0] = A.one();
    up[0] = A.one();
    for (std::size_t k = 1; k < s; ++k) {
      lo[k] = rand_elem();
      up[k] = rand_elem();
    }
    for (std::size_t k = 0; k < N; ++k) {
      X[k] = rand_elem();
      u[k] = rand_elem();
      v[k] = rand_elem();
    }
    // w -> M'' X w with M'' = [L psi(beta) U, 0; 0, 0]
    auto step = [&](const std::vector<std::vector<T>>& w) {
      std::vector<std::vector<T>> x(s, A.zero()), y(s, A.zero());
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t j = k; j < s; ++j) x[k] = A.add(x[k], A.mul(up[j - k], A.mul(X[j], w[j])));
      auto z = psi_matvec(f, beta, x);
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t j = 0; j <= k; ++j) y[k] = A.add(y[k], A.mul(lo[k - j], z[j]));
      y.push_back(A.zero());
      return y;
    };
    YPoly<T> seq;
    auto w = v;
    for (std::size_t j = 0; j < 2 * N; ++j) {
      auto gj = A.zero();
      for (std::size_t k = 0; k < N; ++k) gj = A.add(gj, A.mul(u[k], w[k]));
      seq.push_back(A.lift(gj));
      if (j + 1 < 2 * N) w = step(w);
    }
    YPoly<T> y2N(2 * N + 1, Poly<T>(f));
    y2N.back() = Poly<T>::constant(f, one_of<T>(f));
    std::vector<EeaBranch<T>> branches;
    for (auto d : divisors(m)) {
      auto part = eea_dynamic(y2N, seq, cyclotomic<T>(f, d), N);
      branches.insert(branches.end(), part.begin(), part.end());
    }
    out.branches.clear();
    bool full = true;
    for (const auto& b : branches) {
      long L = std::max(b.cof_degree, b.rem_degree + 1);
      std::size_t rank = L > 0 ? static_cast<std::size_t>(L - 1) : 0;
      full = full && rank == s;
      out.branches.push_back({b.modulus, rank});
    }
    if (full) {
      out.unit = true;
      return out;
    }
  }
  out.unit = false;
  return out;
}

#define NB_INSTANTIATE(T)                                                                                        \
  template struct CycRing<T>;                                                                                    \
  template PsiMatrix<T> psi(const CoeffField&, const GroupAlgElem<T>&);                                          \
  template GroupAlgElem<T> psi_preimage(const CoeffField&, const GroupSpec&, const PsiMatrix<T>&);               \
  template PsiMatrix<T> psi_mul(const CycRing<T>&, const PsiMatrix<T>&, const PsiMatrix<T>&);                    \
  template std::vector<std::vector<T>> psi_apply(const CycRing<T>&, const PsiMatrix<T>&,                         \
                                                 const std::vector<std::vector<T>>&);                            \
  template std::vector<std::vector<T>> psi_matvec(const CoeffField&, const GroupAlgElem<T>&,                     \
                                                  const std::vector<std::vector<T>>&);                           \
  template MetaVerdict<T> is_unit_metacyclic_det(const CoeffField&, const GroupAlgElem<T>&);                     \
  template std::vector<EeaBranch<T>> eea_dynamic(const std::vector<Poly<T>>&, const std::vector<Poly<T>>&,       \
                                                 const Poly<T>&, std::size_t);                                   \
  template MetaVerdict<T> is_unit_metacyclic_mc(const CoeffField&, const GroupAlgElem<T>&, std::mt19937_64&,     \
                                                std::size_t);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
