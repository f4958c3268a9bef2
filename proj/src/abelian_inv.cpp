#include "normalbasis/abelian_inv.hpp"

#include <map>
#include <numeric>

#include "normalbasis/ring_poly.hpp"

namespace normalbasis {

namespace {

using Lens = std::vector<std::size_t>;

std::size_t prod(const Lens& v) {
  std::size_t r = 1;
  for (auto x : v) r *= x;
  return r;
}

std::size_t ipow(std::size_t p, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= p;
  return r;
}

Lens strides_of(const Lens& len) {
  Lens s(len.size(), 1);
  for (std::size_t k = len.size(); k-- > 1;) s[k - 1] = s[k] * len[k];
  return s;
}

// Offsets of every multi-index over the given axes, last axis fastest.
Lens offsets(const Lens& lens, const Lens& strides) {
  Lens out{0};
  for (std::size_t k = 0; k < lens.size(); ++k) {
    Lens next;
    next.reserve(out.size() * lens[k]);
    for (auto o : out)
      for (std::size_t i = 0; i < lens[k]; ++i) next.push_back(o + i * strides[k]);
    out = std::move(next);
  }
  return out;
}

// Applies fn to every block spanned by the axes S (gathered in the order of
// S, last fastest) and scatters the results into a tensor whose S axes have
// the new lengths. len is updated in place.
template <class T, class Fn>
std::vector<T> transform(const std::vector<T>& data, Lens& len, const Lens& S, const Lens& new_len_S, Fn&& fn) {
  Lens new_len = len;
  for (std::size_t k = 0; k < S.size(); ++k) new_len[S[k]] = new_len_S[k];
  const Lens os = strides_of(len), ns = strides_of(new_len);
  Lens rest_len, rest_os, rest_ns, s_len, s_os, s_ns;
  for (std::size_t a = 0; a < len.size(); ++a)
    if (std::find(S.begin(), S.end(), a) == S.end()) {
      rest_len.push_back(len[a]);
      rest_os.push_back(os[a]);
      rest_ns.push_back(ns[a]);
    }
  for (std::size_t k = 0; k < S.size(); ++k) {
    s_len.push_back(len[S[k]]);
    s_os.push_back(os[S[k]]);
    s_ns.push_back(ns[S[k]]);
  }
  const Lens outer_o = offsets(rest_len, rest_os), outer_n = offsets(rest_len, rest_ns);
  const Lens block_o = offsets(s_len, s_os), block_n = offsets(new_len_S, s_ns);
  std::vector<T> out(prod(new_len));
  std::vector<T> block(block_o.size());
  for (std::size_t o = 0; o < outer_o.size(); ++o) {
    for (std::size_t b = 0; b < block_o.size(); ++b) block[b] = data[outer_o[o] + block_o[b]];
    std::vector<T> res = fn(block);
    if (res.size() != block_n.size()) throw std::logic_error("transform: block size mismatch");
    for (std::size_t b = 0; b < block_n.size(); ++b) out[outer_n[o] + block_n[b]] = std::move(res[b]);
  }
  len = std::move(new_len);
  return out;
}

// Fibres along one axis, in lexicographic order of the remaining axes.
template <class T>
std::vector<std::vector<T>> fibers(const std::vector<T>& data, const Lens& len, std::size_t axis) {
  const Lens st = strides_of(len);
  Lens rest_len, rest_st;
  for (std::size_t a = 0; a < len.size(); ++a)
    if (a != axis) {
      rest_len.push_back(len[a]);
      rest_st.push_back(st[a]);
    }
  std::vector<std::vector<T>> out;
  for (auto o : offsets(rest_len, rest_st)) {
    std::vector<T> f(len[axis]);
    for (std::size_t i = 0; i < len[axis]; ++i) f[i] = data[o + i * st[axis]];
    out.push_back(std::move(f));
  }
  return out;
}

template <class T>
std::vector<T> from_fibers(const std::vector<std::vector<T>>& fib, const Lens& len, std::size_t axis) {
  const Lens st = strides_of(len);
  Lens rest_len, rest_st;
  for (std::size_t a = 0; a < len.size(); ++a)
    if (a != axis) {
      rest_len.push_back(len[a]);
      rest_st.push_back(st[a]);
    }
  std::vector<T> out(prod(len));
  auto offs = offsets(rest_len, rest_st);
  for (std::size_t k = 0; k < offs.size(); ++k)
    for (std::size_t i = 0; i < len[axis]; ++i) out[offs[k] + i * st[axis]] = fib[k][i];
  return out;
}

template <class T>
std::vector<T> padded(const CoeffField& f, const Poly<T>& p, std::size_t len) {
  std::vector<T> out(len, zero_of<T>(f));
  if (p.size() > len) throw std::logic_error("padded: polynomial too long");
  std::copy(p.coeffs().begin(), p.coeffs().end(), out.begin());
  return out;
}

template <class T>
std::vector<T> flatten(const std::vector<ExtElem<T>>& v) {
  std::vector<T> out;
  for (const auto& e : v) out.insert(out.end(), e.coeffs.begin(), e.coeffs.end());
  return out;
}

template <class T>
std::vector<ExtElem<T>> unflatten(const std::vector<T>& v, std::size_t width) {
  std::vector<ExtElem<T>> out;
  for (std::size_t i = 0; i < v.size(); i += width) out.push_back({{v.begin() + i, v.begin() + i + width}});
  return out;
}

void require_coprime(std::size_t m, std::size_t m2) {
  if (std::gcd(m, m2) != 1)
    throw UsageError("coprime merge needs gcd(m, m') = 1, got " + std::to_string(m) + ", " + std::to_string(m2));
}

// (u, v) with x -> z^v, x' -> z^u; v = 1 mod m, 0 mod m', u the other way.
std::pair<std::size_t, std::size_t> merge_exponents(std::size_t m, std::size_t m2) {
  const std::size_t M = m * m2;
  std::size_t v = 0;
  for (std::size_t k = 0; k < M; k += m2)
    if (k % m == 1 % m) {
      v = k;
      break;
    }
  return {(1 + M - v) % M, v};
}

template <class T>
Poly<T> merge_with(const CoeffField& f, const Matrix<T>& h, std::size_t m, std::size_t m2, const Poly<T>& phi_M) {
  const std::size_t M = m * m2;
  auto [u, v] = merge_exponents(m, m2);
  std::vector<T> acc(M, zero_of<T>(f));
  for (std::size_t i = 0; i < h.rows; ++i)
    for (std::size_t j = 0; j < h.cols; ++j) acc[(v * i + u * j) % M] += h(i, j);
  return poly_rem(Poly<T>(f, std::move(acc)), phi_M);
}

template <class T>
Matrix<T> split_with(const CoeffField& f, const Poly<T>& g, std::size_t m, std::size_t m2, const Poly<T>& phi_m,
                     const Poly<T>& phi_m2) {
  std::vector<std::vector<T>> rows(m, std::vector<T>(m2, zero_of<T>(f)));
  for (std::size_t k = 0; k < g.size(); ++k) rows[k % m][k % m2] += g.coeffs()[k];
  const std::size_t e = euler_phi(m), e2 = euler_phi(m2);
  std::vector<std::vector<T>> red(m);
  for (std::size_t i = 0; i < m; ++i) red[i] = padded(f, poly_rem(Poly<T>(f, rows[i]), phi_m2), e2);
  Matrix<T> out(e, e2, zero_of<T>(f));
  for (std::size_t j = 0; j < e2; ++j) {
    std::vector<T> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = red[i][j];
    auto r = padded(f, poly_rem(Poly<T>(f, col), phi_m), e);
    for (std::size_t i = 0; i < e; ++i) out(i, j) = r[i];
  }
  return out;
}

template <class T>
Matrix<T> as_matrix(const std::vector<T>& v, std::size_t rows, std::size_t cols) {
  Matrix<T> h;
  h.rows = rows;
  h.cols = cols;
  h.data = v;
  return h;
}

template <class T>
std::vector<ExtElem<T>> theta_points(const ExtField<T>& K, std::size_t p, std::size_t c, std::size_t c2) {
  const CoeffField& f = K.base();
  if (c2 == 0) return {K.one()};
  std::vector<ExtElem<T>> pts;
  const std::size_t q = ipow(p, c2), step = ipow(p, c - c2);
  for (std::size_t i = 1; i < q; ++i)
    if (i % p) pts.push_back(K.from_poly(Poly<T>::monomial(f, one_of<T>(f), i * step)));
  return pts;
}

template <class T>
std::vector<ExtElem<T>> theta_eval(const ExtField<T>& K, std::vector<ExtElem<T>> y, const std::vector<ExtElem<T>>& pts) {
  ExtRing<T> R{K};
  ring::trim(R, y);
  if (y.empty()) return std::vector<ExtElem<T>>(pts.size(), K.zero());
  return ring::multipoint_eval(R, y, pts);
}

template <class T>
std::vector<ExtElem<T>> theta_interp(const ExtField<T>& K, const std::vector<ExtElem<T>>& vals,
                                     const std::vector<ExtElem<T>>& pts) {
  ExtRing<T> R{K};
  auto y = ring::interpolate(R, pts, vals);
  y.resize(pts.size(), K.zero());
  return y;
}

void check_theta(std::size_t p, std::size_t c, std::size_t c2) {
  if (c < c2)
    throw UsageError("same-prime split needs c >= c', got c = " + std::to_string(c) + ", c' = " + std::to_string(c2));
  if (c == 0) throw UsageError("same-prime split needs c >= 1");
  (void)p;
}

// Per-call caches of the moduli and coefficient rings used along the chain.
template <class T>
struct Workspace {
  const CoeffField& f;
  std::map<std::size_t, Poly<T>> phi;
  std::map<std::pair<std::size_t, std::size_t>, ExtField<T>> rings;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<ExtElem<T>>> points;

  const Poly<T>& cyclo(std::size_t d) {
    auto it = phi.find(d);
    if (it == phi.end()) it = phi.emplace(d, cyclotomic<T>(f, d)).first;
    return it->second;
  }
  const ExtField<T>& ring_of(std::size_t p, std::size_t c) {
    auto key = std::make_pair(p, c);
    auto it = rings.find(key);
    if (it == rings.end()) it = rings.emplace(key, ExtField<T>(cyclo(ipow(p, c)))).first;
    return it->second;
  }
  const std::vector<ExtElem<T>>& pts(std::size_t p, std::size_t c, std::size_t c2) {
    auto key = std::make_tuple(p, c, c2);
    auto it = points.find(key);
    if (it == points.end()) it = points.emplace(key, theta_points(ring_of(p, c), p, c, c2)).first;
    return it->second;
  }
  std::vector<Poly<T>> lambda_moduli(std::size_t p, std::size_t b) {
    std::vector<Poly<T>> out;
    for (std::size_t c = 0; c <= b; ++c) out.push_back(cyclo(ipow(p, c)));
    return out;
  }
};

void check_characteristic(const CoeffField& f, std::size_t order) {
  if (!f.is_rational() && order % f.modulus == 0)
    throw UsageError("characteristic " + std::to_string(f.modulus) + " divides |G| = " + std::to_string(order));
}

}  // namespace

template <class T>
Poly<T> coprime_merge(const CoeffField& f, const Matrix<T>& h, std::size_t m, std::size_t m2) {
  require_coprime(m, m2);
  if (h.rows != euler_phi(m) || h.cols != euler_phi(m2)) throw UsageError("coprime_merge: block has wrong shape");
  return merge_with(f, h, m, m2, cyclotomic<T>(f, m * m2));
}

template <class T>
Matrix<T> coprime_split(const CoeffField& f, const Poly<T>& g, std::size_t m, std::size_t m2) {
  require_coprime(m, m2);
  if (g.size() > euler_phi(m * m2)) throw UsageError("coprime_split: input not reduced mod Phi_{mm'}");
  return split_with(f, g, m, m2, cyclotomic<T>(f, m), cyclotomic<T>(f, m2));
}

template <class T>
Poly<T> merge_distinct_primes(const CoeffField& f, const std::vector<T>& data, const std::vector<std::size_t>& moduli) {
  Lens len;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) require_coprime(moduli[i], moduli[j]);
    len.push_back(euler_phi(moduli[i]));
  }
  if (data.size() != prod(len)) throw UsageError("merge_distinct_primes: data size does not match the moduli");
  if (moduli.empty()) return Poly<T>(f, data);
  Workspace<T> ws{f, {}, {}, {}};
  std::vector<T> cur = data;
  std::size_t d = moduli[0];
  for (std::size_t k = 1; k < moduli.size(); ++k) {
    const std::size_t mk = moduli[k], e1 = len[0], e2 = len[k];
    const std::size_t dd = d * mk;
    cur = transform(cur, len, {0, k}, {euler_phi(dd), 1}, [&](const std::vector<T>& blk) {
      return padded(f, merge_with(f, as_matrix(blk, e1, e2), d, mk, ws.cyclo(dd)), euler_phi(dd));
    });
    d = dd;
  }
  return Poly<T>(f, cur);
}

template <class T>
std::vector<T> split_distinct_primes(const CoeffField& f, const Poly<T>& g, const std::vector<std::size_t>& moduli) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) require_coprime(moduli[i], moduli[j]);
    d *= moduli[i];
  }
  if (g.size() > euler_phi(d)) throw UsageError("split_distinct_primes: input not reduced");
  if (moduli.empty()) return padded(f, g, 1);
  Workspace<T> ws{f, {}, {}, {}};
  Lens len(moduli.size(), 1);
  len[0] = euler_phi(d);
  std::vector<T> cur = padded(f, g, len[0]);
  for (std::size_t k = moduli.size(); k-- > 1;) {
    const std::size_t mk = moduli[k], dp = d / mk;
    cur = transform(cur, len, {0, k}, {euler_phi(dp), euler_phi(mk)}, [&](const std::vector<T>& blk) {
      return split_with(f, Poly<T>(f, blk), dp, mk, ws.cyclo(dp), ws.cyclo(mk)).data;
    });
    d = dp;
  }
  return cur;
}

template <class T>
std::vector<ExtElem<T>> same_prime_split(const ExtField<T>& K, const std::vector<ExtElem<T>>& y_coeffs, std::size_t p,
                                         std::size_t c, std::size_t c2) {
  check_theta(p, c, c2);
  if (y_coeffs.size() != euler_phi(ipow(p, c2))) throw UsageError("same_prime_split: need phi(p^c') coefficients");
  return theta_eval(K, y_coeffs, theta_points(K, p, c, c2));
}

template <class T>
std::vector<ExtElem<T>> same_prime_merge(const ExtField<T>& K, const std::vector<ExtElem<T>>& values, std::size_t p,
                                         std::size_t c, std::size_t c2) {
  check_theta(p, c, c2);
  if (values.size() != euler_phi(ipow(p, c2))) throw UsageError("same_prime_merge: need phi(p^c') values");
  return theta_interp(K, values, theta_points(K, p, c, c2));
}

template <class T>
std::vector<ExtElem<T>> same_prime_split_all(const CoeffField& f, const std::vector<T>& data, std::size_t p,
                                             const std::vector<std::size_t>& cs) {
  if (cs.empty() || *std::max_element(cs.begin(), cs.end()) != cs[0])
    throw UsageError("same_prime_split_all: the first exponent must be the largest");
  Lens len;
  for (auto c : cs) len.push_back(euler_phi(ipow(p, c)));
  if (data.size() != prod(len)) throw UsageError("same_prime_split_all: data size does not match");
  Workspace<T> ws{f, {}, {}, {}};
  const auto& K = ws.ring_of(p, cs[0]);
  std::vector<T> cur = data;
  for (std::size_t k = 1; k < cs.size(); ++k) {
    if (cs[k] == 0) continue;
    const auto& pts = ws.pts(p, cs[0], cs[k]);
    cur = transform(cur, len, {k, 0}, {len[k], len[0]}, [&](const std::vector<T>& blk) {
      return flatten(theta_eval(K, unflatten(blk, len[0]), pts));
    });
  }
  std::vector<ExtElem<T>> out;
  for (auto& fib : fibers(cur, len, 0)) out.push_back({std::move(fib)});
  return out;
}

template <class T>
std::vector<T> same_prime_merge_all(const CoeffField& f, const std::vector<ExtElem<T>>& parts, std::size_t p,
                                    const std::vector<std::size_t>& cs) {
  if (cs.empty() || *std::max_element(cs.begin(), cs.end()) != cs[0])
    throw UsageError("same_prime_merge_all: the first exponent must be the largest");
  Lens len;
  for (auto c : cs) len.push_back(euler_phi(ipow(p, c)));
  if (parts.size() * len[0] != prod(len)) throw UsageError("same_prime_merge_all: part count does not match");
  Workspace<T> ws{f, {}, {}, {}};
  const auto& K = ws.ring_of(p, cs[0]);
  std::vector<std::vector<T>> fib;
  for (const auto& e : parts) {
    K.check(e);
    fib.push_back(e.coeffs);
  }
  std::vector<T> cur = from_fibers(fib, len, 0);
  for (std::size_t k = cs.size(); k-- > 1;) {
    if (cs[k] == 0) continue;
    const auto& pts = ws.pts(p, cs[0], cs[k]);
    cur = transform(cur, len, {k, 0}, {len[k], len[0]}, [&](const std::vector<T>& blk) {
      return flatten(theta_interp(K, unflatten(blk, len[0]), pts));
    });
  }
  return cur;
}

template <class T>
std::vector<Poly<T>> cyclic_crt(const Poly<T>& f, std::size_t p, std::size_t b) {
  Workspace<T> ws{f.field(), {}, {}, {}};
  if (f.size() > ipow(p, b)) throw UsageError("cyclic_crt: input not reduced mod x^{p^b} - 1");
  return multi_rem(f, ws.lambda_moduli(p, b));
}

template <class T>
Poly<T> cyclic_crt_inverse(const CoeffField& f, const std::vector<Poly<T>>& residues, std::size_t p, std::size_t b) {
  if (residues.size() != b + 1) throw UsageError("cyclic_crt_inverse: need b + 1 residues");
  Workspace<T> ws{f, {}, {}, {}};
  return poly_crt(residues, ws.lambda_moduli(p, b));
}

FactorCatalog build_catalog(const GroupSpec& spec) {
  if (!spec.is_abelian()) throw UsageError("build_catalog needs an abelian group, got " + spec.describe());
  FactorCatalog cat;
  cat.spec = spec;
  cat.ed = elementary_divisors(spec.orders);
  const auto& axes = cat.ed.axes;
  const std::size_t r = axes.size();

  std::vector<std::size_t> c(r, 0);
  for (;;) {
    FactorCatalog::Block blk;
    blk.c = c;
    std::vector<std::size_t> keeps;
    for (std::size_t a = 0; a < r;) {
      std::size_t e = a;
      while (e < r && axes[e].p == axes[a].p) ++e;
      std::size_t keep = FactorCatalog::npos;
      for (std::size_t k = a; k < e; ++k)
        if (c[k] > 0 && (keep == FactorCatalog::npos || c[k] > c[keep])) keep = k;
      if (keep != FactorCatalog::npos) {
        keeps.push_back(keep);
        for (std::size_t k = a; k < e; ++k)
          if (k != keep && c[k] > 0) blk.theta.push_back({keep, k, axes[a].p, c[keep], c[k]});
      }
      a = e;
    }
    std::size_t d = 1;
    for (std::size_t i = 0; i < keeps.size(); ++i) {
      const std::size_t q = ipow(axes[keeps[i]].p, c[keeps[i]]);
      if (i > 0) blk.merges.push_back({keeps[0], keeps[i], d, q});
      d *= q;
    }
    blk.cyclo_axis = keeps.empty() ? FactorCatalog::npos : keeps[0];
    blk.first_factor = cat.factors.size();

    std::vector<std::size_t> comp_axes, comp_len;
    for (const auto& t : blk.theta) {
      comp_axes.push_back(t.split);
      comp_len.push_back(euler_phi(ipow(t.p, t.c2)));
    }
    // split axes are listed per prime; the slot follows axis order
    std::vector<std::size_t> order(comp_axes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return comp_axes[x] < comp_axes[y]; });
    std::vector<std::size_t> idx(order.size(), 0);
    for (;;) {
      FactorCatalog::Factor fac{d, c};
      for (auto i : idx) fac.slot.push_back(i);
      cat.factors.push_back(std::move(fac));
      std::size_t k = idx.size();
      while (k > 0 && ++idx[k - 1] == comp_len[order[k - 1]]) idx[--k] = 0;
      if (k == 0) break;
    }
    blk.factor_count = cat.factors.size() - blk.first_factor;
    cat.blocks.push_back(std::move(blk));

    std::size_t k = r;
    while (k > 0 && ++c[k - 1] > axes[k - 1].b) c[--k] = 0;
    if (k == 0) break;
  }
  return cat;
}

namespace {

template <class T>
struct Piece {
  std::vector<T> data;
  Lens len;
};

Lens lambda_lens(const FactorCatalog& cat, const std::vector<std::size_t>& c) {
  Lens len;
  for (std::size_t k = 0; k < c.size(); ++k) len.push_back(euler_phi(ipow(cat.ed.axes[k].p, c[k])));
  return len;
}

}  // namespace

template <class T>
DecomposedElem<T> decompose(const CoeffField& f, const FactorCatalog& cat, const GroupAlgElem<T>& beta) {
  if (!(beta.spec == cat.spec)) throw UsageError("decompose: element and catalog use different groups");
  const std::size_t n = cat.spec.size();
  if (beta.coeffs.size() != n) throw UsageError("decompose: wrong coefficient count");
  check_characteristic(f, n);
  Workspace<T> ws{f, {}, {}, {}};
  const auto& axes = cat.ed.axes;

  std::vector<T> v(n);
  for (std::size_t i = 0; i < n; ++i) v[cat.ed.new_index[i]] = beta.coeffs[i];
  Lens len0;
  for (const auto& a : axes) len0.push_back(ipow(a.p, a.b));
  std::vector<Piece<T>> pieces{{std::move(v), len0}};

  for (std::size_t k = 0; k < axes.size(); ++k) {
    const auto moduli = ws.lambda_moduli(axes[k].p, axes[k].b);
    std::vector<Piece<T>> next;
    for (const auto& pc : pieces) {
      std::vector<std::vector<std::vector<T>>> by_c(moduli.size());
      for (const auto& fib : fibers(pc.data, pc.len, k)) {
        auto res = multi_rem(Poly<T>(f, fib), moduli);
        for (std::size_t c = 0; c < res.size(); ++c)
          by_c[c].push_back(padded(f, res[c], moduli[c].size() - 1));
      }
      for (std::size_t c = 0; c < moduli.size(); ++c) {
        Lens len = pc.len;
        len[k] = moduli[c].size() - 1;
        next.push_back({from_fibers(by_c[c], len, k), len});
      }
    }
    pieces = std::move(next);
  }

  DecomposedElem<T> out{&cat, {}};
  for (std::size_t bi = 0; bi < cat.blocks.size(); ++bi) {
    const auto& blk = cat.blocks[bi];
    auto& pc = pieces[bi];
    for (const auto& t : blk.theta) {
      const auto& K = ws.ring_of(t.p, t.c);
      const auto& pts = ws.pts(t.p, t.c, t.c2);
      const std::size_t w = pc.len[t.keep];
      pc.data = transform(pc.data, pc.len, {t.split, t.keep}, {pc.len[t.split], w}, [&](const std::vector<T>& b) {
        return flatten(theta_eval(K, unflatten(b, w), pts));
      });
    }
    for (const auto& mg : blk.merges) {
      const std::size_t e1 = pc.len[mg.into], e2 = pc.len[mg.from], dd = mg.d1 * mg.d2;
      pc.data = transform(pc.data, pc.len, {mg.into, mg.from}, {euler_phi(dd), 1}, [&](const std::vector<T>& b) {
        return padded(f, merge_with(f, as_matrix(b, e1, e2), mg.d1, mg.d2, ws.cyclo(dd)), euler_phi(dd));
      });
    }
    if (blk.cyclo_axis == FactorCatalog::npos) {
      out.residues.push_back(Poly<T>(f, pc.data));
    } else {
      for (auto& fib : fibers(pc.data, pc.len, blk.cyclo_axis)) out.residues.push_back(Poly<T>(f, std::move(fib)));
    }
  }
  return out;
}

template <class T>
GroupAlgElem<T> recompose(const CoeffField& f, const DecomposedElem<T>& x) {
  if (!x.catalog) throw UsageError("recompose: element has no catalog");
  const FactorCatalog& cat = *x.catalog;
  if (x.residues.size() != cat.factors.size()) throw UsageError("recompose: wrong residue count");
  const std::size_t n = cat.spec.size();
  check_characteristic(f, n);
  Workspace<T> ws{f, {}, {}, {}};
  const auto& axes = cat.ed.axes;

  std::vector<Piece<T>> pieces;
  for (const auto& blk : cat.blocks) {
    Lens len = lambda_lens(cat, blk.c);
    Lens final_len = len;
    for (const auto& mg : blk.merges) {
      final_len[mg.into] = euler_phi(mg.d1 * mg.d2);
      final_len[mg.from] = 1;
    }
    const std::size_t d = cat.factors[blk.first_factor].d;
    std::vector<std::vector<T>> fib;
    for (std::size_t j = 0; j < blk.factor_count; ++j) {
      const auto& r = x.residues[blk.first_factor + j];
      if (r.size() > euler_phi(d)) throw UsageError("recompose: residue not reduced");
      fib.push_back(padded(f, r, euler_phi(d)));
    }
    Piece<T> pc;
    pc.len = final_len;
    pc.data = blk.cyclo_axis == FactorCatalog::npos ? fib[0] : from_fibers(fib, final_len, blk.cyclo_axis);
    for (auto it = blk.merges.rbegin(); it != blk.merges.rend(); ++it) {
      const auto& mg = *it;
      pc.data = transform(pc.data, pc.len, {mg.into, mg.from}, {euler_phi(mg.d1), euler_phi(mg.d2)},
                          [&](const std::vector<T>& b) {
                            return split_with(f, Poly<T>(f, b), mg.d1, mg.d2, ws.cyclo(mg.d1), ws.cyclo(mg.d2)).data;
                          });
    }
    for (auto it = blk.theta.rbegin(); it != blk.theta.rend(); ++it) {
      const auto& t = *it;
      const auto& K = ws.ring_of(t.p, t.c);
      const auto& pts = ws.pts(t.p, t.c, t.c2);
      const std::size_t w = pc.len[t.keep];
      pc.data = transform(pc.data, pc.len, {t.split, t.keep}, {pc.len[t.split], w}, [&](const std::vector<T>& b) {
        return flatten(theta_interp(K, unflatten(b, w), pts));
      });
    }
    pieces.push_back(std::move(pc));
  }

  for (std::size_t k = axes.size(); k-- > 0;) {
    const auto moduli = ws.lambda_moduli(axes[k].p, axes[k].b);
    const std::size_t group = moduli.size(), full = ipow(axes[k].p, axes[k].b);
    std::vector<Piece<T>> next;
    for (std::size_t g = 0; g < pieces.size(); g += group) {
      std::vector<std::vector<std::vector<T>>> fibs;
      for (std::size_t c = 0; c < group; ++c) fibs.push_back(fibers(pieces[g + c].data, pieces[g + c].len, k));
      std::vector<std::vector<T>> merged;
      for (std::size_t i = 0; i < fibs[0].size(); ++i) {
        std::vector<Poly<T>> res;
        for (std::size_t c = 0; c < group; ++c) res.push_back(Poly<T>(f, fibs[c][i]));
        merged.push_back(padded(f, poly_crt(res, moduli), full));
      }
      Lens len = pieces[g].len;
      len[k] = full;
      next.push_back({from_fibers(merged, len, k), len});
    }
    pieces = std::move(next);
  }

  GroupAlgElem<T> out{cat.spec, std::vector<T>(n)};
  for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = pieces[0].data[cat.ed.new_index[i]];
  return out;
}

template <class T>
bool is_unit_abelian(const CoeffField& f, const GroupAlgElem<T>& beta) {
  auto cat = build_catalog(beta.spec);
  auto x = decompose(f, cat, beta);
  Workspace<T> ws{f, {}, {}, {}};
  for (std::size_t j = 0; j < x.residues.size(); ++j) {
    const auto& r = x.residues[j];
    if (r.is_zero() || !poly_gcd(r, ws.cyclo(cat.factors[j].d)).is_one()) return false;
  }
  return true;
}

template <class T>
GroupAlgElem<T> invert_abelian(const CoeffField& f, const GroupAlgElem<T>& beta) {
  auto cat = build_catalog(beta.spec);
  auto x = decompose(f, cat, beta);
  Workspace<T> ws{f, {}, {}, {}};
  for (std::size_t j = 0; j < x.residues.size(); ++j) {
    const std::size_t d = cat.factors[j].d;
    const auto& phi = ws.cyclo(d);
    const auto& r = x.residues[j];
    if (r.is_zero()) throw NonUnitError("element vanishes modulo Phi_" + std::to_string(d), d);
    auto e = poly_egcd(r, phi);
    if (!e.g.is_one())
      throw NonUnitError("element shares a factor of degree " + std::to_string(e.g.degree()) + " with Phi_" +
                             std::to_string(d),
                         d);
    x.residues[j] = poly_rem(e.u, phi);
  }
  return recompose(f, x);
}

#define NB_INSTANTIATE(T)                                                                                          \
  template Poly<T> coprime_merge(const CoeffField&, const Matrix<T>&, std::size_t, std::size_t);                  \
  template Matrix<T> coprime_split(const CoeffField&, const Poly<T>&, std::size_t, std::size_t);                  \
  template Poly<T> merge_distinct_primes(const CoeffField&, const std::vector<T>&, const std::vector<std::size_t>&); \
  template std::vector<T> split_distinct_primes(const CoeffField&, const Poly<T>&, const std::vector<std::size_t>&); \
  template std::vector<ExtElem<T>> same_prime_split(const ExtField<T>&, const std::vector<ExtElem<T>>&, std::size_t, \
                                                    std::size_t, std::size_t);                                     \
  template std::vector<ExtElem<T>> same_prime_merge(const ExtField<T>&, const std::vector<ExtElem<T>>&, std::size_t, \
                                                    std::size_t, std::size_t);                                     \
  template std::vector<ExtElem<T>> same_prime_split_all(const CoeffField&, const std::vector<T>&, std::size_t,     \
                                                        const std::vector<std::size_t>&);                          \
  template std::vector<T> same_prime_merge_all(const CoeffField&, const std::vector<ExtElem<T>>&, std::size_t,     \
                                               const std::vector<std::size_t>&);                                   \
  template std::vector<Poly<T>> cyclic_crt(const Poly<T>&, std::size_t, std::size_t);                              \
  template Poly<T> cyclic_crt_inverse(const CoeffField&, const std::vector<Poly<T>>&, std::size_t, std::size_t);   \
  template DecomposedElem<T> decompose(const CoeffField&, const FactorCatalog&, const GroupAlgElem<T>&);           \
  template GroupAlgElem<T> recompose(const CoeffField&, const DecomposedElem<T>&);                                  \
  template bool is_unit_abelian(const CoeffField&, const GroupAlgElem<T>&);                                        \
  template GroupAlgElem<T> invert_abelian(const CoeffField&, const GroupAlgElem<T>&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
