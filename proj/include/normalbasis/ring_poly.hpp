// Univariate polynomials over a commutative ring given by an adapter.
//
// The adapter R supplies
//   using Elem;
//   Elem zero() const;  Elem from_int(long long) const;
//   Elem add(const Elem&, const Elem&) const;  Elem sub(...) const;  Elem mul(...) const;
//   bool is_zero(const Elem&) const;
// and, for interpolation only, Elem inv(const Elem&) const.
//
// Nothing here divides by a ring element except interpolation weights, so
// the evaluation side works over rings with zero divisors.
#ifndef NORMALBASIS_RING_POLY_HPP
#define NORMALBASIS_RING_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace normalbasis::ring {

template <class R>
using RPoly = std::vector<typename R::Elem>;

template <class R>
void trim(const R& ring, RPoly<R>& a) {
  while (!a.empty() && ring.is_zero(a.back())) a.pop_back();
}

template <class R>
RPoly<R> add(const R& ring, std::span<const typename R::Elem> a, std::span<const typename R::Elem> b) {
  RPoly<R> out(std::max(a.size(), b.size()), ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = ring.add(out[i], b[i]);
  return out;
}

template <class R>
RPoly<R> sub(const R& ring, std::span<const typename R::Elem> a, std::span<const typename R::Elem> b) {
  RPoly<R> out(std::max(a.size(), b.size()), ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = ring.sub(out[i], b[i]);
  return out;
}

namespace detail {

template <class R>
void schoolbook(const R& ring, std::span<const typename R::Elem> a, std::span<const typename R::Elem> b,
                std::span<typename R::Elem> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ring.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (ring.is_zero(b[j])) continue;
      out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
    }
  }
}

// Accumulates a*b into out (size >= |a|+|b|-1).
template <class R>
void karatsuba(const R& ring, std::span<const typename R::Elem> a, std::span<const typename R::Elem> b,
               std::span<typename R::Elem> out, std::size_t threshold) {
  using E = typename R::Elem;
  if (a.empty() || b.empty()) return;
  if (a.size() < b.size()) std::swap(a, b);
  if (b.size() < threshold) {
    schoolbook(ring, a, b, out);
    return;
  }
  if (a.size() != b.size()) {
    // Unbalanced: cut the longer operand into blocks of the shorter length.
    for (std::size_t lo = 0; lo < a.size(); lo += b.size()) {
      std::size_t len = std::min(b.size(), a.size() - lo);
      karatsuba(ring, a.subspan(lo, len), b, out.subspan(lo), threshold);
    }
    return;
  }
  const std::size_t n = a.size(), h = n / 2;
  auto a0 = a.first(h), a1 = a.subspan(h);
  auto b0 = b.first(h), b1 = b.subspan(h);
  std::vector<E> z0(2 * h - 1, ring.zero()), z2(2 * (n - h) - 1, ring.zero());
  karatsuba(ring, a0, b0, std::span<E>(z0), threshold);
  karatsuba(ring, a1, b1, std::span<E>(z2), threshold);
  std::vector<E> sa = add(ring, a0, a1), sb = add(ring, b0, b1);
  std::vector<E> z1(sa.size() + sb.size() - 1, ring.zero());
  karatsuba(ring, std::span<const E>(sa), std::span<const E>(sb), std::span<E>(z1), threshold);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = ring.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = ring.sub(z1[i], z2[i]);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = ring.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = ring.add(out[i + h], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = ring.add(out[i + 2 * h], z2[i]);
}

}  // namespace detail

template <class R>
RPoly<R> mul(const R& ring, std::span<const typename R::Elem> a, std::span<const typename R::Elem> b,
             std::size_t threshold = 32) {
  if (a.empty() || b.empty()) return {};
  RPoly<R> out(a.size() + b.size() - 1, ring.zero());
  detail::karatsuba(ring, a, b, std::span<typename R::Elem>(out), threshold);
  trim(ring, out);
  return out;
}

template <class R>
typename R::Elem horner(const R& ring, std::span<const typename R::Elem> a, const typename R::Elem& x) {
  auto acc = ring.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), a[i]);
  return acc;
}

/// Inverse modulo y^prec of a series whose constant term is 1.
template <class R>
RPoly<R> unit_series_inverse(const R& ring, std::span<const typename R::Elem> f, std::size_t prec) {
  RPoly<R> g{ring.from_int(1)};
  std::size_t k = 1;
  while (k < prec) {
    k = std::min(2 * k, prec);
    // g <- g + g*(1 - f*g) mod y^k
    auto fk = f.first(std::min(f.size(), k));
    RPoly<R> e = mul(ring, fk, std::span<const typename R::Elem>(g));
    e.resize(k, ring.zero());
    for (auto& c : e) c = ring.sub(ring.zero(), c);
    e[0] = ring.add(e[0], ring.from_int(1));
    RPoly<R> corr = mul(ring, std::span<const typename R::Elem>(g), std::span<const typename R::Elem>(e));
    corr.resize(k, ring.zero());
    g.resize(k, ring.zero());
    for (std::size_t i = 0; i < k; ++i) g[i] = ring.add(g[i], corr[i]);
  }
  g.resize(prec, ring.zero());
  trim(ring, g);
  return g;
}

/// Remainder of a modulo a monic m. Uses a Newton quotient for large inputs.
template <class R>
RPoly<R> rem_monic(const R& ring, RPoly<R> a, std::span<const typename R::Elem> m, std::size_t fast_threshold = 64) {
  using E = typename R::Elem;
  trim(ring, a);
  const std::size_t dm = m.size() - 1;
  if (a.size() <= dm) return a;
  const std::size_t qlen = a.size() - dm;
  if (dm >= fast_threshold && qlen >= fast_threshold) {
    RPoly<R> ra(a.rbegin(), a.rend()), rm(m.rbegin(), m.rend());
    RPoly<R> inv = unit_series_inverse(ring, std::span<const E>(rm), qlen);
    ra.resize(qlen, ring.zero());
    RPoly<R> rq = mul(ring, std::span<const E>(ra), std::span<const E>(inv));
    rq.resize(qlen, ring.zero());
    RPoly<R> q(rq.rbegin(), rq.rend());
    RPoly<R> qm = mul(ring, std::span<const E>(q), m);
    RPoly<R> r(dm, ring.zero());
    for (std::size_t i = 0; i < dm; ++i) r[i] = ring.sub(a[i], i < qm.size() ? qm[i] : ring.zero());
    trim(ring, r);
    return r;
  }
  for (std::size_t i = a.size(); i-- > dm;) {
    E c = a[i];
    if (ring.is_zero(c)) continue;
    for (std::size_t j = 0; j < dm; ++j) a[i - dm + j] = ring.sub(a[i - dm + j], ring.mul(c, m[j]));
    a[i] = ring.zero();
  }
  a.resize(dm);
  trim(ring, a);
  return a;
}

/// Subproduct tree over the points x_0..x_{k-1}: level 0 holds y - x_i.
template <class R>
class SubproductTree {
 public:
  using E = typename R::Elem;

  SubproductTree(const R& ring, const std::vector<E>& points) : ring_(ring), points_(points) {
    std::vector<RPoly<R>> level;
    level.reserve(points.size());
    for (const auto& x : points) level.push_back({ring.sub(ring.zero(), x), ring.from_int(1)});
    levels_.push_back(level);
    while (levels_.back().size() > 1) {
      const auto& prev = levels_.back();
      std::vector<RPoly<R>> next;
      for (std::size_t i = 0; i + 1 < prev.size(); i += 2)
        next.push_back(mul(ring, std::span<const E>(prev[i]), std::span<const E>(prev[i + 1])));
      if (prev.size() % 2) next.push_back(prev.back());
      levels_.push_back(std::move(next));
    }
  }

  const RPoly<R>& root() const { return levels_.back().front(); }

  std::vector<E> evaluate(const RPoly<R>& f) const {
    if (points_.empty()) return {};
    std::vector<RPoly<R>> cur{rem_monic(ring_, f, std::span<const E>(root()))};
    for (std::size_t lv = levels_.size() - 1; lv-- > 0;) {
      const auto& nodes = levels_[lv];
      std::vector<RPoly<R>> next(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i)
        next[i] = rem_monic(ring_, cur[i / 2], std::span<const E>(nodes[i]));
      cur = std::move(next);
    }
    std::vector<E> out;
    out.reserve(cur.size());
    for (auto& r : cur) out.push_back(r.empty() ? ring_.zero() : r[0]);
    return out;
  }

  /// sum_i c_i * prod_{j != i} (y - x_j)
  RPoly<R> linear_combination(const std::vector<E>& c) const {
    std::vector<RPoly<R>> cur;
    cur.reserve(c.size());
    for (const auto& ci : c) cur.push_back({ci});
    for (std::size_t lv = 0; lv + 1 < levels_.size(); ++lv) {
      const auto& nodes = levels_[lv];
      std::vector<RPoly<R>> next;
      for (std::size_t i = 0; i + 1 < nodes.size(); i += 2) {
        auto l = mul(ring_, std::span<const E>(cur[i]), std::span<const E>(nodes[i + 1]));
        auto r = mul(ring_, std::span<const E>(cur[i + 1]), std::span<const E>(nodes[i]));
        next.push_back(add(ring_, std::span<const E>(l), std::span<const E>(r)));
      }
      if (nodes.size() % 2) next.push_back(cur.back());
      cur = std::move(next);
    }
    RPoly<R> out = cur.empty() ? RPoly<R>{} : cur.front();
    trim(ring_, out);
    return out;
  }

 private:
  const R& ring_;
  std::vector<E> points_;
  std::vector<std::vector<RPoly<R>>> levels_;
};

template <class R>
std::vector<typename R::Elem> multipoint_eval(const R& ring, const RPoly<R>& f,
                                              const std::vector<typename R::Elem>& points) {
  return SubproductTree<R>(ring, points).evaluate(f);
}

/// Interpolant of degree < #points. Requires each prod_{j != i}(x_i - x_j)
/// to be a unit of the ring.
template <class R>
RPoly<R> interpolate(const R& ring, const std::vector<typename R::Elem>& points,
                     const std::vector<typename R::Elem>& values) {
  using E = typename R::Elem;
  SubproductTree<R> tree(ring, points);
  const auto& m = tree.root();
  RPoly<R> dm;
  for (std::size_t i = 1; i < m.size(); ++i) dm.push_back(ring.mul(ring.from_int(static_cast<long long>(i)), m[i]));
  std::vector<E> w = tree.evaluate(dm);
  std::vector<E> c(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) c[i] = ring.mul(values[i], ring.inv(w[i]));
  return tree.linear_combination(c);
}

}  // namespace normalbasis::ring

#endif
