// Shared helpers for the test binaries: random generators and naive oracles.
#pragma once

#include <random>
#include <vector>

#include "normalbasis/poly.hpp"

namespace nbtest {

using normalbasis::CoeffField;
using normalbasis::ModP;
using normalbasis::Poly;
using normalbasis::Scalar;
using Q = mpq_class;

inline CoeffField QQ() { return CoeffField::rationals(); }

template <class T>
T rand_scalar(const CoeffField& f, std::mt19937_64& rng, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  if constexpr (std::is_same_v<T, mpq_class>) {
    // mostly integers, occasionally a proper fraction
    std::uniform_int_distribution<int> den(1, 4);
    mpq_class q(d(rng), rng() % 5 == 0 ? den(rng) : 1);
    q.canonicalize();
    return q;
  } else {
    return Scalar<T>::from_int(f, d(rng));
  }
}

template <class T>
std::vector<T> rand_vec(const CoeffField& f, std::mt19937_64& rng, std::size_t n) {
  std::vector<T> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(rand_scalar<T>(f, rng));
  return v;
}

template <class T>
Poly<T> rand_poly(const CoeffField& f, std::mt19937_64& rng, std::size_t len) {
  return Poly<T>(f, rand_vec<T>(f, rng, len));
}

template <class T>
Poly<T> schoolbook(const Poly<T>& a, const Poly<T>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<T>(a.field());
  std::vector<T> c(a.size() + b.size() - 1, normalbasis::zero_of<T>(a.field()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Poly<T>(a.field(), c);
}

inline Q qfrac(long n, long d) {
  Q q(n, d);
  q.canonicalize();
  return q;
}

inline Poly<Q> qpoly(std::initializer_list<long long> c) { return Poly<Q>::from_ints(QQ(), c); }

}  // namespace nbtest
