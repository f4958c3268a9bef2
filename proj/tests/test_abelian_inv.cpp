#include <map>

#include "doctest.h"
#include "normalbasis/abelian_inv.hpp"
#include "support.hpp"

using namespace normalbasis;
using namespace nbtest;

namespace {

// Dense multivariate product in (x) F[x_k]/Phi_{d_k}, last variable fastest:
// full convolution, then reduction of every fibre by schoolbook division.
std::vector<Q> naive_mul(const std::vector<Q>& a, const std::vector<Q>& b, const std::vector<std::size_t>& ds) {
  const std::size_t r = ds.size();
  std::vector<std::size_t> e(r), big(r);
  for (std::size_t k = 0; k < r; ++k) {
    e[k] = euler_phi(ds[k]);
    big[k] = 2 * e[k] - 1;
  }
  auto unrank = [](std::size_t i, const std::vector<std::size_t>& lens) {
    std::vector<std::size_t> out(lens.size());
    for (std::size_t k = lens.size(); k-- > 0;) {
      out[k] = i % lens[k];
      i /= lens[k];
    }
    return out;
  };
  auto rank = [](const std::vector<std::size_t>& idx, const std::vector<std::size_t>& lens) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < lens.size(); ++k) i = i * lens[k] + idx[k];
    return i;
  };
  std::size_t na = a.size(), nbig = 1;
  for (auto x : big) nbig *= x;
  std::vector<Q> c(nbig, Q(0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      auto ii = unrank(i, e), jj = unrank(j, e);
      for (std::size_t k = 0; k < r; ++k) ii[k] += jj[k];
      c[rank(ii, big)] += a[i] * b[j];
    }
  // reduce one variable at a time
  std::vector<std::size_t> cur = big;
  for (std::size_t k = 0; k < r; ++k) {
    auto next = cur;
    next[k] = e[k];
    std::size_t total = 1;
    for (auto x : next) total *= x;
    std::vector<Q> out(total, Q(0));
    auto phi = cyclotomic<Q>(QQ(), ds[k]);
    std::size_t ncur = c.size();
    std::map<std::vector<std::size_t>, std::vector<Q>> fib;
    for (std::size_t i = 0; i < ncur; ++i) {
      auto idx = unrank(i, cur);
      std::size_t deg = idx[k];
      idx[k] = 0;
      auto& f = fib[idx];
      f.resize(cur[k], Q(0));
      f[deg] = c[i];
    }
    for (auto& [idx, f] : fib) {
      // schoolbook remainder by the monic Phi
      std::vector<Q> rem = f;
      const auto& pc = phi.coeffs();
      const std::size_t dp = pc.size() - 1;
      for (std::size_t top = rem.size(); top-- > dp;) {
        Q q = rem[top];
        for (std::size_t t = 0; t <= dp; ++t) rem[top - dp + t] -= q * pc[t];
      }
      for (std::size_t t = 0; t < e[k]; ++t) {
        auto j = idx;
        j[k] = t;
        out[rank(j, next)] = t < rem.size() ? rem[t] : Q(0);
      }
    }
    c = std::move(out);
    cur = next;
  }
  return c;
}

Poly<Q> mulmod(const Poly<Q>& a, const Poly<Q>& b, const Poly<Q>& m) { return poly_rem(a * b, m); }

GroupAlgElem<Q> rand_ga(const GroupSpec& g, std::mt19937_64& rng) { return {g, rand_vec<Q>(QQ(), rng, g.size())}; }

std::vector<GroupSpec> small_abelian() {
  std::vector<GroupSpec> out;
  for (std::size_t n = 2; n <= 16; ++n) out.push_back(GroupSpec::abelian({n}));
  for (auto o : std::vector<std::vector<std::size_t>>{{2, 2}, {2, 4}, {2, 6}, {4, 4}, {2, 2, 2}, {2, 2, 4}, {3, 3}})
    out.push_back(GroupSpec::abelian(o));
  return out;
}

}  // namespace

TEST_CASE("coprime_merge for m = 2, m' = 3") {
  Matrix<Q> hx(1, 2, Q(0)), hx2(1, 2, Q(0));
  hx(0, 0) = 1;
  auto one = coprime_merge(QQ(), hx, 2, 3);
  CHECK(one == qpoly({1}));
  hx2(0, 1) = 1;  // x'
  auto img_x2 = coprime_merge(QQ(), hx2, 2, 3);
  CHECK(img_x2 == qpoly({0, -1}));  // z^4 = -z mod z^2 - z + 1
  // x = -1 in F[x]/Phi_2, and z^3 = -1 mod Phi_6
  Matrix<Q> hm(1, 2, Q(0));
  hm(0, 0) = -1;
  CHECK(coprime_merge(QQ(), hm, 2, 3) == qpoly({-1}));
  // (image of x)(image of x') = z, computed directly mod Phi_6
  CHECK(mulmod(qpoly({-1}), img_x2, cyclotomic<Q>(QQ(), 6)) == qpoly({0, 1}));
  CHECK_THROWS_AS(coprime_merge(QQ(), hx, 2, 4), UsageError);
}

TEST_CASE("coprime_merge is a ring isomorphism") {
  std::mt19937_64 rng(1);
  for (auto [m, m2] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 4}, {5, 2}, {9, 4}, {4, 5}, {1, 7}}) {
    CAPTURE(m);
    CAPTURE(m2);
    const std::size_t e = euler_phi(m), e2 = euler_phi(m2);
    auto phi = cyclotomic<Q>(QQ(), m * m2);
    for (int it = 0; it < 10; ++it) {
      auto a = rand_vec<Q>(QQ(), rng, e * e2), b = rand_vec<Q>(QQ(), rng, e * e2);
      Matrix<Q> A(e, e2, Q(0)), B(e, e2, Q(0)), AB(e, e2, Q(0));
      A.data = a;
      B.data = b;
      AB.data = naive_mul(a, b, {m, m2});
      auto ga = coprime_merge(QQ(), A, m, m2), gb = coprime_merge(QQ(), B, m, m2);
      CHECK(coprime_merge(QQ(), AB, m, m2) == mulmod(ga, gb, phi));
      CHECK(coprime_split(QQ(), ga, m, m2) == A);
    }
  }
}

TEST_CASE("merge_distinct_primes") {
  std::mt19937_64 rng(2);
  auto v = rand_vec<Q>(QQ(), rng, 4);
  CHECK(merge_distinct_primes(QQ(), v, {8}) == Poly<Q>(QQ(), v));
  const std::vector<std::size_t> mods{4, 3, 5};
  auto phi = cyclotomic<Q>(QQ(), 60);
  for (int it = 0; it < 20; ++it) {
    auto a = rand_vec<Q>(QQ(), rng, 16), b = rand_vec<Q>(QQ(), rng, 16);
    auto ga = merge_distinct_primes(QQ(), a, mods), gb = merge_distinct_primes(QQ(), b, mods);
    CHECK(merge_distinct_primes(QQ(), naive_mul(a, b, mods), mods) == mulmod(ga, gb, phi));
    CHECK(split_distinct_primes(QQ(), ga, mods) == a);
  }
  // two factors agree with coprime_merge
  auto a = rand_vec<Q>(QQ(), rng, 4);
  Matrix<Q> A(2, 2, Q(0));
  A.data = a;
  CHECK(merge_distinct_primes(QQ(), a, {4, 3}) == coprime_merge(QQ(), A, 4, 3));
  CHECK_THROWS_AS(merge_distinct_primes(QQ(), std::vector<Q>(4, Q(0)), {4, 6}), UsageError);
}

TEST_CASE("same_prime_split") {
  // p = 2, c = 2, c' = 1: one root, xi^2 = -1
  ExtField<Q> K(cyclotomic<Q>(QQ(), 4));
  ExtElem<Q> a0{{Q(3), Q(5)}};
  auto out = same_prime_split(K, {a0}, 2, 2, 1);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == a0);
  CHECK_THROWS_AS(same_prime_split(K, {a0}, 2, 1, 2), UsageError);

  // p = 3, c = 2, c' = 1: b = a[y]/Phi_3(y); P(y) = y evaluates to xi^3 and xi^6
  ExtField<Q> K9(cyclotomic<Q>(QQ(), 9));
  auto y = same_prime_split(K9, {K9.zero(), K9.one()}, 3, 2, 1);
  CHECK(y[0] == K9.from_poly(qpoly({0, 0, 0, 1})));
  CHECK(y[1] == K9.from_poly(qpoly({0, 0, 0, 0, 0, 0, 1})));

  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    std::vector<ExtElem<Q>> v{{rand_vec<Q>(QQ(), rng, 6)}, {rand_vec<Q>(QQ(), rng, 6)}};
    CHECK(same_prime_merge(K9, same_prime_split(K9, v, 3, 2, 1), 3, 2, 1) == v);
  }
}

TEST_CASE("same_prime_split_all is multiplicative") {
  std::mt19937_64 rng(4);
  auto a = rand_vec<Q>(QQ(), rng, 2);
  CHECK(same_prime_split_all(QQ(), a, 2, {2, 0}) == std::vector<ExtElem<Q>>{{a}});
  for (auto cs : std::vector<std::vector<std::size_t>>{{2, 1}, {2, 2, 1}, {2, 1, 1}, {2, 2}, {1, 1}}) {
    std::vector<std::size_t> ds;
    std::size_t total = 1;
    for (auto c : cs) {
      std::size_t q = 1;
      for (std::size_t i = 0; i < c; ++i) q *= 2;
      ds.push_back(q);
      total *= euler_phi(q);
    }
    ExtField<Q> K(cyclotomic<Q>(QQ(), ds[0]));
    for (int it = 0; it < 5; ++it) {
      auto x = rand_vec<Q>(QQ(), rng, total), y = rand_vec<Q>(QQ(), rng, total);
      auto sx = same_prime_split_all(QQ(), x, 2, cs), sy = same_prime_split_all(QQ(), y, 2, cs);
      auto sxy = same_prime_split_all(QQ(), naive_mul(x, y, ds), 2, cs);
      REQUIRE(sxy.size() == sx.size());
      for (std::size_t i = 0; i < sx.size(); ++i) CHECK(sxy[i] == ext_mul(K, sx[i], sy[i]));
      CHECK(same_prime_merge_all(QQ(), sx, 2, cs) == x);
    }
  }
  CHECK_THROWS_AS(same_prime_split_all(QQ(), std::vector<Q>(2, Q(0)), 2, {1, 2}), UsageError);
}

TEST_CASE("cyclic_crt") {
  auto res = cyclic_crt(qpoly({0, 1}), 2, 2);
  REQUIRE(res.size() == 3);
  CHECK(res[0] == qpoly({1}));
  CHECK(res[1] == qpoly({-1}));
  CHECK(res[2] == qpoly({0, 1}));
  // the moduli multiply back to x^4 - 1
  CHECK(qpoly({-1, 1}) * qpoly({1, 1}) * qpoly({1, 0, 1}) == qpoly({-1, 0, 0, 0, 1}));
  for (auto r : cyclic_crt(qpoly({1}), 3, 2)) CHECK(r == qpoly({1}));
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    Poly<Q> f(QQ(), rand_vec<Q>(QQ(), rng, 9));
    CHECK(cyclic_crt_inverse(QQ(), cyclic_crt(f, 3, 2), 3, 2) == f);
  }
}

TEST_CASE("catalog bookkeeping") {
  for (auto orders : std::vector<std::vector<std::size_t>>{
           {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}, {12}, {16}, {2, 2}, {2, 4}, {3, 9}, {6, 6}, {2, 2, 2}}) {
    auto cat = build_catalog(GroupSpec::abelian(orders));
    std::size_t total = 0;
    for (const auto& fct : cat.factors) total += euler_phi(fct.d);
    CHECK(total == cat.spec.size());
    for (std::size_t j = 1; j < cat.factors.size(); ++j) CHECK(cat.factors[j - 1].slot < cat.factors[j].slot);
  }
  auto triv = build_catalog(GroupSpec::abelian({}));
  CHECK(triv.factors.size() == 1);
  CHECK_THROWS_AS(build_catalog(GroupSpec::metacyclic(3, 2, 2, 3)), UsageError);
}

TEST_CASE("decompose and recompose") {
  auto c2 = GroupSpec::abelian({2});
  auto cat = build_catalog(c2);
  auto x = decompose(QQ(), cat, GroupAlgElem<Q>{c2, {Q(3), Q(5)}});
  REQUIRE(x.residues.size() == 2);
  CHECK(x.residues[0] == qpoly({8}));
  CHECK(x.residues[1] == qpoly({-2}));

  for (const auto& g : small_abelian()) {
    auto cg = build_catalog(g);
    for (const auto& r : decompose(QQ(), cg, ga_one<Q>(QQ(), g)).residues) CHECK(r == qpoly({1}));
  }

  std::mt19937_64 rng(6);
  for (auto orders : std::vector<std::vector<std::size_t>>{{2, 4}, {6}, {12}, {3, 9}, {6, 6}, {2, 2, 2}}) {
    auto g = GroupSpec::abelian(orders);
    auto cg = build_catalog(g);
    CAPTURE(g.describe());
    const int reps = g.size() > 30 ? 10 : 100;
    for (int it = 0; it < reps; ++it) {
      auto a = rand_ga(g, rng);
      auto da = decompose(QQ(), cg, a);
      CHECK(recompose(QQ(), da) == a);
      // recompose then decompose on random residues
      DecomposedElem<Q> r{&cg, {}};
      for (const auto& fct : cg.factors) r.residues.push_back(Poly<Q>(QQ(), rand_vec<Q>(QQ(), rng, euler_phi(fct.d))));
      CHECK(decompose(QQ(), cg, recompose(QQ(), r)).residues == r.residues);
      if (it < 5) {
        auto b = rand_ga(g, rng);
        auto db = decompose(QQ(), cg, b), dab = decompose(QQ(), cg, ga_mul(QQ(), a, b));
        for (std::size_t j = 0; j < cg.factors.size(); ++j)
          CHECK(dab.residues[j] == mulmod(da.residues[j], db.residues[j], cyclotomic<Q>(QQ(), cg.factors[j].d)));
      }
    }
  }
}

TEST_CASE("unit test agrees with the determinant") {
  std::mt19937_64 rng(7);
  for (const auto& g : small_abelian()) {
    CAPTURE(g.describe());
    auto cg = build_catalog(g);
    std::vector<GroupAlgElem<Q>> cases{ga_one<Q>(QQ(), g)};
    for (int it = 0; it < 6; ++it) cases.push_back(rand_ga(g, rng));
    for (const auto& H : all_subgroups(g)) cases.push_back(subset_sum<Q>(QQ(), g, H));
    // a unit everywhere except one factor
    for (std::size_t j = 0; j < cg.factors.size(); j += 2) {
      DecomposedElem<Q> r{&cg, {}};
      for (const auto& fct : cg.factors) r.residues.push_back(qpoly({1}));
      r.residues[j] = Poly<Q>(QQ());
      cases.push_back(recompose(QQ(), r));
    }
    for (const auto& b : cases) {
      bool det_unit = determinant(QQ(), mult_matrix(QQ(), b)) != 0;
      CHECK(is_unit_abelian(QQ(), b) == det_unit);
      if (det_unit) {
        CHECK(ga_mul(QQ(), b, invert_abelian(QQ(), b)) == ga_one<Q>(QQ(), g));
      } else {
        CHECK_THROWS_AS(invert_abelian(QQ(), b), NonUnitError);
      }
    }
  }
}

TEST_CASE("non-unit report") {
  auto c6 = GroupSpec::abelian({6});
  auto total = subset_sum<Q>(QQ(), c6, {0, 1, 2, 3, 4, 5});
  CHECK_FALSE(is_unit_abelian(QQ(), total));
  CHECK(determinant(QQ(), mult_matrix(QQ(), total)) == 0);
  try {
    invert_abelian(QQ(), total);
    FAIL("expected a non-unit");
  } catch (const NonUnitError& e) {
    CHECK(e.witness() != 1);
    CHECK(6 % e.witness() == 0);
  }
  CHECK(invert_abelian(QQ(), ga_one<Q>(QQ(), c6)) == ga_one<Q>(QQ(), c6));
}

TEST_CASE("prime field mode") {
  auto F = CoeffField::prime(1000003);
  std::mt19937_64 rng(8);
  auto g = GroupSpec::abelian({2, 4});
  for (int it = 0; it < 20; ++it) {
    GroupAlgElem<ModP> b{g, rand_vec<ModP>(F, rng, 8)};
    bool det_unit = !is_zero(determinant(F, mult_matrix(F, b)));
    CHECK(is_unit_abelian(F, b) == det_unit);
    if (det_unit) CHECK(ga_mul(F, b, invert_abelian(F, b)) == ga_one<ModP>(F, g));
  }
  auto F3 = CoeffField::prime(3);
  GroupAlgElem<ModP> b{GroupSpec::abelian({6}), std::vector<ModP>(6, one_of<ModP>(F3))};
  CHECK_THROWS_AS(is_unit_abelian(F3, b), UsageError);
}
