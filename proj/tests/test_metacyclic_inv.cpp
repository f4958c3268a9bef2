#include "doctest.h"
#include "normalbasis/field_ext.hpp"
#include "normalbasis/metacyclic_inv.hpp"
#include "support.hpp"

using namespace normalbasis;
using namespace nbtest;

namespace {

const GroupSpec D3 = GroupSpec::metacyclic(3, 2, 2, 3);
const GroupSpec D4 = GroupSpec::metacyclic(4, 2, 3, 4);
const GroupSpec Q8 = GroupSpec::metacyclic(4, 2, 3, 2);

std::vector<GroupSpec> meta_groups() {
  return {D3,
          D4,
          Q8,
          GroupSpec::metacyclic(6, 2, 5, 6),
          GroupSpec::metacyclic(7, 3, 2, 7),
          GroupSpec::metacyclic(2, 6, 1, 1),
          GroupSpec::metacyclic(4, 2, 1, 1),
          GroupSpec::metacyclic(5, 4, 2, 5),
          GroupSpec::metacyclic(3, 4, 2, 3)};
}

GroupAlgElem<Q> rand_ga(const GroupSpec& g, std::mt19937_64& rng) { return {g, rand_vec<Q>(QQ(), rng, g.size())}; }

std::vector<std::vector<Q>> rand_avec(const GroupSpec& g, std::mt19937_64& rng) {
  std::vector<std::vector<Q>> v;
  for (std::size_t k = 0; k < g.s; ++k) v.push_back(rand_vec<Q>(QQ(), rng, g.m));
  return v;
}

// Elements that are units and non-units in roughly equal numbers.
std::vector<GroupAlgElem<Q>> test_elements(const GroupSpec& g, std::mt19937_64& rng, int randoms) {
  std::vector<GroupAlgElem<Q>> out{ga_one<Q>(QQ(), g)};
  for (int i = 0; i < randoms; ++i) out.push_back(rand_ga(g, rng));
  for (const auto& H : all_subgroups(g)) {
    if (H.size() == 1) continue;
    auto e = subset_sum<Q>(QQ(), g, H);
    out.push_back(e);
    out.push_back(ga_mul(QQ(), rand_ga(g, rng), e));
    out.push_back(ga_mul(QQ(), e, rand_ga(g, rng)));
  }
  return out;
}

bool det_oracle(const GroupAlgElem<Q>& b) { return determinant(QQ(), mult_matrix(QQ(), b)) != 0; }

// Field EEA over F[z]/Phi, stopped when deg r < stop.
std::pair<long, long> field_eea(const ExtField<Q>& K, std::vector<ExtElem<Q>> r0, std::vector<ExtElem<Q>> r1,
                                std::size_t stop) {
  auto trim = [](std::vector<ExtElem<Q>>& p) {
    while (!p.empty() && ext_is_zero(p.back())) p.pop_back();
  };
  trim(r0);
  trim(r1);
  std::vector<ExtElem<Q>> t0, t1{K.one()};
  while (r1.size() > stop) {
    auto inv = ext_inv(K, r1.back());
    std::vector<ExtElem<Q>> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, K.zero());
    while (r0.size() >= r1.size()) {
      std::size_t sh = r0.size() - r1.size();
      auto c = ext_mul(K, r0.back(), inv);
      q[sh] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) r0[sh + i] = ext_sub(K, r0[sh + i], ext_mul(K, c, r1[i]));
      trim(r0);
    }
    std::vector<ExtElem<Q>> t(std::max(t0.size(), q.size() + t1.size()), K.zero());
    for (std::size_t i = 0; i < t0.size(); ++i) t[i] = t0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < t1.size(); ++j) t[i + j] = ext_sub(K, t[i + j], ext_mul(K, q[i], t1[j]));
    trim(t);
    // r0 holds the remainder
    std::swap(r0, r1);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  return {static_cast<long>(r1.size()) - 1, static_cast<long>(t1.size()) - 1};
}

// Berlekamp-Massey linear complexity over a field.
std::size_t linear_complexity(const ExtField<Q>& K, const std::vector<ExtElem<Q>>& s) {
  std::vector<ExtElem<Q>> C{K.one()}, B{K.one()};
  std::size_t L = 0, m = 1;
  ExtElem<Q> b = K.one();
  for (std::size_t n = 0; n < s.size(); ++n) {
    ExtElem<Q> d = s[n];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d = ext_add(K, d, ext_mul(K, C[i], s[n - i]));
    if (ext_is_zero(d)) {
      ++m;
      continue;
    }
    auto coef = ext_mul(K, d, ext_inv(K, b));
    auto Told = C;
    if (C.size() < B.size() + m) C.resize(B.size() + m, K.zero());
    for (std::size_t i = 0; i < B.size(); ++i) C[i + m] = ext_sub(K, C[i + m], ext_mul(K, coef, B[i]));
    if (2 * L <= n) {
      L = n + 1 - L;
      B = Told;
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  return L;
}

std::vector<Poly<Q>> rand_ypoly(std::mt19937_64& rng, std::size_t len, std::size_t m) {
  std::vector<Poly<Q>> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(Poly<Q>(QQ(), rand_vec<Q>(QQ(), rng, m)));
  return out;
}

}  // namespace

TEST_CASE("psi basics") {
  for (const auto& g : meta_groups()) {
    CycRing<Q> A{QQ(), g.m};
    auto I = psi(QQ(), ga_one<Q>(QQ(), g));
    for (std::size_t i = 0; i < g.s; ++i)
      for (std::size_t j = 0; j < g.s; ++j) CHECK(I(i, j) == (i == j ? A.one() : A.zero()));
    CHECK(psi_relations_hold(g));
  }
  // D_3: psi(tau) has the corner zeta^t = zeta^3 = 1, so psi(tau)^2 = I = psi(sigma)^3
  CycRing<Q> A{QQ(), 3};
  auto tau = psi(QQ(), ga_basis<Q>(QQ(), D3, meta_index(D3, 0, 1)));
  CHECK(tau(0, 0) == A.zero());
  CHECK(tau(0, 1) == A.one());
  CHECK(tau(1, 0) == A.one());
  CHECK(tau(1, 1) == A.zero());
  // Q_8: corner zeta^2
  CycRing<Q> A4{QQ(), 4};
  auto tq = psi(QQ(), ga_basis<Q>(QQ(), Q8, meta_index(Q8, 0, 1)));
  CHECK(tq(0, 1) == A4.power_of_zeta(2));
  auto sq = psi(QQ(), ga_basis<Q>(QQ(), Q8, meta_index(Q8, 1, 0)));
  CHECK(sq(0, 0) == A4.power_of_zeta(1));
  CHECK(sq(1, 1) == A4.power_of_zeta(3));
}

TEST_CASE("psi is an injective homomorphism") {
  std::mt19937_64 rng(1);
  for (const auto& g : meta_groups()) {
    CAPTURE(g.describe());
    CycRing<Q> A{QQ(), g.m};
    const int reps = (g == D4 || g == Q8) ? 50 : 5;
    for (int it = 0; it < reps; ++it) {
      auto a = rand_ga(g, rng), b = rand_ga(g, rng);
      CHECK(psi(QQ(), ga_mul(QQ(), a, b)) == psi_mul(A, psi(QQ(), a), psi(QQ(), b)));
      CHECK(psi_preimage(QQ(), g, psi(QQ(), a)) == a);
    }
  }
}

TEST_CASE("psi_matvec") {
  std::mt19937_64 rng(2);
  for (const auto& g : meta_groups()) {
    CAPTURE(g.describe());
    CycRing<Q> A{QQ(), g.m};
    auto v = rand_avec(g, rng);
    CHECK(psi_matvec(QQ(), ga_one<Q>(QQ(), g), v) == v);
    const int reps = g == D3 ? 20 : 5;
    for (int it = 0; it < reps; ++it) {
      auto b = rand_ga(g, rng);
      auto x = rand_avec(g, rng), y = rand_avec(g, rng);
      CHECK(psi_matvec(QQ(), b, x) == psi_apply(A, psi(QQ(), b), x));
      std::vector<std::vector<Q>> xy(g.s);
      for (std::size_t k = 0; k < g.s; ++k) xy[k] = A.add(x[k], y[k]);
      auto lhs = psi_matvec(QQ(), b, xy), px = psi_matvec(QQ(), b, x), py = psi_matvec(QQ(), b, y);
      for (std::size_t k = 0; k < g.s; ++k) CHECK(lhs[k] == A.add(px[k], py[k]));
    }
  }
  CHECK_THROWS_AS(psi_matvec(QQ(), ga_one<Q>(QQ(), D3), {{Q(1), Q(0), Q(0)}}), UsageError);
}

TEST_CASE("determinant path") {
  CHECK(is_unit_metacyclic_det(QQ(), ga_one<Q>(QQ(), D3)).unit);
  auto rot = subset_sum<Q>(QQ(), D3, {meta_index(D3, 0, 0), meta_index(D3, 1, 0), meta_index(D3, 2, 0)});
  auto v = is_unit_metacyclic_det(QQ(), rot);
  CHECK_FALSE(v.unit);
  CHECK(v.witness == 3);  // 1 + zeta + zeta^2 vanishes mod Phi_3
  CHECK(det_oracle(rot) == false);

  std::mt19937_64 rng(3);
  for (const auto& g : meta_groups()) {
    CAPTURE(g.describe());
    const int randoms = (g == D3 || g == D4 || g == Q8) ? 100 : 10;
    for (const auto& b : test_elements(g, rng, randoms)) CHECK(is_unit_metacyclic_det(QQ(), b).unit == det_oracle(b));
  }
}

TEST_CASE("eea_dynamic") {
  auto z = [](std::initializer_list<long long> c) { return Poly<Q>::from_ints(QQ(), c); };
  // irreducible modulus: one branch, classical result
  auto phi3 = cyclotomic<Q>(QQ(), 3);
  std::vector<Poly<Q>> f{z({}), z({}), z({}), z({1})}, g{z({1}), z({0, 1}), z({2})};
  auto br = eea_dynamic(f, g, phi3, 2);
  REQUIRE(br.size() == 1);
  ExtField<Q> K3(phi3);
  std::vector<ExtElem<Q>> fk, gk;
  for (const auto& c : f) fk.push_back(K3.from_poly(c));
  for (const auto& c : g) gk.push_back(K3.from_poly(c));
  auto [rd, td] = field_eea(K3, fk, gk, 2);
  CHECK(br[0].rem_degree == rd);
  CHECK(br[0].cof_degree == td);

  // z^2 - 1 with leading coefficient z - 1 splits
  auto zz = z({-1, 0, 1});
  auto split = eea_dynamic({z({}), z({}), z({1})}, {z({1}), z({-1, 1})}, zz, 1);
  REQUIRE(split.size() == 2);
  std::vector<Poly<Q>> mods{split[0].modulus.monic(), split[1].modulus.monic()};
  CHECK(std::find(mods.begin(), mods.end(), z({-1, 1})) != mods.end());
  CHECK(std::find(mods.begin(), mods.end(), z({1, 1})) != mods.end());

  CHECK_THROWS_AS(eea_dynamic(f, g, z({1, 2, 1}), 2), UsageError);

  // branch-wise agreement with a field EEA modulo each Phi_d | z^6 - 1
  std::mt19937_64 rng(4);
  auto z6 = z({-1, 0, 0, 0, 0, 0, 1});
  for (int it = 0; it < 20; ++it) {
    auto a = rand_ypoly(rng, 7, 6), b = rand_ypoly(rng, 6, 6);
    b.back() = poly_rem(b.back() * cyclotomic<Q>(QQ(), std::vector<std::size_t>{1, 2, 3, 6}[it % 4]), z6);
    a.back() = poly_rem(a.back() * cyclotomic<Q>(QQ(), 2), z6);
    const std::size_t stop = 3;
    auto branches = eea_dynamic(a, b, z6, stop);
    std::size_t total_deg = 0;
    for (const auto& x : branches) total_deg += static_cast<std::size_t>(x.modulus.degree());
    CHECK(total_deg == 6);
    for (auto d : divisors(6)) {
      auto phi = cyclotomic<Q>(QQ(), d);
      ExtField<Q> K(phi);
      std::vector<ExtElem<Q>> ak, bk;
      for (const auto& c : a) ak.push_back(K.from_poly(c));
      for (const auto& c : b) bk.push_back(K.from_poly(c));
      auto [r, t] = field_eea(K, ak, bk, stop);
      int hits = 0;
      for (const auto& x : branches) {
        if (!poly_rem(x.modulus, phi).is_zero()) continue;
        ++hits;
        CHECK(x.rem_degree == r);
        CHECK(x.cof_degree == t);
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("eea datum is the linear complexity") {
  std::mt19937_64 rng(5);
  auto z6 = Poly<Q>::from_ints(QQ(), {-1, 0, 0, 0, 0, 0, 1});
  for (int it = 0; it < 10; ++it) {
    // a sequence with a short recurrence modulo some factors only
    const std::size_t N = 4;
    auto seq = rand_ypoly(rng, 2 * N, 6);
    for (std::size_t j = 2; j < 2 * N; ++j) seq[j] = poly_rem(seq[j - 1] * seq[0] + seq[j - 2], z6);
    if (it % 2) seq[1] = poly_rem(seq[1] * cyclotomic<Q>(QQ(), 3), z6);
    std::vector<Poly<Q>> y2N(2 * N + 1, Poly<Q>(QQ()));
    y2N.back() = Poly<Q>::constant(QQ(), Q(1));
    auto branches = eea_dynamic(y2N, seq, z6, N);
    for (auto d : divisors(6)) {
      auto phi = cyclotomic<Q>(QQ(), d);
      ExtField<Q> K(phi);
      std::vector<ExtElem<Q>> sk;
      for (const auto& c : seq) sk.push_back(K.from_poly(c));
      auto L = linear_complexity(K, sk);
      for (const auto& x : branches) {
        if (!poly_rem(x.modulus, phi).is_zero()) continue;
        CHECK(static_cast<std::size_t>(std::max(x.cof_degree, x.rem_degree + 1)) == L);
      }
    }
  }
}

TEST_CASE("Monte Carlo path") {
  std::mt19937_64 rng(6);
  for (int seed = 0; seed < 5; ++seed) {
    std::mt19937_64 r(seed);
    CHECK(is_unit_metacyclic_mc(QQ(), ga_one<Q>(QQ(), D3), r, 1).unit);
  }
  auto rot = subset_sum<Q>(QQ(), D3, {0, 2, 4});
  CHECK_FALSE(is_unit_metacyclic_mc(QQ(), rot, rng, 3).unit);

  for (const auto& g : {D3, D4, Q8}) {
    CAPTURE(g.describe());
    std::size_t k = 0;
    for (const auto& b : test_elements(g, rng, 100)) {
      std::mt19937_64 r(1000 + k++);
      auto mc = is_unit_metacyclic_mc(QQ(), b, r, 2);
      CHECK(mc.unit == is_unit_metacyclic_det(QQ(), b).unit);
      if (!mc.unit)
        for (const auto& br : mc.branches) CHECK(br.rank <= g.s);
    }
  }
  for (const auto& g : meta_groups()) {
    CAPTURE(g.describe());
    for (const auto& b : test_elements(g, rng, 3)) {
      auto mc = is_unit_metacyclic_mc(QQ(), b, rng, 3);
      CHECK(mc.unit == det_oracle(b));
    }
  }
}

TEST_CASE("prime field with reducible cyclotomic factors") {
  // Phi_3 splits over F_13 and Phi_4 splits over F_13
  auto F = CoeffField::prime(13);
  std::mt19937_64 rng(7);
  for (const auto& g : {D3, D4, Q8, GroupSpec::metacyclic(6, 2, 5, 6)}) {
    CAPTURE(g.describe());
    int units = 0, nonunits = 0;
    for (int it = 0; it < 60; ++it) {
      GroupAlgElem<ModP> b{g, {}};
      for (std::size_t i = 0; i < g.size(); ++i) b.coeffs.push_back(sample_scalar<ModP>(F, rng, it % 2 ? 3 : 13));
      bool oracle = !is_zero(determinant(F, mult_matrix(F, b)));
      (oracle ? units : nonunits)++;
      CHECK(is_unit_metacyclic_det(F, b).unit == oracle);
      std::mt19937_64 r(it);
      auto mc = is_unit_metacyclic_mc(F, b, r, 3);
      if (mc.unit) CHECK(oracle);
    }
    CHECK(units > 0);
    CHECK(nonunits > 0);
  }
  CHECK_THROWS_AS(is_unit_metacyclic_det(CoeffField::prime(3), GroupAlgElem<ModP>{D3, std::vector<ModP>(6)}),
                  UsageError);
}
