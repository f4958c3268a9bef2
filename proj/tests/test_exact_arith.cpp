#include "doctest.h"
#include "support.hpp"

using namespace normalbasis;
using namespace nbtest;

TEST_CASE("scalar parsing and printing") {
  CHECK(Scalar<Q>::to_string(qfrac(3, 6)) == "1/2");
  CHECK(Scalar<Q>::to_string(Q(-4)) == "-4/1");
  CHECK(Scalar<Q>::parse(QQ(), "6/4") == Q(3, 2));
  CHECK(Scalar<Q>::parse(QQ(), "-7") == Q(-7));
  CHECK_THROWS_AS(Scalar<Q>::parse(QQ(), "1/x"), UsageError);
  CHECK_THROWS_AS(Scalar<Q>::parse(QQ(), "1/0"), DivisionByZero);
  auto F = CoeffField::prime(101);
  CHECK(Scalar<ModP>::parse(F, "1/2").value() == 51);
  CHECK(Scalar<ModP>::to_string(ModP(-1, 101)) == "100");
  CHECK_THROWS_AS(CoeffField::prime(91), UsageError);
  CHECK_THROWS_AS(CoeffField::prime(2), UsageError);
  CHECK_THROWS_AS(ModP(1, 101) + ModP(1, 103), UsageError);
  CHECK_THROWS_AS(ModP(0, 101).inverse(), DivisionByZero);
}

TEST_CASE("poly_mul small cases") {
  CHECK(qpoly({1, 1}) * qpoly({-1, 1}) == qpoly({-1, 0, 1}));
  CHECK((qpoly({1, 2, 3}) * Poly<Q>(QQ())).is_zero());
  CHECK(Poly<Q>(QQ()).degree() == kZeroDegree);
  Poly<ModP> pm = Poly<ModP>::from_ints(CoeffField::prime(7), {1, 1});
  CHECK_THROWS_AS(pm * Poly<ModP>::from_ints(CoeffField::prime(11), {1}), UsageError);
}

TEST_CASE("poly_mul agrees with schoolbook") {
  std::mt19937_64 rng(1);
  for (std::size_t len : {5, 41, 41, 70, 130}) {
    auto a = rand_poly<Q>(QQ(), rng, len), b = rand_poly<Q>(QQ(), rng, len + rng() % 40);
    CHECK(a * b == schoolbook(a, b));
  }
  auto F = CoeffField::prime((1ULL << 61) - 1);
  for (std::size_t len : {3, 33, 200}) {
    auto a = rand_poly<ModP>(F, rng, len), b = rand_poly<ModP>(F, rng, len * 2 + 1);
    CHECK(a * b == schoolbook(a, b));
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 20; ++it) {
    auto a = rand_poly<Q>(QQ(), rng, 1 + rng() % 50), b = rand_poly<Q>(QQ(), rng, 1 + rng() % 50),
         c = rand_poly<Q>(QQ(), rng, 1 + rng() % 50);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("divmod") {
  auto [q, r] = poly_divmod(qpoly({-1, 0, 1}), qpoly({-1, 1}));
  CHECK(q == qpoly({1, 1}));
  CHECK(r.is_zero());
  auto d = poly_divmod(qpoly({1, 2}), qpoly({1, 2, 3}));
  CHECK(d.quotient.is_zero());
  CHECK(d.remainder == qpoly({1, 2}));
  CHECK_THROWS_AS(poly_divmod(qpoly({1}), Poly<Q>(QQ())), DivisionByZero);

  std::mt19937_64 rng(3);
  for (auto [la, lb] : {std::pair{20, 7}, {200, 90}, {300, 70}, {150, 149}}) {
    auto a = rand_poly<Q>(QQ(), rng, la), b = rand_poly<Q>(QQ(), rng, lb);
    auto [qq, rr] = poly_divmod(a, b);
    CHECK(qq * b + rr == a);
    CHECK(rr.degree() < b.degree());
  }
}

TEST_CASE("egcd") {
  auto e = poly_egcd(qpoly({-1, 0, 1}), qpoly({-1, 0, 0, 1}));
  CHECK(e.g == qpoly({-1, 1}));
  CHECK(poly_egcd(qpoly({0, 1}), qpoly({1, 1})).g.is_one());
  auto p = qpoly({4, 0, 2});
  auto e2 = poly_egcd(p, Poly<Q>(QQ()));
  CHECK(e2.g == p.monic());
  CHECK(e2.v.is_zero());
  CHECK_THROWS_AS(poly_egcd(Poly<Q>(QQ()), Poly<Q>(QQ())), UsageError);

  std::mt19937_64 rng(4);
  for (int it = 0; it < 100; ++it) {
    auto common = rand_poly<Q>(QQ(), rng, 1 + rng() % 3);
    auto a = rand_poly<Q>(QQ(), rng, 1 + rng() % 8) * common, b = rand_poly<Q>(QQ(), rng, 1 + rng() % 8) * common;
    if (a.is_zero() && b.is_zero()) continue;
    auto g = poly_egcd(a, b);
    CHECK(g.u * a + g.v * b == g.g);
    CHECK(poly_rem(a, g.g).is_zero());
    CHECK(poly_rem(b, g.g).is_zero());
    CHECK(Scalar<Q>::is_one(g.g.lead()));
  }
}

TEST_CASE("cyclotomic") {
  CHECK(cyclotomic<Q>(QQ(), 1) == qpoly({-1, 1}));
  CHECK(cyclotomic<Q>(QQ(), 4) == qpoly({1, 0, 1}));
  CHECK(cyclotomic<Q>(QQ(), 6) == qpoly({1, -1, 1}));
  CHECK_THROWS_AS(cyclotomic<Q>(QQ(), 0), UsageError);
  for (std::size_t n = 1; n <= 64; ++n) {
    auto xn1 = Poly<Q>::monomial(QQ(), Q(1), n) - qpoly({1});
    CHECK(poly_rem(xn1, cyclotomic<Q>(QQ(), n)).is_zero());
    long total = 0;
    for (auto d : divisors(n)) total += cyclotomic<Q>(QQ(), d).degree();
    CHECK(total == static_cast<long>(n));
    CHECK(cyclotomic<Q>(QQ(), n).degree() == static_cast<long>(euler_phi(n)));
  }
}

TEST_CASE("crt") {
  std::vector<Poly<Q>> mods{qpoly({-1, 1}), qpoly({1, 1})};
  CHECK(poly_crt<Q>({Poly<Q>(QQ()), Poly<Q>(QQ())}, mods).is_zero());
  CHECK(poly_crt<Q>({qpoly({1}), qpoly({-1})}, mods) == qpoly({0, 1}));
  CHECK_THROWS_AS(poly_crt<Q>({qpoly({1}), qpoly({1})}, {qpoly({-1, 1}), qpoly({1, -2, 1})}), StructureError);

  std::mt19937_64 rng(5);
  std::vector<Poly<Q>> cyc;
  long total = 0;
  for (auto d : divisors(24)) {
    cyc.push_back(cyclotomic<Q>(QQ(), d));
    total += cyc.back().degree();
  }
  for (int it = 0; it < 10; ++it) {
    auto f = rand_poly<Q>(QQ(), rng, total);
    auto res = multi_rem(f, cyc);
    for (std::size_t i = 0; i < cyc.size(); ++i) CHECK(res[i] == poly_rem(f, cyc[i]));
    CHECK(poly_crt(res, cyc) == f);
  }
}

TEST_CASE("multipoint evaluation and interpolation") {
  auto x2 = qpoly({0, 0, 1});
  CHECK(multipoint_eval(x2, {Q(1), Q(2), Q(3)}) == std::vector<Q>{1, 4, 9});
  CHECK_THROWS_AS(interpolate<Q>(QQ(), {Q(1), Q(1)}, {Q(0), Q(2)}), UsageError);

  std::mt19937_64 rng(6);
  for (std::size_t k : {3, 8, 20, 33}) {
    std::vector<Q> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back(qfrac(static_cast<long>(i) * 3 - 17, 1 + static_cast<long>(i % 3)));
    auto f = rand_poly<Q>(QQ(), rng, k);
    auto vals = multipoint_eval(f, pts);
    for (std::size_t i = 0; i < k; ++i) CHECK(vals[i] == f(pts[i]));
    CHECK(interpolate<Q>(QQ(), pts, vals) == f);
  }
  auto F = CoeffField::prime(1000003);
  std::vector<ModP> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(ModP(i * i + 1, F.modulus));
  auto g = rand_poly<ModP>(F, rng, 25);
  auto vals = multipoint_eval(g, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(vals[i] == g(pts[i]));
}

TEST_CASE("prime mode agrees with rational mode after reduction") {
  auto F = CoeffField::prime(1000000007);
  std::mt19937_64 rng(7);
  auto reduce = [&](const Poly<Q>& p) {
    std::vector<ModP> c;
    for (const auto& x : p.coeffs()) c.push_back(Scalar<ModP>::from_rational(F, x));
    return Poly<ModP>(F, c);
  };
  for (int it = 0; it < 20; ++it) {
    auto a = rand_poly<Q>(QQ(), rng, 1 + rng() % 60), b = rand_poly<Q>(QQ(), rng, 1 + rng() % 60);
    CHECK(reduce(a * b) == reduce(a) * reduce(b));
  }
}

TEST_CASE("number theory helpers") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(divisors(12) == std::vector<std::size_t>{1, 2, 3, 4, 6, 12});
  CHECK(factor_small(360) == std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(is_prime_u64((1ULL << 61) - 1));
  CHECK(!is_prime_u64(3215031751ULL));
}
