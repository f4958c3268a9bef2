#include "doctest.h"
#include "normalbasis/fixtures.hpp"
#include "normalbasis/normal_finder.hpp"
#include "support.hpp"

using namespace normalbasis;
using namespace nbtest;

namespace {

std::vector<Fixture<Q>> shipped() {
  std::vector<Fixture<Q>> out;
  for (std::size_t n : {5, 7, 8, 9, 12, 15, 16}) out.push_back(cyclotomic_fixture<Q>(QQ(), n));
  out.push_back(s3_fixture());
  out.push_back(biquadratic_fixture());
  return out;
}

ExtElem<Q> xi_power_sum(const ExtField<Q>& K, std::initializer_list<std::size_t> ks) {
  ExtElem<Q> a = K.zero();
  for (auto k : ks) a = ext_add(K, a, K.from_poly(Poly<Q>::monomial(QQ(), Q(1), k)));
  return a;
}

// Sum of h(alpha) over a subgroup H: fixed by H, so never normal when H != 1.
template <class T>
ExtElem<T> subgroup_trace(const GaloisAction<T>& act, const ExtElem<T>& alpha, const std::vector<std::size_t>& H) {
  auto orbit = naive_orbit(act, alpha);
  ExtElem<T> out = act.K.zero();
  for (auto h : H) out = ext_add(act.K, out, orbit[h]);
  return out;
}

ExtElem<Q> rand_elem(const ExtField<Q>& K, std::mt19937_64& rng) { return {rand_vec<Q>(QQ(), rng, K.degree())}; }

}  // namespace

TEST_CASE("fast check on known elements") {
  auto z5 = cyclotomic_fixture<Q>(QQ(), 5).action;
  const auto& K = z5.K;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    CHECK_FALSE(is_normal_fast(z5, K.one(), rng).normal);
    CHECK_FALSE(is_normal_fast(z5, xi_power_sum(K, {1, 4}), rng).normal);
  }
  int certain = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    auto r = is_normal_fast(z5, K.gen(), rng);
    if (r.normal) {
      ++certain;
      CHECK(r.evidence.inverse.has_value());
      CHECK(ga_mul(QQ(), r.evidence.projection, *r.evidence.inverse) == ga_one<Q>(QQ(), z5.spec));
    }
  }
  CHECK(certain >= 15);

  CHECK(verify_normal_oracle(z5, K.gen()));
  CHECK_FALSE(verify_normal_oracle(z5, K.one()));
  CHECK_FALSE(verify_normal_oracle(z5, xi_power_sum(K, {1, 4})));
  auto z7 = cyclotomic_fixture<Q>(QQ(), 7).action;
  CHECK(verify_normal_oracle(z7, z7.K.gen()));
  CHECK_FALSE(verify_normal_oracle(z7, xi_power_sum(z7.K, {1, 6})));
  CHECK_THROWS_AS(verify_normal_oracle(z7, z7.K.gen(), 4), UsageError);
}

TEST_CASE("oracle agrees with the rank of the conjugates") {
  std::mt19937_64 rng(11);
  for (const auto& fx : shipped()) {
    CAPTURE(fx.label);
    const auto& act = fx.action;
    const std::size_t n = act.K.degree();
    std::vector<ExtElem<Q>> alphas{act.K.one(), act.K.gen()};
    for (int i = 0; i < 4; ++i) alphas.push_back(rand_elem(act.K, rng));
    for (const auto& H : all_subgroups(act.spec))
      if (H.size() > 1) alphas.push_back(subgroup_trace(act, rand_elem(act.K, rng), H));
    for (const auto& a : alphas) CHECK(verify_normal_oracle(act, a) == (conjugate_rank(act, a) == n));
  }
}

TEST_CASE("fast check is one-sided") {
  std::mt19937_64 rng(12);
  for (const auto& fx : shipped()) {
    CAPTURE(fx.label);
    const auto& act = fx.action;
    std::vector<ExtElem<Q>> bad{act.K.one(), act.K.zero()};
    for (const auto& H : all_subgroups(act.spec))
      if (H.size() > 1) {
        bad.push_back(subgroup_trace(act, act.K.gen(), H));
        bad.push_back(subgroup_trace(act, rand_elem(act.K, rng), H));
      }
    for (const auto& a : bad) {
      REQUIRE_FALSE(verify_normal_oracle(act, a));
      for (int k = 0; k < 3; ++k) CHECK_FALSE(is_normal_fast(act, a, rng).normal);
    }
  }
}

TEST_CASE("find_normal certificates") {
  SUBCASE("zeta_7 within three trials") {
    auto act = cyclotomic_fixture<Q>(QQ(), 7).action;
    for (std::uint64_t seed : {1, 2, 3, 42}) {
      SearchConfig cfg;
      cfg.seed = seed;
      auto c = find_normal(act, cfg);
      CHECK(c.trials <= 3);
      CHECK(c.sample_size == 24);
      CHECK(verify_normal_oracle(act, c.alpha));
      CHECK(check_certificate(act, c) == "");
    }
  }
  SUBCASE("S_3, both unit tests") {
    auto act = s3_fixture().action;
    for (auto um : {UnitMethod::det, UnitMethod::mc}) {
      SearchConfig cfg;
      cfg.seed = 5;
      cfg.unit_method = um;
      cfg.verify = true;
      auto c = find_normal(act, cfg);
      CHECK(c.verified_by_oracle);
      CHECK(c.evidence.unit_test == (um == UnitMethod::det ? "det" : "mc"));
      CHECK(check_certificate(act, c) == "");
    }
  }
  SUBCASE("trivial group") {
    ExtField<Q> K(qpoly({-1, 1}));
    GaloisAction<Q> act{K, GroupSpec::abelian({}), {}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SearchConfig cfg;
      cfg.seed = seed;
      cfg.form_retries = 4;
      auto c = find_normal(act, cfg);
      CHECK(c.trials == 1);
      CHECK_FALSE(ext_is_zero(c.alpha));
    }
  }
  SUBCASE("oracle method") {
    auto act = cyclotomic_fixture<Q>(QQ(), 8).action;
    SearchConfig cfg;
    cfg.method = SearchMethod::oracle;
    auto c = find_normal(act, cfg);
    CHECK(c.evidence.kind == "oracle");
    CHECK(c.verified_by_oracle);
    CHECK(check_certificate(act, c) == "");
  }
  SUBCASE("tampered certificates are rejected") {
    auto act = cyclotomic_fixture<Q>(QQ(), 7).action;
    auto c = find_normal(act, SearchConfig{});
    auto t = c;
    t.alpha.coeffs[0] += 1;
    CHECK(check_certificate(act, t) != "");
    t = c;
    t.evidence.inverse->coeffs[0] += 1;
    CHECK(check_certificate(act, t) != "");
    t = c;
    t.evidence.kind = "hunch";
    CHECK(check_certificate(act, t) != "");
  }
  SUBCASE("configuration errors") {
    auto act = cyclotomic_fixture<Q>(QQ(), 7).action;
    SearchConfig cfg;
    cfg.sample_size = 11;
    CHECK_THROWS_AS(find_normal(act, cfg), UsageError);
    cfg.sample_size = 0;
    cfg.max_trials = 0;
    CHECK_THROWS_AS(find_normal(act, cfg), UsageError);
  }
}

TEST_CASE("soundness on every fixture") {
  for (const auto& fx : shipped()) {
    CAPTURE(fx.label);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      SearchConfig cfg;
      cfg.seed = seed;
      auto c = find_normal(fx.action, cfg);
      CHECK(c.trials <= 5);
      CHECK(verify_normal_oracle(fx.action, c.alpha));
      CHECK(conjugate_rank(fx.action, c.alpha) == fx.action.K.degree());
    }
  }
}

TEST_CASE("first trial success rate on zeta_7") {
  auto act = cyclotomic_fixture<Q>(QQ(), 7).action;
  int first = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SearchConfig cfg;
    cfg.seed = seed;
    auto c = find_normal(act, cfg);
    first += c.trials == 1 && c.evidence.forms_tried == 1;
  }
  MESSAGE("first (alpha, ell) succeeded in " << first << " of 50 runs");
  CHECK(first >= 25);
}

TEST_CASE("seeded reproducibility") {
  for (const auto& fx : {cyclotomic_fixture<Q>(QQ(), 16), s3_fixture()}) {
    SearchConfig cfg;
    cfg.seed = 77;
    auto a = find_normal(fx.action, cfg), b = find_normal(fx.action, cfg);
    CHECK(a.alpha == b.alpha);
    CHECK(a.trials == b.trials);
    CHECK(a.evidence.form == b.evidence.form);
    CHECK(a.evidence.projection == b.evidence.projection);
    cfg.seed = 78;
    CHECK_FALSE(find_normal(fx.action, cfg).alpha == a.alpha);
  }
}

TEST_CASE("prime field") {
  // 17 has order 6 mod 7, so Phi_7 stays irreducible over F_17
  auto F = CoeffField::prime(17);
  auto act = cyclotomic_fixture<ModP>(F, 7).action;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.sample_size = 17;
    auto c = find_normal(act, cfg);
    CHECK(verify_normal_oracle(act, c.alpha));
    CHECK(check_certificate(act, c) == "");
  }
  CHECK_FALSE(verify_normal_oracle(act, act.K.one()));
}
