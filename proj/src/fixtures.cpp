#include "normalbasis/fixtures.hpp"

#include <numeric>
#include <set>

namespace normalbasis {

using Q = mpq_class;

UnitGroupBasis unit_group_basis(std::size_t n) {
  if (n < 3) throw UsageError("unit_group_basis: need n >= 3");
  std::vector<std::size_t> units;
  for (std::size_t a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) units.push_back(a);
  auto order = [n](std::size_t a) {
    std::size_t k = 1;
    for (std::size_t x = a; x != 1; x = x * a % n) ++k;
    return k;
  };
  std::set<std::size_t> H{1};
  UnitGroupBasis out;
  while (H.size() < units.size()) {
    std::size_t best = 0, best_ord = 0;
    for (auto a : units) {
      if (H.count(a)) continue;
      std::size_t o = order(a);
      if (o <= best_ord) continue;
      bool trivial = true;
      for (std::size_t x = a; x != 1 && trivial; x = x * a % n) trivial = !H.count(x);
      if (trivial) {
        best = a;
        best_ord = o;
      }
    }
    if (best == 0) throw StructureError("unit_group_basis: greedy decomposition stuck at n = " + std::to_string(n));
    std::set<std::size_t> next;
    for (auto h : H)
      for (std::size_t k = 0, x = 1; k < best_ord; ++k, x = x * best % n) next.insert(h * x % n);
    H = std::move(next);
    out.generators.push_back(best);
    out.orders.push_back(best_ord);
  }
  return out;
}

template <class T>
Fixture<T> power_map_fixture(const CoeffField& f, std::size_t n, const std::vector<std::size_t>& gens,
                             const std::vector<std::size_t>& orders) {
  if (gens.size() != orders.size()) throw UsageError("power_map_fixture: one order per generator");
  ExtField<T> K(cyclotomic<T>(f, n));
  std::vector<Automorphism<T>> images;
  for (auto a : gens) images.push_back({K.from_poly(Poly<T>::monomial(f, one_of<T>(f), a % n))});
  Fixture<T> fx{{K, GroupSpec::abelian(orders), std::move(images)}, "zeta" + std::to_string(n), ""};
  std::string g;
  for (auto a : gens) g += (g.empty() ? "" : ", ") + std::to_string(a);
  fx.notes = "Phi_" + std::to_string(n) + ", xi -> xi^a for a in {" + g + "}";
  return fx;
}

template <class T>
Fixture<T> cyclotomic_fixture(const CoeffField& f, std::size_t n) {
  if (n < 3 || n > 64) throw UsageError("cyclotomic_fixture: need 3 <= n <= 64, got " + std::to_string(n));
  auto b = unit_group_basis(n);
  return power_map_fixture<T>(f, n, b.generators, b.orders);
}

template <class T>
T resultant(const Poly<T>& a0, const Poly<T>& b0) {
  const CoeffField& F = a0.field();
  if (a0.is_zero() || b0.is_zero()) return zero_of<T>(F);
  Poly<T> a = a0, b = b0;
  T acc = one_of<T>(F);
  for (;;) {
    const long da = a.degree(), db = b.degree();
    if (db == 0) {
      T p = one_of<T>(F);
      for (long k = 0; k < da; ++k) p *= b.lead();
      return acc * p;
    }
    auto r = poly_rem(a, b);
    if (r.is_zero()) return zero_of<T>(F);
    const long dr = r.degree();
    if ((da * db) % 2) acc = -acc;
    for (long k = 0; k < da - dr; ++k) acc *= b.lead();
    a = std::move(b);
    b = std::move(r);
  }
}

Poly<Q> sum_resultant(const Poly<Q>& f, const Poly<Q>& g) {
  const CoeffField& F = f.field();
  if (f.degree() < 1 || g.degree() < 1 || f.lead() != 1 || g.lead() != 1)
    throw UsageError("sum_resultant: f and g must be monic of positive degree");
  const std::size_t D = static_cast<std::size_t>(f.degree() * g.degree());
  std::vector<Q> xs, ys;
  for (std::size_t k = 0; k <= D; ++k) {
    Q x0(static_cast<long>(k));
    // g(x0 - y) as a polynomial in y
    Poly<Q> shifted(F), lin(F, {x0, Q(-1)});
    for (std::size_t i = g.size(); i-- > 0;) shifted = shifted * lin + Poly<Q>::constant(F, g.coeffs()[i]);
    xs.push_back(x0);
    ys.push_back(resultant(f, shifted));
  }
  return interpolate(F, xs, ys);
}

namespace {

using KPoly = std::vector<ExtElem<Q>>;

void trim(KPoly& p) {
  while (!p.empty() && ext_is_zero(p.back())) p.pop_back();
}

KPoly kpoly_rem(const ExtField<Q>& K, KPoly a, const KPoly& b) {
  auto inv = ext_inv(K, b.back());
  while (a.size() >= b.size()) {
    auto c = ext_mul(K, a.back(), inv);
    const std::size_t sh = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = ext_sub(K, a[sh + i], ext_mul(K, c, b[i]));
    a.pop_back();
    trim(a);
  }
  return a;
}

ExtElem<Q> eval_root_expr(const ExtField<Q>& K, const RootExpr& e, const ExtElem<Q>& a, const ExtElem<Q>& b) {
  ExtElem<Q> out = K.zero();
  for (const auto& t : e) {
    auto term = ext_mul(K, ext_pow(K, a, t.i), ext_pow(K, b, t.j));
    out = ext_add(K, out, ext_scale(K, term, t.c));
  }
  return out;
}

}  // namespace

ExtElem<Q> compositum_root(const ExtField<Q>& K, const Poly<Q>& f, const Poly<Q>& g) {
  KPoly fy, gy;
  for (const auto& c : f.coeffs()) fy.push_back(K.from_scalar(c));
  // g(theta - y) by Horner in K[y]
  const KPoly lin{K.gen(), K.from_scalar(Q(-1))};
  for (std::size_t i = g.size(); i-- > 0;) {
    KPoly next(gy.size() + 1, K.zero());
    for (std::size_t k = 0; k < gy.size(); ++k)
      for (std::size_t l = 0; l < 2; ++l) next[k + l] = ext_add(K, next[k + l], ext_mul(K, gy[k], lin[l]));
    if (next.empty()) next.push_back(K.zero());
    next[0] = ext_add(K, next[0], K.from_scalar(g.coeffs()[i]));
    trim(next);
    gy = std::move(next);
  }
  KPoly a = fy, b = gy;
  while (!b.empty()) {
    auto r = kpoly_rem(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.size() != 2) throw StructureError("compositum: f(y) and g(theta - y) do not share exactly one root in K");
  // a = a1 y + a0, root -a0/a1
  return ext_sub(K, K.zero(), ext_mul(K, a[0], ext_inv(K, a[1])));
}

Fixture<Q> compositum_fixture(const Poly<Q>& f, const Poly<Q>& g, const GroupSpec& spec,
                              const std::vector<RootHint>& hints, const std::string& label) {
  auto R = sum_resultant(f, g).monic();
  const auto D = f.degree() * g.degree();
  if (poly_gcd(R, R.derivative()).degree() != 0)
    throw StructureError("compositum: Res_y(f(y), g(x - y)) is not squarefree, theta_f + theta_g is not "
                         "primitive; retry with theta_f + k theta_g");
  if (R.degree() != D) throw StructureError("compositum: resultant has the wrong degree");
  ExtField<Q> K(R);
  auto a = compositum_root(K, f, g);
  auto b = ext_sub(K, K.gen(), a);
  std::vector<Automorphism<Q>> gens;
  for (const auto& h : hints)
    gens.push_back({ext_add(K, eval_root_expr(K, h.f_image, a, b), eval_root_expr(K, h.g_image, a, b))});
  Fixture<Q> fx{{K, spec, std::move(gens)}, label, "compositum of two polynomials, theta = theta_f + theta_g"};
  check_action(fx.action);
  auto rep = verify_fixture(fx);
  if (!rep.ok()) throw StructureError("compositum: " + rep.failures.front());
  return fx;
}

namespace {

Fixture<Q> embedded(const std::vector<long long>& P, const std::vector<std::vector<const char*>>& images,
                    const GroupSpec& spec, std::string label, std::string notes) {
  CoeffField F;
  std::vector<Q> pc;
  for (auto c : P) pc.push_back(Q(static_cast<long>(c)));
  ExtField<Q> K(Poly<Q>(F, pc));
  std::vector<Automorphism<Q>> gens;
  for (const auto& im : images) {
    ExtElem<Q> e = K.zero();
    for (std::size_t k = 0; k < im.size(); ++k) e.coeffs[k] = Scalar<Q>::parse(F, im[k]);
    gens.push_back({e});
  }
  Fixture<Q> fx{{K, spec, std::move(gens)}, std::move(label), std::move(notes)};
  auto rep = verify_fixture(fx);
  if (!rep.ok()) throw StructureError(fx.label + ": embedded data fails verification: " + rep.failures.front());
  return fx;
}

RootExpr term(long c, std::size_t i, std::size_t j) { return {{i, j, Q(c)}}; }

}  // namespace

std::vector<RootHint> s3_hints() {
  // a = 2^{1/3}, b = omega. sigma: a -> omega a; tau: omega -> omega^2 = -1 - omega
  return {{term(1, 1, 1), term(1, 0, 1)}, {term(1, 1, 0), {{0, 0, Q(-1)}, {0, 1, Q(-1)}}}};
}

std::vector<RootHint> biquadratic_hints() {
  return {{term(-1, 1, 0), term(1, 0, 1)}, {term(1, 1, 0), term(-1, 0, 1)}};
}

Fixture<Q> s3_fixture() {
  return embedded({9, 9, 0, 3, 6, 3, 1},
                  {
                      {"-1", "0", "4/3", "0", "0", "-1/9"},
                      {"3", "1", "-4/3", "4/3", "2/3", "4/9"},
                  },
                  GroupSpec::metacyclic(3, 2, 2, 3), "s3", "Q(2^{1/3}, omega) from y^3 - 2 and y^2 + y + 1");
}

Fixture<Q> biquadratic_fixture() {
  return embedded({1, 0, -10, 0, 1},
                  {
                      {"0", "10", "0", "-1"},
                      {"0", "-10", "0", "1"},
                  },
                  GroupSpec::abelian({2, 2}), "biquadratic", "Q(sqrt 2, sqrt 3) from y^2 - 2 and y^2 - 3");
}

template <class T>
FixtureReport verify_fixture(const Fixture<T>& fx) {
  FixtureReport rep;
  const auto& act = fx.action;
  const auto& K = act.K;
  try {
    check_action(act);
  } catch (const UsageError& e) {
    rep.failures.push_back(e.what());
    return rep;
  }
  for (std::size_t k = 0; k < act.gens.size(); ++k)
    if (!ext_is_zero(modcomp(K, K.modulus(), act.gens[k].gamma)))
      rep.failures.push_back("P(gamma_" + std::to_string(k) + ") != 0 mod P");
  const auto id = identity_auto(K);
  const auto& g = act.spec;
  if (g.is_abelian()) {
    for (std::size_t k = 0; k < act.gens.size(); ++k)
      if (auto_pow(K, act.gens[k], g.orders[k]) != id)
        rep.failures.push_back("g_" + std::to_string(k) + "^" + std::to_string(g.orders[k]) + " != 1");
    for (std::size_t i = 0; i < act.gens.size(); ++i)
      for (std::size_t j = i + 1; j < act.gens.size(); ++j)
        if (compose_autos(K, act.gens[i], act.gens[j]) != compose_autos(K, act.gens[j], act.gens[i]))
          rep.failures.push_back("g_" + std::to_string(i) + " g_" + std::to_string(j) + " != g_" + std::to_string(j) +
                                 " g_" + std::to_string(i));
  } else {
    const auto& sg = act.gens[0];
    const auto& tg = act.gens[1];
    if (auto_pow(K, sg, g.m) != id) rep.failures.push_back("sigma^m != 1");
    if (auto_pow(K, tg, g.s) != auto_pow(K, sg, g.t_reduced())) rep.failures.push_back("tau^s != sigma^t");
    if (compose_autos(K, sg, tg) != compose_autos(K, tg, auto_pow(K, sg, g.r)))
      rep.failures.push_back("tau^-1 sigma tau != sigma^r");
  }
  if (!rep.ok()) return rep;
  auto orbit = naive_orbit(act, K.gen());
  std::set<std::vector<std::string>> seen;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    std::vector<std::string> key;
    for (const auto& c : orbit[i].coeffs) key.push_back(Scalar<T>::to_string(c));
    if (!seen.insert(key).second) {
      rep.failures.push_back("element " + std::to_string(i) + " repeats an earlier image of xi");
      break;
    }
  }
  return rep;
}

Fixture<ModP> reduce_fixture(const Fixture<Q>& fx, const CoeffField& F) {
  if (F.kind != FieldKind::prime) throw UsageError("reduce_fixture: target must be a prime field");
  auto red = [&](const std::vector<Q>& v) {
    std::vector<ModP> out;
    for (const auto& c : v) out.push_back(Scalar<ModP>::from_rational(F, c));
    return out;
  };
  auto P = Poly<ModP>(F, red(fx.action.K.modulus().coeffs()));
  if (P.degree() != fx.action.K.modulus().degree()) throw UsageError("reduce_fixture: p divides the leading coefficient");
  ExtField<ModP> K(P);
  std::vector<Automorphism<ModP>> gens;
  for (const auto& g : fx.action.gens) gens.push_back({ExtElem<ModP>{red(g.gamma.coeffs)}});
  return {{K, fx.action.spec, std::move(gens)}, fx.label, fx.notes + " (mod " + std::to_string(F.modulus) + ")"};
}

#define NB_INSTANTIATE(T)                                                                          \
  template Fixture<T> power_map_fixture(const CoeffField&, std::size_t, const std::vector<std::size_t>&, \
                                        const std::vector<std::size_t>&);                                \
  template Fixture<T> cyclotomic_fixture(const CoeffField&, std::size_t);                                \
  template T resultant(const Poly<T>&, const Poly<T>&);                                                  \
  template FixtureReport verify_fixture(const Fixture<T>&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
