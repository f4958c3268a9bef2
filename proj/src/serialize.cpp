#include "normalbasis/serialize.hpp"

namespace normalbasis {

namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw UsageError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw UsageError(path + ": missing \"" + key + "\"");
  return *it;
}

std::size_t size_member(const Json& j, const char* key, const std::string& path) {
  const auto& v = member(j, key, path);
  if (!v.is_number_unsigned()) throw UsageError(path + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string string_or(const Json& j, const char* key, const std::string& dflt) {
  auto it = j.find(key);
  return it != j.end() && it->is_string() ? it->get<std::string>() : dflt;
}

}  // namespace

CoeffField parse_field(const std::string& s) {
  if (s == "rational") return CoeffField::rationals();
  if (s.rfind("prime:", 0) == 0) {
    const std::string digits = s.substr(6);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19)
      throw UsageError("field \"" + s + "\": expected prime:<decimal p>");
    return CoeffField::prime(std::stoull(digits));
  }
  throw UsageError("field \"" + s + "\": expected \"rational\" or \"prime:p\"");
}

template <class T>
Json scalars_to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(Scalar<T>::to_string(x));
  return a;
}

template <class T>
std::vector<T> scalars_from_json(const CoeffField& f, const Json& j, const std::string& path) {
  if (!j.is_array()) throw UsageError(path + ": expected an array of numbers written as strings");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    std::string s;
    if (e.is_string())
      s = e.get<std::string>();
    else if (e.is_number_integer())
      s = e.dump();
    else
      throw UsageError(path + "[" + std::to_string(i) + "]: expected a string such as \"-3/4\"");
    try {
      out.push_back(Scalar<T>::parse(f, s));
    } catch (const std::exception& ex) {
      throw UsageError(path + "[" + std::to_string(i) + "]: " + ex.what());
    }
  }
  return out;
}

Json group_to_json(const GroupSpec& g) {
  if (g.is_abelian()) return Json{{"kind", "abelian"}, {"orders", g.orders}};
  return Json{{"kind", "metacyclic"}, {"m", g.m}, {"s", g.s}, {"r", g.r}, {"t", g.t}};
}

GroupSpec group_from_json(const Json& j, const std::string& path) {
  const auto kind = member(j, "kind", path);
  if (kind == "abelian") {
    const auto& o = member(j, "orders", path);
    if (!o.is_array()) throw UsageError(path + ".orders: expected an array");
    std::vector<std::size_t> orders;
    for (const auto& e : o) {
      if (!e.is_number_unsigned()) throw UsageError(path + ".orders: expected non-negative integers");
      orders.push_back(e.get<std::size_t>());
    }
    return GroupSpec::abelian(orders);
  }
  if (kind == "metacyclic")
    return GroupSpec::metacyclic(size_member(j, "m", path), size_member(j, "s", path), size_member(j, "r", path),
                                 size_member(j, "t", path));
  throw UsageError(path + ".kind: expected \"abelian\" or \"metacyclic\"");
}

template <class T>
Json fixture_to_json(const Fixture<T>& fx) {
  Json gens = Json::array();
  for (const auto& g : fx.action.gens) gens.push_back(scalars_to_json(g.gamma.coeffs));
  return Json{{"v", kSchemaVersion},
              {"kind", "fixture"},
              {"label", fx.label},
              {"notes", fx.notes},
              {"field", fx.action.K.base().describe()},
              {"modulus", scalars_to_json(fx.action.K.modulus().coeffs())},
              {"group", group_to_json(fx.action.spec)},
              {"generators", gens}};
}

template <class T>
Fixture<T> fixture_from_json(const CoeffField& f, const Json& j) {
  const std::string path = "fixture";
  auto P = Poly<T>(f, scalars_from_json<T>(f, member(j, "modulus", path), path + ".modulus"));
  if (P.degree() < 1 || !Scalar<T>::is_one(P.lead()))
    throw UsageError(path + ".modulus: expected a monic polynomial of positive degree (lowest degree first)");
  ExtField<T> K(P);
  auto spec = group_from_json(member(j, "group", path), path + ".group");
  const auto& gj = member(j, "generators", path);
  if (!gj.is_array()) throw UsageError(path + ".generators: expected an array");
  std::vector<Automorphism<T>> gens;
  for (std::size_t k = 0; k < gj.size(); ++k) {
    const std::string p = path + ".generators[" + std::to_string(k) + "]";
    auto c = scalars_from_json<T>(f, gj[k], p);
    if (c.size() > K.degree()) throw UsageError(p + ": more than deg P coefficients");
    c.resize(K.degree(), zero_of<T>(f));
    gens.push_back({ExtElem<T>{std::move(c)}});
  }
  return {{K, spec, std::move(gens)}, string_or(j, "label", ""), string_or(j, "notes", "")};
}

namespace {

Json root_expr_to_json(const RootExpr& e) {
  Json a = Json::array();
  for (const auto& t : e) a.push_back(Json::array({t.i, t.j, Scalar<mpq_class>::to_string(t.c)}));
  return a;
}

RootExpr root_expr_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw UsageError(path + ": expected an array of [i, j, \"c\"] terms");
  RootExpr out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& t = j[k];
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() || !t[1].is_number_unsigned() ||
        !t[2].is_string())
      throw UsageError(p + ": expected [i, j, \"c\"]");
    out.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(),
                   Scalar<mpq_class>::parse(CoeffField::rationals(), t[2].get<std::string>())});
  }
  return out;
}

}  // namespace

Json root_hint_to_json(const RootHint& h) {
  return Json{{"f_image", root_expr_to_json(h.f_image)}, {"g_image", root_expr_to_json(h.g_image)}};
}

RootHint root_hint_from_json(const Json& j, const std::string& path) {
  return {root_expr_from_json(member(j, "f_image", path), path + ".f_image"),
          root_expr_from_json(member(j, "g_image", path), path + ".g_image")};
}

template <class T>
Json decomposed_to_json(const DecomposedElem<T>& x) {
  Json factors = Json::array(), residues = Json::array();
  const auto& cat = *x.catalog;
  const CoeffField f = x.residues.empty() ? CoeffField{} : x.residues.front().field();
  for (std::size_t k = 0; k < cat.factors.size(); ++k) {
    auto mod = cat.template modulus<T>(f, k);
    factors.push_back(Json{{"d", cat.factors[k].d}, {"modulus", scalars_to_json(mod.coeffs())}});
    residues.push_back(scalars_to_json(x.residues[k].coeffs()));
  }
  return Json{{"group", group_to_json(cat.spec)}, {"factors", factors}, {"residues", residues}};
}

template <class T>
Json meta_verdict_to_json(const MetaVerdict<T>& v) {
  Json out{{"unit", v.unit}, {"method", v.method}};
  if (v.method == "det") {
    out["witness"] = v.unit ? Json(nullptr) : Json(v.witness);
  } else {
    Json br = Json::array();
    for (const auto& b : v.branches)
      br.push_back(Json{{"modulus", scalars_to_json(b.modulus.coeffs())}, {"rank", b.rank}});
    out["witness"] = Json{{"branches", br}, {"repetitions", v.repetitions_used}};
  }
  return out;
}

template <class T>
Json certificate_to_json(const NormalCertificate<T>& c) {
  Json ev{{"kind", c.evidence.kind}};
  if (c.evidence.kind == "projection") {
    ev["form"] = scalars_to_json(c.evidence.form.values);
    ev["projection"] = scalars_to_json(c.evidence.projection.coeffs);
    ev["unit_test"] = c.evidence.unit_test;
    if (c.evidence.inverse) ev["inverse"] = scalars_to_json(c.evidence.inverse->coeffs);
    ev["forms_tried"] = c.evidence.forms_tried;
  }
  return Json{{"v", kSchemaVersion},      {"alpha", scalars_to_json(c.alpha.coeffs)},
              {"trials", c.trials},       {"seed", c.seed},
              {"sample_size", c.sample_size}, {"evidence", ev},
              {"verified_by_oracle", c.verified_by_oracle}};
}

template <class T>
NormalCertificate<T> certificate_from_json(const CoeffField& f, const GroupSpec& g, const Json& j) {
  const std::string path = "certificate";
  NormalCertificate<T> c;
  c.alpha.coeffs = scalars_from_json<T>(f, member(j, "alpha", path), path + ".alpha");
  c.trials = size_member(j, "trials", path);
  c.seed = member(j, "seed", path).get<std::uint64_t>();
  c.sample_size = size_member(j, "sample_size", path);
  const auto& vb = member(j, "verified_by_oracle", path);
  if (!vb.is_boolean()) throw UsageError(path + ".verified_by_oracle: expected a boolean");
  c.verified_by_oracle = vb.get<bool>();
  const auto& ev = member(j, "evidence", path);
  const std::string ep = path + ".evidence";
  c.evidence.kind = member(ev, "kind", ep).get<std::string>();
  if (c.evidence.kind == "projection") {
    c.evidence.form.values = scalars_from_json<T>(f, member(ev, "form", ep), ep + ".form");
    c.evidence.projection = {g, scalars_from_json<T>(f, member(ev, "projection", ep), ep + ".projection")};
    c.evidence.unit_test = member(ev, "unit_test", ep).get<std::string>();
    if (ev.contains("inverse"))
      c.evidence.inverse = GroupAlgElem<T>{g, scalars_from_json<T>(f, ev["inverse"], ep + ".inverse")};
    c.evidence.forms_tried = size_member(ev, "forms_tried", ep);
  }
  return c;
}

#define NB_INSTANTIATE(T)                                                                            \
  template Json scalars_to_json(const std::vector<T>&);                                              \
  template std::vector<T> scalars_from_json(const CoeffField&, const Json&, const std::string&);     \
  template Json fixture_to_json(const Fixture<T>&);                                                  \
  template Fixture<T> fixture_from_json(const CoeffField&, const Json&);                             \
  template Json decomposed_to_json(const DecomposedElem<T>&);                                        \
  template Json meta_verdict_to_json(const MetaVerdict<T>&);                                         \
  template Json certificate_to_json(const NormalCertificate<T>&);                                    \
  template NormalCertificate<T> certificate_from_json(const CoeffField&, const GroupSpec&, const Json&);

NB_INSTANTIATE(mpq_class)
NB_INSTANTIATE(ModP)

}  // namespace normalbasis
