#include "normalbasis/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "normalbasis/serialize.hpp"

namespace normalbasis {

namespace {

namespace fs = std::filesystem;

/// Carries an exit code out of the command handlers.
struct CliExit {
  int code;
  std::string message;
};

struct Options {
  std::string job_path;
  std::string fixture_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> sample_size;
  std::optional<std::string> method;
  std::optional<std::string> field;
  bool verify = false;
  // fixture gen
  std::optional<std::size_t> cyclotomic;
  std::optional<std::string> named;
  std::string out_path;
  std::vector<std::string> verify_paths;
};

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliExit{kExitInvalid, path + ": cannot open"};
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw CliExit{kExitBadJson, path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                    ": malformed JSON (byte " + std::to_string(e.byte) + ")"};
  }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

struct Job {
  Json doc = Json::object();
  fs::path dir = ".";
};

Job load_job(const Options& o, const std::string& mode) {
  Job job;
  if (!o.job_path.empty()) {
    job.doc = load_json(o.job_path);
    job.dir = fs::path(o.job_path).parent_path();
    if (!job.doc.is_object()) throw CliExit{kExitInvalid, "job: expected a JSON object"};
    auto it = job.doc.find("mode");
    if (it != job.doc.end() && *it != mode)
      throw CliExit{kExitInvalid, "job mode \"" + it->get<std::string>() + "\" does not match subcommand " + mode};
  }
  return job;
}

/// The fixture document: --fixture wins, then the job's "fixture" entry
/// (a path relative to the job file, or an inline object).
std::optional<Json> fixture_doc(const Options& o, const Job& job) {
  if (!o.fixture_path.empty()) return load_json(o.fixture_path);
  auto it = job.doc.find("fixture");
  if (it == job.doc.end()) return std::nullopt;
  if (it->is_string()) return load_json((job.dir / it->get<std::string>()).string());
  if (it->is_object()) return *it;
  throw CliExit{kExitInvalid, "job.fixture: expected a path or an object"};
}

CoeffField choose_field(const Options& o, const Job& job, const std::optional<Json>& fx) {
  if (o.field) return parse_field(*o.field);
  if (auto it = job.doc.find("field"); it != job.doc.end() && it->is_string()) return parse_field(*it);
  if (fx)
    if (auto it = fx->find("field"); it != fx->end() && it->is_string()) return parse_field(*it);
  return CoeffField::rationals();
}

SearchConfig search_config(const Options& o, const Job& job) {
  SearchConfig cfg;
  if (auto it = job.doc.find("config"); it != job.doc.end()) {
    const auto& c = *it;
    if (!c.is_object()) throw CliExit{kExitInvalid, "job.config: expected an object"};
    cfg.seed = c.value("seed", cfg.seed);
    cfg.max_trials = c.value("trials", cfg.max_trials);
    cfg.sample_size = c.value("sample_size", cfg.sample_size);
    cfg.form_retries = c.value("form_retries", cfg.form_retries);
    cfg.verify = c.value("verify", cfg.verify);
    cfg.oracle_cutoff = c.value("oracle_cutoff", cfg.oracle_cutoff);
    cfg.mc_repetitions = c.value("mc_repetitions", cfg.mc_repetitions);
    if (c.contains("method")) {
      auto m = c["method"].get<std::string>();
      if (m == "oracle") cfg.method = SearchMethod::oracle;
      else if (m != "fast") throw CliExit{kExitInvalid, "job.config.method: expected \"fast\" or \"oracle\""};
    }
    if (c.contains("unit_method")) {
      auto m = c["unit_method"].get<std::string>();
      if (m == "mc") cfg.unit_method = UnitMethod::mc;
      else if (m != "det") throw CliExit{kExitInvalid, "job.config.unit_method: expected \"det\" or \"mc\""};
    }
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.max_trials = *o.trials;
  if (o.sample_size) cfg.sample_size = *o.sample_size;
  if (o.verify) cfg.verify = true;
  if (o.method) {
    if (*o.method == "fast") cfg.method = SearchMethod::fast;
    else if (*o.method == "oracle") cfg.method = SearchMethod::oracle;
    else if (*o.method == "det") cfg.unit_method = UnitMethod::det;
    else if (*o.method == "mc") cfg.unit_method = UnitMethod::mc;
  }
  return cfg;
}

template <class T>
Fixture<T> load_fixture(const CoeffField& f, const Json& doc) {
  auto fx = fixture_from_json<T>(f, doc);
  auto rep = verify_fixture(fx);
  if (!rep.ok()) throw CliExit{kExitInvalid, "fixture " + fx.label + " fails verification: " + rep.failures.front()};
  return fx;
}

template <class T>
int find_normal_cmd(const Options& o, const Job& job, const CoeffField& f, const Json& fxdoc, std::ostream& out) {
  auto fx = load_fixture<T>(f, fxdoc);
  auto cfg = search_config(o, job);
  try {
    auto cert = find_normal(fx.action, cfg);
    emit(out, certificate_to_json(cert));
    return kExitOk;
  } catch (const SearchFailure& e) {
    emit(out, Json{{"v", kSchemaVersion}, {"error", "search-failure"}, {"message", e.what()}, {"seed", cfg.seed},
                   {"trials", cfg.max_trials}});
    return kExitSearchFailure;
  }
}

template <class T>
int check_normal_cmd(const Options& o, const Job& job, const CoeffField& f, const Json& fxdoc, std::ostream& out) {
  auto fx = load_fixture<T>(f, fxdoc);
  const auto& act = fx.action;
  auto cfg = search_config(o, job);
  if (!job.doc.contains("alpha")) throw CliExit{kExitInvalid, "check-normal: job has no \"alpha\""};
  ExtElem<T> alpha{scalars_from_json<T>(f, job.doc["alpha"], "job.alpha")};
  if (alpha.coeffs.size() > act.K.degree()) throw CliExit{kExitInvalid, "job.alpha: more than deg P coefficients"};
  alpha.coeffs.resize(act.K.degree(), zero_of<T>(f));
  Json res{{"v", kSchemaVersion}};
  std::optional<bool> normal;
  if (cfg.method == SearchMethod::fast) {
    std::mt19937_64 rng(cfg.seed);
    auto fast = is_normal_fast(act, alpha, rng, cfg);
    if (fast.normal) {
      normal = true;
      res["decided_by"] = "fast";
      NormalCertificate<T> c;
      c.evidence = fast.evidence;
      res["evidence"] = certificate_to_json(c)["evidence"];
    }
  }
  const bool oracle_ok = act.K.degree() <= cfg.oracle_cutoff;
  if ((!normal || cfg.verify) && oracle_ok) {
    bool v = verify_normal_oracle(act, alpha, cfg.oracle_cutoff);
    if (normal && !v) throw CliExit{kExitInvalid, "oracle contradicts the fast certificate"};
    if (!normal) res["decided_by"] = "oracle";
    normal = v;
    res["verified_by_oracle"] = true;
  }
  Json ordered{{"v", kSchemaVersion}, {"normal", normal ? Json(*normal) : Json(nullptr)}};
  if (!normal) ordered["decided_by"] = "none";
  for (auto it = res.begin(); it != res.end(); ++it)
    if (it.key() != "v") ordered[it.key()] = it.value();
  emit(out, ordered);
  return kExitOk;
}

GroupSpec job_group(const Job& job, const std::optional<Json>& fxdoc) {
  if (job.doc.contains("group")) return group_from_json(job.doc["group"], "job.group");
  if (fxdoc && fxdoc->contains("group")) return group_from_json((*fxdoc)["group"], "fixture.group");
  throw CliExit{kExitInvalid, "job has no \"group\""};
}

template <class T>
GroupAlgElem<T> job_beta(const Job& job, const CoeffField& f, const GroupSpec& g) {
  if (!job.doc.contains("beta")) throw CliExit{kExitInvalid, "job has no \"beta\""};
  auto c = scalars_from_json<T>(f, job.doc["beta"], "job.beta");
  if (c.size() != g.size())
    throw CliExit{kExitInvalid, "job.beta: expected " + std::to_string(g.size()) + " coefficients, got " +
                                    std::to_string(c.size())};
  return {g, std::move(c)};
}

template <class T>
int ga_unit_cmd(const Options& o, const Job& job, const CoeffField& f, const std::optional<Json>& fxdoc,
                std::ostream& out) {
  auto g = job_group(job, fxdoc);
  auto beta = job_beta<T>(job, f, g);
  auto cfg = search_config(o, job);
  Json res{{"v", kSchemaVersion}};
  if (g.is_abelian()) {
    res["method"] = "abelian";
    try {
      auto inv = invert_abelian(f, beta);
      res["unit"] = true;
      res["witness"] = nullptr;
      res["inverse"] = scalars_to_json(inv.coeffs);
    } catch (const NonUnitError& e) {
      res["unit"] = false;
      res["witness"] = e.witness();
    }
    Json ordered{{"v", kSchemaVersion}, {"unit", res["unit"]}, {"method", "abelian"}, {"witness", res["witness"]}};
    if (res.contains("inverse")) ordered["inverse"] = res["inverse"];
    emit(out, ordered);
    return kExitOk;
  }
  MetaVerdict<T> v;
  if (cfg.unit_method == UnitMethod::mc) {
    std::mt19937_64 rng(cfg.seed);
    v = is_unit_metacyclic_mc(f, beta, rng, cfg.mc_repetitions);
  } else {
    v = is_unit_metacyclic_det(f, beta);
  }
  const auto verdict = meta_verdict_to_json(v);
  for (auto& [k, val] : verdict.items()) res[k] = val;
  emit(out, res);
  return kExitOk;
}

template <class T>
int decompose_cmd(const Job& job, const CoeffField& f, const std::optional<Json>& fxdoc, std::ostream& out) {
  auto g = job_group(job, fxdoc);
  if (!g.is_abelian()) throw CliExit{kExitInvalid, "decompose: needs an abelian group"};
  auto beta = job_beta<T>(job, f, g);
  auto cat = build_catalog(g);
  Json res{{"v", kSchemaVersion}};
  const auto doc = decomposed_to_json(decompose(f, cat, beta));
  for (auto& [k, val] : doc.items()) res[k] = val;
  emit(out, res);
  return kExitOk;
}

Fixture<mpq_class> build_fixture(const Options& o) {
  if (o.cyclotomic) return cyclotomic_fixture<mpq_class>(CoeffField::rationals(), *o.cyclotomic);
  if (o.named) {
    if (*o.named == "s3") return s3_fixture();
    if (*o.named == "biquadratic") return biquadratic_fixture();
    throw CliExit{kExitInvalid, "unknown fixture name \"" + *o.named + "\" (s3, biquadratic)"};
  }
  if (!o.job_path.empty()) {
    auto job = load_job(o, "fixture-gen");
    const auto& d = job.doc;
    const auto kind = d.value("kind", std::string("compositum"));
    if (kind == "cyclotomic") return cyclotomic_fixture<mpq_class>(CoeffField::rationals(), d.at("n").get<std::size_t>());
    if (kind == "compositum") {
      const CoeffField Q;
      auto f = Poly<mpq_class>(Q, scalars_from_json<mpq_class>(Q, d.at("f"), "job.f"));
      auto g = Poly<mpq_class>(Q, scalars_from_json<mpq_class>(Q, d.at("g"), "job.g"));
      auto spec = group_from_json(d.at("group"), "job.group");
      std::vector<RootHint> hints;
      const auto& hj = d.at("hints");
      for (std::size_t k = 0; k < hj.size(); ++k)
        hints.push_back(root_hint_from_json(hj[k], "job.hints[" + std::to_string(k) + "]"));
      return compositum_fixture(f, g, spec, hints, d.value("label", std::string("compositum")));
    }
    throw CliExit{kExitInvalid, "job.kind: expected \"cyclotomic\" or \"compositum\""};
  }
  throw CliExit{kExitUsage, "fixture gen: give --cyclotomic n, --named name, or a job file"};
}

int fixture_gen_cmd(const Options& o, std::ostream& out) {
  auto doc = fixture_to_json(build_fixture(o));
  if (o.out_path.empty()) {
    emit(out, doc);
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw CliExit{kExitInvalid, o.out_path + ": cannot write"};
    emit(f, doc);
  }
  return kExitOk;
}

int fixture_verify_cmd(const Options& o, std::ostream& out) {
  bool all_ok = true;
  Json reports = Json::array();
  for (const auto& path : o.verify_paths) {
    auto doc = load_json(path);
    auto f = o.field ? parse_field(*o.field) : parse_field(doc.value("field", std::string("rational")));
    FixtureReport rep;
    std::string label;
    if (f.is_rational()) {
      auto fx = fixture_from_json<mpq_class>(f, doc);
      label = fx.label;
      rep = verify_fixture(fx);
    } else {
      auto fx = fixture_from_json<ModP>(f, doc);
      label = fx.label;
      rep = verify_fixture(fx);
    }
    all_ok = all_ok && rep.ok();
    reports.push_back(Json{{"file", path}, {"label", label}, {"ok", rep.ok()}, {"failures", rep.failures}});
  }
  emit(out, Json{{"v", kSchemaVersion}, {"ok", all_ok}, {"fixtures", reports}});
  return all_ok ? kExitOk : kExitInvalid;
}

template <class T>
int dispatch(const std::string& mode, const Options& o, const Job& job, const CoeffField& f,
             const std::optional<Json>& fxdoc, std::ostream& out) {
  if (mode == "ga-unit") return ga_unit_cmd<T>(o, job, f, fxdoc, out);
  if (mode == "decompose") return decompose_cmd<T>(job, f, fxdoc, out);
  if (!fxdoc) throw CliExit{kExitInvalid, mode + ": no fixture (use --fixture or a job with \"fixture\")"};
  if (mode == "find-normal") return find_normal_cmd<T>(o, job, f, *fxdoc, out);
  return check_normal_cmd<T>(o, job, f, *fxdoc, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal elements of Galois extensions with abelian or metacyclic group", "normalbasis"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sc) {
    sc->add_option("job", o.job_path, "job file (JSON)");
    sc->add_option("--fixture", o.fixture_path, "fixture file (JSON)");
    sc->add_option("--seed", o.seed, "RNG seed");
    sc->add_option("--trials", o.trials, "maximum number of sampled elements");
    sc->add_option("--sample-size", o.sample_size, "size of the sample set X (default 4n)");
    sc->add_option("--method", o.method, "fast|oracle (search) or det|mc (metacyclic unit test)")
        ->check(CLI::IsMember({"fast", "oracle", "det", "mc"}));
    sc->add_option("--field", o.field, "rational or prime:p");
    sc->add_flag("--verify", o.verify, "re-check with the determinant oracle");
  };
  std::vector<std::pair<std::string, CLI::App*>> modes;
  for (const char* name : {"find-normal", "check-normal", "ga-unit", "decompose"}) {
    auto* sc = app.add_subcommand(name);
    add_common(sc);
    modes.emplace_back(name, sc);
  }
  modes[0].second->description("search for a normal element and print a certificate");
  modes[1].second->description("decide whether job.alpha is normal");
  modes[2].second->description("unit test for job.beta in F[G]");
  modes[3].second->description("cyclotomic decomposition of job.beta (abelian G)");
  auto* fixture = app.add_subcommand("fixture", "build or check fixture files");
  fixture->require_subcommand(1);
  auto* gen = fixture->add_subcommand("gen", "write a fixture as JSON");
  gen->add_option("job", o.job_path, "job with kind cyclotomic or compositum");
  gen->add_option("--cyclotomic", o.cyclotomic, "Q(zeta_n), 3 <= n <= 64");
  gen->add_option("--named", o.named, "s3 or biquadratic");
  gen->add_option("--out", o.out_path, "output file (default stdout)");
  auto* ver = fixture->add_subcommand("verify", "verify fixture files");
  ver->add_option("files", o.verify_paths, "fixture files")->required();
  ver->add_option("--field", o.field, "rational or prime:p");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return fixture_gen_cmd(o, out);
    if (ver->parsed()) return fixture_verify_cmd(o, out);
    std::string mode;
    for (const auto& [name, sc] : modes)
      if (sc->parsed()) mode = name;
    auto job = load_job(o, mode);
    auto fxdoc = fixture_doc(o, job);
    auto f = choose_field(o, job, fxdoc);
    if (f.is_rational()) return dispatch<mpq_class>(mode, o, job, f, fxdoc, out);
    return dispatch<ModP>(mode, o, job, f, fxdoc, out);
  } catch (const CliExit& e) {
    err << e.message << "\n";
    return e.code;
  } catch (const Json::exception& e) {
    err << "invalid job: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  } catch (const StructureError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  } catch (const DivisionByZero& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  } catch (const NonUnitError& e) {
    // e.g. the oracle over a prime field where P is reducible
    err << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace normalbasis
