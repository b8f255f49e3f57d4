// ptk: command-line front end for the verification suites.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or scenario schema
// error, 3 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptk/cech.hpp"
#include "ptk/checks.hpp"
#include "ptk/chkr.hpp"
#include "ptk/geom.hpp"
#include "ptk/random.hpp"
#include "ptk/spectral.hpp"

using namespace ptk;
using Json = nlohmann::ordered_json;

namespace {

// Raised for malformed scenarios and inconsistent flags (exit 2).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string command;
  std::string scenario;
  std::uint64_t seed = 7;
  int trials = 0;
  int k_max = 5;
  int refine = 2;
  std::string out;
  std::string format = "text";
  // index
  std::string geometry = "sphere2";
  std::string projection = "bott";
  // list-checks
  std::string module;
};

CheckOptions options_of(const Settings& s) { return {s.seed, s.trials, s.k_max, s.refine}; }

// ---------------------------------------------------------------- scenario files

bool looks_like_file(const std::string& s) { return s.find('/') != std::string::npos || s.ends_with(".json"); }

Json load_scenario(const std::string& path, const std::string& kind, const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw SchemaError("scenario needs a string field 'kind'");
  if (j["kind"] != kind) throw SchemaError("scenario kind '" + j["kind"].get<std::string>() + "' does not match " + kind);
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) throw SchemaError("scenario needs a nonnegative integer 'seed'");
  for (const auto& [key, value] : j.items())
    if (key != "kind" && key != "seed" && !allowed.count(key)) throw SchemaError("unknown scenario field '" + key + "'");
  return j;
}

int int_field(const Json& j, const char* key, int lo, int hi) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  int x = v.get<int>();
  if (x < lo || x > hi) throw SchemaError(std::string("field '") + key + "' out of range");
  return x;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Gq gq_of(const Json& v) {
  if (v.is_number_integer()) return Gq(v.get<long>());
  if (!v.is_string()) throw SchemaError("matrix entries must be integers or rational strings");
  try {
    return parse_gq(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw SchemaError("cannot parse matrix entry '" + v.get<std::string>() + "'");
  }
}

MatQ matrix_of(const Json& v) {
  if (!v.is_array() || v.empty()) throw SchemaError("matrix must be a nonempty array of rows");
  int n = static_cast<int>(v.size());
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != n) throw SchemaError("matrix must be square");
    for (int j = 0; j < n; ++j) m(i, j) = gq_of(v[i][j]);
  }
  return m;
}

// Applies the shared numeric fields of a scenario over the flag values.
void apply_common(Settings& s, const Json& j) {
  s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) s.trials = int_field(j, "trials", 1, 100000);
  if (j.contains("k_max")) s.k_max = int_field(j, "k_max", 0, 10);
  if (j.contains("refine")) s.refine = int_field(j, "refine", 0, 8);
}

// ---------------------------------------------------------------- reports

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<CheckResult> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

// "key = value" lines from a module's text dump, prefixed.
void add_text_block(CheckResult& r, const std::string& prefix, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    r.set(prefix + line.substr(0, eq), line.substr(eq + 3));
  }
}

std::string render_text(const Report& rep) {
  std::ostringstream os;
  os << "ptk-report: " << rep.command << "\n";
  for (const auto& [k, v] : rep.header) os << k << ": " << v << "\n";
  for (const auto& c : rep.checks) {
    os << "[check " << c.info.id << "]\n";
    os << "  module: " << c.info.module << "\n";
    os << "  anchor: " << c.info.anchor << "\n";
    if (c.info.criterion) os << "  criterion: " << c.info.criterion << "\n";
    os << "  passed: " << fmt_bool(c.passed()) << "\n";
    os << "  assertions: " << c.assertions << "\n";
    for (const auto& [k, v] : c.fields) os << "  " << k << ": " << v << "\n";
    for (const auto& f : c.failures) os << "  failure: " << f << "\n";
  }
  os << "status: " << (rep.passed() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string render_json(const Report& rep) {
  Json j;
  j["command"] = rep.command;
  for (const auto& [k, v] : rep.header) j[k] = v;
  j["checks"] = Json::array();
  for (const auto& c : rep.checks) {
    Json x;
    x["id"] = c.info.id;
    x["module"] = c.info.module;
    x["anchor"] = c.info.anchor;
    if (c.info.criterion) x["criterion"] = c.info.criterion;
    x["passed"] = c.passed();
    x["assertions"] = c.assertions;
    Json fields = Json::object();
    for (const auto& [k, v] : c.fields) fields[k] = v;
    x["fields"] = fields;
    x["failures"] = c.failures;
    j["checks"].push_back(x);
  }
  j["status"] = rep.passed() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

void emit(const Settings& s, const std::string& body) {
  std::string path = s.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("PTK_OUT_DIR"); dir && *dir)
      path = std::string(dir) + "/" + s.command + (s.format == "json" ? ".json" : ".txt");
  }
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write report to " + path);
  f << body;
  std::cerr << "report written to " << path << "\n";
}

Report make_report(const Settings& s) {
  Report r;
  r.command = s.command;
  r.header = {{"seed", std::to_string(s.seed)},
              {"trials", s.trials > 0 ? std::to_string(s.trials) : "default"},
              {"k_max", std::to_string(s.k_max)},
              {"refine", std::to_string(s.refine)}};
  if (!s.scenario.empty()) r.header.emplace_back("scenario", s.scenario);
  return r;
}

CheckResult custom(const std::string& id, const std::string& module, const std::string& anchor) {
  CheckResult r;
  r.info = {id, module, anchor, 0, ""};
  return r;
}

// ---------------------------------------------------------------- subcommands

void run_checks(const Settings& s, Report& rep, const std::vector<std::string>& ids) {
  for (const auto& id : ids) rep.checks.push_back(run_check(id, options_of(s)));
}

void cmd_verify_identities(Settings& s, Report& rep) {
  if (!s.scenario.empty()) {
    apply_common(s, load_scenario(s.scenario, "identities", {"trials", "k_max"}));
    rep = make_report(s);
  }
  run_checks(s, rep, {"induction-identity", "psi-fibonacci", "rho-cocycle", "bB-relations", "bianchi-twisted"});
}

void cmd_chkr_compare(Settings& s, Report& rep) {
  int grid = 64;
  if (!s.scenario.empty()) {
    Json j = load_scenario(s.scenario, "chkr-compare", {"grid"});
    apply_common(s, j);
    if (j.contains("grid")) grid = int_field(j, "grid", 8, 512);
    rep = make_report(s);
  }
  run_checks(s, rep, {"jlo-rho"});
  // Per-degree comparison on a seeded projection with a curved connection.
  Rng rng(s.seed);
  auto T = Chart::torus(2);
  ConnectionData c = curvature_and_lift(random_connection(T, 2, 1, rng));
  auto cmp = compare_chkr_rho(c, random_trig_projection(T, 4, rng), 2, T, grid);
  CheckResult r = custom("chkr-compare-instance", "chkr", "chkr: JLO-type character versus rho, seeded instance");
  add_text_block(r, "", cmp.to_text());
  r.set("grid", std::to_string(grid));
  r.expect(cmp.numeric_difference < 1e-8, "quadrature values differ by more than 1e-8");
  rep.checks.push_back(r);
}

CechScenario cech_from_json(const Json& j) {
  CechScenario sc;
  if (!j.contains("simplices") || !j["simplices"].is_array()) throw SchemaError("cech scenario needs 'simplices'");
  std::vector<Simplex> simplices;
  for (const auto& s : j["simplices"]) {
    if (!s.is_array() || s.empty()) throw SchemaError("each simplex must be a nonempty vertex list");
    Simplex x;
    for (const auto& v : s) {
      if (!v.is_number_integer() || v.get<int>() < 0) throw SchemaError("vertex labels must be nonnegative integers");
      x.push_back(v.get<int>());
    }
    simplices.push_back(x);
  }
  sc.nerve = Nerve::from_simplices(simplices);
  if (!j.contains("transitions") || !j["transitions"].is_array()) throw SchemaError("cech scenario needs 'transitions'");
  int n = 0;
  for (const auto& t : j["transitions"]) {
    if (!t.is_object() || !t.contains("edge") || !t.contains("matrix")) throw SchemaError("transition needs edge and matrix");
    const Json& e = t["edge"];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw SchemaError("edge must be a pair of vertex labels");
    int a = e[0].get<int>(), b = e[1].get<int>();
    MatQ m = matrix_of(t["matrix"]);
    if (n == 0) n = m.rows();
    if (m.rows() != n) throw SchemaError("transition matrices must share one size");
    if (a > b) {
      std::swap(a, b);
      m = m.adjoint();
    }
    sc.transitions.exact[{a, b}] = m;
  }
  sc.transitions.n = n;
  for (const auto& e : sc.nerve.simplices(1))
    if (!sc.transitions.exact.count({e[0], e[1]}))
      throw SchemaError("missing transition for edge " + std::to_string(e[0]) + " " + std::to_string(e[1]));
  return sc;
}

void cmd_dd_class(Settings& s, Report& rep) {
  if (s.scenario.empty()) {
    run_checks(s, rep, {"dd-class"});
    return;
  }
  CechScenario sc;
  if (s.scenario == "pauli-triangle") {
    sc = pauli_triangle();
  } else if (s.scenario == "rp2-circle") {
    sc = rp2_times_circle();
  } else if (looks_like_file(s.scenario)) {
    Json j = load_scenario(s.scenario, "cech", {"simplices", "transitions"});
    apply_common(s, j);
    sc = cech_from_json(j);
    rep = make_report(s);
  } else {
    throw SchemaError("unknown cech scenario '" + s.scenario + "' (pauli-triangle, rp2-circle or a JSON file)");
  }
  CheckResult r = custom("dd-class-scenario", "cech", "cech: Dixmier-Douady class of projective transition data");
  r.set("vertices", std::to_string(sc.nerve.vertex_count()));
  r.set("dimension", std::to_string(sc.nerve.dim()));
  try {
    DDCocycle dd = scalar_check_and_mu(sc.transitions, sc.nerve);
    add_text_block(r, "", to_text(dd, sc.nerve));
    r.expect(dd.dmu_is_one, "d mu != 1");
    r.expect(dd.max_rounding < 1e-9, "delta is not integral");
    if (sc.nerve.dim() >= 3) {
      CohomologyClass cls = h3_class(sc.nerve, dd.delta);
      add_text_block(r, "class.", cls.to_text());
      r.set("class.order", cls.order().get_str());
      if (cls.order() > 0 && !cls.is_zero()) {
        auto w = torsion_witness(sc.nerve, dd.delta, cls.order().get_si());
        r.expect(w.has_value(), "no torsion witness found");
        r.set("class.torsion_witness", fmt_bool(w.has_value()));
      }
    } else {
      r.set("class.group", "0 (no 3-simplices)");
    }
  } catch (const std::domain_error& e) {
    r.expect(false, e.what());
  } catch (const std::invalid_argument& e) {
    r.expect(false, e.what());
  }
  rep.checks.push_back(r);
}

Elem select_projection(const Geometry& g, const std::string& name, std::uint64_t seed) {
  if (name == "zero") return Elem(1, 1);
  if (name == "one") return Elem::identity(1);
  if (g.chart->kind == Chart::Kind::sphere) {
    if (name == "bott") return bott_projection(g.chart);
    if (name == "bott-conjugate") return conjugate_entries(bott_projection(g.chart));
  } else if (name == "random") {
    Rng rng(seed);
    return random_trig_projection(g.chart, 2, rng);
  }
  throw SchemaError("projection '" + name + "' is not available on " + g.name);
}

void cmd_index(Settings& s, Report& rep) {
  if (!s.scenario.empty()) {
    Json j = load_scenario(s.scenario, "index", {"geometry", "projection", "refine"});
    apply_common(s, j);
    if (j.contains("geometry")) s.geometry = string_field(j, "geometry");
    if (j.contains("projection")) s.projection = string_field(j, "projection");
    rep = make_report(s);
  }
  Geometry g;
  if (s.geometry == "sphere2")
    g = sphere2();
  else if (s.geometry == "torus2")
    g = torus2();
  else
    throw SchemaError("geometry must be sphere2 or torus2");
  if (s.refine < 0 || s.refine > 8) throw SchemaError("--refine must lie in 0..8");
  Elem p = select_projection(g, s.projection, s.seed);
  rep.header.emplace_back("geometry", s.geometry);
  rep.header.emplace_back("projection", s.projection);

  CheckResult r = custom("index-scenario", "geom", "geom: local index formula");
  try {
    ChernNumber c = chern_number(g, p);
    r.set("chern_number", fmt_int(c.snapped.integer));
    r.set("chern_residual", fmt_real(c.snapped.residual));
    r.set("chern_exact_integral", c.exact_integral.str());
  } catch (const std::runtime_error& e) {
    r.expect(false, e.what());
  }
  RefinementTrend trend = index_refinement(g, p, s.refine);
  double worst = 0;
  for (const auto& l : trend.levels) {
    std::string key = "level" + std::to_string(l.level);
    r.set(key + ".value", fmt_real(l.snapped.value));
    r.set(key + ".imag", fmt_real(l.snapped.imag));
    r.set(key + ".integer", fmt_int(l.snapped.integer));
    r.set(key + ".residual", fmt_real(l.snapped.residual));
    worst = std::max(worst, l.snapped.residual);
  }
  const LocalIndex& last = trend.levels.back();
  r.set("index", fmt_int(last.snapped.integer));
  r.set("exact_integral", last.exact_integral.str());
  r.set("exact_value", fmt_complex(last.exact_value));
  // Once every residual is at rounding level there is nothing left to decrease.
  bool settled = worst < 1e-12;
  r.set("residual_decreasing", fmt_bool(trend.decreasing()));
  r.expect(last.snapped.residual < 1e-4, "integrality residual >= 1e-4");
  if (trend.levels.size() > 1) r.expect(trend.decreasing() || settled, "residual does not decrease under refinement");
  rep.checks.push_back(r);
}

SpectralTripleData triple_from_json(const Json& t) {
  if (!t.is_object() || !t.contains("D") || !t.contains("algebra")) throw SchemaError("triple needs D and algebra");
  MatQ D = matrix_of(t["D"]);
  std::optional<MatQ> gamma;
  if (t.contains("gamma")) gamma = matrix_of(t["gamma"]);
  std::vector<MatQ> algebra;
  if (!t["algebra"].is_array()) throw SchemaError("algebra must be a list of matrices");
  for (const auto& a : t["algebra"]) algebra.push_back(matrix_of(a));
  for (const auto& a : algebra)
    if (a.rows() != D.rows()) throw SchemaError("algebra elements must match the size of D");
  if (gamma && gamma->rows() != D.rows()) throw SchemaError("gamma must match the size of D");
  return SpectralTripleData::finite(D, gamma, algebra);
}

void cmd_spectral(Settings& s, Report& rep) {
  if (s.scenario.empty()) {
    run_checks(s, rep, {"sobolev", "morita"});
    return;
  }
  Json j = load_scenario(s.scenario, "spectral", {"triple", "projection", "m"});
  apply_common(s, j);
  rep = make_report(s);
  if (!j.contains("triple")) throw SchemaError("spectral scenario needs 'triple'");
  SpectralTripleData t = triple_from_json(j["triple"]);
  CheckResult r = custom("spectral-scenario", "spectral", "spectral: finite triple and Morita lift");
  ContractReport cr = check_contract(t);
  r.set("dimension", std::to_string(t.dim()));
  r.set("contract.ok", fmt_bool(cr.ok()));
  r.set("contract.max_commutator_norm", fmt_real(cr.max_commutator_norm));
  r.expect(cr.ok(), "triple violates the contract");
  std::string eigs;
  for (double x : t.spectrum()) eigs += (eigs.empty() ? "" : " ") + fmt_real(x);
  r.set("spectrum", eigs);
  std::string cp;
  for (const auto& c : t.characteristic_polynomial()) cp += (cp.empty() ? "" : " ") + to_string(c);
  r.set("characteristic_polynomial", cp);
  if (t.gamma) {
    KernelData k = graded_kernels(t);
    r.set("ker_plus", std::to_string(k.ker_plus));
    r.set("ker_minus", std::to_string(k.ker_minus));
    r.set("index", std::to_string(k.index()));
  }
  if (j.contains("projection")) {
    int m = j.contains("m") ? int_field(j, "m", 1, 16) : 1;
    MatQ p = matrix_of(j["projection"]);
    try {
      SpectralTripleData l = morita_lift(t, p, m);
      r.set("lift.dimension", std::to_string(l.dim()));
      r.set("lift.index_pairing", std::to_string(graded_kernels(l).index()));
      for (double time : {0.5, 1.0, 2.0}) r.set("lift.supertrace_t" + fmt_real(time), fmt_real(mckean_singer(l, time)));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("projection rejected: ") + e.what());
    }
  }
  rep.checks.push_back(r);
}

void cmd_algebroid(Settings& s, Report& rep) {
  if (!s.scenario.empty()) {
    apply_common(s, load_scenario(s.scenario, "algebroid", {"trials", "k_max"}));
    rep = make_report(s);
  }
  run_checks(s, rep, {"varrho"});
}

int cmd_list_checks(const Settings& s) {
  std::vector<CheckInfo> rows;
  for (const auto& c : check_catalog())
    if (s.module.empty() || c.module == s.module) rows.push_back(c);
  if (rows.empty()) throw SchemaError("no checks for module '" + s.module + "'");
  std::string body;
  if (s.format == "json") {
    Json j = Json::array();
    for (const auto& c : rows)
      j.push_back({{"id", c.id}, {"module", c.module}, {"anchor", c.anchor}, {"criterion", c.criterion},
                   {"summary", c.summary}});
    body = j.dump(2) + "\n";
  } else {
    for (const auto& c : rows)
      body += c.id + " [" + c.module + "] criterion " + std::to_string(c.criterion) + ": " + c.anchor + "\n";
  }
  emit(s, body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptk: verification suites for the index-theory toolkit"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* c) {
    c->add_option("--scenario", s.scenario, "Built-in scenario name or JSON scenario file");
    c->add_option("--seed", s.seed, "Seed of the mt19937_64 generator")->capture_default_str();
    c->add_option("--trials", s.trials, "Number of random trials (0: per-check default)")->check(CLI::NonNegativeNumber);
    c->add_option("--k-max", s.k_max, "Largest chain degree for identity checks")->check(CLI::Range(0, 10));
    c->add_option("--refine", s.refine, "Number of grid refinements")->check(CLI::Range(0, 8));
    c->add_option("--out", s.out, "Report path (default: $PTK_OUT_DIR/<command>.<ext> or stdout)");
    c->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"verify-identities", "Exact identities of the connection calculus and cyclic complexes"},
                      {"dd-class", "Dixmier-Douady class of a Cech scenario"},
                      {"index", "Local index formula on a closed geometry"},
                      {"chkr-compare", "JLO-type character versus rho on the torus"},
                      {"spectral", "Sobolev, summability and Morita suites, or a finite triple scenario"},
                      {"algebroid", "varrho suite on the derivation algebroid"},
                      {"list-checks", "Catalog of acceptance checks"}};
  std::map<std::string, CLI::App*> apps;
  for (const auto& sub : subs) {
    CLI::App* c = app.add_subcommand(sub.name, sub.help);
    common(c);
    apps[sub.name] = c;
  }
  apps["index"]->add_option("--geometry", s.geometry, "sphere2 or torus2")->capture_default_str();
  apps["index"]->add_option("--projection", s.projection, "bott, bott-conjugate, one, zero or random (torus)")
      ->capture_default_str();
  apps["list-checks"]->add_option("--module", s.module, "Restrict to one module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [name, c] : apps)
    if (c->parsed()) s.command = name;

  try {
    if (s.command == "list-checks") return cmd_list_checks(s);
    Report rep = make_report(s);
    if (s.command == "verify-identities")
      cmd_verify_identities(s, rep);
    else if (s.command == "dd-class")
      cmd_dd_class(s, rep);
    else if (s.command == "index")
      cmd_index(s, rep);
    else if (s.command == "chkr-compare")
      cmd_chkr_compare(s, rep);
    else if (s.command == "spectral")
      cmd_spectral(s, rep);
    else if (s.command == "algebroid")
      cmd_algebroid(s, rep);
    emit(s, s.format == "json" ? render_json(rep) : render_text(rep));
    return rep.passed() ? 0 : 1;
  } catch (const SchemaError& e) {
    std::cerr << "ptk: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ptk: internal error: " << e.what() << "\n";
    return 3;
  }
}
