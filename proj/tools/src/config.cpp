#include "commring_cli/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commring/error.hpp"

namespace commring::cli {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& what) { fail(ErrorCode::ConfigInvalid, what); }

ordered_json to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

cplx complex_from(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid(where + ": complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json to_json(const CVec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

CVec vector_from(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) invalid(where + ": expected a list of [re, im] pairs");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i], where);
  return v;
}

ordered_json to_json(const CMat& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(CVec(m.row(i).transpose())));
  return rows;
}

CMat matrix_from(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) invalid(where + ": expected a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const CVec row = vector_from(j[static_cast<std::size_t>(i)], where);
    if (row.size() != cols) invalid(where + ": ragged matrix");
    m.row(i) = row.transpose();
  }
  return m;
}

ordered_json to_json(const std::vector<cplx>& v) {
  ordered_json a = ordered_json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

std::vector<cplx> list_from(const ordered_json& j, const std::string& where) {
  const CVec v = vector_from(j, where);
  return {v.data(), v.data() + v.size()};
}

template <class T>
T get_or(const ordered_json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    invalid(std::string("field '") + key + "' has the wrong type");
  }
}

ordered_json lambda_to_json(const LambdaSpec& l) {
  ordered_json j;
  j["kind"] = l.kind;
  if (l.kind == "log_derivative") j["m"] = l.m;
  if (l.kind == "theta_quotient") {
    j["pole_order"] = l.pole_order;
    if (l.coeffs.empty()) {
      j["coeffs"] = "random";
    } else {
      j["coeffs"] = to_json(l.coeffs);
    }
  }
  j["scale"] = to_json(l.scale);
  return j;
}

LambdaSpec lambda_from(const ordered_json& j) {
  LambdaSpec l;
  l.kind = get_or<std::string>(j, "kind", "log_derivative");
  if (l.kind == "log_derivative") {
    l.m = get_or<MultiIndex>(j, "m", {});
  } else if (l.kind == "theta_quotient") {
    l.pole_order = get_or<int>(j, "pole_order", 1);
    if (j.contains("coeffs") && !(j["coeffs"].is_string() && j["coeffs"] == "random")) {
      l.coeffs = list_from(j["coeffs"], "lambda.coeffs");
    }
  } else if (l.kind != "constant") {
    invalid("unknown lambda kind '" + l.kind + "'");
  }
  if (j.contains("scale")) l.scale = complex_from(j["scale"], "lambda.scale");
  return l;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"cocycle", 1e-10},     {"quasi_periodicity", 1e-9}, {"theta_error", 1e-12}, {"subvariety", 1e-10},
      {"residual", 1e-6},     {"commutator", 1e-6},        {"uniqueness", 1e-5},   {"lax", 1e-3},
      {"hierarchy", 1e-3},    {"oracle", 1e-6},            {"elliptic", 1e-8},     {"halving_low", 1.4},
      {"halving_high", 2.6},
  };
  return t;
}

ExperimentConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) invalid("config must be an object");
  ExperimentConfig c;
  c.g = get_or<int>(j, "g", c.g);
  c.r = get_or<int>(j, "r", c.r);
  c.s = get_or<int>(j, "s", c.s);
  c.k = get_or<int>(j, "k", c.k);
  if (j.contains("omega")) {
    c.omega = matrix_from(j["omega"], "omega");
  } else {
    c.omega = CMat::Identity(c.g, c.g) * kI;
  }
  if (j.contains("multiplier")) {
    const auto& m = j["multiplier"];
    c.multiplier.kind = get_or<std::string>(m, "kind", "scalar");
    if (m.contains("polys")) {
      for (const auto& p : m["polys"]) c.multiplier.polys.push_back(list_from(p, "multiplier.polys"));
    }
    if (m.contains("matrices")) {
      for (const auto& a : m["matrices"]) c.multiplier.matrices.push_back(matrix_from(a, "multiplier.matrices"));
    }
  }
  if (j.contains("translations")) {
    for (const auto& a : j["translations"]) c.translations.push_back(vector_from(a, "translations"));
  }
  if (j.contains("c") && !(j["c"].is_string() && j["c"] == "random")) c.c = vector_from(j["c"], "c");
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("lambdas")) {
    for (const auto& l : j["lambdas"]) c.lambdas.push_back(lambda_from(l));
  }
  if (j.contains("tolerances")) {
    for (const auto& [key, value] : j["tolerances"].items()) {
      if (!value.is_number()) invalid("tolerance '" + key + "' must be a number");
      c.tolerances[key] = value.get<double>();
    }
  }
  c.rank_tol = get_or<double>(j, "rank_tol", c.rank_tol);
  c.jet_order = get_or<int>(j, "jet_order", c.jet_order);
  if (j.contains("samples")) {
    const auto& s = j["samples"];
    c.samples.train = get_or<int>(s, "train", c.samples.train);
    c.samples.test = get_or<int>(s, "test", c.samples.test);
    c.samples.margin = get_or<double>(s, "margin", c.samples.margin);
    c.samples.eval_points = get_or<int>(s, "eval_points", c.samples.eval_points);
    c.samples.check_points = get_or<int>(s, "check_points", c.samples.check_points);
  }
  if (j.contains("time")) {
    c.time.h = get_or<double>(j["time"], "h", c.time.h);
    c.time.m = get_or<MultiIndex>(j["time"], "m", c.time.m);
  }
  if (j.contains("elliptic")) {
    const auto& e = j["elliptic"];
    if (e.contains("tau")) c.elliptic.tau = complex_from(e["tau"], "elliptic.tau");
    if (e.contains("x0")) c.elliptic.x0 = complex_from(e["x0"], "elliptic.x0");
    c.elliptic.jet_order = get_or<int>(e, "jet_order", c.elliptic.jet_order);
  }
  c.output = get_or<std::string>(j, "output", c.output);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& c) {
  ordered_json j;
  j["g"] = c.g;
  j["r"] = c.r;
  j["s"] = c.s;
  j["k"] = c.k;
  j["omega"] = to_json(c.omega);
  ordered_json m;
  m["kind"] = c.multiplier.kind;
  ordered_json polys = ordered_json::array();
  for (const auto& p : c.multiplier.polys) polys.push_back(to_json(p));
  m["polys"] = polys;
  ordered_json mats = ordered_json::array();
  for (const auto& a : c.multiplier.matrices) mats.push_back(to_json(a));
  m["matrices"] = mats;
  j["multiplier"] = m;
  ordered_json tr = ordered_json::array();
  for (const auto& a : c.translations) tr.push_back(to_json(a));
  j["translations"] = tr;
  if (c.c) {
    j["c"] = to_json(*c.c);
  } else {
    j["c"] = "random";
  }
  j["seed"] = c.seed;
  ordered_json ls = ordered_json::array();
  for (const auto& l : c.lambdas) ls.push_back(lambda_to_json(l));
  j["lambdas"] = ls;
  ordered_json tol = ordered_json::object();
  for (const auto& [key, value] : c.tolerances) tol[key] = value;
  j["tolerances"] = tol;
  j["rank_tol"] = c.rank_tol;
  j["jet_order"] = c.jet_order;
  j["samples"] = {{"train", c.samples.train},
                  {"test", c.samples.test},
                  {"margin", c.samples.margin},
                  {"eval_points", c.samples.eval_points},
                  {"check_points", c.samples.check_points}};
  j["time"] = {{"h", c.time.h}, {"m", c.time.m}};
  j["elliptic"] = {{"tau", to_json(c.elliptic.tau)}, {"x0", to_json(c.elliptic.x0)},
                   {"jet_order", c.elliptic.jet_order}};
  j["output"] = c.output;
  return j.dump(2) + "\n";
}

void validate(const ExperimentConfig& c) {
  if (c.g < 1) invalid("g must be positive");
  if (c.r < 1) invalid("r must be positive");
  if (c.s < 1) invalid("s must be positive");
  if (c.k < 0) invalid("k must be non-negative");
  if (c.k >= 1 && c.k >= c.g - 1) {
    invalid("k = " + std::to_string(c.k) + " violates k < g-1 for g = " + std::to_string(c.g));
  }
  if (c.omega.rows() != c.g || c.omega.cols() != c.g) invalid("omega must be g x g");
  if (static_cast<int>(c.translations.size()) != c.k) invalid("need exactly k translations");
  for (const auto& a : c.translations) {
    if (a.size() != c.g) invalid("translations must have length g");
  }
  if (c.c && c.c->size() != c.g) invalid("c must have length g");
  const auto& kind = c.multiplier.kind;
  if (kind == "scalar") {
    if (c.r != 1) invalid("scalar multipliers need r = 1");
  } else if (kind == "jordan") {
    if (c.r < 2) invalid("the Jordan family needs r >= 2");
    if (static_cast<int>(c.multiplier.polys.size()) != c.g - 1) invalid("the Jordan family needs g-1 polynomials");
  } else if (kind == "explicit") {
    if (static_cast<int>(c.multiplier.matrices.size()) != c.g) invalid("explicit multipliers need g matrices");
    for (const auto& a : c.multiplier.matrices) {
      if (a.rows() != c.r || a.cols() != c.r) invalid("explicit multipliers must be r x r");
    }
  } else {
    invalid("unknown multiplier kind '" + kind + "'");
  }
  for (const auto& l : c.lambdas) {
    if (l.kind == "log_derivative" && (static_cast<int>(l.m.size()) != c.g || order(l.m) < 1)) {
      invalid("log_derivative lambdas need a multi-index of length g and order >= 1");
    }
    if (l.kind == "theta_quotient" && l.pole_order < 1) invalid("theta quotients need pole_order >= 1");
  }
  for (const auto& [key, value] : c.tolerances) {
    if (!(value > 0.0)) invalid("tolerance '" + key + "' must be positive");
    if (!default_tolerances().contains(key)) invalid("unknown tolerance '" + key + "'");
  }
  if (!(c.rank_tol > 0.0)) invalid("rank_tol must be positive");
  if (c.samples.train < 1 || c.samples.test < 1 || c.samples.eval_points < 1 || c.samples.check_points < 1) {
    invalid("sample counts must be positive");
  }
  if (!(c.samples.margin >= 0.0)) invalid("samples.margin must be non-negative");
  if (!(c.time.h > 0.0)) invalid("time.h must be positive");
  if (!c.time.m.empty() && static_cast<int>(c.time.m.size()) != c.g) invalid("time.m must have length g");
  if (!(c.elliptic.tau.imag() > 0.0)) invalid("elliptic.tau needs a positive imaginary part");
}

RiemannMatrix riemann_matrix(const ExperimentConfig& c) { return validate_riemann_matrix(c.omega); }

MultiplierSystem multiplier_system(const ExperimentConfig& c) {
  if (c.multiplier.kind == "jordan") return jordan_example(c.r, c.g, c.multiplier.polys, c.s);
  if (c.multiplier.kind == "explicit") return MultiplierSystem(c.s, c.multiplier.matrices);
  return MultiplierSystem::scalar(c.g, c.s);
}

double tolerance(const ExperimentConfig& c, const std::string& name) {
  if (auto it = c.tolerances.find(name); it != c.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

}  // namespace commring::cli
