#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commring/meromorphic.hpp"
#include "commring/multipliers.hpp"
#include "commring/riemann_matrix.hpp"

namespace commring::cli {

struct MultiplierSpec {
  /// "scalar", "jordan" or "explicit".
  std::string kind = "scalar";
  /// Ascending coefficients of p_2..p_g for the Jordan family.
  std::vector<std::vector<cplx>> polys;
  /// A_1..A_g for the explicit kind.
  std::vector<CMat> matrices;
};

struct LambdaSpec {
  /// "log_derivative", "theta_quotient" or "constant".
  std::string kind = "log_derivative";
  MultiIndex m;
  int pole_order = 1;
  /// Empty means random seeds drawn from the lambda stream.
  std::vector<cplx> coeffs;
  cplx scale = 1.0;
};

struct SampleSpec {
  int train = 40;
  int test = 40;
  double margin = 5e-2;
  int eval_points = 8;
  int check_points = 100;
};

struct TimeSpec {
  double h = 1e-3;
  MultiIndex m;
};

struct EllipticSpec {
  cplx tau{0.0, 1.0};
  cplx x0{0.3, 0.0};
  int jet_order = 6;
};

struct ExperimentConfig {
  int g = 2;
  int r = 1;
  int s = 1;
  int k = 0;
  CMat omega;
  MultiplierSpec multiplier;
  std::vector<CVec> translations;
  /// Absent means drawn from the basis stream.
  std::optional<CVec> c;
  std::uint64_t seed = 11;
  std::vector<LambdaSpec> lambdas;
  std::map<std::string, double> tolerances;
  double rank_tol = 1e-8;
  int jet_order = -1;
  SampleSpec samples;
  TimeSpec time;
  EllipticSpec elliptic;
  std::string output = "out";
};

/// Tolerances every subcommand may consult, with their defaults.
const std::map<std::string, double>& default_tolerances();

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Serialization that parses back to an identical config.
std::string dump_config(const ExperimentConfig& cfg);
/// ConfigInvalid on any violated invariant.
void validate(const ExperimentConfig& cfg);

RiemannMatrix riemann_matrix(const ExperimentConfig& cfg);
MultiplierSystem multiplier_system(const ExperimentConfig& cfg);
double tolerance(const ExperimentConfig& cfg, const std::string& name);

}  // namespace commring::cli
