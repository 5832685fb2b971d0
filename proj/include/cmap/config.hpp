#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>

#include "cmap/prepotential.hpp"
#include "cmap/sampling.hpp"

namespace cmap {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct ModelConfig {
  std::string kind;  // "quadratic" | "cubic"
  int n = 0;
  std::vector<double> signs;                 // quadratic
  std::vector<CubicModel::Monomial> terms;   // cubic
  double add_constant = 0.0;

  Json to_json() const;
};

struct SweepConfig {
  int points = 100;
  int group_elements = 50;
  int section_points = 50;   // contour / χ / Laplace / U(1) sweeps
  int einstein_points = 5;
  std::uint64_t seed = 20260809;
  std::optional<SampleBox> box;  // default_box(P) when absent
};

struct Tolerances {
  double homogeneity = 1e-12;
  double contour_vs_closed = 1e-10;
  double contour_plateau = 1e-12;
  double chi_three_way = 1e-10;
  double scaling = 1e-11;
  double laplace = 1e-8;
  double isometry = 1e-10;
  double composition = 1e-12;
  double u1 = 1e-8;
  double metric_deviation = 1e-6;
  double constant_spread = 1e-8;
  double einstein_oracle = 1e-4;
  double einstein = 1e-3;

  Json to_json() const;
};

struct CheckToggles {
  bool homogeneity = true;
  bool domain = true;
  bool fs_metric = true;
  bool isometries = true;
  bool contour_vs_closed = true;
  bool chi_three_way = true;
  bool scaling = true;
  bool laplace = true;
  bool u1_invariance = true;
  bool metric_comparison = true;
  std::optional<bool> einstein;  // default: only for dim <= 8
};

struct Config {
  ModelConfig model;
  SweepConfig sweep;
  Tolerances tol;
  CheckToggles checks;
};

/// Parses and validates a config document; throws ConfigError with a
/// diagnostic on malformed input.
Config parse_config(const Json& doc);
Config load_config(const std::string& path);

std::unique_ptr<Prepotential> make_prepotential(const ModelConfig& mc);

}  // namespace cmap
