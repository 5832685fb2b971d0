#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cmap/checks.hpp"
#include "cmap/twistor.hpp"

namespace {

using cmap::Json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

void emit(const Json& doc, const std::string& out_path) {
  std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw cmap::ConfigError("cannot write output file: " + out_path);
    out << text;
  }
}

int run_check(const std::string& config_path, const std::string& out_path) {
  cmap::Config cfg = cmap::load_config(config_path);
  std::vector<cmap::CheckResult> results = cmap::run_check_suite(cfg);
  emit(cmap::make_report(cfg, results), out_path);
  return cmap::all_passed(results) ? kExitPass : kExitCheckFailure;
}

cmap::FSPoint parse_point(const Json& j, int n) {
  cmap::FSPoint pt;
  pt.phi = j.value("phi", 0.0);
  pt.sigma = j.value("sigma", 0.0);
  const int m = n + 1;
  pt.A = Eigen::VectorXd::Zero(m);
  pt.B = Eigen::VectorXd::Zero(m);
  if (j.contains("A")) {
    auto a = j.at("A").get<std::vector<double>>();
    if (static_cast<int>(a.size()) != m)
      throw cmap::ConfigError("point: A needs n+1 entries");
    for (int i = 0; i < m; ++i) pt.A(i) = a[i];
  }
  if (j.contains("B")) {
    auto b = j.at("B").get<std::vector<double>>();
    if (static_cast<int>(b.size()) != m)
      throw cmap::ConfigError("point: B needs n+1 entries");
    for (int i = 0; i < m; ++i) pt.B(i) = b[i];
  }
  pt.Z.Z = Eigen::VectorXcd::Zero(n);
  if (j.contains("Z")) {
    const Json& z = j.at("Z");
    if (static_cast<int>(z.size()) != n)
      throw cmap::ConfigError("point: Z needs n [re, im] pairs");
    for (int a = 0; a < n; ++a)
      pt.Z.Z(a) = cmap::Complex(z[a].at(0).get<double>(),
                                z[a].at(1).get<double>());
  }
  return pt;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string basis_description(int n) {
  std::string s = "phi, sigma";
  for (int i = 1; i <= n + 1; ++i) s += ", A^" + std::to_string(i);
  for (int i = 1; i <= n + 1; ++i) s += ", B_" + std::to_string(i);
  for (int a = 2; a <= n + 1; ++a)
    s += ", Re Z^" + std::to_string(a) + ", Im Z^" + std::to_string(a);
  return s;
}

int run_eval(const std::string& config_path, const std::string& point_text,
             const std::string& route, const std::string& out_path) {
  cmap::Config cfg = cmap::load_config(config_path);
  std::unique_ptr<cmap::Prepotential> P = cmap::make_prepotential(cfg.model);

  Json pj;
  try {
    pj = Json::parse(point_text);
  } catch (const nlohmann::json::exception& e) {
    throw cmap::ConfigError(std::string("point parse error: ") + e.what());
  }
  cmap::FSPoint pt = parse_point(pj, P->n());

  Json out;
  out["schema_version"] = cmap::kSchemaVersion;
  out["command"] = "eval";
  out["model"] = cfg.model.to_json();
  out["basis"] = basis_description(P->n());
  out["route"] = route;
  try {
    if (route == "fs" || route == "both")
      out["fs_metric"] = matrix_json(cmap::fs_metric(*P, pt).m);
    if (route == "twistor" || route == "both") {
      cmap::MetricComparison cmp = cmap::compare_metrics(*P, pt);
      out["twistor_pullback"] = matrix_json(cmp.twistor_pullback.m);
      if (route == "both") {
        out["comparison"] = Json{{"constant", cmp.constant},
                                 {"max_rel_dev", cmp.max_rel_dev}};
      }
    }
  } catch (const cmap::OutsideDomain& e) {
    Json err;
    err["schema_version"] = cmap::kSchemaVersion;
    err["command"] = "eval";
    err["error"] = Json{{"type", "outside_domain"}, {"verdict", e.verdict}};
    emit(err, out_path);
    return kExitCheckFailure;
  }
  emit(out, out_path);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "c-map geometry engine: builds the quaternion-Kähler metric of a "
      "prepotential, its hyperkähler-cone and twistor descriptions, and "
      "cross-checks them numerically"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  auto* check = app.add_subcommand("check", "run the verification suite");
  check->add_option("--config", config_path, "JSON config file")->required();
  check->add_option("--out", out_path, "write the JSON report here");

  std::string point_text = "{}", route = "fs";
  auto* eval = app.add_subcommand("eval", "evaluate the metric at a point");
  eval->add_option("--config", config_path, "JSON config file")->required();
  eval->add_option("--point", point_text, "FS point as JSON")->required();
  eval->add_option("--route", route, "fs | twistor | both")
      ->check(CLI::IsMember({"fs", "twistor", "both"}));
  eval->add_option("--out", out_path, "write the JSON output here");

  try {
    app.parse(argc, argv);
    if (check->parsed()) return run_check(config_path, out_path);
    return run_eval(config_path, point_text, route, out_path);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  } catch (const cmap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const cmap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
