#include "cmap/config.hpp"

#include <fstream>

namespace cmap {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config key '") + key + "': " + e.what());
  }
}

SampleBox parse_box(const Json& j, int n) {
  auto ranges = [&](const char* key) {
    std::vector<std::array<double, 2>> out;
    const Json& arr = j.at(key);
    if (!arr.is_array()) fail("box ranges must be arrays");
    if (arr.size() == 2 && arr[0].is_number()) {
      // single [lo, hi] applied to every coordinate
      out.assign(n, {arr[0].get<double>(), arr[1].get<double>()});
    } else {
      for (const auto& r : arr)
        out.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
      if (static_cast<int>(out.size()) != n)
        fail("box needs one [lo, hi] per projective coordinate");
    }
    return out;
  };
  SampleBox box;
  box.re_lo.resize(n);
  box.re_hi.resize(n);
  box.im_lo.resize(n);
  box.im_hi.resize(n);
  auto re = ranges("re");
  auto im = ranges("im");
  for (int a = 0; a < n; ++a) {
    box.re_lo(a) = re[a][0];
    box.re_hi(a) = re[a][1];
    box.im_lo(a) = im[a][0];
    box.im_hi(a) = im[a][1];
  }
  return box;
}

}  // namespace

Json ModelConfig::to_json() const {
  Json j;
  j["kind"] = kind;
  j["n"] = n;
  if (kind == "quadratic") j["signs"] = signs;
  if (kind == "cubic") {
    Json d = Json::array();
    for (const auto& t : terms)
      d.push_back({{"abc", t.abc}, {"coeff", t.coeff}});
    j["d"] = d;
  }
  if (add_constant != 0.0) j["add_constant"] = add_constant;
  return j;
}

Json Tolerances::to_json() const {
  return Json{{"homogeneity", homogeneity},
              {"contour_vs_closed", contour_vs_closed},
              {"contour_plateau", contour_plateau},
              {"chi_three_way", chi_three_way},
              {"scaling", scaling},
              {"laplace", laplace},
              {"isometry", isometry},
              {"composition", composition},
              {"u1", u1},
              {"metric_deviation", metric_deviation},
              {"constant_spread", constant_spread},
              {"einstein_oracle", einstein_oracle},
              {"einstein", einstein}};
}

Config parse_config(const Json& doc) {
  if (!doc.is_object()) fail("config must be a JSON object");
  int version = get_or(doc, "schema_version", kSchemaVersion);
  if (version != kSchemaVersion)
    fail("unsupported schema_version " + std::to_string(version));
  if (!doc.contains("model")) fail("config must name a model");

  Config cfg;
  const Json& m = doc.at("model");
  cfg.model.kind = get_or<std::string>(m, "kind", "");
  cfg.model.n = get_or(m, "n", -1);
  cfg.model.add_constant = get_or(m, "add_constant", 0.0);
  if (cfg.model.kind == "quadratic") {
    if (cfg.model.n < 0) fail("quadratic model: n >= 0 required");
    cfg.model.signs =
        get_or(m, "signs", std::vector<double>{});
  } else if (cfg.model.kind == "cubic") {
    if (cfg.model.n < 1) fail("cubic model: n >= 1 required");
    if (!m.contains("d")) fail("cubic model: coefficient list 'd' required");
    for (const auto& t : m.at("d")) {
      CubicModel::Monomial mono;
      auto abc = t.at("abc");
      if (!abc.is_array() || abc.size() != 3)
        fail("cubic monomial needs exactly three indices");
      for (int k = 0; k < 3; ++k) mono.abc[k] = abc[k].get<int>();
      mono.coeff = t.at("coeff").get<double>();
      cfg.model.terms.push_back(mono);
    }
  } else {
    fail("model.kind must be 'quadratic' or 'cubic'");
  }

  if (doc.contains("sweep")) {
    const Json& s = doc.at("sweep");
    cfg.sweep.points = get_or(s, "points", cfg.sweep.points);
    cfg.sweep.group_elements =
        get_or(s, "group_elements", cfg.sweep.group_elements);
    cfg.sweep.section_points =
        get_or(s, "section_points", cfg.sweep.section_points);
    cfg.sweep.einstein_points =
        get_or(s, "einstein_points", cfg.sweep.einstein_points);
    cfg.sweep.seed = get_or(s, "seed", cfg.sweep.seed);
    if (cfg.sweep.points < 1 || cfg.sweep.section_points < 1)
      fail("sweep counts must be positive");
    if (s.contains("box")) cfg.sweep.box = parse_box(s.at("box"), cfg.model.n);
  }

  if (doc.contains("tolerances")) {
    const Json& t = doc.at("tolerances");
    auto& tol = cfg.tol;
    tol.homogeneity = get_or(t, "homogeneity", tol.homogeneity);
    tol.contour_vs_closed =
        get_or(t, "contour_vs_closed", tol.contour_vs_closed);
    tol.contour_plateau = get_or(t, "contour_plateau", tol.contour_plateau);
    tol.chi_three_way = get_or(t, "chi_three_way", tol.chi_three_way);
    tol.scaling = get_or(t, "scaling", tol.scaling);
    tol.laplace = get_or(t, "laplace", tol.laplace);
    tol.isometry = get_or(t, "isometry", tol.isometry);
    tol.composition = get_or(t, "composition", tol.composition);
    tol.u1 = get_or(t, "u1", tol.u1);
    tol.metric_deviation =
        get_or(t, "metric_deviation", tol.metric_deviation);
    tol.constant_spread = get_or(t, "constant_spread", tol.constant_spread);
    tol.einstein_oracle = get_or(t, "einstein_oracle", tol.einstein_oracle);
    tol.einstein = get_or(t, "einstein", tol.einstein);
  }

  if (doc.contains("checks")) {
    const Json& c = doc.at("checks");
    auto& ck = cfg.checks;
    ck.homogeneity = get_or(c, "homogeneity", true);
    ck.domain = get_or(c, "domain", true);
    ck.fs_metric = get_or(c, "fs_metric", true);
    ck.isometries = get_or(c, "isometries", true);
    ck.contour_vs_closed = get_or(c, "contour_vs_closed", true);
    ck.chi_three_way = get_or(c, "chi_three_way", true);
    ck.scaling = get_or(c, "scaling", true);
    ck.laplace = get_or(c, "laplace", true);
    ck.u1_invariance = get_or(c, "u1_invariance", true);
    ck.metric_comparison = get_or(c, "metric_comparison", true);
    if (c.contains("einstein")) ck.einstein = c.at("einstein").get<bool>();
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

std::unique_ptr<Prepotential> make_prepotential(const ModelConfig& mc) {
  if (mc.kind == "quadratic")
    return std::make_unique<QuadraticModel>(mc.n, mc.signs, mc.add_constant);
  if (mc.kind == "cubic")
    return std::make_unique<CubicModel>(mc.n, mc.terms, mc.add_constant);
  throw ConfigError("unknown model kind: " + mc.kind);
}

}  // namespace cmap
