#include "cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sif::cli {

using nlohmann::json;

namespace {

// Largest product h * x * coefficient the solvers may form: ladder top times growth guard.
constexpr double kWorstCaseScale = 1e9 * 1e12;
constexpr double kOverflowLimit = 1e300;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InputError(path + ": " + message);
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number, got " + std::string(v.type_name()));
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "must be finite");
  return d;
}

std::size_t index(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a nonnegative integer index");
  return v.get<std::size_t>();
}

Vec number_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  Vec out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], path + "/" + std::to_string(k)));
  return out;
}

std::vector<Vec> number_rows(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < v.size(); ++k) rows.push_back(number_list(v[k], path + "/" + std::to_string(k)));
  return rows;
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

MonotoneNorm parse_norm(const json& root, const char* kind_key, const char* weights_key) {
  const std::string path = std::string("/") + kind_key;
  auto it = root.find(kind_key);
  if (it == root.end()) return MonotoneNorm::max();
  NormKind kind;
  try {
    kind = parse_norm_kind(text(*it, path));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  auto w = root.find(weights_key);
  const bool weighted = kind == NormKind::weighted_max || kind == NormKind::weighted_sum;
  if (weighted != (w != root.end())) {
    fail(std::string("/") + weights_key, weighted ? "weighted norm requires weights" : "weights given for an unweighted norm");
  }
  if (!weighted) return MonotoneNorm(kind);
  const std::string wpath = std::string("/") + weights_key;
  Vec weights = number_list(*w, wpath);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] > 0.0)) fail(wpath + "/" + std::to_string(k), "norm weights must be > 0");
  }
  return MonotoneNorm(kind, PositiveVector(std::move(weights)));
}

AffineModel parse_affine(const json& obj) {
  const std::string base = "/affine";
  if (!obj.is_object()) fail(base, "expected an object");
  AffineModel m;
  const std::vector<Vec> rows = number_rows(require(obj, base, "X"), base + "/X");
  m.offset = number_list(require(obj, base, "u"), base + "/u");
  const std::size_t n = m.offset.size();
  if (n == 0) fail(base + "/u", "must have at least one entry");
  if (rows.size() != n) fail(base + "/X", "expected " + std::to_string(n) + " rows to match u");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = base + "/X/" + std::to_string(i);
    if (rows[i].size() != n) fail(rp, "expected " + std::to_string(n) + " columns");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] < 0.0) fail(rp + "/" + std::to_string(j), "coupling entries must be >= 0");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(m.offset[i] > 0.0)) fail(base + "/u/" + std::to_string(i), "offset entries must be > 0");
  }
  m.coupling = Matrix::from_rows(rows);
  return m;
}

LoadScenario parse_load(const json& obj, std::vector<std::string>& warnings) {
  const std::string base = "/load";
  if (!obj.is_object()) fail(base, "expected an object");
  LoadScenario s;

  const json& assign = require(obj, base, "assignment");
  if (!assign.is_array()) fail(base + "/assignment", "expected an array of user-index lists");
  for (std::size_t i = 0; i < assign.size(); ++i) {
    const std::string p = base + "/assignment/" + std::to_string(i);
    if (!assign[i].is_array()) fail(p, "expected an array of user indices");
    std::vector<std::size_t> users;
    for (std::size_t k = 0; k < assign[i].size(); ++k) users.push_back(index(assign[i][k], p + "/" + std::to_string(k)));
    s.assignment.push_back(std::move(users));
  }

  s.gains = number_rows(require(obj, base, "gains"), base + "/gains");
  const std::string gains_unit = obj.contains("gains_unit") ? text(obj["gains_unit"], base + "/gains_unit") : "linear";
  if (gains_unit == "dB") {
    for (Vec& row : s.gains)
      for (double& g : row) g = db_to_linear(g);
  } else if (gains_unit != "linear") {
    fail(base + "/gains_unit", "expected \"linear\" or \"dB\"");
  }

  s.demands = number_list(require(obj, base, "demands"), base + "/demands");
  s.resource_blocks = number(require(obj, base, "K"), base + "/K");
  if (s.resource_blocks != std::floor(s.resource_blocks)) fail(base + "/K", "resource block count must be an integer");
  s.rb_bandwidth = number(require(obj, base, "B"), base + "/B");
  s.power = number_list(require(obj, base, "powers"), base + "/powers");
  if (obj.contains("caps")) s.rate_caps = number_list(obj["caps"], base + "/caps");

  const double sigma2 = number(require(obj, base, "sigma2"), base + "/sigma2");
  const std::string noise_unit = obj.contains("noise_unit") ? text(obj["noise_unit"], base + "/noise_unit") : "W";
  if (noise_unit == "W") {
    s.noise = sigma2;
  } else if (noise_unit == "dBm") {
    s.noise = dbm_to_watt(sigma2);
  } else if (noise_unit == "dBm/Hz") {
    s.noise = dbm_to_watt(sigma2) * s.rb_bandwidth;
  } else {
    fail(base + "/noise_unit", "expected \"W\", \"dBm\" or \"dBm/Hz\"");
  }

  const auto check_count = [&](const char* key, std::size_t expected, std::size_t got) {
    if (expected != got) {
      fail(base + "/" + key, "expected " + std::to_string(expected) + " entries, got " + std::to_string(got));
    }
  };
  if (obj.contains("M")) check_count("powers", index(obj["M"], base + "/M"), s.power.size());
  if (obj.contains("N")) check_count("demands", index(obj["N"], base + "/N"), s.demands.size());

  try {
    s.validate();
  } catch (const ScenarioError& e) {
    throw InputError(e.what());
  }

  double coupling = 0.0;
  double snr = 0.0;
  for (std::size_t k = 0; k < s.num_base_stations(); ++k) {
    for (std::size_t j = 0; j < s.num_users(); ++j) {
      coupling = std::max(coupling, s.power[k] * s.gains[k][j]);
      snr = std::max(snr, s.power[k] * s.gains[k][j] / s.noise);
    }
  }
  if (coupling * kWorstCaseScale > kOverflowLimit) {
    warnings.push_back("power * gain up to " + std::to_string(coupling) +
                       " may overflow interference sums at large load scales; consider rescaling units");
  }
  if (snr > kOverflowLimit) {
    warnings.push_back("interference-free SNR exceeds 1e300; loads at zero interference will underflow");
  }
  return s;
}

SolverOverrides parse_solver(const json& obj) {
  const std::string base = "/solver";
  if (!obj.is_object()) fail(base, "expected an object");
  SolverOverrides o;
  if (obj.contains("tol")) {
    o.tol = number(obj["tol"], base + "/tol");
    if (!(*o.tol > 0.0)) fail(base + "/tol", "must be > 0");
  }
  if (obj.contains("max_iter")) {
    o.max_iter = index(obj["max_iter"], base + "/max_iter");
    if (*o.max_iter == 0) fail(base + "/max_iter", "must be >= 1");
  }
  if (obj.contains("growth_guard")) {
    o.growth_guard = number(obj["growth_guard"], base + "/growth_guard");
    if (!(*o.growth_guard > 0.0)) fail(base + "/growth_guard", "must be > 0");
  }
  if (obj.contains("ladder")) {
    const json& l = obj["ladder"];
    const std::string lp = base + "/ladder";
    if (!l.is_object()) fail(lp, "expected an object");
    LadderConfig cfg;
    if (l.contains("scales")) cfg.scales = number_list(l["scales"], lp + "/scales");
    if (l.contains("rtol")) cfg.rtol = number(l["rtol"], lp + "/rtol");
    if (l.contains("atol")) cfg.atol = number(l["atol"], lp + "/atol");
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      fail(lp, e.what());
    }
    o.ladder = std::move(cfg);
  }
  return o;
}

std::string line_column(std::string_view text_in, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text_in.size(); ++k) {
    if (text_in[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json norm_to_json(const MonotoneNorm& n) {
  if (!n.weights()) return json(std::string(to_string(n.kind())));
  return json(n.weights()->values());
}

}  // namespace

std::size_t Scenario::dim() const noexcept {
  if (const auto* a = std::get_if<AffineModel>(&model)) return a->offset.size();
  return std::get<LoadScenario>(model).num_base_stations();
}

bool same_values(const Scenario& a, const Scenario& b) {
  const auto same_ladder = [](const std::optional<LadderConfig>& x, const std::optional<LadderConfig>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->scales == y->scales && x->rtol == y->rtol && x->atol == y->atol);
  };
  return a.name == b.name && a.model == b.model && a.norm_a == b.norm_a && a.norm_b == b.norm_b &&
         a.solver.tol == b.solver.tol && a.solver.max_iter == b.solver.max_iter &&
         a.solver.growth_guard == b.solver.growth_guard && same_ladder(a.solver.ladder, b.solver.ladder);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

Scenario parse_scenario(std::string_view input) {
  json root;
  try {
    root = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    throw InputError(line_column(input, e.byte) + ": malformed JSON (" + what + ")");
  }
  if (!root.is_object()) throw InputError("/: expected a JSON object at top level");

  Scenario s;
  if (root.contains("name")) s.name = text(root["name"], "/name");
  const bool has_affine = root.contains("affine");
  const bool has_load = root.contains("load");
  if (has_affine == has_load) throw InputError("/: exactly one of \"affine\" or \"load\" is required");
  if (has_affine) {
    s.model = parse_affine(root["affine"]);
  } else {
    s.model = parse_load(root["load"], s.warnings);
  }
  s.norm_a = parse_norm(root, "norm_a", "weights_a");
  s.norm_b = parse_norm(root, "norm_b", "weights_b");
  const std::size_t n = s.dim();
  for (const auto& [norm, key] : {std::pair{&s.norm_a, "/weights_a"}, std::pair{&s.norm_b, "/weights_b"}}) {
    if (norm->weights() && norm->weights()->size() != n) {
      throw InputError(std::string(key) + ": expected " + std::to_string(n) + " weights");
    }
  }
  if (root.contains("solver")) s.solver = parse_solver(root["solver"]);

  if (const auto* a = std::get_if<AffineModel>(&s.model)) {
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) top = std::max(top, a->coupling(i, j));
    if (top * kWorstCaseScale > kOverflowLimit) {
      s.warnings.push_back("coupling entries up to " + std::to_string(top) + " may overflow at large scales");
    }
  }
  return s;
}

Scenario read_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json to_json(const Scenario& s) {
  json root = json::object();
  if (!s.name.empty()) root["name"] = s.name;
  if (const auto* a = std::get_if<AffineModel>(&s.model)) {
    root["affine"] = {{"X", a->coupling.to_rows()}, {"u", a->offset}};
  } else {
    const LoadScenario& l = std::get<LoadScenario>(s.model);
    json load = {
        {"M", l.num_base_stations()},
        {"N", l.num_users()},
        {"assignment", l.assignment},
        {"gains", l.gains},
        {"gains_unit", "linear"},
        {"demands", l.demands},
        {"K", l.resource_blocks},
        {"B", l.rb_bandwidth},
        {"sigma2", l.noise},
        {"noise_unit", "W"},
        {"powers", l.power},
    };
    if (l.rate_caps) load["caps"] = *l.rate_caps;
    root["load"] = std::move(load);
  }
  root["norm_a"] = std::string(to_string(s.norm_a.kind()));
  if (s.norm_a.weights()) root["weights_a"] = norm_to_json(s.norm_a);
  root["norm_b"] = std::string(to_string(s.norm_b.kind()));
  if (s.norm_b.weights()) root["weights_b"] = norm_to_json(s.norm_b);

  json solver = json::object();
  if (s.solver.tol) solver["tol"] = *s.solver.tol;
  if (s.solver.max_iter) solver["max_iter"] = *s.solver.max_iter;
  if (s.solver.growth_guard) solver["growth_guard"] = *s.solver.growth_guard;
  if (s.solver.ladder) {
    solver["ladder"] = {{"scales", s.solver.ladder->scales}, {"rtol", s.solver.ladder->rtol},
                        {"atol", s.solver.ladder->atol}};
  }
  if (!solver.empty()) root["solver"] = std::move(solver);
  return root;
}

std::shared_ptr<const InterferenceMapping> build_mapping(const Scenario& s) {
  if (const auto* a = std::get_if<AffineModel>(&s.model)) {
    return std::make_shared<const AffineMapping>(a->coupling, PositiveVector(a->offset));
  }
  auto load = std::make_shared<const LoadScenario>(std::get<LoadScenario>(s.model));
  return std::make_shared<const LoadMapping>(load, load->rate_caps.has_value());
}

AsymptoticMapping build_asymptotic(const Scenario& s) {
  if (const auto* a = std::get_if<AffineModel>(&s.model)) return AsymptoticMapping::linear(a->coupling);
  return exact_asymptotic_load(std::get<LoadScenario>(s.model));
}

}  // namespace sif::cli
