#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sif/asymptotic.hpp"
#include "sif/load_scenario.hpp"
#include "sif/mapping.hpp"
#include "sif/matrix.hpp"
#include "sif/norm.hpp"

namespace sif::cli {

/// Malformed or invalid scenario input. The message starts with a location: "line L, column C"
/// for syntax errors, a JSON pointer such as "/load/gains/1/0" for field errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AffineModel {
  Matrix coupling;
  Vec offset;

  bool operator==(const AffineModel&) const = default;
};

struct SolverOverrides {
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<double> growth_guard;
  std::optional<LadderConfig> ladder;
};

/// In-memory scenario; every quantity is linear (gains) and in Watt (noise).
struct Scenario {
  std::string name;
  std::variant<AffineModel, LoadScenario> model;
  MonotoneNorm norm_a = MonotoneNorm::max();
  MonotoneNorm norm_b = MonotoneNorm::max();
  SolverOverrides solver;
  /// Ingestion diagnostics that do not invalidate the scenario.
  std::vector<std::string> warnings;

  bool is_load() const noexcept { return std::holds_alternative<LoadScenario>(model); }
  std::size_t dim() const noexcept;
};

bool same_values(const Scenario& a, const Scenario& b);

/// dB -> linear power ratio.
double db_to_linear(double db);
/// dBm -> Watt.
double dbm_to_watt(double dbm);

Scenario parse_scenario(std::string_view text);
Scenario read_scenario_file(const std::filesystem::path& path);

/// Canonical form: linear gains, noise in Watt per resource block.
nlohmann::json to_json(const Scenario& s);

std::shared_ptr<const InterferenceMapping> build_mapping(const Scenario& s);
AsymptoticMapping build_asymptotic(const Scenario& s);

}  // namespace sif::cli
