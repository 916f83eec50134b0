#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli/scenario.hpp"
#include "sif/analysis.hpp"
#include "sif/asymptotic.hpp"
#include "sif/properties.hpp"
#include "sif/solvers.hpp"
#include "sif/spectral.hpp"

namespace sif::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string vec_text(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += num(v[i]);
  }
  return s + "]";
}

json report_json(const SolveReport& r) {
  return {{"iterations", r.iterations}, {"residual", r.residual}, {"converged", r.converged},
          {"stop", std::string(to_string(r.stop))}, {"shifted", r.shifted}};
}

std::string report_text(const SolveReport& r) {
  return std::string(r.converged ? "converged" : "not converged") + ", stop " + std::string(to_string(r.stop)) +
         ", " + std::to_string(r.iterations) + " iterations, residual " + num(r.residual);
}

json spectral_json(const SpectralResult& s) {
  json j = {{"method", std::string(to_string(s.method))}, {"rho", s.rho},  {"lower", s.lower},
            {"upper", s.upper},                          {"converged", s.converged}, {"flagged", s.flagged},
            {"iterations", s.iterations}};
  if (s.method == SpectralMethod::budget_ladder) {
    j["budgets"] = s.budgets;
    j["ladder_values"] = s.ladder_values;
  }
  return j;
}

FixedPointOptions fixed_point_options(const Scenario& s) {
  FixedPointOptions o;
  if (s.solver.tol) o.tol = *s.solver.tol;
  if (s.solver.max_iter) o.max_iter = *s.solver.max_iter;
  if (s.solver.growth_guard) o.growth_guard = *s.solver.growth_guard;
  return o;
}

NormalizedOptions normalized_options(const Scenario& s) {
  NormalizedOptions o;
  if (s.solver.tol) o.tol = *s.solver.tol;
  if (s.solver.max_iter) o.max_iter = *s.solver.max_iter;
  return o;
}

FeasibilityOptions feasibility_options(const Scenario& s) {
  FeasibilityOptions o;
  o.fixed_point = fixed_point_options(s);
  o.spectral.canonical = normalized_options(s);
  return o;
}

void print_warnings(const Scenario& s, std::ostream& err) {
  for (const std::string& w : s.warnings) err << "warning: " << w << "\n";
}

// Writes via a sibling temp file and a rename so readers never see a partial CSV.
void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError(path.string() + ": cannot open for writing");
    f << content;
    if (!f) throw InputError(path.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

struct FeasibilityArgs {
  bool fixed_point = false;
  bool rank = false;
};

int cmd_feasibility(const Scenario& s, const FeasibilityArgs& args, bool as_json, std::ostream& out) {
  const auto mapping = build_mapping(s);
  const AsymptoticMapping asym = build_asymptotic(s);
  const FeasibilityOptions opts = feasibility_options(s);

  FeasibilityVerdict v;
  std::optional<std::vector<RankedStation>> ranking;
  const bool ranked = args.rank && s.is_load();
  if (ranked) {
    BottleneckResult b = bottleneck_ranking(std::get<LoadScenario>(s.model), opts);
    v = std::move(b.verdict);
    ranking = std::move(b.ranking);
  } else {
    v = feasibility_check(*mapping, asym, args.fixed_point, opts);
  }
  const bool show_fp = args.fixed_point || ranked;

  if (as_json) {
    json j = {{"family", std::string(to_string(mapping->family()))},
              {"dimension", mapping->dim()},
              {"rho", v.rho},
              {"verdict", std::string(to_string(v.verdict))},
              {"feasible", v.feasible},
              {"margin", v.margin},
              {"spectral", spectral_json(v.spectral)}};
    if (show_fp) {
      j["fixed_point"] = v.fixed_point ? json{{"x", v.fixed_point->x.values()}, {"report", report_json(v.fixed_point->report)}}
                                       : json(nullptr);
    }
    if (args.rank) {
      if (!s.is_load()) {
        j["ranking"] = nullptr;
        j["ranking_note"] = "ranking applies to load scenarios only";
      } else if (ranking) {
        json r = json::array();
        for (const RankedStation& st : *ranking) {
          r.push_back({{"base_station", st.base_station}, {"load", st.load}, {"overloaded", st.overloaded}});
        }
        j["ranking"] = std::move(r);
      } else {
        j["ranking"] = nullptr;
        j["ranking_note"] = "unavailable: no load fixed point";
      }
    }
    out << j.dump(2) << "\n";
  } else {
    out << "family: " << to_string(mapping->family()) << "\n";
    out << "dimension: " << mapping->dim() << "\n";
    out << "rho: " << num(v.rho) << "\n";
    out << "method: " << to_string(v.spectral.method) << (v.spectral.flagged ? " (bracket not closed)" : "") << "\n";
    out << "bracket: [" << num(v.spectral.lower) << ", " << num(v.spectral.upper) << "]\n";
    out << "verdict: " << to_string(v.verdict) << "\n";
    out << "margin: " << num(v.margin) << "\n";
    if (show_fp) {
      if (v.fixed_point) {
        out << "fixed point: " << vec_text(v.fixed_point->x.span()) << "\n";
        out << "fixed point solve: " << report_text(v.fixed_point->report) << "\n";
      } else {
        out << "fixed point: none (" << to_string(v.verdict) << ")\n";
      }
    }
    if (args.rank) {
      if (!s.is_load()) {
        out << "ranking: applies to load scenarios only\n";
      } else if (ranking) {
        out << "bottleneck ranking:\n";
        for (std::size_t k = 0; k < ranking->size(); ++k) {
          const RankedStation& st = (*ranking)[k];
          out << "  " << (k + 1) << ". base station " << st.base_station << " load " << num(st.load)
              << (st.overloaded ? " OVERLOADED" : "") << "\n";
        }
      } else {
        out << "ranking: unavailable (no load fixed point)\n";
      }
    }
  }

  switch (v.verdict) {
    case Verdict::feasible: return kExitOk;
    case Verdict::infeasible: return kExitInfeasible;
    case Verdict::near_critical: return kExitNearCritical;
  }
  return kExitOk;
}

struct SweepArgs {
  double pbar_min = 0.0;
  double pbar_max = 0.0;
  int points = 40;
  bool log = false;
  std::vector<double> grid;
  std::string out;
};

Vec build_grid(const SweepArgs& a) {
  if (!a.grid.empty()) {
    for (std::size_t k = 0; k < a.grid.size(); ++k) {
      if (!(a.grid[k] > 0.0) || (k > 0 && !(a.grid[k] > a.grid[k - 1]))) {
        throw InputError("--grid: budgets must be > 0 and strictly increasing");
      }
    }
    return a.grid;
  }
  if (!(a.pbar_min > 0.0) || !(a.pbar_max > a.pbar_min)) {
    throw InputError("--pbar-min/--pbar-max: need 0 < pbar-min < pbar-max");
  }
  if (a.points < 2) throw InputError("--points: need at least 2 grid points");
  Vec g(static_cast<std::size_t>(a.points));
  const double last = static_cast<double>(a.points - 1);
  for (int k = 0; k < a.points; ++k) {
    const double t = static_cast<double>(k) / last;
    g[static_cast<std::size_t>(k)] =
        a.log ? a.pbar_min * std::pow(a.pbar_max / a.pbar_min, t) : a.pbar_min + t * (a.pbar_max - a.pbar_min);
  }
  g.front() = a.pbar_min;
  g.back() = a.pbar_max;
  return g;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "p_bar,utility,ee,utility_bound,ee_bound,regime,status\n";
  for (const SweepRow& row : r.rows) {
    os << num(row.p_bar) << ',' << num(row.utility) << ',' << num(row.ee) << ',' << num(row.utility_bound) << ','
       << num(row.ee_bound) << ',' << to_string(row.regime) << ',' << (row.ok ? "ok" : "failed") << '\n';
  }
  return os.str();
}

std::string power_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "p_bar,bs_index,power\n";
  for (const SweepRow& row : r.rows) {
    for (std::size_t i = 0; i < row.power.size(); ++i) os << num(row.p_bar) << ',' << i << ',' << num(row.power[i]) << '\n';
  }
  return os.str();
}

json tail_json(const std::optional<TailFit>& t) {
  if (!t) return nullptr;
  return {{"points", t->points},
          {"utility_slope", t->utility_slope},
          {"ee_slope", t->ee_slope},
          {"utility_deviation", t->utility_deviation},
          {"ee_deviation", t->ee_deviation}};
}

std::string tail_text(const std::optional<TailFit>& t) {
  if (!t) return "insufficient";
  return "points=" + std::to_string(t->points) + " utility_slope=" + num(t->utility_slope) +
         " ee_slope=" + num(t->ee_slope);
}

int cmd_sweep(const Scenario& s, const SweepArgs& args, bool as_json, std::ostream& out) {
  const Vec grid = build_grid(args);
  const auto mapping = build_mapping(s);
  const AsymptoticMapping asym = build_asymptotic(s);
  const SweepResult r = sweep(*mapping, asym, s.norm_a, s.norm_b, grid, normalized_options(s));
  const ScalingDiagnostics d = scaling_diagnostics(r);

  write_atomically(args.out + ".csv", sweep_csv(r));
  write_atomically(args.out + "_power.csv", power_csv(r));

  std::size_t failed = 0;
  for (const SweepRow& row : r.rows) failed += row.ok ? 0 : 1;
  const double inf = std::numeric_limits<double>::infinity();
  const double sup_u = r.lambda_inf > 0.0 ? 1.0 / r.lambda_inf : inf;
  const double sup_e = 1.0 / r.t0_norm_b;

  if (as_json) {
    json j = {{"family", std::string(to_string(mapping->family()))},
              {"lambda_inf", r.lambda_inf},
              {"transition_point", r.transition ? json(*r.transition) : json(nullptr)},
              {"sup_utility", r.lambda_inf > 0.0 ? json(sup_u) : json("inf")},
              {"sup_ee", sup_e},
              {"alpha", r.alpha},
              {"rows", r.rows.size()},
              {"failed_rows", failed},
              {"low_tail", tail_json(d.low)},
              {"high_tail", tail_json(d.high)},
              {"ladder_gap", d.ladder_gap ? json(*d.ladder_gap) : json(nullptr)},
              {"notes", r.notes}};
    out << j.dump(2) << "\n";
  } else {
    out << "family: " << to_string(mapping->family()) << "\n";
    out << "lambda_inf: " << num(r.lambda_inf) << "\n";
    out << "transition_point: " << (r.transition ? num(*r.transition) : std::string("none")) << "\n";
    out << "sup_utility: " << num(sup_u) << "\n";
    out << "sup_ee: " << num(sup_e) << "\n";
    out << "alpha: " << num(r.alpha) << "\n";
    out << "rows: " << r.rows.size() << " (failed: " << failed << ")\n";
    out << "low_tail: " << tail_text(d.low) << "\n";
    out << "high_tail: " << tail_text(d.high) << "\n";
    if (d.ladder_gap) out << "ladder_gap: " << num(*d.ladder_gap) << "\n";
    for (const std::string& n : r.notes) out << "note: " << n << "\n";
  }
  return failed == r.rows.size() ? kExitSolverFailure : kExitOk;
}

int cmd_eigen(const Scenario& s, const std::string& target, bool as_json, std::ostream& out) {
  const auto mapping = build_mapping(s);
  const AsymptoticMapping asym = build_asymptotic(s);
  const Mapping& subject = target == "asymptotic" ? static_cast<const Mapping&>(asym) : *mapping;
  const EigenResult e = conditional_eigen(subject, s.norm_a, normalized_options(s));

  if (as_json) {
    json j = {{"target", target},
              {"norm", std::string(to_string(s.norm_a.kind()))},
              {"lambda", e.pair.lambda},
              {"x", e.pair.x.values()},
              {"zero_direction", e.zero_direction},
              {"report", report_json(e.report)}};
    if (target == "mapping") j["fixed_point_in_unit_ball"] = e.pair.lambda <= 1.0;
    out << j.dump(2) << "\n";
  } else {
    out << "target: " << target << "\n";
    out << "norm: " << to_string(s.norm_a.kind()) << "\n";
    out << "lambda: " << num(e.pair.lambda) << "\n";
    out << "x: " << vec_text(e.pair.x.span()) << "\n";
    out << "solve: " << report_text(e.report) << "\n";
    if (e.zero_direction) out << "note: mapping vanishes along the iterate (zero direction)\n";
    if (target == "mapping") {
      out << "fixed point in unit ball: " << (e.pair.lambda <= 1.0 ? "yes" : "no") << "\n";
    }
  }
  return e.report.converged ? kExitOk : kExitSolverFailure;
}

struct CheckArgs {
  std::size_t samples = kDefaultPropertySamples;
  std::uint64_t seed = kDefaultPropertySeed;
};

struct RouteAgreement {
  std::size_t points = 0;
  double max_deviation = 0.0;
  std::size_t unsettled = 0;
};

// Ladder estimate of T_inf against the exact linear map on sampled loads in [0.1, 1]^N.
RouteAgreement route_agreement(const InterferenceMapping& m, const AsymptoticMapping& exact, const LadderConfig& cfg,
                               std::size_t points, std::uint64_t seed) {
  RouteAgreement r;
  r.points = points;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.1, 1.0);
  for (std::size_t k = 0; k < points; ++k) {
    Vec x(m.dim());
    for (double& e : x) e = coord(rng);
    const AsymptoticEstimate est = estimate_asymptotic(m, NonnegVector(x), cfg);
    if (!est.converged) {
      ++r.unsettled;
      continue;
    }
    const Vec ref = exact.evaluate(x);
    const double scale = max_abs(ref);
    if (scale > 0.0) r.max_deviation = std::max(r.max_deviation, max_abs_diff(est.value.span(), ref) / scale);
  }
  return r;
}

json violations_json(const PropertyReport& r, std::size_t limit) {
  json arr = json::array();
  for (std::size_t k = 0; k < r.violations.size() && k < limit; ++k) {
    const PropertyViolation& v = r.violations[k];
    arr.push_back({{"property", v.property}, {"coordinate", v.coordinate}, {"input", v.input},
                   {"scale", v.scale},       {"lhs", v.lhs},               {"rhs", v.rhs}});
  }
  return arr;
}

void violations_text(const PropertyReport& r, std::size_t limit, std::ostream& out) {
  for (std::size_t k = 0; k < r.violations.size() && k < limit; ++k) {
    const PropertyViolation& v = r.violations[k];
    out << "  " << v.property << " at coordinate " << v.coordinate << ": x=" << vec_text(v.input);
    if (v.scale != 0.0) out << " scale=" << num(v.scale);
    out << " lhs=" << num(v.lhs) << " rhs=" << num(v.rhs) << "\n";
  }
}

int cmd_check(const Scenario& s, const CheckArgs& args, bool as_json, std::ostream& out) {
  if (args.samples == 0) throw InputError("--samples: need at least 1 sample");
  constexpr std::size_t kShown = 10;
  const auto mapping = build_mapping(s);
  const AsymptoticMapping asym = build_asymptotic(s);
  const PropertyReport standard = check_standard_properties(*mapping, args.samples, args.seed);
  const PropertyReport asymptotic = check_asymptotic_properties(asym, args.samples, args.seed);
  const RouteAgreement route = route_agreement(*mapping, asym, s.solver.ladder.value_or(LadderConfig{}),
                                               std::min<std::size_t>(args.samples, 20), args.seed);
  const bool passed = standard.passed() && asymptotic.passed();

  if (as_json) {
    const auto block = [&](const PropertyReport& r) {
      return json{{"name", r.name},
                  {"samples", r.samples},
                  {"seed", r.seed},
                  {"violation_count", r.violations.size()},
                  {"violations", violations_json(r, kShown)}};
    };
    json j = {{"family", std::string(to_string(mapping->family()))},
              {"standard", block(standard)},
              {"asymptotic", block(asymptotic)},
              {"route_agreement",
               {{"points", route.points}, {"max_deviation", route.max_deviation}, {"unsettled", route.unsettled}}},
              {"passed", passed}};
    out << j.dump(2) << "\n";
  } else {
    out << "family: " << to_string(mapping->family()) << "\n";
    for (const PropertyReport* r : {&standard, &asymptotic}) {
      out << r->name << ": samples=" << r->samples << " seed=" << r->seed << " violations=" << r->violations.size()
          << "\n";
      violations_text(*r, kShown, out);
    }
    out << "route agreement (ladder vs exact): points=" << route.points << " max_deviation=" << num(route.max_deviation)
        << " unsettled=" << route.unsettled << "\n";
    out << "result: " << (passed ? "pass" : "fail") << "\n";
  }
  return passed ? kExitOk : kExitInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard interference mappings: feasibility, max-min utility sweeps, eigenproblems"};
  app.name("sif");
  app.require_subcommand(1, 1);

  std::string path;
  bool as_json = false;

  FeasibilityArgs fa;
  auto* feas = app.add_subcommand("feasibility", "Spectral-radius feasibility verdict (exit 0/2/3)");
  feas->add_option("scenario", path, "Scenario JSON file")->required();
  feas->add_flag("--fixed-point", fa.fixed_point, "Compute and print the fixed point when feasible");
  feas->add_flag("--rank", fa.rank, "Rank base stations by load (load scenarios)");
  feas->add_flag("--json", as_json, "Machine-readable report");

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Utility / energy-efficiency sweep over the power budget");
  sw->add_option("scenario", path, "Scenario JSON file")->required();
  sw->add_option("--pbar-min", sa.pbar_min, "Smallest budget");
  sw->add_option("--pbar-max", sa.pbar_max, "Largest budget");
  sw->add_option("--points", sa.points, "Number of grid points (>= 2)");
  sw->add_flag("--log", sa.log, "Log-spaced grid");
  sw->add_option("--grid", sa.grid, "Explicit comma-separated budgets (overrides min/max/points)")->delimiter(',');
  sw->add_option("--out", sa.out, "Output prefix: writes <prefix>.csv and <prefix>_power.csv")->required();
  sw->add_flag("--json", as_json, "Machine-readable summary");

  std::string target = "asymptotic";
  auto* eig = app.add_subcommand("eigen", "Conditional eigenpair of T_inf or of T");
  eig->add_option("scenario", path, "Scenario JSON file")->required();
  eig->add_option("--target", target, "asymptotic | mapping")->check(CLI::IsMember({"asymptotic", "mapping"}));
  eig->add_flag("--json", as_json, "Machine-readable report");

  CheckArgs ca;
  auto* chk = app.add_subcommand("check", "Sampled standard-interference and asymptotic property checks");
  chk->add_option("scenario", path, "Scenario JSON file")->required();
  chk->add_option("--samples", ca.samples, "Samples per property (>= 1)");
  chk->add_option("--seed", ca.seed, "RNG seed");
  chk->add_flag("--json", as_json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run `sif --help` for usage\n";
    return kExitInputError;
  }

  try {
    const Scenario s = read_scenario_file(path);
    print_warnings(s, err);
    if (feas->parsed()) return cmd_feasibility(s, fa, as_json, out);
    if (sw->parsed()) return cmd_sweep(s, sa, as_json, out);
    if (eig->parsed()) return cmd_eigen(s, target, as_json, out);
    return cmd_check(s, ca, as_json, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
}

}  // namespace sif::cli
