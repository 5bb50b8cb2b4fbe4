#pragma once

// Configuration-driven runs: pole tables, survival curves, identity reports,
// Gamov data and the figure presets, written as CSV plus a JSON manifest.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "friedrichs/errors.hpp"
#include "friedrichs/model.hpp"
#include "friedrichs/perturbative.hpp"

namespace friedrichs {

enum class Mode { microscopic, phenomenological };

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 1,
  exit_analyticity = 2,
  exit_numerical = 3,
};

struct ConfigError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t n_points = 0;

  void validate() const;  // t_min >= 0, t_max > t_min, n_points >= 2
  std::vector<double> points() const;
  /// Parses "t_min:t_max:n".
  static TimeGrid parse(std::string_view text);
};

struct RunConfig {
  Mode mode = Mode::microscopic;
  ModelParams model;  // used in microscopic mode
  PhenoParams pheno;  // used in phenomenological mode
  std::vector<cplx> amplitudes;
  bool normalize = true;
  TimeGrid times{0.0, 1000.0, 201};
  double quad_tol = 1e-8;
  std::vector<std::string> outputs{"poles", "survival"};  // poles, survival, identities, gamov

  void validate() const;  // throws ConfigError
};

/// JSON schema:
/// { "mode": "microscopic" | "phenomenological",
///   "model": {"omega": [..], "rho": [..], "lambda": x}  or  {"omega_tilde": [..], "gamma": [..]},
///   "state": {"a": [x | [re, im], ..], "normalize": bool},
///   "times": {"t_min": x, "t_max": x, "n_points": n},
///   "quad_tol": x,
///   "outputs": ["poles", "survival", "identities", "gamov"] }
/// Missing optional keys take the RunConfig defaults.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config);

/// Named configurations: "two_level" (lambda = 0.1, w = (1, 1.06),
/// rho = (1, 1.2)), "one_level" (lambda = 0.1, w = rho = 1), and "verify"
/// (two_level with poles, identities and gamov outputs).
RunConfig preset(std::string_view name);

struct IdentityCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Operator-identity checks on a microscopic model: discontinuity identity at
/// 20 cut points, sum rule, completeness at t = 0, Newton vs polynomial poles
/// (N = 2), residue identity per pole, Gamov vs residue pole sums, the
/// Ag relation at 5 (w, t) samples, and the steepest-descent background.
std::vector<IdentityCheck> verify_identities(const ModelParams& params, double quad_tol);

struct RunReport {
  int exit_code = exit_ok;
  std::vector<std::string> messages;
  std::vector<std::filesystem::path> files;
};

/// Executes the selected outputs into out_dir: poles.csv, survival.csv,
/// identities.csv, gamov.csv and manifest.json. Never throws for numerical
/// or configuration failures; they are mapped onto the exit code.
RunReport run(const RunConfig& config, const std::filesystem::path& out_dir);

struct FigureOptions {
  std::optional<TimeGrid> grid;  // default: 2000 points on [0, 3/gamma]
  bool normalize = false;        // default: the raw preset amplitudes
};

/// Writes figure<which>.csv (one p column per curve) and one standard
/// survival CSV per curve, plus the manifest.
RunReport reproduce_figure(int which, const std::filesystem::path& out_dir,
                           const FigureOptions& options = {});

struct FigureCurve {
  std::string label;
  PhenoParams pheno;
  InitialState state;
};

/// The parameter sets of figures 2, 3 and 4.
std::vector<FigureCurve> figure_curves(int which, bool normalize = false);

/// Lowest-order curve for a phenomenological model (two-level formula for
/// N = 2, the N-level sum otherwise).
SurvivalCurve lowest_order_curve(const PhenoParams& pheno, const InitialState& state,
                                 std::span<const double> times);

}  // namespace friedrichs
