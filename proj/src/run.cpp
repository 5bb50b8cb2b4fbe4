#include "friedrichs/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "friedrichs/evolution.hpp"
#include "friedrichs/gamov.hpp"
#include "friedrichs/spectral.hpp"

#ifndef FRIEDRICHS_VERSION
#define FRIEDRICHS_VERSION "unknown"
#endif

namespace friedrichs {

using nlohmann::json;

void TimeGrid::validate() const {
  if (!(t_min >= 0.0) || !std::isfinite(t_min)) throw ConfigError("times.t_min must be finite and >= 0");
  if (!(t_max > t_min) || !std::isfinite(t_max)) throw ConfigError("times.t_max must be finite and > t_min");
  if (n_points < 2) throw ConfigError("times.n_points must be >= 2");
}

std::vector<double> TimeGrid::points() const { return uniform_grid(t_min, t_max, n_points); }

TimeGrid TimeGrid::parse(std::string_view grid) {
  const std::string text(grid);
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw ConfigError("grid must look like t_min:t_max:n");
  try {
    std::size_t used = 0;
    TimeGrid g;
    g.t_min = std::stod(text.substr(0, a));
    g.t_max = std::stod(text.substr(a + 1, b - a - 1));
    const std::string n = text.substr(b + 1);
    const long long count = std::stoll(n, &used);
    if (used != n.size() || count < 0) throw ConfigError("grid point count must be a non-negative integer");
    g.n_points = static_cast<std::size_t>(count);
    g.validate();
    return g;
  } catch (const std::logic_error&) {
    throw ConfigError("grid must look like t_min:t_max:n");
  }
}

void RunConfig::validate() const {
  try {
    if (mode == Mode::microscopic) {
      model.validate();
      if (amplitudes.size() != model.n_levels()) throw ConfigError("state.a must have one entry per level");
    } else {
      pheno.validate();
      if (amplitudes.size() != pheno.n_levels()) throw ConfigError("state.a must have one entry per level");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
  times.validate();
  if (!(quad_tol > 0.0) || !std::isfinite(quad_tol)) throw ConfigError("quad_tol must be > 0");
  for (const auto& o : outputs) {
    if (o != "poles" && o != "survival" && o != "identities" && o != "gamov")
      throw ConfigError("unknown output '" + o + "'");
    if (mode == Mode::phenomenological && (o == "identities" || o == "gamov"))
      throw ConfigError("output '" + o + "' needs a microscopic model");
  }
}

namespace {

std::vector<double> real_list(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

cplx amplitude_from(const json& x) {
  if (x.is_number()) return {x.get<double>(), 0.0};
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
    return {x[0].get<double>(), x[1].get<double>()};
  throw ConfigError("state.a entries must be numbers or [re, im] pairs");
}

json amplitude_to(cplx a) {
  if (a.imag() == 0.0) return a.real();
  return json::array({a.real(), a.imag()});
}

bool contains(const std::vector<std::string>& v, const char* x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

void write_survival_csv(const std::filesystem::path& path, const SurvivalCurve& c) {
  CsvWriter w(path, {"t", "re_A", "im_A", "p", "re_pole_part", "im_pole_part", "re_background",
                     "im_background"});
  for (std::size_t i = 0; i < c.t.size(); ++i)
    w.row({fmt(c.t[i]), fmt(c.amplitude[i].real()), fmt(c.amplitude[i].imag()), fmt(c.probability[i]),
           fmt(c.pole_part[i].real()), fmt(c.pole_part[i].imag()), fmt(c.background[i].real()),
           fmt(c.background[i].imag())});
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

json config_json(const RunConfig& c) {
  json j;
  j["mode"] = c.mode == Mode::microscopic ? "microscopic" : "phenomenological";
  if (c.mode == Mode::microscopic)
    j["model"] = {{"omega", c.model.omega}, {"rho", c.model.rho}, {"lambda", c.model.lambda}};
  else
    j["model"] = {{"omega_tilde", c.pheno.omega_tilde}, {"gamma", c.pheno.gamma}};
  json a = json::array();
  for (cplx x : c.amplitudes) a.push_back(amplitude_to(x));
  j["state"] = {{"a", a}, {"normalize", c.normalize}};
  j["times"] = {{"t_min", c.times.t_min}, {"t_max", c.times.t_max}, {"n_points", c.times.n_points}};
  j["quad_tol"] = c.quad_tol;
  j["outputs"] = c.outputs;
  return j;
}

json manifest(const json& resolved, const json& tolerances, const std::vector<std::filesystem::path>& files) {
  json f = json::array();
  for (const auto& p : files) f.push_back(p.filename().string());
  return {{"library", "friedrichs"}, {"version", FRIEDRICHS_VERSION}, {"config", resolved},
          {"tolerances", tolerances}, {"files", f}};
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    const std::string mode = j.value("mode", std::string("microscopic"));
    if (mode == "microscopic")
      c.mode = Mode::microscopic;
    else if (mode == "phenomenological")
      c.mode = Mode::phenomenological;
    else
      throw ConfigError("mode must be 'microscopic' or 'phenomenological'");

    if (!j.contains("model") || !j["model"].is_object()) throw ConfigError("config needs a model block");
    const json& m = j["model"];
    if (c.mode == Mode::microscopic) {
      if (!m.contains("omega") || !m.contains("rho") || !m.contains("lambda"))
        throw ConfigError("microscopic model needs omega, rho and lambda");
      c.model.omega = real_list(m["omega"], "model.omega");
      c.model.rho = real_list(m["rho"], "model.rho");
      if (!m["lambda"].is_number()) throw ConfigError("model.lambda must be a number");
      c.model.lambda = m["lambda"].get<double>();
    } else {
      if (!m.contains("omega_tilde") || !m.contains("gamma"))
        throw ConfigError("phenomenological model needs omega_tilde and gamma");
      c.pheno.omega_tilde = real_list(m["omega_tilde"], "model.omega_tilde");
      c.pheno.gamma = real_list(m["gamma"], "model.gamma");
    }

    if (!j.contains("state") || !j["state"].contains("a")) throw ConfigError("config needs state.a");
    const json& s = j["state"];
    if (!s["a"].is_array()) throw ConfigError("state.a must be an array");
    for (const auto& x : s["a"]) c.amplitudes.push_back(amplitude_from(x));
    c.normalize = s.value("normalize", true);

    if (j.contains("times")) {
      const json& t = j["times"];
      c.times.t_min = t.value("t_min", c.times.t_min);
      c.times.t_max = t.value("t_max", c.times.t_max);
      const long long n = t.value("n_points", static_cast<long long>(c.times.n_points));
      if (n < 0) throw ConfigError("times.n_points must be >= 2");
      c.times.n_points = static_cast<std::size_t>(n);
    }
    c.quad_tol = j.value("quad_tol", c.quad_tol);
    if (j.contains("outputs")) c.outputs = j["outputs"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

RunConfig preset(std::string_view name) {
  RunConfig c;
  if (name == "two_level" || name == "verify") {
    c.model = {{1.0, 1.06}, {1.0, 1.2}, 0.1};
    c.amplitudes = {1.0, 0.0};
    c.times = {0.0, 600.0, 301};
    if (name == "verify") c.outputs = {"poles", "identities", "gamov"};
  } else if (name == "one_level") {
    c.model = {{1.0}, {1.0}, 0.1};
    c.amplitudes = {1.0};
    c.times = {0.0, 600.0, 301};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  c.validate();
  return c;
}

std::vector<IdentityCheck> verify_identities(const ModelParams& params, double quad_tol) {
  params.validate();
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, double value, double threshold) {
    out.push_back({std::move(name), value, threshold, value < threshold});
  };

  double eme = 0.0;
  for (double w : uniform_grid(0.1, 4.0, 20)) eme = std::max(eme, check_discontinuity_identity(params, w));
  add("discontinuity", eme, 1e-12);

  add("sum_rule", check_sum_rule(params, quad_tol).residual.maxCoeff(), 1e-6);

  const auto n = static_cast<Eigen::Index>(params.n_levels());
  add("completeness_t0",
      max_abs(amplitude_matrix_exact(params, 0.0, quad_tol) - CMatrix::Identity(n, n)), 1e-6);

  const auto poles = find_resonances(params);
  if (params.n_levels() == 2) {
    const auto poly = find_poles_two_level(params);
    double diff = 0.0;
    for (const auto& p : poles) {
      double best = INFINITY;
      for (const auto& q : poly.resonances) best = std::min(best, std::abs(p.z - q.z));
      diff = std::max(diff, best);
    }
    add("poles_newton_vs_polynomial", diff, 1e-10);
  }

  double rr = 0.0;
  double pole_sums = 0.0;
  std::vector<GamovData> gamov;
  for (const auto& p : poles) {
    gamov.push_back(gamov_normalization(params, p, std::min(quad_tol, 1e-10)));
    rr = std::max(rr, check_residue_identity(gamov.back()));
  }
  for (double t : {0.0, 100.0, 1000.0}) {
    CMatrix g = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < poles.size(); ++j)
      g -= gamov_pole_coefficient(gamov[j]) * std::exp(-kI * (poles[j].z * t));
    pole_sums = std::max(pole_sums, max_abs(-g - pole_sum(poles, t)));
  }
  add("residue_identity", rr, 1e-8);
  add("gamov_pole_sum", pole_sums, 1e-8);

  // (i d/dt - w) g(w, t) = A(t), derivative by central difference.
  const double h = 1e-4;
  const double g_tol = std::min(quad_tol, 1e-11);
  double ag = 0.0;
  const std::pair<double, double> samples[] = {{0.5, 10.0}, {1.0, 50.0}, {1.03, 100.0}, {1.5, 20.0}, {2.5, 5.0}};
  for (const auto& [w, t] : samples) {
    const CMatrix dg = (g_kernel(params, w, t + h, g_tol) - g_kernel(params, w, t - h, g_tol)) / (2.0 * h);
    const CMatrix lhs = kI * dg - w * g_kernel(params, w, t, g_tol);
    ag = std::max(ag, max_abs(lhs - amplitude_matrix_exact(params, t, g_tol)));
  }
  add("ag_relation", ag, 1e-5);

  const double t_bg = 50.0;
  const CMatrix bg_exact = amplitude_matrix_exact(params, t_bg, quad_tol) - pole_sum(poles, t_bg);
  const CMatrix bg_line = background_contour(params, t_bg, EvolutionOptions{quad_tol});
  add("background_contour", max_abs(bg_exact - bg_line), std::max(10.0 * quad_tol, 1e-9));
  return out;
}

SurvivalCurve lowest_order_curve(const PhenoParams& pheno, const InitialState& state,
                                 std::span<const double> times) {
  if (pheno.n_levels() == 2) return survival_two_level_lowest(pheno, state, times);
  return survival_nlevel_lowest(pheno, state, times);
}

RunReport run(const RunConfig& config, const std::filesystem::path& out_dir) {
  RunReport report;
  auto fail = [&](int code, const std::string& msg) {
    report.exit_code = code;
    report.messages.push_back(msg);
    return report;
  };
  try {
    config.validate();
  } catch (const Error& e) {
    return fail(exit_config, std::string("config error: ") + e.what());
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) return fail(exit_config, "cannot create output directory " + out_dir.string());

  const bool micro = config.mode == Mode::microscopic;
  json tolerances = {{"quad_tol", config.quad_tol}};
  try {
    const auto state = InitialState::make(config.amplitudes, config.normalize);
    const auto times = config.times.points();

    std::vector<ResonancePole> poles;
    if (micro) {
      const auto analyticity = validate_analyticity(config.model);
      if (!analyticity.pass) return fail(exit_analyticity, "analyticity check failed: " + analyticity.summary);
      poles = find_resonances(config.model);
      tolerances["newton_residual"] = 1e-12;
    }

    if (contains(config.outputs, "poles")) {
      const auto path = out_dir / "poles.csv";
      CsvWriter w(path, {"j", "re_z", "im_z", "omega_tilde", "gamma", "re_z_lowest", "im_z_lowest"});
      if (micro) {
        const auto lowest = poles_nlevel_perturbative(config.model);
        for (std::size_t j = 0; j < poles.size(); ++j)
          w.row({std::to_string(j + 1), fmt(poles[j].z.real()), fmt(poles[j].z.imag()),
                 fmt(poles[j].omega_tilde), fmt(poles[j].gamma), fmt(lowest[j].real()), fmt(lowest[j].imag())});
      } else {
        const auto z = config.pheno.poles();
        for (std::size_t j = 0; j < z.size(); ++j)
          w.row({std::to_string(j + 1), fmt(z[j].real()), fmt(z[j].imag()), fmt(z[j].real()),
                 fmt(-z[j].imag()), fmt(z[j].real()), fmt(z[j].imag())});
      }
      report.files.push_back(path);
    }

    if (contains(config.outputs, "survival")) {
      const auto curve = micro ? survival(config.model, state, times, config.quad_tol)
                               : lowest_order_curve(config.pheno, state, times);
      const auto path = out_dir / "survival.csv";
      write_survival_csv(path, curve);
      report.files.push_back(path);
    }

    if (contains(config.outputs, "gamov")) {
      const auto path = out_dir / "gamov.csv";
      CsvWriter w(path, {"j", "re_z", "im_z", "re_norm_sq_inv", "im_norm_sq_inv", "residue_identity"});
      const double tol = std::min(config.quad_tol, 1e-10);
      for (std::size_t j = 0; j < poles.size(); ++j) {
        const auto g = gamov_normalization(config.model, poles[j], tol);
        w.row({std::to_string(j + 1), fmt(poles[j].z.real()), fmt(poles[j].z.imag()), fmt(g.norm_sq_inv.real()),
               fmt(g.norm_sq_inv.imag()), fmt(check_residue_identity(g))});
      }
      tolerances["gamov_quad_tol"] = tol;
      report.files.push_back(path);
    }

    if (contains(config.outputs, "identities")) {
      const auto checks = verify_identities(config.model, config.quad_tol);
      const auto path = out_dir / "identities.csv";
      CsvWriter w(path, {"identity", "value", "threshold", "pass"});
      bool all = true;
      for (const auto& c : checks) {
        w.row({c.name, fmt(c.value), fmt(c.threshold), c.pass ? "true" : "false"});
        tolerances["identity_" + c.name] = c.threshold;
        if (!c.pass) {
          all = false;
          report.messages.push_back("identity " + c.name + " failed: " + fmt(c.value) + " >= " + fmt(c.threshold));
        }
      }
      report.files.push_back(path);
      if (!all) report.exit_code = exit_numerical;
    }
  } catch (const ConfigError& e) {
    return fail(exit_config, std::string("config error: ") + e.what());
  } catch (const InvalidInput& e) {
    return fail(exit_config, std::string("invalid input: ") + e.what());
  } catch (const Error& e) {
    return fail(exit_numerical, std::string("numerical failure: ") + e.what());
  } catch (const std::runtime_error& e) {
    return fail(exit_config, e.what());
  }

  const auto mpath = out_dir / "manifest.json";
  write_json(mpath, manifest(config_json(config), tolerances, report.files));
  report.files.push_back(mpath);
  return report;
}

std::vector<FigureCurve> figure_curves(int which, bool normalize) {
  std::vector<FigureCurve> out;
  const double gamma = 1e-3;
  switch (which) {
    case 2:
      for (double a2 : {0.0, 0.2, 0.5}) {
        std::ostringstream label;
        label << "a2_" << a2;
        out.push_back({label.str(), PhenoParams{{1.0, 1.06}, {gamma, gamma}},
                       InitialState::make_real({0.5, a2}, normalize)});
      }
      break;
    case 3:
      for (double w2 : {1.04, 1.06, 1.064}) {
        std::ostringstream label;
        label << "w2_" << w2;
        out.push_back({label.str(), PhenoParams{{1.0, w2, 1.15}, {gamma, gamma, gamma}},
                       InitialState::make_real({0.3, 0.5, 0.3}, normalize)});
      }
      break;
    case 4:
      for (std::size_t n : {2u, 3u, 5u}) {
        auto [pheno, state] = gaussian_wavepacket(n, 1.0, 0.1, gamma, normalize);
        out.push_back({"N" + std::to_string(n), std::move(pheno), std::move(state)});
      }
      break;
    default:
      throw ConfigError("figure must be 2, 3 or 4");
  }
  return out;
}

RunReport reproduce_figure(int which, const std::filesystem::path& out_dir, const FigureOptions& options) {
  RunReport report;
  try {
    const auto curves = figure_curves(which, options.normalize);
    double gamma_min = INFINITY;
    for (const auto& c : curves)
      for (double g : c.pheno.gamma) gamma_min = std::min(gamma_min, g);
    const TimeGrid grid = options.grid.value_or(TimeGrid{0.0, 3.0 / gamma_min, 2000});
    grid.validate();
    const auto times = grid.points();

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir.string());

    const std::string stem = "figure" + std::to_string(which);
    std::vector<SurvivalCurve> results;
    std::vector<std::string> header{"t"};
    json curve_info = json::array();
    for (const auto& c : curves) {
      results.push_back(lowest_order_curve(c.pheno, c.state, times));
      header.push_back("p_" + c.label);
      json a = json::array();
      for (cplx x : c.state.a) a.push_back(amplitude_to(x));
      curve_info.push_back({{"label", c.label},
                            {"omega_tilde", c.pheno.omega_tilde},
                            {"gamma", c.pheno.gamma},
                            {"a", a}});
      const auto path = out_dir / (stem + "_" + c.label + ".csv");
      write_survival_csv(path, results.back());
      report.files.push_back(path);
    }
    const auto path = out_dir / (stem + ".csv");
    {
      CsvWriter w(path, header);
      for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> row{fmt(times[i])};
        for (const auto& r : results) row.push_back(fmt(r.probability[i]));
        w.row(row);
      }
    }
    report.files.insert(report.files.begin(), path);

    const json resolved = {{"figure", which},
                           {"mode", "phenomenological"},
                           {"normalize", options.normalize},
                           {"times", {{"t_min", grid.t_min}, {"t_max", grid.t_max}, {"n_points", grid.n_points}}},
                           {"curves", curve_info}};
    const auto mpath = out_dir / "manifest.json";
    write_json(mpath, manifest(resolved, json{{"closed_form", true}}, report.files));
    report.files.push_back(mpath);
  } catch (const InvalidInput& e) {
    report.exit_code = exit_config;
    report.messages.push_back(std::string("config error: ") + e.what());
  } catch (const std::runtime_error& e) {
    report.exit_code = exit_config;
    report.messages.push_back(e.what());
  }
  return report;
}

}  // namespace friedrichs
