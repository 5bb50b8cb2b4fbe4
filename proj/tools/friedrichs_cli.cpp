// Command-line front end: poles, survive, verify, figure {2|3|4}.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "friedrichs/run.hpp"

namespace fr = friedrichs;

namespace {

struct Common {
  std::string config;
  std::string out = "out";
  std::optional<bool> normalize;
  std::optional<double> tol;
  std::string grid;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON run configuration");
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--normalize", c.normalize, "rescale the initial state to unit norm\n"
                  "(bare flag means true; figures default to raw amplitudes)")
      ->expected(0, 1)
      ->default_str("true");
  cmd->add_option("--tol", c.tol, "quadrature tolerance");
  cmd->add_option("--grid", c.grid, "time grid t_min:t_max:n");
}

int report(const fr::RunReport& r) {
  for (const auto& m : r.messages) std::cerr << m << '\n';
  for (const auto& f : r.files) std::cout << f.string() << '\n';
  return r.exit_code;
}

int run_with(const Common& c, const char* default_preset, std::vector<std::string> outputs) {
  fr::RunConfig cfg;
  try {
    cfg = c.config.empty() ? fr::preset(default_preset) : fr::load_config(c.config);
    if (!outputs.empty()) cfg.outputs = std::move(outputs);
    if (c.normalize) cfg.normalize = *c.normalize;
    if (c.tol) cfg.quad_tol = *c.tol;
    if (!c.grid.empty()) cfg.times = fr::TimeGrid::parse(c.grid);
  } catch (const fr::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return fr::exit_config;
  }
  return report(fr::run(cfg, c.out));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Friedrichs model: resonance poles, survival amplitudes and figure presets"};
  app.set_version_flag("--version", FRIEDRICHS_VERSION);
  app.require_subcommand(1);

  Common poles_opt, survive_opt, verify_opt, figure_opt;
  auto* poles = app.add_subcommand("poles", "resonance poles of the configured model");
  add_common(poles, poles_opt);
  auto* survive = app.add_subcommand("survive", "survival amplitude on the time grid");
  add_common(survive, survive_opt);
  auto* verify = app.add_subcommand("verify", "operator-identity report (default: two-level test set)");
  add_common(verify, verify_opt);
  auto* figure = app.add_subcommand("figure", "reproduce figure 2, 3 or 4 as CSV");
  int which = 0;
  figure->add_option("which", which, "figure number")->required()->check(CLI::IsMember({2, 3, 4}));
  add_common(figure, figure_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fr::exit_config;
  }

  if (*poles) return run_with(poles_opt, "two_level", {"poles"});
  if (*survive) return run_with(survive_opt, "two_level", {"poles", "survival"});
  if (*verify) return run_with(verify_opt, "verify", {"poles", "identities", "gamov"});

  fr::FigureOptions fo;
  fo.normalize = figure_opt.normalize.value_or(false);
  try {
    if (!figure_opt.grid.empty()) fo.grid = fr::TimeGrid::parse(figure_opt.grid);
  } catch (const fr::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return fr::exit_config;
  }
  return report(fr::reproduce_figure(which, figure_opt.out, fo));
}
