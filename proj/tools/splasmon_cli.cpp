// splasmon: command-line front end for runs, presets, convergence studies,
// oracle checks and dispersion curves.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splasmon/config.hpp"
#include "splasmon/errors.hpp"
#include "splasmon/integrator.hpp"
#include "splasmon/model.hpp"
#include "splasmon/oracle.hpp"
#include "splasmon/outputs.hpp"

using namespace splasmon;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_blowup = 2;

struct Overrides {
  std::optional<double> dt;
  std::optional<int> modes;
  std::optional<double> t_end;

  void add_to(CLI::App* app) {
    app->add_option("--dt", dt, "time step");
    app->add_option("--modes", modes, "number of modes N");
    app->add_option("--t-end", t_end, "final time");
  }

  void apply(RunConfig& c) const {
    if (modes) {
      c.n_modes = *modes;
      if (!dt) c.dt = default_dt(*modes);
    }
    if (dt) c.dt = *dt;
    if (t_end) c.t_end = *t_end;
    c.validate();
  }
};

void print_status(const Trajectory& traj, const fs::path& outdir) {
  const auto& last = traj.samples.back();
  std::printf("%s after %ld steps, tau=%.6g, max|A|=%.6g, A-norm=%.6g -> %s\n",
              traj.status_string().c_str(), traj.steps_taken, last.tau, last.max_abs_A,
              last.a_norm(), outdir.string().c_str());
}

int run_and_emit(const RunConfig& c, const fs::path& outdir) {
  const auto traj = run(c);
  if (traj.samples.empty()) throw Error("run produced no samples");
  emit_outputs(traj, outdir);
  print_status(traj, outdir);
  return traj.status == RunStatus::completed ? exit_ok : exit_blowup;
}

int oracle_check(int n, int seeds, unsigned first_seed) {
  double worst = 0.0;
  for (int i = 0; i < seeds; ++i) {
    const unsigned seed = first_seed + static_cast<unsigned>(i);
    RunConfig c;
    c.kind = EquationKind::bidirectional;
    c.n_modes = n;
    c.initial = {"random", {}, {}};
    c.seed = seed;
    const State s = c.initial_state();
    const double a = 0.1 + 0.9 * std::fmod(0.6180339887 * (seed + 1), 1.0);
    const double b = 0.1 + 0.9 * std::fmod(0.4142135624 * (seed + 1), 1.0);
    const double gamma = 0.5 * a, nu = b - 0.5;
    auto coeffs = coefficients_from_ab(a, b);
    coeffs.gamma = gamma;
    coeffs.nu = nu;
    const auto fast = rhs_bidirectional(s.u, s.v, coeffs);
    const auto brute = oracle::rhs_spectral_brute(s.u + s.v, a, b, gamma, nu, n);
    double dev = 0.0, scale = 0.0;
    for (int k = -n; k <= n; ++k) {
      if (k == 0) continue;
      dev = std::max(dev, std::abs(fast.u[k] + fast.v[k] - brute[k]));
      scale = std::max(scale, std::abs(brute[k]));
    }
    dev /= std::max(scale, 1e-300);
    worst = std::max(worst, dev);
    std::printf("seed %u  a=%.4f b=%.4f gamma=%.4f nu=%.4f  max rel deviation %.3e\n", seed, a,
                b, gamma, nu, dev);
  }
  std::printf("N=%d seeds=%d worst %.3e\n", n, seeds, worst);
  return worst <= 1e-12 ? exit_ok : exit_error;
}

int dispersion_csv(const MaterialPreset& m, double k_min, double k_max, int points,
                   const std::string& out_path) {
  if (points < 2 || k_min <= 0.0 || k_max <= k_min) {
    throw ParameterError("dispersion needs 0 < k-min < k-max and at least 2 points");
  }
  const auto& d = m.drude;
  const double w0 = d.omega0(), c0 = d.c0();
  const Permittivity vacuum = [&](double) { return d.eps0; };
  const Permittivity metal = [&](double w) {
    return d.eps0 * (1.0 - d.omega_p * d.omega_p / (w * w));
  };
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw IoError("cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  out.precision(17);
  out << "k,omega,omega_closed_form\n";
  for (int i = 0; i < points; ++i) {
    const double k = k_min * std::pow(k_max / k_min, static_cast<double>(i) / (points - 1));
    const double general =
        general_dispersion_solve(k, vacuum, metal, d.mu0, {1e-9 * w0, w0 * (1.0 - 1e-15)});
    out << k << ',' << general << ',' << drude_dispersion(k, w0, c0) << '\n';
  }
  if (!out) throw IoError("write failed");
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for weakly nonlinear surface plasmons"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string);

  std::string outdir = "splasmon-out";

  auto* run_cmd = app.add_subcommand("run", "run a configuration file");
  std::string config_path;
  Overrides run_over;
  run_cmd->add_option("config", config_path, "INI configuration")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--outdir", outdir, "output directory");
  run_over.add_to(run_cmd);

  auto* preset_cmd = app.add_subcommand("preset", "run a named experiment preset");
  std::string preset_name;
  Overrides preset_over;
  bool print_config = false;
  preset_cmd->add_option("name", preset_name, "preset name")->check(CLI::IsMember(preset_names()));
  preset_cmd->add_option("--outdir", outdir, "output directory");
  preset_cmd->add_flag("--print-config", print_config, "print the configuration and exit");
  bool list_presets = false;
  preset_cmd->add_flag("--list", list_presets, "list preset names");
  preset_over.add_to(preset_cmd);

  auto* conv_cmd = app.add_subcommand("converge", "resolution study of a preset or configuration");
  std::string conv_source;
  std::vector<int> resolutions;
  Overrides conv_over;
  conv_cmd->add_option("source", conv_source, "preset name or INI configuration")->required();
  conv_cmd->add_option("--resolutions", resolutions, "mode counts, ascending")->delimiter(',');
  conv_cmd->add_option("--outdir", outdir, "output directory");
  conv_over.add_to(conv_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the fast rhs with the direct sums");
  int oracle_modes = 8, oracle_seeds = 10;
  unsigned oracle_seed = 1;
  oracle_cmd->add_option("--modes", oracle_modes, "number of modes N")->check(CLI::Range(1, 64));
  oracle_cmd->add_option("--seeds", oracle_seeds, "number of random states")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", oracle_seed, "first seed");

  auto* disp_cmd = app.add_subcommand("dispersion", "write a dispersion curve CSV (k, omega)");
  std::string material = "unit-drude", material_file, disp_out;
  double k_min = 0.01, k_max = 100.0;
  int points = 200;
  disp_cmd->add_option("--material", material, "material preset")
      ->check(CLI::IsMember(material_preset_names()));
  disp_cmd->add_option("--material-file", material_file, "material key/value file")
      ->check(CLI::ExistingFile);
  disp_cmd->add_option("--k-min", k_min, "smallest wavenumber");
  disp_cmd->add_option("--k-max", k_max, "largest wavenumber");
  disp_cmd->add_option("--points", points, "number of log-spaced samples");
  disp_cmd->add_option("--out", disp_out, "CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_error;
  }

  try {
    if (*run_cmd) {
      auto c = parse_config_file(config_path);
      run_over.apply(c);
      return run_and_emit(c, outdir);
    }
    if (*preset_cmd) {
      if (list_presets) {
        for (const auto& name : preset_names()) std::printf("%s\n", name.c_str());
        return exit_ok;
      }
      if (preset_name.empty()) throw ConfigError("preset name required");
      auto c = preset(preset_name);
      preset_over.apply(c);
      if (print_config) {
        write_config(std::cout, c);
        return exit_ok;
      }
      return run_and_emit(c, outdir);
    }
    if (*conv_cmd) {
      const bool is_file = fs::exists(conv_source);
      auto c = is_file ? parse_config_file(conv_source) : preset(conv_source);
      conv_over.apply(c);
      if (resolutions.empty()) {
        resolutions = is_file ? std::vector<int>{c.n_modes} : preset_resolutions(conv_source);
      }
      const auto report = convergence_study(c, resolutions, outdir, worker_threads());
      bool blowup = false;
      for (std::size_t i = 0; i < report.runs.size(); ++i) {
        const auto& t = report.runs[i];
        blowup = blowup || t.status != RunStatus::completed;
        std::printf("N=%d: %s\n", report.resolutions[i], t.status_string().c_str());
      }
      for (const auto& d : report.deviations) {
        std::printf("N=%d vs N=%d: sup rel deviation max|A| %.3e, A-norm %.3e (tau <= %.4g)\n",
                    d.coarse, d.fine, d.max_abs_A, d.a_norm, d.tau_end);
      }
      return blowup ? exit_blowup : exit_ok;
    }
    if (*oracle_cmd) return oracle_check(oracle_modes, oracle_seeds, oracle_seed);
    if (*disp_cmd) {
      const auto m = material_file.empty() ? material_preset(material) : load_material(material_file);
      return dispersion_csv(m, k_min, k_max, points, disp_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "splasmon: %s\n", e.what());
    return exit_error;
  }
  return exit_error;
}
