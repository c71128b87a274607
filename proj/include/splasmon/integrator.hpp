#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splasmon/diagnostics.hpp"
#include "splasmon/dynamics.hpp"
#include "splasmon/errors.hpp"
#include "splasmon/spectral_field.hpp"

namespace splasmon {

struct ModeCoefficient {
  int k = 0;
  Complex value;
  bool operator==(const ModeCoefficient&) const = default;
};

using ModeList = std::vector<ModeCoefficient>;

/// Initial amplitudes: an optional named generator plus explicit modes added
/// on top of it.
///
/// Generators:
///   uv_ic   u = e^{ix} + 2 e^{2i(x + 2 pi^2)}, v = conj(u)
///   u_ic    same u, v = 0
///   random  smooth random data drawn from `seed` (spectrum ~ e^{-|k|/2})
struct InitialData {
  std::string generator;
  ModeList u;
  ModeList v;
  bool operator==(const InitialData&) const = default;
};

struct RunConfig {
  EquationKind kind = EquationKind::bidirectional;
  ModelCoefficients coeffs = coefficients_from_alpha_beta(1.0, 2.0);
  ModeList forcing_f;
  ModeList forcing_g;
  int n_modes = 2048;
  double dt = 1e-4;
  double t_end = 0.1;
  int sample_every = 10;
  /// Snapshot cadence in steps; 0 stores only the final state.
  int snapshot_every = 0;
  InitialData initial{"uv_ic", {}, {}};
  DealiasPolicy dealias;
  std::optional<unsigned> seed;
  /// Integration aborts when max |A| exceeds this value.
  double blowup_ceiling = 1e6;
  std::vector<double> sobolev = default_sobolev_indices();
  int surface_x = 512;
  int surface_t = 256;

  bool operator==(const RunConfig&) const = default;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
  long steps() const;
  EquationVariant variant() const;
  State initial_state() const;
};

/// Time step heuristic: 1e-4 at N = 2^11, scaled by 2^11 / N and capped at 1e-3.
double default_dt(int n_modes);

/// Builds the modes of a generator (without truncation).
std::pair<ModeList, ModeList> generator_modes(const std::string& name,
                                              std::optional<unsigned> seed);

/// Zeroes all |k| > n_keep; the field keeps its resolution.
SpectralField galerkin_truncate(const SpectralField& a, int n_keep);

/// Classical four-stage Runge-Kutta step of the joint (u, v) state.
/// Throws BlowUpError if any stage becomes non-finite.
State rk4_step(const State& s, double dt, double tau,
               const std::function<State(const State&, double)>& rhs);

/// The RK4 update dt*(k1 + 2 k2 + 2 k3 + k4)/6 without adding it to s.
State rk4_increment(const State& s, double dt, double tau,
                    const std::function<State(const State&, double)>& rhs);

bool all_finite(const State& s);

struct Snapshot {
  double tau = 0.0;
  State state;
};

/// |A| sampled on surface_x points for a set of tau slices.
struct SurfaceData {
  int x_points = 0;
  std::vector<double> taus;
  std::vector<std::vector<double>> abs_values;
};

enum class RunStatus { completed, blow_up, error };

struct Trajectory {
  RunConfig config;
  std::vector<DiagnosticsRecord> samples;
  std::vector<Snapshot> snapshots;
  SurfaceData surface;
  RunStatus status = RunStatus::completed;
  double failure_tau = 0.0;
  std::string message;
  long steps_taken = 0;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;

  std::string status_string() const;
};

using SampleObserver = std::function<void(const DiagnosticsRecord&)>;

/// Integrates from tau = 0 to t_end. Blow-up (non-finite values or max |A|
/// above the ceiling) ends the run early with status blow_up; the partial
/// trajectory is returned.
Trajectory run(const RunConfig& config, const SampleObserver& observer = {});

}  // namespace splasmon
