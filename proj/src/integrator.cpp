#include "splasmon/integrator.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace splasmon {

namespace {

SpectralField field_from_modes(const ModeList& modes, int n_modes, FieldKind kind) {
  SpectralField out(n_modes, kind);
  for (const auto& [k, value] : modes) {
    if (k == 0) throw ConfigError("initial data: mode k = 0 is not allowed (zero-mean fields)");
    if (std::abs(k) > n_modes) continue;  // Galerkin truncation to the run resolution
    try {
      out.set(k, out[k] + value);
    } catch (const TypeViolation&) {
      throw ConfigError("initial data: mode " + std::to_string(k) + " has the wrong sign for a " +
                        to_string(kind) + "-type field");
    }
  }
  return out;
}

double a_norm_squared_sum(const State& s) {
  const double au = a_norm(s.u);
  const double av = a_norm(s.v);
  return au * au + av * av;
}

}  // namespace

double default_dt(int n_modes) {
  return std::min(1e-3, 1e-4 * 2048.0 / static_cast<double>(n_modes));
}

std::pair<ModeList, ModeList> generator_modes(const std::string& name,
                                              std::optional<unsigned> seed) {
  if (name.empty()) return {};
  if (name == "uv_ic" || name == "u_ic") {
    // 2 e^{2i(x + 2 pi^2)} = 2 e^{4 pi^2 i} e^{2ix}
    const Complex c2 = 2.0 * std::exp(Complex(0.0, 4.0 * std::numbers::pi * std::numbers::pi));
    ModeList u{{1, Complex(1.0, 0.0)}, {2, c2}};
    ModeList v;
    if (name == "uv_ic") {
      for (const auto& m : u) v.push_back({-m.k, std::conj(m.value)});
    }
    return {u, v};
  }
  if (name == "random" || name == "random_u") {
    std::mt19937 rng(seed.value_or(0));
    std::normal_distribution<double> normal(0.0, 1.0);
    ModeList u, v;
    for (int k = 1; k <= 32; ++k) {
      const double amp = std::exp(-0.5 * k);
      u.push_back({k, amp * Complex(normal(rng), normal(rng))});
      if (name == "random") v.push_back({-k, amp * Complex(normal(rng), normal(rng))});
    }
    return {u, v};
  }
  throw ConfigError("unknown initial-data generator '" + name +
                    "' (expected uv_ic, u_ic, random or random_u)");
}

void RunConfig::validate() const {
  if (n_modes <= 0) throw ConfigError("modes must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (sample_every <= 0) throw ConfigError("sample_every must be positive");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
  if (!(blowup_ceiling > 0.0)) throw ConfigError("blowup_ceiling must be positive");
  if (surface_x < 0 || surface_t < 0 || surface_t == 1) {
    throw ConfigError("surface_x must be >= 0 and surface_t must be 0 or >= 2");
  }
  if (!(dealias.pad_factor >= 1.0)) throw ConfigError("dealias pad_factor must be >= 1");
  if (kind != EquationKind::bidirectional && (!initial.v.empty() || initial.generator == "uv_ic" ||
                                              initial.generator == "random")) {
    throw ConfigError(to_string(kind) + " runs take no v initial data");
  }
  if (kind == EquationKind::szego && (!forcing_f.empty() || !forcing_g.empty())) {
    throw ConfigError("szego runs cannot be forced");
  }
  if (kind == EquationKind::unidirectional && !forcing_g.empty()) {
    throw ConfigError("unidirectional runs cannot have forcing g");
  }
  (void)variant();
  (void)initial_state();
}

long RunConfig::steps() const { return std::max(1L, std::lround(t_end / dt)); }

EquationVariant RunConfig::variant() const {
  EquationVariant v{kind, coeffs, std::nullopt};
  if (!forcing_f.empty() || !forcing_g.empty()) {
    v.forcing = Forcing{field_from_modes(forcing_f, n_modes, FieldKind::plus),
                        field_from_modes(forcing_g, n_modes, FieldKind::minus)};
  }
  return v;
}

State RunConfig::initial_state() const {
  auto [gu, gv] = generator_modes(initial.generator, seed);
  gu.insert(gu.end(), initial.u.begin(), initial.u.end());
  gv.insert(gv.end(), initial.v.begin(), initial.v.end());
  return {field_from_modes(gu, n_modes, FieldKind::plus),
          field_from_modes(gv, n_modes, FieldKind::minus)};
}

SpectralField galerkin_truncate(const SpectralField& a, int n_keep) {
  if (n_keep < 1 || n_keep > a.n_modes()) {
    throw ParameterError("galerkin_truncate: need 1 <= N' <= " + std::to_string(a.n_modes()) +
                         ", got " + std::to_string(n_keep));
  }
  SpectralField out = a;
  out.transform_modes([n_keep](int k, Complex c) { return std::abs(k) > n_keep ? Complex{} : c; });
  return out;
}

bool all_finite(const State& s) {
  const auto finite = [](const SpectralField& f) {
    return std::all_of(f.coefficients().begin(), f.coefficients().end(), [](Complex c) {
      return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
  };
  return finite(s.u) && finite(s.v);
}

State rk4_increment(const State& s, double dt, double tau,
                    const std::function<State(const State&, double)>& rhs) {
  if (!(dt > 0.0)) throw ParameterError("rk4_step: dt must be positive");
  const auto checked = [tau](State k) {
    if (!all_finite(k)) throw BlowUpError(tau, "non-finite values in Runge-Kutta stage");
    return k;
  };
  const State k1 = checked(rhs(s, tau));
  State tmp = s;
  tmp.add_scaled(0.5 * dt, k1);
  const State k2 = checked(rhs(tmp, tau + 0.5 * dt));
  tmp = s;
  tmp.add_scaled(0.5 * dt, k2);
  const State k3 = checked(rhs(tmp, tau + 0.5 * dt));
  tmp = s;
  tmp.add_scaled(dt, k3);
  const State k4 = checked(rhs(tmp, tau + dt));

  State inc = k1;
  inc.u *= Complex(dt / 6.0);
  inc.v *= Complex(dt / 6.0);
  inc.add_scaled(dt / 3.0, k2);
  inc.add_scaled(dt / 3.0, k3);
  inc.add_scaled(dt / 6.0, k4);
  return inc;
}

State rk4_step(const State& s, double dt, double tau,
               const std::function<State(const State&, double)>& rhs) {
  State out = s;
  out.add_scaled(1.0, rk4_increment(s, dt, tau, rhs));
  if (!all_finite(out)) throw BlowUpError(tau + dt, "non-finite values after Runge-Kutta step");
  return out;
}

std::string Trajectory::status_string() const {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blow_up: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "blow-up at tau=%.6g", failure_tau);
      return buf;
    }
    case RunStatus::error: break;
  }
  return "error: " + message;
}

Trajectory run(const RunConfig& config, const SampleObserver& observer) {
  config.validate();
  Trajectory traj;
  traj.config = config;
  traj.started = std::chrono::system_clock::now();

  const int n = config.n_modes;
  State state = config.initial_state();
  RhsEvaluator eval(config.variant(), n, config.dealias);
  DiagnosticsEngine diag(config.kind, config.coeffs, n, config.dealias, config.sobolev);
  const auto rhs = [&eval](const State& s, double t) { return eval(s, t); };

  const long steps = config.steps();
  // Surface slices at the steps nearest to surface_t equispaced times.
  std::vector<long> surface_steps;
  if (config.surface_t >= 2 && config.surface_x > 0) {
    for (int j = 0; j < config.surface_t; ++j) {
      const long st = std::lround(static_cast<double>(j) * static_cast<double>(steps) /
                                  static_cast<double>(config.surface_t - 1));
      if (surface_steps.empty() || st > surface_steps.back()) surface_steps.push_back(st);
    }
  }
  std::size_t next_surface = 0;
  traj.surface.x_points = surface_steps.empty() ? 0 : config.surface_x;

  double breakdown = 0.0;
  double prev_integrand = a_norm_squared_sum(state);

  const auto record = [&](double tau) {
    traj.samples.push_back(diag.compute(state, tau, breakdown));
    if (observer) observer(traj.samples.back());
  };
  const auto surface_slice = [&](double tau) {
    const auto values = sample_on_grid(state.combined(), static_cast<std::size_t>(config.surface_x));
    std::vector<double> mags(values.size());
    std::transform(values.begin(), values.end(), mags.begin(), [](Complex z) { return std::abs(z); });
    traj.surface.taus.push_back(tau);
    traj.surface.abs_values.push_back(std::move(mags));
  };

  record(0.0);
  if (!surface_steps.empty()) {
    surface_slice(0.0);
    next_surface = 1;
  }
  if (config.snapshot_every > 0) traj.snapshots.push_back({0.0, state});

  State carry = State::zero(n);
  bool final_snapshot_taken = false;
  for (long step = 1; step <= steps; ++step) {
    const double tau_prev = static_cast<double>(step - 1) * config.dt;
    const double tau = static_cast<double>(step) * config.dt;
    try {
      const State inc = rk4_increment(state, config.dt, tau_prev, rhs);
      state.u.add_compensated(inc.u, carry.u);
      state.v.add_compensated(inc.v, carry.v);
      if (!all_finite(state)) {
        throw BlowUpError(tau, "non-finite values after Runge-Kutta step");
      }
    } catch (const BlowUpError& e) {
      traj.status = RunStatus::blow_up;
      traj.failure_tau = e.tau();
      traj.message = e.what();
      break;
    } catch (const Error& e) {
      traj.status = RunStatus::error;
      traj.failure_tau = tau_prev;
      traj.message = e.what();
      break;
    }
    traj.steps_taken = step;

    const double integrand = a_norm_squared_sum(state);
    breakdown += 0.5 * config.dt * (prev_integrand + integrand);
    prev_integrand = integrand;

    if (a_norm(state.u) + a_norm(state.v) > config.blowup_ceiling &&
        diag.max_abs(state) > config.blowup_ceiling) {
      record(tau);
      traj.status = RunStatus::blow_up;
      traj.failure_tau = tau;
      traj.message = "max |A| exceeded the blow-up ceiling";
      break;
    }

    if (step % config.sample_every == 0 || step == steps) record(tau);
    if (next_surface < surface_steps.size() && surface_steps[next_surface] == step) {
      surface_slice(tau);
      ++next_surface;
    }
    if (config.snapshot_every > 0 && step % config.snapshot_every == 0) {
      traj.snapshots.push_back({tau, state});
      final_snapshot_taken = step == steps;
    }
  }
  if (traj.status == RunStatus::completed && !final_snapshot_taken) {
    traj.snapshots.push_back({static_cast<double>(steps) * config.dt, state});
  }
  traj.finished = std::chrono::system_clock::now();
  return traj;
}

}  // namespace splasmon
