// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: splasmon-acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "splasmon/config.hpp"
#include "splasmon/diagnostics.hpp"
#include "splasmon/dynamics.hpp"
#include "splasmon/integrator.hpp"
#include "splasmon/model.hpp"
#include "splasmon/oracle.hpp"
#include "splasmon/outputs.hpp"
#include "support.hpp"

using namespace splasmon;
using testing::Gen;

namespace {

const Complex I{0.0, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_rel_drift(const std::vector<DiagnosticsRecord>& recs,
                     const std::function<double(const DiagnosticsRecord&)>& q,
                     const std::function<double(const DiagnosticsRecord&)>& scale) {
  const double q0 = q(recs.front());
  const double s = scale(recs.front());
  double worst = 0.0;
  for (const auto& r : recs) worst = std::max(worst, std::abs(q(r) - q0) / s);
  return worst;
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Gen gen(2024);
  struct Tuple {
    double a, b, gamma, nu;
  };
  std::vector<Tuple> tuples;
  for (int i = 0; i < 5; ++i) {
    tuples.push_back({gen.uniform(), gen.uniform(), gen.uniform(0.0, 1.0), gen.uniform(-2.0, 2.0)});
  }
  double worst = 0.0;
  for (int n : {4, 8, 16}) {
    for (int s = 0; s < 50; ++s) {
      const auto a = gen.field(n, FieldKind::mixed, s % 2 == 0);
      const auto u = project_plus(a);
      const auto v = project_minus(a);
      for (const auto& t : tuples) {
        auto c = coefficients_from_ab(t.a, t.b);
        c.gamma = t.gamma;
        c.nu = t.nu;
        const auto fast = rhs_bidirectional(u, v, c);
        const auto brute = oracle::rhs_spectral_brute(a, t.a, t.b, t.gamma, t.nu);
        worst = std::max(worst, testing::rel_diff(fast.u + fast.v, brute));
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-12 && secs < 5.0,
          fmt("max rel deviation %.2e (limit 1e-12), %.2f s (limit 5 s)", worst, secs)};
}

Outcome commutator_identity() {
  Gen gen(77);
  const auto c = coefficients_from_alpha_beta(1.0, 0.0);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto u = gen.field(32, FieldKind::plus);
    worst = std::max(worst, testing::rel_diff(rhs_unidirectional_commutator_form(u),
                                              rhs_unidirectional(u, c)));
  }
  return {worst <= 1e-12, fmt("max rel deviation %.2e (limit 1e-12)", worst)};
}

Outcome hamiltonian_gradient() {
  Gen gen(5);
  const int n = 6;
  const double h = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = gen.field(n);
    const double ca = gen.uniform(), cb = gen.uniform(), nu = gen.uniform();
    const auto rhs = oracle::rhs_spectral_brute(a, ca, cb, 0.0, nu);
    for (int k = -n; k <= n; ++k) {
      if (k == 0) continue;
      const auto shifted = [&](Complex d) {
        auto b = a;
        b.set(k, a[k] + d);
        return oracle::hamiltonian_brute(b, ca, cb, nu);
      };
      const Complex grad = 0.5 * Complex((shifted(h) - shifted(-h)) / (2 * h),
                                         (shifted(I * h) - shifted(-I * h)) / (2 * h));
      const Complex expected = rhs[k] / (I * static_cast<double>(std::abs(k)));
      worst = std::max(worst, std::abs(grad - expected) / std::max(1.0, std::abs(expected)));
    }
  }
  return {worst <= 1e-5, fmt("max rel deviation %.2e (limit 1e-5)", worst)};
}

Outcome conservation() {
  auto base = preset("fig-uv");
  base.coeffs.gamma = 0.0;
  base.coeffs.nu = 0.0;
  base.n_modes = 1 << 10;
  base.t_end = 0.3;
  base.surface_t = 0;

  struct Drifts {
    double H, S, T, P;
  };
  const auto measure = [&](double dt) {
    auto c = base;
    c.dt = dt;
    c.sample_every = static_cast<int>(std::lround(0.01 / dt));
    const auto traj = run(c);
    const auto& r = traj.samples;
    const auto self = [](auto f) {
      return [f](const DiagnosticsRecord& x) { return std::abs(f(x)); };
    };
    const auto H = [](const DiagnosticsRecord& x) { return x.hamiltonian; };
    const auto S = [](const DiagnosticsRecord& x) { return x.action_S; };
    const auto T = [](const DiagnosticsRecord& x) { return x.action_T; };
    const auto P = [](const DiagnosticsRecord& x) { return x.momentum_P; };
    // P vanishes for this data; its drift is measured against the total mass.
    const auto mass = [](const DiagnosticsRecord& x) { return x.l2_u * x.l2_u + x.l2_v * x.l2_v; };
    return Drifts{max_rel_drift(r, H, self(H)), max_rel_drift(r, S, self(S)),
                  max_rel_drift(r, T, self(T)), max_rel_drift(r, P, mass)};
  };
  const Drifts d1 = measure(1e-4);
  const Drifts d2 = measure(5e-5);

  bool ok = true;
  std::string detail;
  const auto judge = [&](const char* name, double a, double b) {
    const double ratio = b > 0.0 ? a / b : (a > 0.0 ? INFINITY : 0.0);
    const bool pass = a <= 1e-6 && ratio >= 10.0;
    ok = ok && pass;
    detail += fmt("%s %.2e->%.2e (x%.1f)%s; ", name, a, b, ratio, pass ? "" : " FAIL");
  };
  judge("H", d1.H, d2.H);
  judge("S", d1.S, d2.S);
  judge("T", d1.T, d2.T);
  judge("P", d1.P, d2.P);

  auto uni = preset("fig-u");
  uni.n_modes = 256;
  uni.dt = 1e-4;
  uni.t_end = 1.0;
  uni.sample_every = 100;
  uni.surface_t = 0;
  const auto traj = run(uni);
  const auto L2sq = [](const DiagnosticsRecord& x) { return x.l2_u * x.l2_u; };
  const double l2_drift = max_rel_drift(traj.samples, L2sq, L2sq);
  const bool l2_ok = traj.status == RunStatus::completed && l2_drift <= 1e-8;
  ok = ok && l2_ok;
  detail += fmt("unidirectional L2 %.2e (limit 1e-8)", l2_drift);
  return {ok, detail};
}

Outcome focusing() {
  auto base = preset("fig-uv");
  base.t_end = 0.8;
  base.surface_t = 0;
  base.sample_every = 1000;
  std::vector<double> finals;
  double initial = 0.0;
  bool completed = true;
  for (int n : {1 << 11, 1 << 12, 1 << 13}) {
    auto c = base;
    c.n_modes = n;
    const auto traj = run(c);
    completed = completed && traj.status == RunStatus::completed;
    finals.push_back(traj.samples.back().max_abs_A);
    if (n == 1 << 12) initial = traj.samples.front().max_abs_A;
  }
  const double growth = finals[1] / initial;
  const bool initial_ok = std::abs(initial - 5.6) <= 0.1;
  const bool growth_ok = growth > 10.0;
  const bool monotone = finals[0] <= finals[1] && finals[1] <= finals[2];
  return {completed && initial_ok && growth_ok && monotone,
          fmt("sup(0)=%.4f (5.6+-0.1)%s; sup(0.8)/sup(0)=%.2f at N=2^12 (need >10)%s; "
              "sup(0.8) over N=2^11,2^12,2^13: %.3f, %.3f, %.3f%s",
              initial, initial_ok ? "" : " FAIL", growth, growth_ok ? "" : " FAIL", finals[0],
              finals[1], finals[2], monotone ? "" : " FAIL")};
}

Outcome unidirectional_convergence() {
  auto c = preset("fig-u");
  c.surface_t = 0;
  const auto report = convergence_study(c, preset_resolutions("fig-u"), {}, worker_threads());
  bool finite = true;
  for (const auto& t : report.runs) finite = finite && t.status == RunStatus::completed;
  const double dev = report.deviations.at(0).a_norm;
  double peak = 0.0;
  for (const auto& r : report.runs.back().samples) peak = std::max(peak, r.a_norm());
  return {finite && dev <= 0.01,
          fmt("A-norm sup deviation N=2^12 vs 2^14: %.2e (limit 1e-2) over tau in [0, %.2f], "
              "peak A-norm %.3f, %s",
              dev, c.t_end, peak, finite ? "no blow-up" : "blow-up FAIL")};
}

Outcome szego_contrast() {
  auto c = preset("fig-szego");
  c.surface_t = 0;
  c.sample_every = 20;
  const auto traj = run(c);
  const auto L2sq = [](const DiagnosticsRecord& x) { return x.l2_u * x.l2_u; };
  const auto mom = [](const DiagnosticsRecord& x) { return x.szego_momentum; };
  const double l2 = max_rel_drift(traj.samples, L2sq, L2sq);
  const double m = max_rel_drift(traj.samples, mom, mom);
  double peak = 0.0;
  for (const auto& r : traj.samples) peak = std::max(peak, r.max_abs_A);
  const double ratio = peak / traj.samples.front().max_abs_A;
  const bool ok = traj.status == RunStatus::completed && c.t_end >= 1.0 && l2 <= 1e-8 &&
                  m <= 1e-8 && ratio < 3.0;
  return {ok, fmt("L2 drift %.2e, H^1/2 momentum drift %.2e (limit 1e-8); max sup/sup(0) %.3f "
                  "(limit 3)",
                  l2, m, ratio)};
}

Outcome dispersion() {
  const DrudeSpec drude{std::sqrt(2.0), 1.0, 1.0, 0.0};
  const double w0 = drude.omega0(), c0 = drude.c0();
  const Permittivity vacuum = [&](double) { return drude.eps0; };
  const Permittivity metal = [&](double w) {
    return drude.eps0 * (1.0 - drude.omega_p * drude.omega_p / (w * w));
  };
  double worst = 0.0;
  for (double k : {0.1, 1.0, 10.0, 100.0}) {
    const double general =
        general_dispersion_solve(k, vacuum, metal, drude.mu0, {1e-9 * w0, w0 * (1.0 - 1e-15)});
    worst = std::max(worst, std::abs(general - drude_dispersion(k, w0, c0)));
  }
  const double nu = coefficients_from_materials(drude_material(drude)).nu;
  bool asym = true;
  std::string detail = fmt("closed form vs root finder %.2e (limit 1e-10); nu=%.6g", worst, nu);
  for (double k : {10.0, 100.0}) {
    const double err = std::abs(drude_dispersion(k, w0, c0) - (w0 - nu / (k * k)));
    asym = asym && err <= 1.0 / std::pow(k, 4);
    detail += fmt("; k=%g asymptote error %.2e (limit %.0e)", k, err, 1.0 / std::pow(k, 4));
  }
  return {worst <= 1e-10 && asym, detail};
}

Outcome linear_terms() {
  RunConfig c;
  c.kind = EquationKind::bidirectional;
  c.n_modes = 16;
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.initial = {"random", {}, {}};
  c.seed = 3;
  c.surface_t = 0;
  c.sample_every = 1000;

  c.coeffs = coefficients_from_alpha_beta(0.0, 0.0, 1.0, 0.0);
  const State s0 = c.initial_state();
  const auto decayed = run(c).snapshots.back().state;
  double decay_err = 0.0;
  const double factor = std::exp(-1.0);
  for (int k = 1; k <= c.n_modes; ++k) {
    decay_err = std::max(decay_err, std::abs(decayed.u[k] - factor * s0.u[k]));
    decay_err = std::max(decay_err, std::abs(decayed.v[-k] - factor * s0.v[-k]));
  }

  c.coeffs = coefficients_from_alpha_beta(0.0, 0.0, 0.0, 1.0);
  const auto rotated = run(c).snapshots.back().state;
  double phase_err = 0.0;
  for (int k = 1; k <= c.n_modes; ++k) {
    // A_k(tau) = A_k(0) exp(-i omega tau) with omega = -nu / k^2.
    const double omega = -1.0 / (k * k);
    const Complex ru = rotated.u[k] / s0.u[k] * std::exp(I * omega * c.t_end);
    const Complex rv = rotated.v[-k] / s0.v[-k] * std::exp(I * omega * c.t_end);
    phase_err = std::max({phase_err, std::abs(std::arg(ru)), std::abs(std::arg(rv))});
  }
  return {decay_err <= 1e-10 && phase_err <= 1e-8,
          fmt("decay error %.2e (limit 1e-10); phase error %.2e (limit 1e-8)", decay_err,
              phase_err)};
}

Outcome cp_symmetry() {
  auto c = preset("fig-u");
  c.t_end = 0.1;
  c.surface_t = 0;
  c.sample_every = 1000;
  const auto forward = run(c);

  auto mirrored = c;
  mirrored.coeffs = cp_flipped(c.coeffs);
  const State s0 = cp_transform(c.initial_state());
  mirrored.initial = {"", {}, {}};
  for (int k = 1; k <= c.n_modes; ++k) {
    if (s0.u[k] != Complex{}) mirrored.initial.u.push_back({k, s0.u[k]});
  }
  const auto backward = run(mirrored);

  const auto expected = cp_transform(forward.snapshots.back().state.u);
  const auto got = backward.snapshots.back().state.u;
  const double err = testing::rel_diff(got, expected);
  const bool ok = forward.status == RunStatus::completed &&
                  backward.status == RunStatus::completed && err <= 1e-8;
  return {ok, fmt("max rel deviation at tau=%.2f: %.2e (limit 1e-8)", c.t_end, err)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*check)();
};

const Criterion criteria[] = {
    {1, "oracle equivalence", oracle_equivalence},
    {2, "commutator identity", commutator_identity},
    {3, "Hamiltonian gradient", hamiltonian_gradient},
    {4, "conservation", conservation},
    {5, "focusing", focusing},
    {6, "unidirectional convergence", unidirectional_convergence},
    {7, "Szego contrast", szego_contrast},
    {8, "dispersion relations", dispersion},
    {9, "linear terms", linear_terms},
    {10, "CP symmetry", cp_symmetry},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
