#include "doctest.h"
#include "splasmon/diagnostics.hpp"
#include "splasmon/errors.hpp"
#include "splasmon/integrator.hpp"
#include "support.hpp"

using namespace splasmon;
using testing::Gen;
using testing::pi;

namespace {

const Complex I{0.0, 1.0};

SpectralField initial_u(int n) {
  return make_field(n, {{1, 1.0}, {2, 2.0 * std::exp(I * (4.0 * pi * pi))}}, FieldKind::plus);
}

// Test-side spatial Hamiltonian by quadrature on a fine grid; the nonlocal
// factors come from test-side convolutions.
double quadrature_hamiltonian(const SpectralField& u, const SpectralField& v, double alpha,
                              double beta, double nu) {
  const int n = u.n_modes();
  const int m = 4 * n;
  const auto inv_abs = [&](const std::map<int, Complex>& conv, int power) {
    SpectralField f(m);
    for (const auto& [k, c] : conv) {
      if (k != 0 && std::abs(k) <= m) f.set(k, c / std::pow(std::abs(k), power));
    }
    return f;
  };
  const auto up = resize_modes(u, m);
  const auto vp = resize_modes(v, m);
  const auto uu = inv_abs(testing::convolve(u, u), 1);
  const auto uvc = inv_abs(testing::convolve(u, conjugate(v)), 1);
  const auto vv = inv_abs(testing::convolve(v, v), 1);
  const auto u3 = abs_derivative(up, -3.0);
  const auto v3 = abs_derivative(vp, -3.0);
  const std::size_t points = 8 * static_cast<std::size_t>(m);
  const auto gu = sample_on_grid(up, points), gv = sample_on_grid(vp, points);
  const auto guu = sample_on_grid(uu, points), guvc = sample_on_grid(uvc, points),
             gvv = sample_on_grid(vv, points);
  const auto gu3 = sample_on_grid(u3, points), gv3 = sample_on_grid(v3, points);
  Complex sum{};
  for (std::size_t j = 0; j < points; ++j) {
    const Complex cu = std::conj(gu[j]), cv = std::conj(gv[j]);
    sum += 0.5 * alpha * cu * cu * guu[j] + beta * cu * gv[j] * guvc[j] +
           0.5 * alpha * cv * cv * gvv[j] + nu * (cu * gu3[j] + cv * gv3[j]);
  }
  return (sum * (2.0 * pi / static_cast<double>(points))).real();
}

DiagnosticsRecord with_a_norms(double tau, double au, double av) {
  DiagnosticsRecord r;
  r.tau = tau;
  r.a_norm_u = au;
  r.a_norm_v = av;
  return r;
}

}  // namespace

TEST_CASE("Hamiltonian values") {
  const auto c = coefficients_from_alpha_beta(1.0, 0.0);
  CHECK(hamiltonian(SpectralField(4, FieldKind::plus), SpectralField(4, FieldKind::minus), c) == 0.0);
  // (1/2) int (e^{-ix})^2 |d|^{-1} e^{2ix} dx = (1/2)(1/2) 2 pi.
  const auto e1 = make_field(4, {{1, 1.0}}, FieldKind::plus);
  CHECK(hamiltonian(e1, SpectralField(4, FieldKind::minus), c) == doctest::Approx(pi / 2));
}

TEST_CASE("Hamiltonian matches a quadrature of its integrand") {
  Gen gen(71);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = gen.integer(2, 8);
    const auto u = gen.field(n, FieldKind::plus);
    const auto v = gen.field(n, FieldKind::minus);
    const double alpha = gen.uniform(), beta = gen.uniform(), nu = gen.uniform();
    auto c = coefficients_from_alpha_beta(alpha, beta);
    c.nu = nu;
    CHECK(hamiltonian(u, v, c) ==
          doctest::Approx(quadrature_hamiltonian(u, v, alpha, beta, nu)).epsilon(1e-12));
  }
}

TEST_CASE("actions") {
  const auto u = initial_u(8);
  const auto [S, T] = actions(u, SpectralField(8, FieldKind::minus));
  CHECK(S == doctest::Approx(6 * pi));
  CHECK(T == 0.0);
  const auto rotated = std::exp(I * 0.9) * u;
  CHECK(actions(rotated, SpectralField(8, FieldKind::minus)).first == doctest::Approx(S));
  const auto [S2, T2] = actions(u, conjugate(u));
  CHECK(T2 == doctest::Approx(S2));
}

TEST_CASE("momentum") {
  const auto u = initial_u(8);
  CHECK(momentum(u, conjugate(u)) == doctest::Approx(0.0));
  CHECK(momentum(u, SpectralField(8, FieldKind::minus)) == doctest::Approx(10 * pi));
  CHECK(momentum(SpectralField(8, FieldKind::plus), SpectralField(8, FieldKind::minus)) == 0.0);
}

TEST_CASE("Szego quantities") {
  const auto u = initial_u(8);
  CHECK(szego_momentum(u) == doctest::Approx(2 * pi * (1 + 2 * 4)));
  // (1/2) int |e^{ix}|^4 = pi.
  CHECK(szego_hamiltonian(make_field(4, {{1, 1.0}}, FieldKind::plus)) == doctest::Approx(pi));
}

TEST_CASE("breakdown integral") {
  CHECK(breakdown_integral({}) == 0.0);
  const double c = 1.7;
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i <= 10; ++i) recs.push_back(with_a_norms(0.05 * i, c, c));
  CHECK(breakdown_integral(recs) == doctest::Approx(2 * c * c * 0.5));
  std::swap(recs[2], recs[3]);
  CHECK_THROWS_AS(breakdown_integral(recs), ParameterError);
}

TEST_CASE("breakdown integral of a single-mode run") {
  RunConfig cfg;
  cfg.kind = EquationKind::unidirectional;
  cfg.coeffs = coefficients_from_alpha_beta(1.0, 0.0);
  cfg.n_modes = 4;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.initial = {"", {{1, Complex(0.0, 1.5)}}, {}};
  const auto traj = run(cfg);
  CHECK(traj.samples.back().breakdown_integral == doctest::Approx(1.5 * 1.5 * 0.5).epsilon(1e-12));
  CHECK(breakdown_integral(traj.samples) == doctest::Approx(1.5 * 1.5 * 0.5).epsilon(1e-12));
}

TEST_CASE("diagnostics engine") {
  const auto u = initial_u(16);
  const State s{u, conjugate(u)};
  DiagnosticsEngine eng(EquationKind::bidirectional, coefficients_from_alpha_beta(1.0, 2.0), 16);
  const auto r = eng.compute(s, 0.25, 3.0);
  CHECK(r.tau == 0.25);
  CHECK(r.breakdown_integral == 3.0);
  CHECK(r.max_abs_A == doctest::Approx(5.6).epsilon(0.1 / 5.6));
  CHECK(r.a_norm() == doctest::Approx(6.0));
  CHECK(r.l2() == doctest::Approx(std::sqrt(20 * pi)));
  CHECK(r.action_S == doctest::Approx(6 * pi));
  CHECK(r.action_T == doctest::Approx(6 * pi));
  REQUIRE(r.sobolev.size() == 4);
  CHECK(r.sobolev[1].first == 0.0);
  CHECK(r.sobolev[1].second == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("damped linear flow decays the L2 norm exponentially") {
  RunConfig cfg;
  cfg.kind = EquationKind::bidirectional;
  cfg.coeffs = coefficients_from_alpha_beta(0.0, 0.0, 0.6, 0.0);
  cfg.n_modes = 8;
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  cfg.initial = {"random", {}, {}};
  cfg.seed = 9;
  const auto traj = run(cfg);
  const double l0 = traj.samples.front().l2_u;
  for (const auto& r : traj.samples) {
    CHECK(r.l2_u == doctest::Approx(l0 * std::exp(-0.6 * r.tau)).epsilon(1e-9));
  }
}
