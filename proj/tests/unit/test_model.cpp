#include <cmath>
#include <fstream>
#include <filesystem>

#include "doctest.h"
#include "splasmon/errors.hpp"
#include "splasmon/model.hpp"
#include "support.hpp"

using namespace splasmon;
using testing::Gen;

namespace {

int sign(double x) { return x > 0 ? 1 : -1; }

// First and second terms of T, evaluated separately.
double t_first(double k1, double k2, double k3, double k4) {
  return 2.0 * (k1 * k3 + std::abs(k1 * k3)) * (k2 * k4 + std::abs(k2 * k4));
}
double t_second(double k1, double k2, double k3, double k4) {
  return (k1 * k2 - std::abs(k1 * k2)) * (k3 * k4 - std::abs(k3 * k4));
}

}  // namespace

TEST_CASE("interaction_T values") {
  const double a = 0.3;
  const double b = -0.7;
  CHECK(interaction_T(1, 1, 1, 1, a, b) == doctest::Approx(2 * a));
  CHECK(interaction_T(1, 1, -1, 3, a, b) == 0.0);
  CHECK(interaction_T(1, -1, 1, -1, a, b) == doctest::Approx(2 * a + b));
  CHECK_THROWS_AS(interaction_T(0, 1, 1, 1, a, b), ModeError);
  CHECK_THROWS_AS(interaction_T(1, 1, 1, 0, a, b), ModeError);
}

TEST_CASE("interaction_T_sym values") {
  const double a = 0.25;
  const double b = 0.4;
  CHECK(interaction_T_sym(1, 1, 1, 1, a, b) == doctest::Approx(2 * a));
  CHECK(interaction_T_sym(3, -1, 1, 1, a, b) == doctest::Approx(interaction_T(3, -1, 1, 1, a, b)));
  Gen gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double k1 = gen.wavenumber(9), k2 = gen.wavenumber(9), k3 = gen.wavenumber(9),
                 k4 = gen.wavenumber(9);
    const double s = interaction_T_sym(k1, k2, k3, k4, a, b);
    CHECK(s == doctest::Approx(interaction_T_sym(k2, k1, k3, k4, a, b)));
    CHECK(s == doctest::Approx(interaction_T_sym(k1, k2, k4, k3, a, b)));
    CHECK(s == doctest::Approx(interaction_T_sym(k3, k4, k1, k2, a, b)));
  }
}

TEST_CASE("interaction_T is even under a global sign flip") {
  Gen gen(32);
  for (int trial = 0; trial < 200; ++trial) {
    const double k1 = gen.wavenumber(12), k2 = gen.wavenumber(12), k3 = gen.wavenumber(12),
                 k4 = gen.wavenumber(12);
    const double a = gen.uniform(), b = gen.uniform();
    CHECK(interaction_T(-k1, -k2, -k3, -k4, a, b) ==
          doctest::Approx(interaction_T(k1, k2, k3, k4, a, b)));
  }
}

TEST_CASE("interaction_T sign selection") {
  Gen gen(33);
  for (int trial = 0; trial < 300; ++trial) {
    const double k1 = gen.wavenumber(10), k2 = gen.wavenumber(10), k3 = gen.wavenumber(10),
                 k4 = gen.wavenumber(10);
    if (k1 * k3 < 0 || k2 * k4 < 0) CHECK(t_first(k1, k2, k3, k4) == 0.0);
    if (k1 * k2 > 0 || k3 * k4 > 0) CHECK(t_second(k1, k2, k3, k4) == 0.0);
    // a-only and b-only kernels vanish exactly where their term does.
    if (t_first(k1, k2, k3, k4) == 0.0) CHECK(interaction_T(k1, k2, k3, k4, 1.0, 0.0) == 0.0);
    if (t_second(k1, k2, k3, k4) == 0.0) CHECK(interaction_T(k1, k2, k3, k4, 0.0, 1.0) == 0.0);
    if (sign(k1) == sign(k3) && sign(k2) == sign(k4)) {
      CHECK(interaction_T(k1, k2, k3, k4, 1.0, 0.0) != 0.0);
    }
  }
}

TEST_CASE("interaction_T on the all-positive resonant manifold") {
  Gen gen(34);
  const double a = 0.6;
  for (int trial = 0; trial < 100; ++trial) {
    const int k3 = gen.integer(1, 20), k4 = gen.integer(1, 20);
    const int k1 = gen.integer(1, k3 + k4 - 1);
    const int k2 = k3 + k4 - k1;
    CHECK(interaction_T(k1, k2, k3, k4, a, 0.9) == doctest::Approx(2 * a * 2.0 / (k3 + k4)));
  }
}

TEST_CASE("Drude coefficients in dimensionless units") {
  // omega_p = sqrt(2) gives omega0 = c0 = 1.
  const DrudeSpec d{std::sqrt(2.0), 1.0, 1.0, 0.0};
  CHECK(d.omega0() == doctest::Approx(1.0));
  CHECK(d.c0() == doctest::Approx(1.0));
  const auto m = drude_material(d);
  CHECK(m.eps_r_plus == doctest::Approx(1.0));
  CHECK(m.eps_r_minus == doctest::Approx(-1.0));
  CHECK(m.eps_r_prime_plus == 0.0);
  CHECK(m.eps_r_prime_minus == doctest::Approx(4.0));
  const auto c = coefficients_from_materials(m);
  CHECK(c.nu == doctest::Approx(0.25));
  CHECK(c.gamma == 0.0);

  const double gd = 0.03;
  const auto damped = coefficients_from_materials(drude_material({std::sqrt(2.0), 1.0, 1.0, gd}));
  CHECK(damped.gamma == doctest::Approx(gd / 2));
}

TEST_CASE("material coefficients") {
  MaterialSpec m;
  m.eps_r_plus = 1.0;
  m.eps_r_minus = -1.0;
  m.eps_r_prime_minus = 4.0;
  m.chi_plus_a = 0.0;
  m.chi_plus_b = 0.0;
  m.chi_minus_a = 0.8;
  m.chi_minus_b = -0.3;
  const auto c = coefficients_from_materials(m);
  CHECK(c.alpha == doctest::Approx(4 * c.a));
  CHECK(c.beta == doctest::Approx(4 * (c.a + c.b)));
  // Vacuum above: b / a = chi_b / chi_a of the lower medium.
  CHECK(c.b / c.a == doctest::Approx(m.chi_minus_b / m.chi_minus_a));

  MaterialSpec bad = m;
  bad.eps_r_plus = 2.0;
  CHECK_THROWS_AS(validate(bad), ParameterError);
  bad = m;
  bad.eps_r_prime_minus = 0.0;
  CHECK_THROWS_AS(coefficients_from_materials(bad), ParameterError);
}

TEST_CASE("coefficients from alpha and beta") {
  const auto c = coefficients_from_alpha_beta(1.0, 2.0, 0.1, -1.0);
  CHECK(c.a == doctest::Approx(0.25));
  CHECK(c.b == doctest::Approx(0.25));
  CHECK(c.gamma == 0.1);
  CHECK(c.nu == -1.0);
  CHECK(coefficients_from_ab(0.25, 0.25) == coefficients_from_alpha_beta(1.0, 2.0));
}

TEST_CASE("drude_dispersion values") {
  CHECK(drude_dispersion(0.0, 1.0, 1.0) == 0.0);
  CHECK(drude_dispersion(1.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-14));
  CHECK(drude_dispersion(1.0, 1.0, 1.0) == doctest::Approx(0.7653669).epsilon(1e-7));
  const double w10 = drude_dispersion(10.0, 1.0, 1.0);
  CHECK(w10 == doctest::Approx(0.9974969).epsilon(1e-7));
  CHECK(std::abs(w10 - (1.0 - 0.25 / 100.0)) <= 1e-4);
}

TEST_CASE("drude_dispersion is increasing and below omega0") {
  Gen gen(35);
  for (int trial = 0; trial < 50; ++trial) {
    const double w0 = gen.uniform(0.5, 3.0), c0 = gen.uniform(0.5, 3.0);
    double prev = 0.0;
    for (double k = 0.01; k < 1e4; k *= 1.7) {
      const double w = drude_dispersion(k, w0, c0);
      CHECK(w > prev);
      CHECK(w < w0);
      prev = w;
    }
  }
}

TEST_CASE("general_dispersion_solve agrees with the Drude closed form") {
  const Permittivity vacuum = [](double) { return 1.0; };
  const Permittivity metal = [](double w) { return 1.0 - 2.0 / (w * w); };
  for (double k : {0.1, 1.0, 10.0, 100.0}) {
    const double w = general_dispersion_solve(k, vacuum, metal, 1.0, {1e-9, 1.0 - 1e-15});
    CHECK(std::abs(w - drude_dispersion(k, 1.0, 1.0)) <= 1e-10);
  }
  const double w01 = general_dispersion_solve(0.1, vacuum, metal, 1.0, {1e-9, 1.0 - 1e-15});
  CHECK(w01 == doctest::Approx(0.1).epsilon(0.01));

  CHECK_THROWS_AS(general_dispersion_solve(1.0, vacuum, metal, 1.0, {0.9, 0.95}), ParameterError);
  const Permittivity broken = [](double) { return std::nan(""); };
  CHECK_THROWS_AS(general_dispersion_solve(1.0, vacuum, broken, 1.0, {0.1, 0.9}), ParameterError);
}

TEST_CASE("material presets and files") {
  const auto names = material_preset_names();
  CHECK(std::find(names.begin(), names.end(), "unit-drude") != names.end());
  const auto unit = coefficients_from_preset(material_preset("unit-drude"));
  CHECK(unit.nu == doctest::Approx(0.25));
  CHECK_THROWS_AS(material_preset("adamantium"), ParameterError);

  const auto path = std::filesystem::temp_directory_path() / "splasmon_material_test.ini";
  {
    std::ofstream out(path);
    out << "[material]\nbase = unit-drude\ngamma_d = 0.2\nb = 0.5\n";
  }
  const auto loaded = load_material(path.string());
  CHECK(loaded.drude.gamma_d == 0.2);
  CHECK(loaded.b == 0.5);
  CHECK(coefficients_from_preset(loaded).gamma == doctest::Approx(0.1));
  {
    std::ofstream out(path);
    out << "[material]\nomega = 3\n";
  }
  CHECK_THROWS_AS(load_material(path.string()), ConfigError);
  std::filesystem::remove(path);
}
