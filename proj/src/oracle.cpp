#include "splasmon/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "splasmon/errors.hpp"
#include "splasmon/model.hpp"

namespace splasmon::oracle {

namespace {

void check_bound(const SpectralField& a, int max_modes) {
  if (a.n_modes() > max_modes) {
    throw ParameterError("oracle: N = " + std::to_string(a.n_modes()) + " exceeds bound " +
                         std::to_string(max_modes));
  }
}

bool in_range(int k, int n) { return k != 0 && std::abs(k) <= n; }

}  // namespace

SpectralField rhs_spectral_brute(const SpectralField& a, double coef_a, double coef_b,
                                 double gamma, double nu, int max_modes) {
  check_bound(a, max_modes);
  const int n = a.n_modes();
  SpectralField out(n);
  for (int k = -n; k <= n; ++k) {
    if (k == 0) continue;
    Complex sum{};
    for (int k2 = -n; k2 <= n; ++k2) {
      if (k2 == 0) continue;
      for (int k3 = -n; k3 <= n; ++k3) {
        if (k3 == 0) continue;
        const int k4 = k + k2 - k3;
        if (!in_range(k4, n)) continue;
        const double t = interaction_T(k, k2, k3, k4, coef_a, coef_b);
        if (t == 0.0) continue;
        sum += t * std::conj(a[k2]) * a[k3] * a[k4];
      }
    }
    const double kd = static_cast<double>(k);
    const Complex value = Complex(0.0, std::abs(kd)) * sum - gamma * a[k] +
                          Complex(0.0, nu / (kd * kd)) * a[k];
    out.set(k, value);
  }
  return out;
}

double hamiltonian_brute(const SpectralField& a, double coef_a, double coef_b, double nu,
                         int max_modes) {
  check_bound(a, max_modes);
  const int n = a.n_modes();
  Complex quartic{};
  for (int k1 = -n; k1 <= n; ++k1) {
    if (k1 == 0) continue;
    for (int k2 = -n; k2 <= n; ++k2) {
      if (k2 == 0) continue;
      for (int k3 = -n; k3 <= n; ++k3) {
        if (k3 == 0) continue;
        const int k4 = k1 + k2 - k3;
        if (!in_range(k4, n)) continue;
        const double t = interaction_T(k1, k2, k3, k4, coef_a, coef_b);
        if (t == 0.0) continue;
        quartic += t * std::conj(a[k1]) * std::conj(a[k2]) * a[k3] * a[k4];
      }
    }
  }
  double quadratic = 0.0;
  a.for_each_mode([&](int k, Complex c) {
    const double ak = std::abs(static_cast<double>(k));
    quadratic += std::norm(c) / (ak * ak * ak);
  });
  const Complex h = 0.5 * quartic + nu * quadratic;
  if (std::abs(h.imag()) > 1e-10 * (1.0 + std::abs(h.real()))) {
    throw Error("hamiltonian_brute: imaginary part " + std::to_string(h.imag()) +
                " indicates a kernel symmetry defect");
  }
  return h.real();
}

}  // namespace splasmon::oracle
