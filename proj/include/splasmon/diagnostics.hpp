#pragma once

#include <utility>
#include <vector>

#include "splasmon/dynamics.hpp"
#include "splasmon/fft.hpp"
#include "splasmon/model.hpp"
#include "splasmon/spectral_field.hpp"

namespace splasmon {

struct DiagnosticsRecord {
  double tau = 0.0;
  double max_abs_A = 0.0;
  double a_norm_u = 0.0;
  double a_norm_v = 0.0;
  double l2_u = 0.0;
  double l2_v = 0.0;
  /// (s, ||A||_s) for each configured Sobolev index.
  std::vector<std::pair<double, double>> sobolev;
  double hamiltonian = 0.0;
  double action_S = 0.0;
  double action_T = 0.0;
  double momentum_P = 0.0;
  /// integral of u* |d_x| u dx, conserved by the Szego flow.
  double szego_momentum = 0.0;
  /// Running integral of ||u||_A^2 + ||v||_A^2 over [0, tau].
  double breakdown_integral = 0.0;

  double a_norm() const { return a_norm_u + a_norm_v; }
  double l2() const;
};

/// Sobolev indices recorded by default.
std::vector<double> default_sobolev_indices();

/// Spatial Hamiltonian of the plasmon system,
///   H = int { alpha/2 (u*)^2 |d|^{-1}(u^2) + beta u* v |d|^{-1}(u v*)
///             + alpha/2 (v*)^2 |d|^{-1}(v^2) + nu u* |d|^{-3} u + nu v* |d|^{-3} v } dx,
/// from exact product spectra and Parseval. Throws Error if the imaginary
/// residue exceeds 1e-10 (1 + |H|).
double hamiltonian(const SpectralField& u, const SpectralField& v, const ModelCoefficients& c);

/// Szego Hamiltonian (1/2) int |u|^4 dx.
double szego_hamiltonian(const SpectralField& u);

/// S = int u* |d|^{-1} u dx, T = int v* |d|^{-1} v dx.
std::pair<double, double> actions(const SpectralField& u, const SpectralField& v);

/// P = int (|u|^2 - |v|^2) dx.
double momentum(const SpectralField& u, const SpectralField& v);

/// int u* |d_x| u dx = 2 pi sum |k| |u_k|^2.
double szego_momentum(const SpectralField& u);

/// Trapezoid rule for int (||u||_A^2 + ||v||_A^2) dtau over the records.
/// Throws ParameterError if the taus are not nondecreasing.
double breakdown_integral(const std::vector<DiagnosticsRecord>& records);

/// Computes full diagnostics records; owns an FFT plan for the maximum of
/// |A| on the collocation grid.
class DiagnosticsEngine {
 public:
  DiagnosticsEngine(EquationKind kind, ModelCoefficients coeffs, int n_modes,
                    DealiasPolicy policy = {},
                    std::vector<double> sobolev_indices = default_sobolev_indices());

  DiagnosticsRecord compute(const State& s, double tau, double breakdown_so_far);
  double max_abs(const State& s);

 private:
  EquationKind kind_;
  ModelCoefficients coeffs_;
  int n_modes_;
  std::vector<double> sobolev_indices_;
  FftPlan plan_;
  ComplexVector grid_;
};

}  // namespace splasmon
