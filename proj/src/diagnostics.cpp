#include "splasmon/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "splasmon/errors.hpp"

namespace splasmon {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Exact Fourier coefficients of f*g for modes -2N..2N, indexed k + 2N.
ComplexVector full_product(const ComplexVector& fg, const ComplexVector& gg, const FftPlan& plan,
                           int n) {
  const std::size_t g = plan.size();
  ComplexVector buf(g);
  for (std::size_t j = 0; j < g; ++j) buf[j] = fg[j] * gg[j];
  plan.to_spectrum(buf);
  ComplexVector out(4 * static_cast<std::size_t>(n) + 1);
  for (int k = -2 * n; k <= 2 * n; ++k) out[k + 2 * n] = buf[index_of_mode(k, g)];
  return out;
}

ComplexVector to_grid(const SpectralField& a, const FftPlan& plan) {
  ComplexVector buf(plan.size(), Complex{});
  a.for_each_mode([&](int k, Complex c) { buf[index_of_mode(k, plan.size())] = c; });
  plan.to_grid(buf);
  return buf;
}

// sum over k != 0 of conj(p_k) p_k / |k|, as a complex number.
Complex weighted_inner(const ComplexVector& p, int n) {
  long double re = 0.0L;
  long double im = 0.0L;
  for (int k = -2 * n; k <= 2 * n; ++k) {
    if (k == 0) continue;
    const Complex c = p[k + 2 * n];
    const Complex term = std::conj(c) * (c / std::abs(static_cast<double>(k)));
    re += term.real();
    im += term.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

double DiagnosticsRecord::l2() const { return std::hypot(l2_u, l2_v); }

std::vector<double> default_sobolev_indices() { return {-0.5, 0.0, 0.5, 1.0}; }

double hamiltonian(const SpectralField& u, const SpectralField& v, const ModelCoefficients& c) {
  if (u.n_modes() != v.n_modes()) throw ResolutionMismatch("hamiltonian: u and v differ in N");
  const int n = u.n_modes();
  // Modes up to 2N must stay distinct: any G >= 4N + 1 suffices.
  const FftPlan plan(fft_friendly_size(4 * static_cast<std::size_t>(n) + 2));
  const ComplexVector ug = to_grid(u, plan);
  const ComplexVector vg = to_grid(v, plan);
  ComplexVector vcg(vg.size());
  std::transform(vg.begin(), vg.end(), vcg.begin(), [](Complex z) { return std::conj(z); });

  const auto uu = full_product(ug, ug, plan, n);
  const auto uvc = full_product(ug, vcg, plan, n);
  const auto vv = full_product(vg, vg, plan, n);

  Complex quartic = 0.5 * c.alpha * weighted_inner(uu, n) + c.beta * weighted_inner(uvc, n) +
                    0.5 * c.alpha * weighted_inner(vv, n);
  long double quadratic = 0.0L;
  const auto add_quadratic = [&](int k, Complex z) {
    const double ak = std::abs(static_cast<double>(k));
    quadratic += std::norm(z) / (ak * ak * ak);
  };
  u.for_each_mode(add_quadratic);
  v.for_each_mode(add_quadratic);
  const Complex h = two_pi * (quartic + c.nu * static_cast<double>(quadratic));
  if (std::abs(h.imag()) > 1e-10 * (1.0 + std::abs(h.real()))) {
    throw Error("hamiltonian: imaginary residue " + std::to_string(h.imag()));
  }
  return h.real();
}

double szego_hamiltonian(const SpectralField& u) {
  const int n = u.n_modes();
  const FftPlan plan(fft_friendly_size(4 * static_cast<std::size_t>(n) + 2));
  const ComplexVector ug = to_grid(u, plan);
  const auto uu = full_product(ug, ug, plan, n);
  long double sum = 0.0L;
  for (const Complex c : uu) sum += std::norm(c);
  return 0.5 * two_pi * static_cast<double>(sum);
}

std::pair<double, double> actions(const SpectralField& u, const SpectralField& v) {
  long double s = 0.0L;
  long double t = 0.0L;
  u.for_each_mode([&](int k, Complex c) {
    if (k > 0) s += std::norm(c) / k;
  });
  v.for_each_mode([&](int k, Complex c) {
    if (k < 0) t += std::norm(c) / -k;
  });
  return {two_pi * static_cast<double>(s), two_pi * static_cast<double>(t)};
}

double momentum(const SpectralField& u, const SpectralField& v) {
  long double p = 0.0L;
  for (const Complex c : u.positive()) p += std::norm(c);
  for (const Complex c : v.negative()) p -= std::norm(c);
  return two_pi * static_cast<double>(p);
}

double szego_momentum(const SpectralField& u) {
  long double sum = 0.0L;
  u.for_each_mode([&](int k, Complex c) { sum += std::abs(k) * std::norm(c); });
  return two_pi * static_cast<double>(sum);
}

double breakdown_integral(const std::vector<DiagnosticsRecord>& records) {
  double total = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    if (b.tau < a.tau) throw ParameterError("breakdown_integral: records are not ordered in tau");
    const double fa = a.a_norm_u * a.a_norm_u + a.a_norm_v * a.a_norm_v;
    const double fb = b.a_norm_u * b.a_norm_u + b.a_norm_v * b.a_norm_v;
    total += 0.5 * (b.tau - a.tau) * (fa + fb);
  }
  return total;
}

// ---------------------------------------------------------------------------

DiagnosticsEngine::DiagnosticsEngine(EquationKind kind, ModelCoefficients coeffs, int n_modes,
                                     DealiasPolicy policy, std::vector<double> sobolev_indices)
    : kind_(kind),
      coeffs_(coeffs),
      n_modes_(n_modes),
      sobolev_indices_(std::move(sobolev_indices)),
      plan_(policy.grid_size(n_modes)),
      grid_(plan_.size()) {}

double DiagnosticsEngine::max_abs(const State& s) {
  const std::size_t g = plan_.size();
  std::fill(grid_.begin(), grid_.end(), Complex{});
  s.u.for_each_mode([&](int k, Complex c) { grid_[index_of_mode(k, g)] += c; });
  s.v.for_each_mode([&](int k, Complex c) { grid_[index_of_mode(k, g)] += c; });
  plan_.to_grid(grid_);
  double m = 0.0;
  for (const Complex z : grid_) m = std::max(m, std::abs(z));
  return m;
}

DiagnosticsRecord DiagnosticsEngine::compute(const State& s, double tau, double breakdown_so_far) {
  if (s.n_modes() != n_modes_) throw ResolutionMismatch("diagnostics: state resolution mismatch");
  DiagnosticsRecord r;
  r.tau = tau;
  r.max_abs_A = max_abs(s);
  r.a_norm_u = a_norm(s.u);
  r.a_norm_v = a_norm(s.v);
  r.l2_u = l2_norm(s.u);
  r.l2_v = l2_norm(s.v);
  const SpectralField a = s.combined();
  for (const double idx : sobolev_indices_) r.sobolev.emplace_back(idx, sobolev_norm(a, idx));
  r.hamiltonian = kind_ == EquationKind::szego ? szego_hamiltonian(s.u)
                                               : hamiltonian(s.u, s.v, coeffs_);
  std::tie(r.action_S, r.action_T) = actions(s.u, s.v);
  r.momentum_P = momentum(s.u, s.v);
  r.szego_momentum = szego_momentum(s.u);
  r.breakdown_integral = breakdown_so_far;
  return r;
}

}  // namespace splasmon
