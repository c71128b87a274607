#include "splasmon/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "splasmon/errors.hpp"

namespace splasmon {

std::string to_string(EquationKind kind) {
  switch (kind) {
    case EquationKind::unidirectional: return "unidirectional";
    case EquationKind::szego: return "szego";
    case EquationKind::bidirectional: break;
  }
  return "bidirectional";
}

EquationKind equation_kind_from_string(const std::string& name) {
  if (name == "bidirectional") return EquationKind::bidirectional;
  if (name == "unidirectional") return EquationKind::unidirectional;
  if (name == "szego") return EquationKind::szego;
  throw ParameterError("unknown equation variant '" + name +
                       "' (expected bidirectional, unidirectional or szego)");
}

void EquationVariant::validate(int n_modes) const {
  if (!forcing) return;
  if (kind == EquationKind::szego) throw ParameterError("forcing is not defined for szego");
  const auto check = [n_modes](const SpectralField& f, bool plus, const char* name) {
    if (f.n_modes() != n_modes) {
      throw ResolutionMismatch(std::string("forcing ") + name + " has " +
                               std::to_string(f.n_modes()) + " modes, expected " +
                               std::to_string(n_modes));
    }
    if (plus ? f.has_minus_content() : f.has_plus_content()) {
      throw TypeViolation(std::string("forcing ") + name + " must be " +
                          (plus ? "plus" : "minus") + "-type");
    }
  };
  check(forcing->f, true, "f");
  check(forcing->g, false, "g");
  if (kind == EquationKind::unidirectional && !forcing->g.is_zero()) {
    throw ParameterError("unidirectional forcing cannot have a g component");
  }
}

State State::zero(int n_modes) {
  return {SpectralField(n_modes, FieldKind::plus), SpectralField(n_modes, FieldKind::minus)};
}

State State::from_field(const SpectralField& a) { return {project_plus(a), project_minus(a)}; }

State& State::add_scaled(double scale, const State& other) {
  u.add_scaled(scale, other.u);
  v.add_scaled(scale, other.v);
  return *this;
}

// ---------------------------------------------------------------------------

RhsEvaluator::RhsEvaluator(EquationVariant variant, int n_modes, DealiasPolicy policy)
    : variant_(std::move(variant)), n_modes_(n_modes), plan_(policy.grid_size(n_modes)) {
  variant_.validate(n_modes);
  const std::size_t g = plan_.size();
  for (auto* buf : {&ug_, &vg_, &w1_, &w2_, &w4_, &tu_, &tv_}) buf->assign(g, Complex{});
  modes_.resize(g);
  inv_k_.resize(g);
  for (std::size_t m = 0; m < g; ++m) {
    modes_[m] = mode_of_index(m, g);
    inv_k_[m] = modes_[m] == 0 ? 0.0 : 1.0 / static_cast<double>(modes_[m]);
  }
}

namespace {

void require_typed(const SpectralField& f, FieldKind kind, int n_modes, const char* name) {
  if (f.n_modes() != n_modes) {
    throw ResolutionMismatch(std::string(name) + " has " + std::to_string(f.n_modes()) +
                             " modes, evaluator expects " + std::to_string(n_modes));
  }
  const bool bad = kind == FieldKind::plus ? f.has_minus_content() : f.has_plus_content();
  if (bad) {
    throw TypeViolation(std::string(name) + " must be " + to_string(kind) + "-type");
  }
}

}  // namespace

void RhsEvaluator::load(const SpectralField& a, ComplexVector& grid) {
  std::fill(grid.begin(), grid.end(), Complex{});
  const std::size_t g = grid.size();
  const auto n = static_cast<std::size_t>(n_modes_);
  const auto coeffs = a.coefficients();  // k = -N..-1, 1..N
  std::copy(coeffs.begin(), coeffs.begin() + n, grid.begin() + (g - n));
  std::copy(coeffs.begin() + n, coeffs.end(), grid.begin() + 1);
  plan_.to_grid(grid);
}

void RhsEvaluator::load_derivative(const SpectralField& a, ComplexVector& grid) {
  std::fill(grid.begin(), grid.end(), Complex{});
  const std::size_t g = grid.size();
  a.for_each_mode([&](int k, Complex c) {
    grid[index_of_mode(k, g)] = Complex(0.0, static_cast<double>(k)) * c;
  });
  plan_.to_grid(grid);
}

void RhsEvaluator::inverse_derivative_on_grid(ComplexVector& buf, long lo, long hi) {
  plan_.to_spectrum(buf);
  const std::size_t g = buf.size();
  double scale = 0.0;
  for (const Complex c : buf) scale = std::max(scale, std::norm(c));
  if (std::norm(buf[0]) > 1e-20 * scale) {
    throw ModeError("argument of the inverse derivative has a nonzero mean");
  }
  // 1/(ik) = -i/k on the support [lo, hi], zero elsewhere.
  for (std::size_t m = 0; m < g; ++m) {
    const long k = modes_[m];
    if (k < lo || k > hi) {
      buf[m] = Complex{};
    } else {
      const Complex c = buf[m];
      buf[m] = Complex(c.imag() * inv_k_[m], -c.real() * inv_k_[m]);
    }
  }
  plan_.to_grid(buf);
}

void RhsEvaluator::add_linear_terms(const SpectralField& in, SpectralField& out, double tau,
                                    const SpectralField* forcing) const {
  const auto& c = variant_.coeffs;
  const Complex phase = forcing ? std::exp(Complex(0.0, -c.Omega * tau)) : Complex{};
  out.transform_modes([&](int k, Complex value) {
    const Complex a = in[k];
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    value += -c.gamma * a + Complex(0.0, c.nu / kk) * a;
    if (forcing) value += (*forcing)[k] * phase;
    return value;
  });
}

State RhsEvaluator::bidirectional(const SpectralField& u, const SpectralField& v, double tau) {
  require_typed(u, FieldKind::plus, n_modes_, "u");
  require_typed(v, FieldKind::minus, n_modes_, "v");
  const std::size_t g = plan_.size();
  const long n = n_modes_;
  const double alpha = variant_.coeffs.alpha;
  const double beta = variant_.coeffs.beta;

  load(u, ug_);
  load(v, vg_);
  for (std::size_t j = 0; j < g; ++j) {
    w1_[j] = ug_[j] * ug_[j];             // u^2, modes 2..2N
    w2_[j] = ug_[j] * std::conj(vg_[j]);  // u v*, modes 2..2N
    w4_[j] = vg_[j] * vg_[j];             // v^2, modes -2N..-2
  }
  inverse_derivative_on_grid(w1_, 2, 2 * n);
  inverse_derivative_on_grid(w2_, 2, 2 * n);
  inverse_derivative_on_grid(w4_, -2 * n, -2);
  // d^{-1}(u* v) = conj(d^{-1}(u v*)).
  for (std::size_t j = 0; j < g; ++j) {
    tu_[j] = alpha * std::conj(ug_[j]) * w1_[j] + beta * vg_[j] * w2_[j];
    tv_[j] = alpha * std::conj(vg_[j]) * w4_[j] + beta * ug_[j] * std::conj(w2_[j]);
  }
  plan_.to_spectrum(tu_);
  plan_.to_spectrum(tv_);

  State out = State::zero(n_modes_);
  for (int k = 1; k <= n_modes_; ++k) {
    // i d_x multiplies mode k by i * ik = -k.
    out.u.set(k, -static_cast<double>(k) * tu_[index_of_mode(k, g)]);
    out.v.set(-k, static_cast<double>(k) * tv_[index_of_mode(-k, g)]);
  }
  const auto& forcing = variant_.forcing;
  add_linear_terms(u, out.u, tau, forcing ? &forcing->f : nullptr);
  add_linear_terms(v, out.v, tau, forcing ? &forcing->g : nullptr);
  return out;
}

SpectralField RhsEvaluator::unidirectional(const SpectralField& u, double tau) {
  require_typed(u, FieldKind::plus, n_modes_, "u");
  const std::size_t g = plan_.size();
  const double alpha = variant_.coeffs.alpha;
  load(u, ug_);
  for (std::size_t j = 0; j < g; ++j) w1_[j] = ug_[j] * ug_[j];
  inverse_derivative_on_grid(w1_, 2, 2L * n_modes_);
  for (std::size_t j = 0; j < g; ++j) tu_[j] = alpha * std::conj(ug_[j]) * w1_[j];
  plan_.to_spectrum(tu_);
  SpectralField out(n_modes_, FieldKind::plus);
  for (int k = 1; k <= n_modes_; ++k) {
    out.set(k, -static_cast<double>(k) * tu_[index_of_mode(k, g)]);
  }
  const auto& forcing = variant_.forcing;
  add_linear_terms(u, out, tau, forcing ? &forcing->f : nullptr);
  return out;
}

SpectralField RhsEvaluator::szego(const SpectralField& u) {
  require_typed(u, FieldKind::plus, n_modes_, "u");
  const std::size_t g = plan_.size();
  load(u, ug_);
  for (std::size_t j = 0; j < g; ++j) tu_[j] = std::norm(ug_[j]) * ug_[j];
  plan_.to_spectrum(tu_);
  const Complex scale(0.0, -variant_.coeffs.alpha);
  SpectralField out(n_modes_, FieldKind::plus);
  for (int k = 1; k <= n_modes_; ++k) out.set(k, scale * tu_[index_of_mode(k, g)]);
  return out;
}

SpectralField RhsEvaluator::commutator_form(const SpectralField& u) {
  require_typed(u, FieldKind::plus, n_modes_, "u");
  const std::size_t g = plan_.size();
  load(u, ug_);
  load_derivative(u, vg_);  // u_x
  for (std::size_t j = 0; j < g; ++j) w1_[j] = ug_[j] * ug_[j];
  inverse_derivative_on_grid(w1_, 2, 2L * n_modes_);
  // P[u*_x] = 0, so [P, w] u*_x = P[w u*_x].
  for (std::size_t j = 0; j < g; ++j) {
    tu_[j] = std::norm(ug_[j]) * ug_[j] + w1_[j] * std::conj(vg_[j]);
  }
  plan_.to_spectrum(tu_);
  SpectralField out(n_modes_, FieldKind::plus);
  for (int k = 1; k <= n_modes_; ++k) out.set(k, Complex(0.0, 1.0) * tu_[index_of_mode(k, g)]);
  return out;
}

State RhsEvaluator::operator()(const State& s, double tau) {
  switch (variant_.kind) {
    case EquationKind::bidirectional:
      return bidirectional(s.u, s.v, tau);
    case EquationKind::unidirectional:
    case EquationKind::szego:
      if (!s.v.is_zero()) {
        throw TypeViolation(to_string(variant_.kind) + " equation: v must be zero");
      }
      if (variant_.kind == EquationKind::szego) return {szego(s.u), SpectralField(n_modes_, FieldKind::minus)};
      return {unidirectional(s.u, tau), SpectralField(n_modes_, FieldKind::minus)};
  }
  throw ParameterError("unhandled equation kind");
}

// ---------------------------------------------------------------------------

State rhs_bidirectional(const SpectralField& u, const SpectralField& v, const ModelCoefficients& c,
                        double tau, const std::optional<Forcing>& forcing,
                        const DealiasPolicy& policy) {
  RhsEvaluator eval({EquationKind::bidirectional, c, forcing}, u.n_modes(), policy);
  return eval.bidirectional(u, v, tau);
}

SpectralField rhs_unidirectional(const SpectralField& u, const ModelCoefficients& c, double tau,
                                 const std::optional<Forcing>& forcing,
                                 const DealiasPolicy& policy) {
  RhsEvaluator eval({EquationKind::unidirectional, c, forcing}, u.n_modes(), policy);
  return eval.unidirectional(u, tau);
}

SpectralField rhs_unidirectional_commutator_form(const SpectralField& u,
                                                 const DealiasPolicy& policy) {
  RhsEvaluator eval({EquationKind::unidirectional, coefficients_from_alpha_beta(1.0, 0.0), {}},
                    u.n_modes(), policy);
  return eval.commutator_form(u);
}

SpectralField rhs_szego(const SpectralField& u, const DealiasPolicy& policy) {
  RhsEvaluator eval({EquationKind::szego, coefficients_from_alpha_beta(1.0, 0.0), {}},
                    u.n_modes(), policy);
  return eval.szego(u);
}

SpectralField cp_transform(const SpectralField& a) {
  SpectralField out = a;
  out.transform_modes([](int, Complex c) { return std::conj(c); });
  return out;
}

State cp_transform(const State& s) { return {cp_transform(s.u), cp_transform(s.v)}; }

ModelCoefficients cp_flipped(const ModelCoefficients& c) {
  ModelCoefficients out = c;
  out.a = -c.a;
  out.b = -c.b;
  out.alpha = -c.alpha;
  out.beta = -c.beta;
  out.nu = -c.nu;
  out.Omega = -c.Omega;
  return out;
}

EquationVariant cp_flipped(const EquationVariant& v) {
  EquationVariant out = v;
  out.coeffs = cp_flipped(v.coeffs);
  if (out.forcing) {
    out.forcing->f = cp_transform(v.forcing->f);
    out.forcing->g = cp_transform(v.forcing->g);
  }
  return out;
}

}  // namespace splasmon
