#pragma once

#include <optional>
#include <vector>
#include <string>

#include "splasmon/fft.hpp"
#include "splasmon/model.hpp"
#include "splasmon/spectral_field.hpp"

namespace splasmon {

enum class EquationKind { bidirectional, unidirectional, szego };

std::string to_string(EquationKind kind);
EquationKind equation_kind_from_string(const std::string& name);

/// Stationary forcing patterns, applied as f e^{-i Omega tau} and
/// g e^{-i Omega tau} with Omega = ModelCoefficients::Omega.
struct Forcing {
  SpectralField f;  ///< plus-type
  SpectralField g;  ///< minus-type
};

struct EquationVariant {
  EquationKind kind = EquationKind::bidirectional;
  ModelCoefficients coeffs;
  std::optional<Forcing> forcing;

  /// Throws on inconsistent typing or resolution.
  void validate(int n_modes) const;
};

/// Right-moving (u, plus-type) and left-moving (v, minus-type) amplitudes.
/// Single-component equations keep v identically zero.
struct State {
  SpectralField u;
  SpectralField v;

  static State zero(int n_modes);
  static State from_field(const SpectralField& a);

  int n_modes() const { return u.n_modes(); }
  /// A = u + v.
  SpectralField combined() const { return u + v; }

  State& add_scaled(double scale, const State& other);
  bool operator==(const State&) const = default;
};

/// Pseudo-spectral right-hand-side evaluation with its own FFT plan and
/// scratch buffers. Not safe for concurrent use; create one per thread.
///
/// Each cubic term is assembled from two binary products: the inner product
/// (u^2, u v*, ...) is transformed, integrated spectrally and brought back to
/// the grid before the outer product. Intermediate spectra keep every mode up
/// to 2N, so the evaluation equals the Galerkin-truncated sum over all
/// resonant quadruples with |k_i| <= N.
class RhsEvaluator {
 public:
  RhsEvaluator(EquationVariant variant, int n_modes, DealiasPolicy policy = {});

  const EquationVariant& variant() const noexcept { return variant_; }
  int n_modes() const noexcept { return n_modes_; }
  std::size_t grid_size() const noexcept { return plan_.size(); }

  /// Dispatches on the equation kind.
  State operator()(const State& s, double tau);

  State bidirectional(const SpectralField& u, const SpectralField& v, double tau);
  SpectralField unidirectional(const SpectralField& u, double tau);
  SpectralField szego(const SpectralField& u);
  /// i (P[|u|^2 u] + [P, d^{-1}(u^2)] conj(u)_x), alpha = 1, no linear terms.
  SpectralField commutator_form(const SpectralField& u);

 private:
  void load(const SpectralField& a, ComplexVector& grid);
  void load_derivative(const SpectralField& a, ComplexVector& grid);
  /// grid -> spectrum, check the mean vanishes, keep modes in [lo, hi],
  /// apply d^{-1}, back to the grid.
  void inverse_derivative_on_grid(ComplexVector& buf, long lo, long hi);
  void add_linear_terms(const SpectralField& in, SpectralField& out, double tau,
                        const SpectralField* forcing) const;

  EquationVariant variant_;
  int n_modes_;
  FftPlan plan_;
  ComplexVector ug_, vg_, w1_, w2_, w4_, tu_, tv_;
  std::vector<long> modes_;
  std::vector<double> inv_k_;
};

State rhs_bidirectional(const SpectralField& u, const SpectralField& v,
                        const ModelCoefficients& c, double tau = 0.0,
                        const std::optional<Forcing>& forcing = std::nullopt,
                        const DealiasPolicy& policy = {});

SpectralField rhs_unidirectional(const SpectralField& u, const ModelCoefficients& c,
                                 double tau = 0.0,
                                 const std::optional<Forcing>& forcing = std::nullopt,
                                 const DealiasPolicy& policy = {});

SpectralField rhs_unidirectional_commutator_form(const SpectralField& u,
                                                 const DealiasPolicy& policy = {});

SpectralField rhs_szego(const SpectralField& u, const DealiasPolicy& policy = {});

/// u(x) -> conj(u(-x)): A_k -> conj(A_k). Plus-type stays plus-type.
SpectralField cp_transform(const SpectralField& a);
State cp_transform(const State& s);

/// Coefficients of the equation satisfied by cp_transform of a solution:
/// alpha, beta, nu, Omega change sign, gamma does not.
ModelCoefficients cp_flipped(const ModelCoefficients& c);
EquationVariant cp_flipped(const EquationVariant& v);

}  // namespace splasmon
