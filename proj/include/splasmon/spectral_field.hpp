#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "splasmon/fft.hpp"

namespace splasmon {

/// Sign restriction carried by a field. Plus-type fields have no negative
/// wavenumber content (u = P[A]); minus-type fields have no positive content
/// (v = Q[A]).
enum class FieldKind { mixed, plus, minus };

std::string to_string(FieldKind kind);

enum class DealiasMode { paper_truncation, exact_pad };

std::string to_string(DealiasMode mode);
DealiasMode dealias_mode_from_string(const std::string& name);

/// Collocation-grid choice for pointwise products.
///
/// paper_truncation uses G = 4N points, i.e. N retained modes per sign out of
/// 2N, with the upper half of the spectrum discarded. exact_pad uses the
/// smallest FFT-friendly G >= pad_factor * (4N + 2), which makes a cubic
/// product evaluated on a single grid alias-free.
struct DealiasPolicy {
  DealiasMode mode = DealiasMode::exact_pad;
  double pad_factor = 1.0;

  std::size_t grid_size(int n_modes) const;
  bool operator==(const DealiasPolicy&) const = default;
};

/// Fourier coefficients of a zero-mean 2*pi-periodic complex function,
/// A(x) = sum_{1 <= |k| <= N} A_k exp(i k x).
///
/// There is no storage for k = 0, so a field cannot acquire a mean.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int n_modes, FieldKind kind = FieldKind::mixed);

  int n_modes() const noexcept { return n_modes_; }
  FieldKind kind() const noexcept { return kind_; }
  /// Collocation points used for nonlinear products under the default grid
  /// rule (4N).
  std::size_t grid_size() const noexcept { return 4 * static_cast<std::size_t>(n_modes_); }

  /// Coefficient of mode k. Throws ModeError for k = 0 or |k| > N.
  Complex operator[](int k) const;
  /// Sets mode k. Throws ModeError for bad k and TypeViolation when the
  /// sign of k contradicts the field kind (zero values are always accepted).
  void set(int k, Complex value);

  /// Coefficients ordered k = -N..-1, 1..N.
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  /// Coefficients for k = 1..N.
  std::span<const Complex> positive() const noexcept;
  /// Coefficients for k = -1..-N (note the order: index j holds k = -(j+1)).
  std::vector<Complex> negative() const;

  /// Relabels the field; throws TypeViolation if the content contradicts it.
  SpectralField with_kind(FieldKind kind) const;
  bool is_zero() const noexcept;
  bool has_plus_content() const noexcept;
  bool has_minus_content() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);
  /// this += scale * other, without temporaries.
  SpectralField& add_scaled(Complex scale, const SpectralField& other);
  /// Kahan-compensated this += delta; `carry` holds the running low-order error.
  SpectralField& add_compensated(const SpectralField& delta, SpectralField& carry);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, Complex s) { return a *= s; }

  bool operator==(const SpectralField& other) const;

  /// Calls f(k, value) for k = -N..-1, 1..N.
  template <typename F>
  void for_each_mode(F&& f) const {
    for (int j = 0; j < 2 * n_modes_; ++j) f(mode_at(j), coeffs_[j]);
  }

  /// Applies value = f(k, value) for every mode; the result must respect the
  /// field kind (checked).
  template <typename F>
  void transform_modes(F&& f) {
    for (int j = 0; j < 2 * n_modes_; ++j) coeffs_[j] = f(mode_at(j), coeffs_[j]);
    check_kind();
  }

 private:
  int slot(int k) const;
  int mode_at(int j) const noexcept { return j < n_modes_ ? j - n_modes_ : j - n_modes_ + 1; }
  void check_kind() const;
  void check_compatible(const SpectralField& other) const;

  int n_modes_ = 0;
  FieldKind kind_ = FieldKind::mixed;
  std::vector<Complex> coeffs_;
};

FieldKind combined_kind(FieldKind a, FieldKind b);

/// Builds a validated field; missing indices are zero.
SpectralField make_field(int n_modes, const std::map<int, Complex>& coeffs,
                         FieldKind kind = FieldKind::mixed);

SpectralField project_plus(const SpectralField& a);
SpectralField project_minus(const SpectralField& a);

/// Pointwise complex conjugate: mode k of the result is conj(A_{-k}).
SpectralField conjugate(const SpectralField& a);

/// Multiplies A_k by (ik)^n; n < 0 is the spectral antiderivative.
SpectralField spectral_derivative(const SpectralField& a, int n);
/// Multiplies A_k by |k|^s.
SpectralField abs_derivative(const SpectralField& a, double s);

/// What to do with a k = 0 component of a product.
enum class ZeroModeHandling {
  reject,   ///< throw ModeError unless the mean is structurally zero
  discard,  ///< caller asserts the mean vanishes analytically; drop it
};

/// Fourier coefficients of the pointwise product A*B retained to |k| <= N.
///
/// Structural check for the mean: if some k has A_k != 0 and B_{-k} != 0 the
/// product may carry a mean, which is rejected unless `zero_mode` says
/// discard.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b,
                                const DealiasPolicy& policy = {},
                                ZeroModeHandling zero_mode = ZeroModeHandling::reject);

/// Sum of |A_k| (Wiener algebra norm).
double a_norm(const SpectralField& a);
/// (integral over [0, 2pi) of |A|^2)^(1/2) = (2 pi sum |A_k|^2)^(1/2).
double l2_norm(const SpectralField& a);
/// (sum |k|^(2s) |A_k|^2)^(1/2).
double sobolev_norm(const SpectralField& a, double s);
/// max |A(x_j)| over the collocation grid of the policy.
double sup_norm(const SpectralField& a, const DealiasPolicy& policy = {});

/// Exact values A(x_j), x_j = 2 pi j / points, for any number of points.
/// Modes are folded modulo `points` before a single FFT.
ComplexVector sample_on_grid(const SpectralField& a, std::size_t points);

/// Returns a field with `n_modes` modes per sign: truncates or zero-extends.
SpectralField resize_modes(const SpectralField& a, int n_modes);

// Snapshot format: little-endian int32 N, then 2N records
// (int32 k, float64 re, float64 im) for k = -N..-1, 1..N.
void write_snapshot(std::ostream& out, const SpectralField& a);
SpectralField read_snapshot(std::istream& in);
void write_snapshot_file(const std::string& path, const SpectralField& a);
SpectralField read_snapshot_file(const std::string& path);

/// CSV with header "x,re,im,abs" sampled at `points` equispaced x in [0, 2pi).
void write_grid_csv(std::ostream& out, const SpectralField& a, std::size_t points);

}  // namespace splasmon
