#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>

#include "splasmon/spectral_field.hpp"

namespace testing {

using splasmon::Complex;
using splasmon::FieldKind;
using splasmon::SpectralField;

inline constexpr double pi = std::numbers::pi;

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex complex() { return {uniform(), uniform()}; }

  // Random field of the given kind; `real_only` draws real coefficients.
  SpectralField field(int n, FieldKind kind = FieldKind::mixed, bool real_only = false) {
    SpectralField f(n, kind);
    for (int k = -n; k <= n; ++k) {
      if (k == 0) continue;
      if (kind == FieldKind::plus && k < 0) continue;
      if (kind == FieldKind::minus && k > 0) continue;
      f.set(k, real_only ? Complex(uniform(), 0.0) : complex());
    }
    return f;
  }

  // Nonzero wavenumber in [-m, m].
  int wavenumber(int m) {
    int k = 0;
    while (k == 0) k = integer(-m, m);
    return k;
  }

 private:
  std::mt19937 rng_;
};

// Coefficients of the product of two fields by direct convolution, all modes
// including k = 0.
inline std::map<int, Complex> convolve(const SpectralField& a, const SpectralField& b) {
  std::map<int, Complex> out;
  a.for_each_mode([&](int p, Complex x) {
    b.for_each_mode([&](int q, Complex y) { out[p + q] += x * y; });
  });
  return out;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  for (std::size_t j = 0; j < ca.size(); ++j) m = std::max(m, std::abs(ca[j] - cb[j]));
  return m;
}

inline double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (const Complex c : a.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

// max |a - b| / max |b|, or the absolute difference when b vanishes.
inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = max_abs(b);
  const double d = max_abs_diff(a, b);
  return scale > 0.0 ? d / scale : d;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
