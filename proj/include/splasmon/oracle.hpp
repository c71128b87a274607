#pragma once

#include "splasmon/spectral_field.hpp"

namespace splasmon::oracle {

/// Largest N accepted by the O(N^3) reference sums unless overridden.
inline constexpr int default_max_modes = 64;

/// Direct evaluation of the spectral equation
///   dA_k/dtau = i|k| sum_{k2,k3,k4: k = k3 + k4 - k2} T(k,k2,k3,k4) conj(A_k2) A_k3 A_k4
///               - gamma A_k + (i nu / k^2) A_k
/// with every index restricted to 1 <= |k_i| <= N. Plain nested loops.
SpectralField rhs_spectral_brute(const SpectralField& a, double coef_a, double coef_b,
                                 double gamma, double nu, int max_modes = default_max_modes);

/// H = (1/2) sum_{k1 + k2 = k3 + k4} T(k1,k2,k3,k4) conj(A1) conj(A2) A3 A4
///     + nu sum |A_k|^2 / |k|^3.
///
/// With this normalization rhs_spectral_brute (gamma = 0) equals
/// i|k| dH/d conj(A_k). The spatial Hamiltonian (an integral over [0, 2pi))
/// is 2 pi times this value.
///
/// Throws Error if the imaginary part exceeds 1e-10 (1 + |H|).
double hamiltonian_brute(const SpectralField& a, double coef_a, double coef_b, double nu,
                         int max_modes = default_max_modes);

}  // namespace splasmon::oracle
