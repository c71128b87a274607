#pragma once

#include <functional>
#include <string>
#include <vector>

namespace splasmon {

/// Linear and nonlinear response of the two media at the limiting
/// frequency omega0. "plus" is the medium in z > 0, "minus" in z < 0.
struct MaterialSpec {
  double eps_r_plus = 0.0;
  double eps_r_minus = 0.0;
  double eps_r_prime_plus = 0.0;   ///< d eps_r / d omega at omega0
  double eps_r_prime_minus = 0.0;
  double eps_i_plus = 0.0;
  double eps_i_minus = 0.0;
  double chi_plus_a = 0.0;         ///< chi(omega0, -omega0, omega0)
  double chi_minus_a = 0.0;
  double chi_plus_b = 0.0;         ///< chi(omega0, omega0, -omega0)
  double chi_minus_b = 0.0;
  double mu = 1.0;
  double omega0 = 1.0;
};

/// Coefficients of the amplitude equations.
struct ModelCoefficients {
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;   ///< damping
  double nu = 0.0;      ///< short-wave dispersion
  double Omega = 0.0;   ///< forcing detuning; 0 when unforced

  bool operator==(const ModelCoefficients&) const = default;
};

/// alpha = 4a, beta = 4(a + b), other fields zero.
ModelCoefficients coefficients_from_ab(double a, double b);

/// Coefficients with a = alpha/4 and b = beta/4 - a.
ModelCoefficients coefficients_from_alpha_beta(double alpha, double beta,
                                               double gamma = 0.0, double nu = 0.0);

/// Vacuum over a free-electron (Drude) metal.
struct DrudeSpec {
  double omega_p = 1.0;  ///< plasma frequency
  double eps0 = 1.0;
  double mu0 = 1.0;
  double gamma_d = 0.0;  ///< collision rate

  double omega0() const;  ///< omega_p / sqrt(2)
  double c0() const;      ///< 1 / sqrt(eps0 mu0)
};

/// Throws ParameterError if the surface-plasmon condition
/// eps_r_plus + eps_r_minus = 0 fails (tolerance 1e-10, relative to the
/// permittivity scale) or the derivative sum vanishes.
void validate(const MaterialSpec& m);

ModelCoefficients coefficients_from_materials(const MaterialSpec& m);

/// Material response of the vacuum/Drude interface at omega0, to first order
/// in the collision rate. The nonlinear susceptibilities are set to zero;
/// Drude media do not define them.
MaterialSpec drude_material(const DrudeSpec& d);

/// Four-wave interaction coefficient (asymmetric form).
double interaction_T(double k1, double k2, double k3, double k4, double a, double b);

/// (T(k1,k2,k3,k4) + T(k1,k2,k4,k3)) / 2.
double interaction_T_sym(double k1, double k2, double k3, double k4, double a, double b);

/// Vacuum/Drude SPP branch: omega^2 = omega0^2 + c0^2 k^2 - sqrt(omega0^4 + c0^4 k^4).
double drude_dispersion(double k, double omega0, double c0);

using Permittivity = std::function<double(double omega)>;

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Root omega of k^2 - mu omega^2 eps+ eps- / (eps+ + eps-) = 0 in `bracket`,
/// to absolute tolerance 1e-12 (or a few ulps of omega when larger).
double general_dispersion_solve(double k, const Permittivity& eps_plus,
                                const Permittivity& eps_minus, double mu,
                                Bracket bracket);

/// Named material setups. a and b are given directly because the
/// susceptibilities of real media are not tabulated here.
struct MaterialPreset {
  std::string name;
  DrudeSpec drude;
  double a = 0.25;
  double b = 0.25;
};

MaterialPreset material_preset(const std::string& name);
std::vector<std::string> material_preset_names();

/// Reads a material preset from key/value text, e.g.
///   [material]
///   omega_p = 1.35e16
///   eps0 = 8.8541878128e-12
///   mu0 = 1.25663706212e-6
///   gamma_d = 0
///   a = 0.25
///   b = 0.25
/// An optional `base = <preset>` key starts from a named preset.
MaterialPreset load_material(const std::string& path);

/// Coefficients of a preset: gamma and nu from the Drude response,
/// alpha and beta from a and b.
ModelCoefficients coefficients_from_preset(const MaterialPreset& preset);

}  // namespace splasmon
