#include "splasmon/model.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "splasmon/errors.hpp"

namespace splasmon {

ModelCoefficients coefficients_from_ab(double a, double b) {
  ModelCoefficients c;
  c.a = a;
  c.b = b;
  c.alpha = 4.0 * a;
  c.beta = 4.0 * (a + b);
  return c;
}

ModelCoefficients coefficients_from_alpha_beta(double alpha, double beta, double gamma,
                                               double nu) {
  ModelCoefficients c;
  c.alpha = alpha;
  c.beta = beta;
  c.a = alpha / 4.0;
  c.b = beta / 4.0 - c.a;
  c.gamma = gamma;
  c.nu = nu;
  return c;
}

double DrudeSpec::omega0() const { return omega_p / std::numbers::sqrt2; }
double DrudeSpec::c0() const { return 1.0 / std::sqrt(eps0 * mu0); }

void validate(const MaterialSpec& m) {
  const double scale = std::max({1.0, std::abs(m.eps_r_plus), std::abs(m.eps_r_minus)});
  if (std::abs(m.eps_r_plus + m.eps_r_minus) > 1e-10 * scale) {
    throw ParameterError("material: eps_r_plus + eps_r_minus must vanish at omega0");
  }
  if (m.eps_r_prime_plus + m.eps_r_prime_minus == 0.0) {
    throw ParameterError("material: eps_r_prime_plus + eps_r_prime_minus is zero");
  }
}

ModelCoefficients coefficients_from_materials(const MaterialSpec& m) {
  validate(m);
  const double denom = m.eps_r_prime_plus + m.eps_r_prime_minus;
  ModelCoefficients c = coefficients_from_ab((m.chi_plus_a + m.chi_minus_a) / denom,
                                             (m.chi_plus_b + m.chi_minus_b) / denom);
  c.gamma = (m.eps_i_plus + m.eps_i_minus) / denom;
  c.nu = 0.5 * m.mu * m.omega0 * m.omega0 *
         (m.eps_r_plus * m.eps_r_plus + m.eps_r_minus * m.eps_r_minus) / denom;
  return c;
}

MaterialSpec drude_material(const DrudeSpec& d) {
  // eps-(w) = eps0 (1 - wp^2/w^2 + i gamma_d wp^2 / w^3 + O(gamma_d^2)), wp^2 = 2 w0^2.
  const double w0 = d.omega0();
  MaterialSpec m;
  m.omega0 = w0;
  m.mu = d.mu0;
  m.eps_r_plus = d.eps0;
  m.eps_r_minus = -d.eps0;
  m.eps_r_prime_plus = 0.0;
  m.eps_r_prime_minus = 4.0 * d.eps0 / w0;
  m.eps_i_plus = 0.0;
  m.eps_i_minus = 2.0 * d.eps0 * d.gamma_d / w0;
  return m;
}

double interaction_T(double k1, double k2, double k3, double k4, double a, double b) {
  if (k1 == 0.0 || k2 == 0.0 || k3 == 0.0 || k4 == 0.0) {
    throw ModeError("interaction_T: wavenumbers must be nonzero");
  }
  const double denom = k1 * k2 * k3 * k4 *
                       (std::abs(k1) + std::abs(k2) + std::abs(k3) + std::abs(k4));
  const double same = (k1 * k3 + std::abs(k1 * k3)) * (k2 * k4 + std::abs(k2 * k4));
  const double opposite = (k1 * k2 - std::abs(k1 * k2)) * (k3 * k4 - std::abs(k3 * k4));
  return (2.0 * a * same + b * opposite) / denom;
}

double interaction_T_sym(double k1, double k2, double k3, double k4, double a, double b) {
  return 0.5 * (interaction_T(k1, k2, k3, k4, a, b) + interaction_T(k1, k2, k4, k3, a, b));
}

double drude_dispersion(double k, double omega0, double c0) {
  if (k < 0.0) throw ParameterError("drude_dispersion: k must be >= 0");
  const double w2 = omega0 * omega0;
  const double ck2 = c0 * c0 * k * k;
  const double root = std::hypot(w2, ck2);
  // w0^2 + x - root rewritten as w0^2 - w0^4 / (x + root) to avoid cancellation.
  const double omega_sq = w2 - (w2 * w2) / (ck2 + root);
  return std::sqrt(std::max(0.0, omega_sq));
}

double general_dispersion_solve(double k, const Permittivity& eps_plus,
                                const Permittivity& eps_minus, double mu, Bracket bracket) {
  if (!(k > 0.0)) throw ParameterError("general_dispersion_solve: k must be > 0");
  if (!(bracket.lo < bracket.hi)) throw ParameterError("general_dispersion_solve: empty bracket");
  auto residual = [&](double w) {
    const double ep = eps_plus(w);
    const double em = eps_minus(w);
    const double r = k * k - mu * w * w * ep * em / (ep + em);
    if (!std::isfinite(ep) || !std::isfinite(em) || !std::isfinite(r)) {
      throw ParameterError("general_dispersion_solve: non-finite permittivity at omega = " +
                           std::to_string(w));
    }
    return r;
  };
  const double f_lo = residual(bracket.lo);
  const double f_hi = residual(bracket.hi);
  if (f_lo == 0.0) return bracket.lo;
  if (f_hi == 0.0) return bracket.hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw ParameterError("general_dispersion_solve: no sign change in bracket");
  }
  auto tolerance = [](double lo, double hi) {
    const double scale = std::max(std::abs(lo), std::abs(hi));
    return hi - lo <= std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * scale);
  };
  std::uintmax_t max_iter = 500;
  const auto [lo, hi] = boost::math::tools::toms748_solve(residual, bracket.lo, bracket.hi, f_lo,
                                                          f_hi, tolerance, max_iter);
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

MaterialPreset material_preset(const std::string& name) {
  if (name == "unit-drude") {
    return {"unit-drude", DrudeSpec{std::numbers::sqrt2, 1.0, 1.0, 0.0}, 0.25, 0.25};
  }
  if (name == "gold-drude") {
    // Drude plasma frequency of gold, SI units.
    return {"gold-drude", DrudeSpec{1.35e16, 8.8541878128e-12, 1.25663706212e-6, 0.0}, 0.25,
            0.25};
  }
  throw ParameterError("unknown material preset '" + name + "'");
}

std::vector<std::string> material_preset_names() { return {"unit-drude", "gold-drude"}; }

MaterialPreset load_material(const std::string& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("material file: ") + e.what());
  }
  const auto section = tree.get_child_optional("material");
  if (!section) throw ConfigError(path + ": missing [material] section");
  for (const auto& [key, _] : tree) {
    if (key != "material") throw ConfigError(path + ": unknown section [" + key + "]");
  }
  MaterialPreset preset = material_preset(section->get<std::string>("base", "unit-drude"));
  preset.name = section->get<std::string>("name", path);
  static const std::set<std::string> known{"base", "name", "omega_p", "eps0", "mu0",
                                           "gamma_d", "a", "b"};
  for (const auto& [key, value] : *section) {
    if (!known.contains(key)) throw ConfigError(path + ": unknown key '" + key + "'");
  }
  try {
    preset.drude.omega_p = section->get("omega_p", preset.drude.omega_p);
    preset.drude.eps0 = section->get("eps0", preset.drude.eps0);
    preset.drude.mu0 = section->get("mu0", preset.drude.mu0);
    preset.drude.gamma_d = section->get("gamma_d", preset.drude.gamma_d);
    preset.a = section->get("a", preset.a);
    preset.b = section->get("b", preset.b);
  } catch (const pt::ptree_bad_data& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return preset;
}

ModelCoefficients coefficients_from_preset(const MaterialPreset& preset) {
  ModelCoefficients c = coefficients_from_materials(drude_material(preset.drude));
  const ModelCoefficients ab = coefficients_from_ab(preset.a, preset.b);
  c.a = ab.a;
  c.b = ab.b;
  c.alpha = ab.alpha;
  c.beta = ab.beta;
  return c;
}

}  // namespace splasmon
