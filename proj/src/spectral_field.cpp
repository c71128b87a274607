#include "splasmon/spectral_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "splasmon/errors.hpp"

namespace splasmon {

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::plus: return "plus";
    case FieldKind::minus: return "minus";
    case FieldKind::mixed: break;
  }
  return "mixed";
}

std::string to_string(DealiasMode mode) {
  return mode == DealiasMode::paper_truncation ? "paper_truncation" : "exact_pad";
}

DealiasMode dealias_mode_from_string(const std::string& name) {
  if (name == "paper_truncation") return DealiasMode::paper_truncation;
  if (name == "exact_pad") return DealiasMode::exact_pad;
  throw ParameterError("unknown dealias mode '" + name +
                       "' (expected paper_truncation or exact_pad)");
}

std::size_t DealiasPolicy::grid_size(int n_modes) const {
  if (n_modes <= 0) throw ParameterError("grid_size: n_modes must be positive");
  if (!(pad_factor >= 1.0)) throw ParameterError("dealias pad_factor must be >= 1");
  const auto n = static_cast<std::size_t>(n_modes);
  if (mode == DealiasMode::paper_truncation) return 4 * n;
  const double target = std::ceil(pad_factor * static_cast<double>(4 * n + 2));
  return fft_friendly_size(static_cast<std::size_t>(target));
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(int n_modes, FieldKind kind)
    : n_modes_(n_modes), kind_(kind) {
  if (n_modes <= 0) throw ParameterError("SpectralField: n_modes must be positive");
  coeffs_.assign(2 * static_cast<std::size_t>(n_modes), Complex{});
}

int SpectralField::slot(int k) const {
  if (k == 0) throw ModeError("k = 0 is not a valid mode of a zero-mean field");
  if (k > n_modes_ || k < -n_modes_) {
    throw ModeError("mode " + std::to_string(k) + " outside 1 <= |k| <= " +
                    std::to_string(n_modes_));
  }
  return k < 0 ? k + n_modes_ : k + n_modes_ - 1;
}

Complex SpectralField::operator[](int k) const { return coeffs_[slot(k)]; }

void SpectralField::set(int k, Complex value) {
  const int j = slot(k);
  if (value != Complex{}) {
    if (kind_ == FieldKind::plus && k < 0)
      throw TypeViolation("plus-type field cannot hold mode " + std::to_string(k));
    if (kind_ == FieldKind::minus && k > 0)
      throw TypeViolation("minus-type field cannot hold mode " + std::to_string(k));
  }
  coeffs_[j] = value;
}

std::span<const Complex> SpectralField::positive() const noexcept {
  return std::span<const Complex>(coeffs_).subspan(static_cast<std::size_t>(n_modes_));
}

std::vector<Complex> SpectralField::negative() const {
  std::vector<Complex> out(static_cast<std::size_t>(n_modes_));
  for (int j = 0; j < n_modes_; ++j) out[j] = coeffs_[n_modes_ - 1 - j];
  return out;
}

bool SpectralField::has_plus_content() const noexcept {
  return std::any_of(coeffs_.begin() + n_modes_, coeffs_.end(),
                     [](Complex c) { return c != Complex{}; });
}

bool SpectralField::has_minus_content() const noexcept {
  return std::any_of(coeffs_.begin(), coeffs_.begin() + n_modes_,
                     [](Complex c) { return c != Complex{}; });
}

bool SpectralField::is_zero() const noexcept {
  return !has_plus_content() && !has_minus_content();
}

void SpectralField::check_kind() const {
  if (kind_ == FieldKind::plus && has_minus_content())
    throw TypeViolation("plus-type field has negative-wavenumber content");
  if (kind_ == FieldKind::minus && has_plus_content())
    throw TypeViolation("minus-type field has positive-wavenumber content");
}

SpectralField SpectralField::with_kind(FieldKind kind) const {
  SpectralField out = *this;
  out.kind_ = kind;
  out.check_kind();
  return out;
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (other.n_modes_ != n_modes_) {
    throw ResolutionMismatch("fields have " + std::to_string(n_modes_) + " and " +
                             std::to_string(other.n_modes_) + " modes");
  }
}

FieldKind combined_kind(FieldKind a, FieldKind b) {
  return a == b ? a : FieldKind::mixed;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  return add_scaled(1.0, other);
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  return add_scaled(-1.0, other);
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::add_scaled(Complex scale, const SpectralField& other) {
  check_compatible(other);
  kind_ = combined_kind(kind_, other.kind_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += scale * other.coeffs_[j];
  return *this;
}

SpectralField& SpectralField::add_compensated(const SpectralField& delta, SpectralField& carry) {
  check_compatible(delta);
  check_compatible(carry);
  kind_ = combined_kind(kind_, delta.kind_);
  const auto sum = [](double& acc, double d, double& c) {
    const double y = d - c;
    const double t = acc + y;
    c = (t - acc) - y;
    acc = t;
  };
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    double re = coeffs_[j].real();
    double im = coeffs_[j].imag();
    double cre = carry.coeffs_[j].real();
    double cim = carry.coeffs_[j].imag();
    sum(re, delta.coeffs_[j].real(), cre);
    sum(im, delta.coeffs_[j].imag(), cim);
    coeffs_[j] = Complex(re, im);
    carry.coeffs_[j] = Complex(cre, cim);
  }
  return *this;
}

bool SpectralField::operator==(const SpectralField& other) const {
  return n_modes_ == other.n_modes_ && coeffs_ == other.coeffs_;
}

// ---------------------------------------------------------------------------

SpectralField make_field(int n_modes, const std::map<int, Complex>& coeffs, FieldKind kind) {
  SpectralField out(n_modes, kind);
  for (const auto& [k, c] : coeffs) out.set(k, c);
  return out;
}

SpectralField project_plus(const SpectralField& a) {
  SpectralField out(a.n_modes(), FieldKind::plus);
  for (int k = 1; k <= a.n_modes(); ++k) out.set(k, a[k]);
  return out;
}

SpectralField project_minus(const SpectralField& a) {
  SpectralField out(a.n_modes(), FieldKind::minus);
  for (int k = 1; k <= a.n_modes(); ++k) out.set(-k, a[-k]);
  return out;
}

SpectralField conjugate(const SpectralField& a) {
  FieldKind kind = FieldKind::mixed;
  if (a.kind() == FieldKind::plus) kind = FieldKind::minus;
  if (a.kind() == FieldKind::minus) kind = FieldKind::plus;
  SpectralField out(a.n_modes(), kind);
  a.for_each_mode([&](int k, Complex c) {
    if (c != Complex{}) out.set(-k, std::conj(c));
  });
  return out;
}

SpectralField spectral_derivative(const SpectralField& a, int n) {
  SpectralField out = a;
  out.transform_modes([n](int k, Complex c) {
    return c * std::pow(Complex(0.0, static_cast<double>(k)), n);
  });
  return out;
}

SpectralField abs_derivative(const SpectralField& a, double s) {
  SpectralField out = a;
  out.transform_modes([s](int k, Complex c) {
    return c * std::pow(std::abs(static_cast<double>(k)), s);
  });
  return out;
}

namespace {

// Writes the coefficients into a length-G array (FFT index order). Requires
// G >= 2N + 1 so no two modes share a slot.
void scatter(const SpectralField& a, std::span<Complex> spectrum) {
  std::fill(spectrum.begin(), spectrum.end(), Complex{});
  const std::size_t g = spectrum.size();
  a.for_each_mode([&](int k, Complex c) { spectrum[index_of_mode(k, g)] += c; });
}

// Smallest and largest k with a nonzero coefficient; {1, 0} for the zero field.
std::pair<int, int> support(const SpectralField& a) {
  int lo = 1, hi = 0;
  bool any = false;
  a.for_each_mode([&](int k, Complex c) {
    if (c == Complex{}) return;
    if (!any) lo = k;
    hi = k;
    any = true;
  });
  return {lo, hi};
}

bool mean_structurally_zero(const SpectralField& a, const SpectralField& b) {
  for (int k = 1; k <= a.n_modes(); ++k) {
    if (a[k] != Complex{} && b[-k] != Complex{}) return false;
    if (a[-k] != Complex{} && b[k] != Complex{}) return false;
  }
  return true;
}

}  // namespace

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b,
                                const DealiasPolicy& policy, ZeroModeHandling zero_mode) {
  if (a.n_modes() != b.n_modes()) {
    throw ResolutionMismatch("dealiased_product: fields have " + std::to_string(a.n_modes()) +
                             " and " + std::to_string(b.n_modes()) + " modes");
  }
  if (zero_mode == ZeroModeHandling::reject && !mean_structurally_zero(a, b)) {
    throw ModeError("dealiased_product: product may have a nonzero mean; "
                    "pass ZeroModeHandling::discard if it vanishes analytically");
  }
  const int n = a.n_modes();
  const std::size_t g = policy.grid_size(n);
  FftPlan plan(g);
  ComplexVector fa(g), fb(g);
  scatter(a, fa);
  scatter(b, fb);
  plan.to_grid(fa);
  plan.to_grid(fb);
  for (std::size_t j = 0; j < g; ++j) fa[j] *= fb[j];
  plan.to_spectrum(fa);

  FieldKind kind = FieldKind::mixed;
  if (a.kind() == FieldKind::plus && b.kind() == FieldKind::plus) kind = FieldKind::plus;
  if (a.kind() == FieldKind::minus && b.kind() == FieldKind::minus) kind = FieldKind::minus;
  // Coefficients outside the exact support of the product are roundoff.
  const auto [alo, ahi] = support(a);
  const auto [blo, bhi] = support(b);
  const int lo = alo + blo, hi = ahi + bhi;
  SpectralField out(n, kind);
  for (int k = 1; k <= n; ++k) {
    if (kind != FieldKind::minus && k >= lo && k <= hi) out.set(k, fa[index_of_mode(k, g)]);
    if (kind != FieldKind::plus && -k >= lo && -k <= hi) out.set(-k, fa[index_of_mode(-k, g)]);
  }
  return out;
}

double a_norm(const SpectralField& a) {
  double sum = 0.0;
  for (Complex c : a.coefficients()) sum += std::abs(c);
  return sum;
}

double l2_norm(const SpectralField& a) {
  long double sum = 0.0L;
  for (Complex c : a.coefficients()) sum += std::norm(c);
  return std::sqrt(2.0 * std::numbers::pi * static_cast<double>(sum));
}

double sobolev_norm(const SpectralField& a, double s) {
  double sum = 0.0;
  a.for_each_mode([&](int k, Complex c) {
    sum += std::pow(std::abs(static_cast<double>(k)), 2.0 * s) * std::norm(c);
  });
  return std::sqrt(sum);
}

ComplexVector sample_on_grid(const SpectralField& a, std::size_t points) {
  if (points == 0) throw ParameterError("sample_on_grid: need at least one point");
  ComplexVector values(points, Complex{});
  a.for_each_mode([&](int k, Complex c) { values[index_of_mode(k, points)] += c; });
  FftPlan plan(points);
  plan.to_grid(values);
  return values;
}

double sup_norm(const SpectralField& a, const DealiasPolicy& policy) {
  const auto values = sample_on_grid(a, policy.grid_size(a.n_modes()));
  double m = 0.0;
  for (Complex v : values) m = std::max(m, std::abs(v));
  return m;
}

SpectralField resize_modes(const SpectralField& a, int n_modes) {
  SpectralField out(n_modes, a.kind());
  const int keep = std::min(n_modes, a.n_modes());
  for (int k = 1; k <= keep; ++k) {
    out.set(k, a[k]);
    out.set(-k, a[-k]);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw IoError("snapshot: unexpected end of data");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const SpectralField& a) {
  put_le<std::int32_t>(out, a.n_modes());
  a.for_each_mode([&](int k, Complex c) {
    put_le<std::int32_t>(out, k);
    put_le<double>(out, c.real());
    put_le<double>(out, c.imag());
  });
  if (!out) throw IoError("snapshot: write failed");
}

SpectralField read_snapshot(std::istream& in) {
  const auto n = get_le<std::int32_t>(in);
  if (n <= 0) throw IoError("snapshot: invalid mode count " + std::to_string(n));
  SpectralField out(n);
  for (std::int32_t j = 0; j < 2 * n; ++j) {
    const auto k = get_le<std::int32_t>(in);
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    out.set(k, {re, im});
  }
  return out;
}

void write_snapshot_file(const std::string& path, const SpectralField& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_snapshot(out, a);
}

SpectralField read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_snapshot(in);
}

void write_grid_csv(std::ostream& out, const SpectralField& a, std::size_t points) {
  const auto values = sample_on_grid(a, points);
  out << "x,re,im,abs\n";
  char line[128];
  for (std::size_t j = 0; j < points; ++j) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", x, values[j].real(),
                  values[j].imag(), std::abs(values[j]));
    out << line;
  }
}

}  // namespace splasmon
