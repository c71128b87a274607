#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace splasmon {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Smallest integer >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t fft_friendly_size(std::size_t n);

/// Complex-to-complex FFT of fixed length G, owning its FFTW plans.
///
/// Convention: grid values f(x_j), x_j = 2*pi*j/G, relate to coefficients by
///   f(x_j) = sum_m c[m] exp(i m x_j)            (to_grid)
///   c[m]   = (1/G) sum_j f(x_j) exp(-i m x_j)   (to_spectrum)
/// with index m in [0, G) holding mode m (m < G/2) or m - G.
///
/// Plans are created with FFTW_ESTIMATE so results are bit-reproducible.
/// Execution is safe from multiple threads as long as each thread uses its
/// own FftPlan instance; plan construction is serialized internally.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::size_t size() const noexcept { return size_; }

  /// In-place spectrum -> grid values (unnormalized backward transform).
  void to_grid(std::span<Complex> data) const;
  /// In-place grid values -> spectrum (normalized by 1/G).
  void to_spectrum(std::span<Complex> data) const;

 private:
  void release() noexcept;

  std::size_t size_ = 0;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

/// Signed mode number stored at FFT index m of a length-G array.
inline long mode_of_index(std::size_t m, std::size_t grid) {
  return m <= grid / 2 ? static_cast<long>(m)
                       : static_cast<long>(m) - static_cast<long>(grid);
}

/// FFT index holding signed mode k in a length-G array.
inline std::size_t index_of_mode(long k, std::size_t grid) {
  const long g = static_cast<long>(grid);
  return static_cast<std::size_t>(((k % g) + g) % g);
}

}  // namespace splasmon
