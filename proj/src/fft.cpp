#include "splasmon/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace splasmon {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_7_smooth(std::size_t n) {
  for (std::size_t p : {2u, 3u, 5u, 7u}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

std::size_t fft_friendly_size(std::size_t n) {
  if (n <= 1) return 1;
  while (!is_7_smooth(n)) ++n;
  return n;
}

FftPlan::FftPlan(std::size_t size) : size_(size) {
  if (size == 0) throw std::invalid_argument("FftPlan: size must be positive");
  // Executed later on caller buffers through the new-array interface.
  std::vector<Complex> scratch(size);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int n = static_cast<int>(size);
  std::lock_guard lock(planner_mutex());
  forward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  backward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (forward_ == nullptr || backward_ == nullptr) {
    release();
    throw std::runtime_error("FftPlan: FFTW planning failed");
  }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : size_(other.size_), forward_(other.forward_), backward_(other.backward_) {
  other.forward_ = nullptr;
  other.backward_ = nullptr;
  other.size_ = 0;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    size_ = other.size_;
    forward_ = other.forward_;
    backward_ = other.backward_;
    other.forward_ = nullptr;
    other.backward_ = nullptr;
    other.size_ = 0;
  }
  return *this;
}

void FftPlan::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  forward_ = nullptr;
  backward_ = nullptr;
}

void FftPlan::to_grid(std::span<Complex> data) const {
  if (data.size() != size_) throw std::invalid_argument("FftPlan: size mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(backward_), as_fftw(data), as_fftw(data));
}

void FftPlan::to_spectrum(std::span<Complex> data) const {
  if (data.size() != size_) throw std::invalid_argument("FftPlan: size mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(forward_), as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& c : data) c *= scale;
}

}  // namespace splasmon
