#include "hyperwind/derivatives.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "hyperwind/errors.hpp"

namespace hyperwind::evolution {

std::string_view to_string(Scheme s) {
  return s == Scheme::Spectral ? "spectral" : "fd4";
}

namespace {
// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Differentiator::Fft {
  std::size_t n;
  std::size_t modes;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_complex* work = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<double> kappa;

  Fft(std::size_t points, double length) : n(points), modes(points / 2 + 1), kappa(modes) {
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(modes);
    work = fftw_alloc_complex(modes);
    {
      std::lock_guard lock(planner_mutex());
      const int ni = static_cast<int>(n);
      forward = fftw_plan_dft_r2c_1d(ni, real, spec, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_1d(ni, work, real, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    }
    for (std::size_t j = 0; j < modes; ++j)
      kappa[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / length;
  }

  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
    fftw_free(work);
  }

  void transform(std::span<const double> f) {
    std::copy(f.begin(), f.end(), real);
    fftw_execute(forward);
  }

  // out = ifft(spec * (i kappa)^order); the odd Nyquist mode is dropped.
  void apply(int order, std::span<double> out) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < modes; ++j) {
      const double re = spec[j][0];
      const double im = spec[j][1];
      const double k = kappa[j];
      if (order == 1) {
        const bool nyquist = (n % 2 == 0) && j == n / 2;
        work[j][0] = nyquist ? 0.0 : -k * im * inv_n;
        work[j][1] = nyquist ? 0.0 : k * re * inv_n;
      } else {
        work[j][0] = -k * k * re * inv_n;
        work[j][1] = -k * k * im * inv_n;
      }
    }
    fftw_execute(backward);
    std::copy(real, real + n, out.begin());
  }
};

Differentiator::Differentiator(std::size_t points, double length, Scheme scheme)
    : points_(points), length_(length), scheme_(scheme) {
  if (points == 0) throw DomainError("differentiator: grid has no points");
  if (scheme == Scheme::FourthOrderCentered && points < 5)
    throw DomainError("differentiator: the fourth-order stencil needs at least 5 points");
  if (!(length > 0.0)) throw DomainError("differentiator: domain length must be positive");
  h_ = length / static_cast<double>(points);
  if (scheme == Scheme::Spectral) fft_ = std::make_unique<Fft>(points, length);
}

Differentiator::~Differentiator() = default;
Differentiator::Differentiator(Differentiator&&) noexcept = default;
Differentiator& Differentiator::operator=(Differentiator&&) noexcept = default;

void Differentiator::first(std::span<const double> f, std::span<double> out) {
  const std::size_t n = points_;
  if (scheme_ == Scheme::Spectral) {
    fft_->transform(f);
    fft_->apply(1, out);
    return;
  }
  const double s = 1.0 / (12.0 * h_);
  for (std::size_t i = 0; i < n; ++i) {
    const double fm2 = f[(i + n - 2) % n], fm1 = f[(i + n - 1) % n];
    const double fp1 = f[(i + 1) % n], fp2 = f[(i + 2) % n];
    out[i] = s * ((fm2 - fp2) + 8.0 * (fp1 - fm1));
  }
}

void Differentiator::second(std::span<const double> f, std::span<double> out) {
  const std::size_t n = points_;
  if (scheme_ == Scheme::Spectral) {
    fft_->transform(f);
    fft_->apply(2, out);
    return;
  }
  const double s = 1.0 / (12.0 * h_ * h_);
  for (std::size_t i = 0; i < n; ++i) {
    const double fm2 = f[(i + n - 2) % n], fm1 = f[(i + n - 1) % n];
    const double fp1 = f[(i + 1) % n], fp2 = f[(i + 2) % n];
    out[i] = s * (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f[i]);
  }
}

void Differentiator::both(std::span<const double> f, std::span<double> d1, std::span<double> d2) {
  if (scheme_ == Scheme::Spectral) {
    fft_->transform(f);
    fft_->apply(1, d1);
    fft_->apply(2, d2);
    return;
  }
  first(f, d1);
  second(f, d2);
}

double Differentiator::first_symbol_max() const {
  if (scheme_ == Scheme::Spectral) {
    const std::size_t top = points_ % 2 == 0 ? points_ / 2 - 1 : points_ / 2;
    return 2.0 * std::numbers::pi * static_cast<double>(top) / length_;
  }
  // max over theta of (8 sin theta - sin 2 theta)/6
  return 1.3722757 / h_;
}

double Differentiator::second_symbol_max() const {
  if (scheme_ == Scheme::Spectral) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(points_ / 2) / length_;
    return k * k;
  }
  return 16.0 / (3.0 * h_ * h_);
}

std::vector<double> Differentiator::wavenumbers() const {
  std::vector<double> out;
  for (std::size_t j = 1; j <= points_ / 2; ++j)
    out.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / length_);
  return out;
}

}  // namespace hyperwind::evolution
