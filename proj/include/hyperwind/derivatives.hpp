#pragma once

// Periodic first and second derivatives on a uniform grid.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace hyperwind::evolution {

enum class Scheme { FourthOrderCentered, Spectral };
std::string_view to_string(Scheme s);

class Differentiator {
 public:
  Differentiator(std::size_t points, double length, Scheme scheme);
  ~Differentiator();
  Differentiator(Differentiator&&) noexcept;
  Differentiator& operator=(Differentiator&&) noexcept;
  Differentiator(const Differentiator&) = delete;
  Differentiator& operator=(const Differentiator&) = delete;

  std::size_t points() const { return points_; }
  Scheme scheme() const { return scheme_; }

  void first(std::span<const double> f, std::span<double> out);
  void second(std::span<const double> f, std::span<double> out);
  /// Both derivatives with one forward transform.
  void both(std::span<const double> f, std::span<double> d1, std::span<double> d2);

  /// Largest modulus of the discrete first / second derivative symbols.
  double first_symbol_max() const;
  double second_symbol_max() const;
  /// Resolved wavenumbers 2 pi j / length, j = 1 .. floor(M/2).
  std::vector<double> wavenumbers() const;

 private:
  struct Fft;
  std::size_t points_;
  double length_;
  double h_;
  Scheme scheme_;
  std::unique_ptr<Fft> fft_;
};

}  // namespace hyperwind::evolution
