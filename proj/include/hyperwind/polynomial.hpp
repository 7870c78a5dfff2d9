#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace hyperwind::reduction {

/// Which squared derivative the potential equals.
enum class Convention {
  HalfSquared,  ///< p'^2 / 2 = P(p)
  FullSquared,  ///< p'^2 = P(p)
};

struct HhmSource {
  double k = 0, v = 0, c = 0, Q = 0;
};
struct HsmSource {
  double v = 0, c = 0, Q = 0, R = 0;
};

/// Effective potential of a travelling-wave reduction.
struct PotentialPoly {
  /// Ascending powers of p, overall scale included.
  std::vector<double> coefficients;
  /// Overall positive factor; coefficients / scale is the polynomial whose
  /// roots are classified (the monic bracket for the sigma-model quartic).
  double scale = 1.0;
  Convention convention = Convention::HalfSquared;
  std::variant<std::monostate, HhmSource, HsmSource> source;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double operator()(double p) const;
  double derivative(double p) const;
  std::vector<double> root_coefficients() const;
};

double evaluate(std::span<const double> ascending, double p);
std::complex<double> evaluate(std::span<const double> ascending, std::complex<double> p);

/// leading * prod (p - r). Complex roots must come in conjugate pairs.
std::vector<double> expand_roots(std::span<const std::complex<double>> roots, double leading = 1.0);
std::vector<double> expand_roots(std::span<const double> roots, double leading = 1.0);

enum class RootKind {
  NoRoots,
  SingleRoot,
  TwoDistinctReal,
  DoubleRoot,
  ComplexPair,
  ThreeDistinctReal,
  DoubleRootPlusSimple,
  TripleRoot,
  OneRealPlusComplexPair,
  FourDistinctReal,
  TwoRealPlusComplexPair,
  TwoComplexPairs,
  DoubleRootPlusTwoSimple,
  DoubleRootPlusComplexPair,
  TwoDoubleRoots,
  TripleRootPlusSimple,
  QuadrupleRoot,
  DoubleComplexPair,
};

std::string_view to_string(RootKind kind);

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
  bool is_real() const { return value.imag() == 0.0; }
};

struct Interval {
  double lo = 0;
  double hi = 0;
};

inline constexpr double kDefaultRootTol = 1e-8;

struct RootStructure {
  RootKind kind = RootKind::NoRoots;
  /// Merged clusters: real roots in descending order, then complex roots
  /// (both members of each conjugate pair).
  std::vector<Root> roots;
  /// Requested relative clustering tolerance and the radius actually used.
  double tolerance = kDefaultRootTol;
  double cluster_radius = kDefaultRootTol;
  int degree = 0;
  bool degree_reduced = false;
  /// Bounded intervals between consecutive distinct real roots where P > 0.
  std::vector<Interval> positive_intervals;

  /// Distinct real roots, descending; optionally only those of a given multiplicity.
  std::vector<double> real_roots(int multiplicity = 0) const;
  /// Leading * prod (p - r)^mult over the stored roots.
  std::vector<double> reconstruct(double leading) const;
};

/// Roots from companion-matrix eigenvalues, refined by simultaneous
/// (Aberth) iteration in extended precision, then clustered: roots closer
/// than radius * (1 + |r|) merge, radius = max(tol, 4 sqrt(eps)).
RootStructure classify_roots(std::span<const double> ascending, double tol = kDefaultRootTol);
RootStructure classify_roots(const PotentialPoly& poly, double tol = kDefaultRootTol);

}  // namespace hyperwind::reduction
