#include "hyperwind/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyperwind/errors.hpp"

namespace hyperwind::reduction {

double evaluate(std::span<const double> ascending, double p) {
  double acc = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * p + *it;
  return acc;
}

std::complex<double> evaluate(std::span<const double> ascending, std::complex<double> p) {
  std::complex<double> acc = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * p + *it;
  return acc;
}

double PotentialPoly::operator()(double p) const { return evaluate(coefficients, p); }

double PotentialPoly::derivative(double p) const {
  double acc = 0.0;
  for (int i = degree(); i >= 1; --i) acc = acc * p + i * coefficients[static_cast<std::size_t>(i)];
  return acc;
}

std::vector<double> PotentialPoly::root_coefficients() const {
  std::vector<double> out(coefficients);
  if (scale != 1.0)
    for (double& a : out) a /= scale;
  return out;
}

std::vector<double> expand_roots(std::span<const std::complex<double>> roots, double leading) {
  std::vector<std::complex<double>> acc{leading};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= r * acc[i];
    }
    acc = std::move(next);
  }
  std::vector<double> out(acc.size());
  std::transform(acc.begin(), acc.end(), out.begin(), [](auto z) { return z.real(); });
  return out;
}

std::vector<double> expand_roots(std::span<const double> roots, double leading) {
  std::vector<std::complex<double>> z(roots.begin(), roots.end());
  return expand_roots(z, leading);
}

std::string_view to_string(RootKind kind) {
  switch (kind) {
    case RootKind::NoRoots: return "NoRoots";
    case RootKind::SingleRoot: return "SingleRoot";
    case RootKind::TwoDistinctReal: return "TwoDistinctReal";
    case RootKind::DoubleRoot: return "DoubleRoot";
    case RootKind::ComplexPair: return "ComplexPair";
    case RootKind::ThreeDistinctReal: return "ThreeDistinctReal";
    case RootKind::DoubleRootPlusSimple: return "DoubleRootPlusSimple";
    case RootKind::TripleRoot: return "TripleRoot";
    case RootKind::OneRealPlusComplexPair: return "OneRealPlusComplexPair";
    case RootKind::FourDistinctReal: return "FourDistinctReal";
    case RootKind::TwoRealPlusComplexPair: return "TwoRealPlusComplexPair";
    case RootKind::TwoComplexPairs: return "TwoComplexPairs";
    case RootKind::DoubleRootPlusTwoSimple: return "DoubleRootPlusTwoSimple";
    case RootKind::DoubleRootPlusComplexPair: return "DoubleRootPlusComplexPair";
    case RootKind::TwoDoubleRoots: return "TwoDoubleRoots";
    case RootKind::TripleRootPlusSimple: return "TripleRootPlusSimple";
    case RootKind::QuadrupleRoot: return "QuadrupleRoot";
    case RootKind::DoubleComplexPair: return "DoubleComplexPair";
  }
  return "Unknown";
}

std::vector<double> RootStructure::real_roots(int multiplicity) const {
  std::vector<double> out;
  for (const auto& r : roots)
    if (r.is_real() && (multiplicity == 0 || r.multiplicity == multiplicity))
      out.push_back(r.value.real());
  return out;
}

std::vector<double> RootStructure::reconstruct(double leading) const {
  std::vector<std::complex<double>> all;
  for (const auto& r : roots)
    for (int i = 0; i < r.multiplicity; ++i) all.push_back(r.value);
  return expand_roots(all, leading);
}

namespace {

using cld = std::complex<long double>;

std::vector<std::complex<double>> companion_roots(std::span<const double> a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 1) return {-a[0] / a[1]};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -a[static_cast<std::size_t>(i)] / a[static_cast<std::size_t>(n)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  return out;
}

// Aberth-Ehrlich refinement. Simultaneous updates keep coincident
// estimates from collapsing onto one simple root.
void aberth_polish(std::span<const double> a, std::vector<std::complex<double>>& roots) {
  const std::size_t n = roots.size();
  if (n < 2) return;
  std::vector<cld> z(roots.begin(), roots.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (z[i] == z[j]) z[i] += cld(0, 1e-9L * (1.0L + std::abs(z[i])));

  std::vector<long double> coeff(a.begin(), a.end());
  for (int iter = 0; iter < 200; ++iter) {
    long double biggest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cld p = 0, dp = 0;
      for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
        dp = dp * z[i] + p;
        p = p * z[i] + *it;
      }
      if (p == cld(0)) continue;
      const cld w = p / dp;
      cld repulsion = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) repulsion += 1.0L / (z[i] - z[j]);
      const cld step = w / (1.0L - w * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      biggest = std::max(biggest, std::abs(step) / (1.0L + std::abs(z[i])));
    }
    if (biggest < 4 * std::numeric_limits<long double>::epsilon()) break;
  }
  for (std::size_t i = 0; i < n; ++i)
    roots[i] = {static_cast<double>(z[i].real()), static_cast<double>(z[i].imag())};
}

// A root of multiplicity m >= 3 comes back from floating point as m points
// spread by about eps^(1/m), well beyond the clustering radius. A tight
// subset is merged when the simple zero c of P^(m-1) near it also has
// P^(j)(c) / j! at rounding level for every j < m.
std::vector<Root> extract_high_multiplicity(std::span<const double> a, std::vector<std::complex<double>>& raw) {
  std::vector<Root> found;
  const int n = static_cast<int>(raw.size());
  const double eps = std::numeric_limits<double>::epsilon();
  double size = 0;
  for (double c : a) size += std::abs(c);
  for (int m = n; m >= 3; --m) {
    for (unsigned mask = 0; mask < (1u << raw.size()); ++mask) {
      if (std::popcount(mask) != m) continue;
      std::complex<double> centroid = 0;
      std::vector<std::complex<double>> rest;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (mask & (1u << i)) centroid += raw[i];
        else rest.push_back(raw[i]);
      }
      centroid /= static_cast<double>(m);
      const double spread_limit = 16.0 * std::pow(eps, 1.0 / m) * (1.0 + std::abs(centroid));
      bool tight = std::abs(centroid.imag()) <= spread_limit;
      for (std::size_t i = 0; i < raw.size(); ++i)
        if ((mask & (1u << i)) && std::abs(raw[i] - centroid) > spread_limit) tight = false;
      if (!tight) continue;

      // Taylor coefficients about c: repeated synthetic division by (p - c).
      auto taylor = [&](long double c) {
        std::vector<long double> t(a.begin(), a.end());
        for (std::size_t j = 0; j < t.size(); ++j)
          for (std::size_t i = t.size() - 1; i > j; --i) t[i - 1] += c * t[i];
        return t;  // t[j] = P^(j)(c) / j!
      };
      long double c = centroid.real();
      for (int iter = 0; iter < 60; ++iter) {
        const auto t = taylor(c);
        const std::size_t j = static_cast<std::size_t>(m - 1);
        if (t[j + 1] == 0) break;
        // d/dc of P^(m-1)/(m-1)! is m t[m]
        const long double step = t[j] / (static_cast<long double>(m) * t[j + 1]);
        c -= step;
        if (std::abs(step) <= 4 * std::numeric_limits<long double>::epsilon() * (1 + std::abs(c))) break;
      }
      const auto t = taylor(c);
      const double bound = 64.0 * eps * size * std::pow(1.0 + std::abs(static_cast<double>(c)), n);
      bool consistent = true;
      for (int j = 0; j < m; ++j)
        if (std::abs(static_cast<double>(t[static_cast<std::size_t>(j)])) > bound) consistent = false;
      if (!consistent) continue;
      found.push_back({{static_cast<double>(c), 0.0}, m});
      raw = std::move(rest);
      return found;  // at most one such cluster fits in degree <= 4
    }
  }
  return found;
}

RootKind kind_for(std::vector<int> real_mult, std::vector<int> complex_mult, int degree) {
  std::sort(real_mult.begin(), real_mult.end(), std::greater<>());
  std::sort(complex_mult.begin(), complex_mult.end(), std::greater<>());
  const auto r = real_mult;
  const auto c = complex_mult;  // one entry per conjugate pair
  switch (degree) {
    case 0: return RootKind::NoRoots;
    case 1: return RootKind::SingleRoot;
    case 2:
      if (!c.empty()) return RootKind::ComplexPair;
      return r.size() == 2 ? RootKind::TwoDistinctReal : RootKind::DoubleRoot;
    case 3:
      if (!c.empty()) return RootKind::OneRealPlusComplexPair;
      if (r.size() == 3) return RootKind::ThreeDistinctReal;
      if (r.size() == 2) return RootKind::DoubleRootPlusSimple;
      return RootKind::TripleRoot;
    default:
      if (c.size() == 2) return RootKind::TwoComplexPairs;
      if (c.size() == 1 && c[0] == 2) return RootKind::DoubleComplexPair;
      if (c.size() == 1) return r.size() == 2 ? RootKind::TwoRealPlusComplexPair
                                              : RootKind::DoubleRootPlusComplexPair;
      if (r.size() == 4) return RootKind::FourDistinctReal;
      if (r.size() == 3) return RootKind::DoubleRootPlusTwoSimple;
      if (r.size() == 2) return r[0] == 2 ? RootKind::TwoDoubleRoots : RootKind::TripleRootPlusSimple;
      return RootKind::QuadrupleRoot;
  }
}

}  // namespace

RootStructure classify_roots(std::span<const double> ascending, double tol) {
  if (ascending.empty()) throw DomainError("classify_roots: empty polynomial");
  if (ascending.size() > 5) throw DomainError("classify_roots: degree above 4 is not supported");

  RootStructure out;
  out.tolerance = tol;
  out.cluster_radius = std::max(tol, 4.0 * std::sqrt(std::numeric_limits<double>::epsilon()));

  std::vector<double> a(ascending.begin(), ascending.end());
  const double biggest = std::abs(*std::max_element(a.begin(), a.end(), [](double x, double y) {
    return std::abs(x) < std::abs(y);
  }));
  while (a.size() > 1 && std::abs(a.back()) <= tol * biggest) {
    a.pop_back();
    out.degree_reduced = true;
  }
  out.degree = static_cast<int>(a.size()) - 1;
  if (out.degree <= 0) {
    out.kind = RootKind::NoRoots;
    return out;
  }

  auto raw = companion_roots(a);
  aberth_polish(a, raw);
  const auto multiples = extract_high_multiplicity(a, raw);

  const double radius = out.cluster_radius;
  for (auto& r : raw)
    if (std::abs(r.imag()) <= radius * (1.0 + std::abs(r))) r = {r.real(), 0.0};

  // Single-link clustering on the real line and in the upper half plane.
  std::vector<std::complex<double>> reals, uppers;
  for (const auto& r : raw) {
    if (r.imag() == 0.0) reals.push_back(r);
    else if (r.imag() > 0.0) uppers.push_back(r);
  }
  auto cluster = [radius](std::vector<std::complex<double>> pts) {
    std::sort(pts.begin(), pts.end(), [](auto x, auto y) {
      return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
    });
    std::vector<std::vector<std::complex<double>>> groups;
    for (const auto& p : pts) {
      bool placed = false;
      for (auto& g : groups) {
        for (const auto& q : g) {
          if (std::abs(p - q) <= radius * (1.0 + std::max(std::abs(p), std::abs(q)))) {
            g.push_back(p);
            placed = true;
            break;
          }
        }
        if (placed) break;
      }
      if (!placed) groups.push_back({p});
    }
    std::vector<Root> merged;
    for (const auto& g : groups) {
      const auto sum = std::accumulate(g.begin(), g.end(), std::complex<double>(0.0));
      merged.push_back({sum / static_cast<double>(g.size()), static_cast<int>(g.size())});
    }
    return merged;
  };

  auto real_roots = cluster(reals);
  real_roots.insert(real_roots.end(), multiples.begin(), multiples.end());
  auto upper_roots = cluster(uppers);
  std::sort(real_roots.begin(), real_roots.end(),
            [](const Root& x, const Root& y) { return x.value.real() > y.value.real(); });

  std::vector<int> real_mult, complex_mult;
  for (const auto& r : real_roots) {
    out.roots.push_back(r);
    real_mult.push_back(r.multiplicity);
  }
  for (const auto& r : upper_roots) {
    out.roots.push_back(r);
    out.roots.push_back({std::conj(r.value), r.multiplicity});
    complex_mult.push_back(r.multiplicity);
  }
  out.kind = kind_for(real_mult, complex_mult, out.degree);

  for (std::size_t i = 0; i + 1 < real_roots.size(); ++i) {
    const double hi = real_roots[i].value.real();
    const double lo = real_roots[i + 1].value.real();
    if (evaluate(a, 0.5 * (lo + hi)) > 0.0) out.positive_intervals.push_back({lo, hi});
  }
  std::reverse(out.positive_intervals.begin(), out.positive_intervals.end());
  return out;
}

RootStructure classify_roots(const PotentialPoly& poly, double tol) {
  return classify_roots(poly.root_coefficients(), tol);
}

}  // namespace hyperwind::reduction
