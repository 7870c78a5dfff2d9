#pragma once

// Jacobi elliptic functions and the complete integral of the first kind,
// in the parameter convention sn(u | m), m = k^2.

namespace hyperwind::elliptic {

/// Within this distance of 0 or 1 the degenerate closed forms are used.
inline constexpr double kDegenerateSnap = 1e-12;

/// The parameter m, checked to lie in [0, 1].
class EllipticParameter {
 public:
  explicit EllipticParameter(double m);
  double value() const noexcept { return m_; }
  /// 1 - m, carried separately when the parameter is built from it.
  double complement() const noexcept { return mc_; }

  static EllipticParameter from_complement(double mc);

 private:
  EllipticParameter(double m, double mc) : m_(m), mc_(mc) {}
  double m_;
  double mc_;
};

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// sn, cn, dn by the descending arithmetic-geometric-mean scheme.
/// m = 0 and m = 1 (to within kDegenerateSnap) use sin/cos and tanh/sech.
JacobiTriple jacobi(double u, EllipticParameter m);
JacobiTriple jacobi(double u, double m);

/// Quarter period K(m) = pi / (2 AGM(1, sqrt(1 - m))). Throws
/// InfiniteResultError at m = 1.
double complete_K(EllipticParameter m);
double complete_K(double m);

}  // namespace hyperwind::elliptic
