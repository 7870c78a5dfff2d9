#pragma once

// Travelling-wave reductions theta = f(xi), phi = g(xi) + c t, xi = x - v t,
// with p = sinh f. The HHM reduction gives p'^2 / 2 = P(p) with a cubic P;
// the HSM reduction gives p'^2 = P(p) with an even quartic.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperwind/polynomial.hpp"

namespace hyperwind::reduction {

/// Tolerance for the algebraic branch tests of the existence check.
inline constexpr double kBranchTol = 1e-10;

/// c p^3 + (v^2 - k^2 + 2Q) p^2 / 2 + (c - k v) p + Q.
PotentialPoly build_P_hhm(double k, double v, double c, double Q);

/// (c^2/(v^2-1)^2) [p^4 + b2 p^2 + b0]. Throws SingularReductionError for
/// v^2 = 1 and DomainError for c = 0 (the bracket divides by c^2).
PotentialPoly build_P_hsm(double v, double c, double Q, double R);

// ---- c = 1 cnoidal parametrisation -------------------------------------

struct HhmCubicParams {
  double k = 0, v = 0, Q = 0;
};

/// (k, v, Q) with c = 1 whose cubic has the given three real roots. The
/// branch v > 0 is returned; (-k, -v) is the other. Throws DomainError when
/// the roots admit no real (k, v), e.g. v = 0 with kv != 0.
HhmCubicParams hhm_c1_params_from_roots(double p1, double p2, double p3);

/// Depressed-cubic data of the c = 1 cubic: with P = p^3 + a2 p^2 + a1 p + a0,
/// alpha = -a2 / 3 and Delta = alpha^2 - a1 / 3, i.e.
/// alpha = (k^2 - v^2 - 2Q)/6, Delta = alpha^2 - (1 - kv)/3.
struct AlphaDelta {
  double alpha = 0;
  double Delta = 0;
};
AlphaDelta hhm_c1_alpha_delta(double k, double v, double Q);

// ---- HSM coefficient matching ------------------------------------------

struct JKMatch {
  double j_squared = 0;
  double k_squared = 0;
};

struct Inadmissible {
  /// 1, 2 or 3, in the order the inequalities are checked.
  int condition = 0;
  std::string reason;
};

/// With c = 1: J^2 + K^2 = -(6 + 4q)/4, J^2 K^2 = (2 + 4q + 16 rho^2)/4.
/// Admissible iff q < -3/2, 2q > -(8 rho^2 + 1) and 1 - 2q >= 8|rho|.
std::variant<JKMatch, Inadmissible> match_JK(double q, double rho);

/// q = Q (v^2-1)^2 and rho = R (v^2-1)^2 - c v / 4, at c = 1.
struct QRho {
  double q = 0, rho = 0;
};
QRho hsm_q_rho(double v, double Q, double R);
/// Inverse of hsm_q_rho at c = 1: returns (Q, R).
std::array<double, 2> hsm_Q_R(double v, double q, double rho);

enum class HsmLineProfile {
  None,       ///< no bounded real orbit
  Periodic,   ///< oscillation between -J and J (J < K); no finite limit on R
  TanhKink,   ///< J = K: the only bounded profile with limits at +-infinity
};
std::string_view to_string(HsmLineProfile kind);

/// Bounded travelling profiles available on R for the monic quartic of (q, rho).
HsmLineProfile hsm_line_profile(double q, double rho, double tol = kDefaultRootTol);

// ---- existence of winding travelling waves -----------------------------

enum class Verdict {
  WindingOnCircle,
  NoWindingOnR,
  Inadmissible,
};
std::string_view to_string(Verdict verdict);

struct ExistenceVerdict {
  Verdict verdict = Verdict::Inadmissible;
  /// 'a'..'f' when verdict is NoWindingOnR, otherwise 0.
  char case_letter = 0;
  std::string reason;
  /// Algebraic steps in the order they were taken.
  std::vector<std::string> trace;
  std::optional<PotentialPoly> witness;
};

/// 2 v^3 P(k/v) = (k^2 + v^2)(2 Q v + 2 c k - k^2 v).
double hhm_existence_factor(double k, double v, double c, double Q);

/// Decision procedure for winding travelling waves of the HHM on X = R.
/// Never returns WindingOnCircle.
ExistenceVerdict winding_existence_hhm_on_R(double k, double v, double c, double Q,
                                            double tol = kBranchTol);

/// The sine family on S^1: c = 0, alpha = v^2 - k^2 + 2Q < 0 and
/// Q > k^2 v^2 / (2 alpha). Equality and c != 0 are Inadmissible.
ExistenceVerdict winding_existence_hhm_on_circle(double k, double v, double c, double Q);

/// Numeric check of the four necessary conditions on R, independent of the
/// case analysis.
struct ConditionsOnR {
  bool bounded_nonnegative = false;   ///< (i)  P >= 0 between the zeros
  bool double_plus_simple = false;    ///< (ii) one double and one simple zero
  bool double_at_k_over_v = false;    ///< (iii) the double zero is k/v
  bool vanishes_at_k_over_v = false;  ///< (iv) P(k/v) = 0
  bool all() const {
    return bounded_nonnegative && double_plus_simple && double_at_k_over_v &&
           vanishes_at_k_over_v;
  }
};
ConditionsOnR check_conditions_hhm_on_R(double k, double v, double c, double Q,
                                        double tol = kDefaultRootTol);

// ---- scans ---------------------------------------------------------------

/// n evenly spaced values on [lo, hi]; n = 1 gives lo.
struct Axis {
  double lo = 0, hi = 0;
  std::size_t n = 0;
  double at(std::size_t i) const;
};

struct HhmScanSpec {
  Axis k, v, c, Q;
  double tol = kDefaultRootTol;
  std::size_t threads = 1;
  std::size_t tuples() const { return k.n * v.n * c.n * Q.n; }
};

struct HhmScanRow {
  std::array<std::size_t, 4> index{};
  double k = 0, v = 0, c = 0, Q = 0;
  RootKind kind = RootKind::NoRoots;
  Verdict verdict = Verdict::Inadmissible;
  char case_letter = 0;
  bool feasible_on_R = false;
  bool winding_on_circle = false;
};

struct HhmScanReport {
  std::vector<HhmScanRow> rows;  ///< lexicographic in (k, v, c, Q) indices
  std::size_t no_winding_on_R = 0;
  std::size_t inadmissible = 0;
  std::array<std::size_t, 6> by_case{};  ///< counts for a..f
  std::size_t feasible_on_R = 0;
  std::size_t winding_on_circle = 0;
};

HhmScanReport winding_feasibility_scan(const HhmScanSpec& spec);

struct HsmScanSpec {
  Axis q, rho;
  double tol = kDefaultRootTol;
  std::size_t threads = 1;
  std::size_t tuples() const { return q.n * rho.n; }
};

struct HsmScanRow {
  std::array<std::size_t, 2> index{};
  double q = 0, rho = 0;
  bool admissible = false;
  int failed_condition = 0;
  double j_squared = 0, k_squared = 0;
  RootKind kind = RootKind::NoRoots;
  HsmLineProfile line_profile = HsmLineProfile::None;
};

struct HsmScanReport {
  std::vector<HsmScanRow> rows;
  std::size_t admissible = 0;
  std::size_t tanh_kink = 0;
  std::size_t periodic = 0;
};

HsmScanReport hsm_jk_scan(const HsmScanSpec& spec);

}  // namespace hyperwind::reduction
