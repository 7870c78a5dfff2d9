#include "hyperwind/reduction.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <thread>

#include "hyperwind/errors.hpp"

namespace hyperwind::reduction {

PotentialPoly build_P_hhm(double k, double v, double c, double Q) {
  PotentialPoly P;
  P.coefficients = {Q, c - k * v, 0.5 * (v * v - k * k + 2.0 * Q), c};
  P.convention = Convention::HalfSquared;
  P.source = HhmSource{k, v, c, Q};
  return P;
}

PotentialPoly build_P_hsm(double v, double c, double Q, double R) {
  const double w = v * v - 1.0;
  if (w == 0.0) throw SingularReductionError("build_P_hsm: v^2 = 1 makes the reduction singular");
  if (c == 0.0) throw DomainError("build_P_hsm: c = 0 leaves the quartic bracket undefined");
  const double w2 = w * w;
  const double c2 = c * c;
  const double lin = 4.0 * R * w2 - c * v;
  const double b2 = (6.0 * c2 + 4.0 * Q * w2) / (4.0 * c2);
  const double b0 = (2.0 * c2 + 4.0 * Q * w2 + lin * lin) / (4.0 * c2);
  PotentialPoly P;
  P.scale = c2 / w2;
  P.coefficients = {P.scale * b0, 0.0, P.scale * b2, 0.0, P.scale};
  P.convention = Convention::FullSquared;
  P.source = HsmSource{v, c, Q, R};
  return P;
}

HhmCubicParams hhm_c1_params_from_roots(double p1, double p2, double p3) {
  const double e1 = p1 + p2 + p3;
  const double e2 = p1 * p2 + p1 * p3 + p2 * p3;
  const double e3 = p1 * p2 * p3;
  const double Q = -e3;
  const double sigma = 1.0 - e2;               // k v
  const double delta = -2.0 * e1 - 2.0 * Q;    // v^2 - k^2
  const double v2 = 0.5 * (delta + std::hypot(delta, 2.0 * sigma));
  if (v2 > 0.0) {
    const double v = std::sqrt(v2);
    return {sigma / v, v, Q};
  }
  if (sigma == 0.0 && delta <= 0.0) return {std::sqrt(-delta), 0.0, Q};
  throw DomainError("hhm_c1_params_from_roots: roots admit no real (k, v)");
}

AlphaDelta hhm_c1_alpha_delta(double k, double v, double Q) {
  const double alpha = (k * k - v * v - 2.0 * Q) / 6.0;
  return {alpha, alpha * alpha - (1.0 - k * v) / 3.0};
}

std::variant<JKMatch, Inadmissible> match_JK(double q, double rho) {
  if (!(q < -1.5))
    return Inadmissible{1, fmt::format("q < -3/2 fails (q = {:.6g})", q)};
  if (!(2.0 * q > -(8.0 * rho * rho + 1.0)))
    return Inadmissible{2, fmt::format("2q > -(8 rho^2 + 1) fails (2q = {:.6g}, -(8 rho^2 + 1) = {:.6g})",
                                       2.0 * q, -(8.0 * rho * rho + 1.0))};
  if (!(1.0 - 2.0 * q >= 8.0 * std::abs(rho)))
    return Inadmissible{3, fmt::format("1 - 2q >= 8|rho| fails (1 - 2q = {:.6g}, 8|rho| = {:.6g})",
                                       1.0 - 2.0 * q, 8.0 * std::abs(rho))};
  const double sum = -(6.0 + 4.0 * q) / 4.0;
  const double product = (2.0 + 4.0 * q + 16.0 * rho * rho) / 4.0;
  // sum^2 - 4 product = ((1 - 2q)^2 - 64 rho^2) / 4
  const double disc = std::max(0.0, 0.25 * ((1.0 - 2.0 * q) * (1.0 - 2.0 * q) - 64.0 * rho * rho));
  const double big = 0.5 * (sum + std::sqrt(disc));
  return JKMatch{product / big, big};
}

QRho hsm_q_rho(double v, double Q, double R) {
  const double w2 = (v * v - 1.0) * (v * v - 1.0);
  return {Q * w2, R * w2 - v / 4.0};
}

std::array<double, 2> hsm_Q_R(double v, double q, double rho) {
  const double w2 = (v * v - 1.0) * (v * v - 1.0);
  if (w2 == 0.0) throw SingularReductionError("hsm_Q_R: v^2 = 1 makes the reduction singular");
  return {q / w2, (4.0 * rho + v) / (4.0 * w2)};
}

std::string_view to_string(HsmLineProfile kind) {
  switch (kind) {
    case HsmLineProfile::None: return "None";
    case HsmLineProfile::Periodic: return "Periodic";
    case HsmLineProfile::TanhKink: return "TanhKink";
  }
  return "Unknown";
}

HsmLineProfile hsm_line_profile(double q, double rho, double tol) {
  if (std::holds_alternative<Inadmissible>(match_JK(q, rho))) return HsmLineProfile::None;
  const double b2 = (6.0 + 4.0 * q) / 4.0;
  const double b0 = (2.0 + 4.0 * q + 16.0 * rho * rho) / 4.0;
  const std::vector<double> bracket{b0, 0.0, b2, 0.0, 1.0};
  switch (classify_roots(bracket, tol).kind) {
    case RootKind::TwoDoubleRoots: return HsmLineProfile::TanhKink;
    case RootKind::FourDistinctReal: return HsmLineProfile::Periodic;
    default: return HsmLineProfile::None;
  }
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::WindingOnCircle: return "WindingOnCircle";
    case Verdict::NoWindingOnR: return "NoWindingOnR";
    case Verdict::Inadmissible: return "Inadmissible";
  }
  return "Unknown";
}

double hhm_existence_factor(double k, double v, double c, double Q) {
  return (k * k + v * v) * (2.0 * Q * v + 2.0 * c * k - k * k * v);
}

namespace {

bool near_zero(double x, double scale, double tol) { return std::abs(x) <= tol * (1.0 + scale); }

ExistenceVerdict no_winding(char letter, std::string reason, std::vector<std::string> trace,
                            std::optional<PotentialPoly> witness = std::nullopt) {
  trace.push_back(fmt::format("case ({}): {}", letter, reason));
  return {Verdict::NoWindingOnR, letter, std::move(reason), std::move(trace), std::move(witness)};
}

ExistenceVerdict inadmissible(std::string reason, std::vector<std::string> trace) {
  trace.push_back("inadmissible: " + reason);
  return {Verdict::Inadmissible, 0, std::move(reason), std::move(trace), std::nullopt};
}

}  // namespace

ExistenceVerdict winding_existence_hhm_on_R(double k, double v, double c, double Q, double tol) {
  std::vector<std::string> trace;
  trace.push_back(fmt::format("P(p) = {:.6g} p^3 + {:.6g} p^2 + {:.6g} p + {:.6g}", c,
                              0.5 * (v * v - k * k + 2.0 * Q), c - k * v, Q));
  trace.push_back("case (a) v = ±ik rejected: v and k are real");

  if (near_zero(v, std::abs(k), tol)) {
    trace.push_back("v = 0: dg/dxi = k / (1 + p^2)");
    if (near_zero(c, std::abs(k) + std::abs(Q), tol))
      return no_winding('b', "v = c = 0: the zero of dg/dxi needs a finite k/v", trace);
    if (near_zero(k, std::abs(c) + std::abs(Q), tol))
      return no_winding('c', "v = k = 0: dg/dxi vanishes identically, so phi does not wind", trace);
    return inadmissible("v = 0 with k != 0: dg/dxi = k/(1+p^2) has no zero, condition (iii) fails",
                        trace);
  }

  const double p0 = k / v;
  const double factor = hhm_existence_factor(k, v, c, Q);
  const double scale = (k * k + v * v) * (std::abs(2.0 * Q * v) + std::abs(2.0 * c * k) +
                                          std::abs(k * k * v));
  trace.push_back(fmt::format("p0 = k/v = {:.6g}; (k^2+v^2)(2Qv+2ck-k^2 v) = {:.6g}", p0, factor));
  if (std::abs(factor) > tol * scale)
    return inadmissible(fmt::format("condition (iv) unmet: P(k/v) = {:.6g} != 0",
                                    build_P_hhm(k, v, c, Q)(p0)),
                        trace);

  if (near_zero(k, std::abs(v), tol)) {
    // Q is forced to 0 on this branch.
    auto P = build_P_hhm(0.0, v, c, 0.0);
    std::string why = near_zero(c, std::abs(v), tol)
                          ? "k = Q = 0 gives P(p) = (v^2/2) p^2: no simple zero, contradicting (ii)"
                          : "k = Q = 0 gives P(p) = c p^3 + (v^2/2) p^2 + c p: p0 = 0 is a simple zero, "
                            "contradicting (ii)";
    return no_winding('d', std::move(why), trace, P);
  }
  if (near_zero(c, std::abs(k) + std::abs(v), tol)) {
    trace.push_back("c = 0 on the surface forces k^2 = 2Q");
    PotentialPoly P;
    P.coefficients = {0.5 * k * k, -k * v, 0.5 * v * v, 0.0};
    P.source = HhmSource{k, v, 0.0, 0.5 * k * k};
    return no_winding('f', "P(p) = (v^2/2)(p - k/v)^2 has a double zero but no simple zero, "
                           "contradicting (ii)",
                      trace, P);
  }
  trace.push_back(fmt::format("P'(k/v) = c (k^2+v^2)/v^2 = {:.6g} != 0",
                              c * (k * k + v * v) / (v * v)));
  return no_winding('e', "a double zero at k/v requires v = ±ik", trace);
}

ExistenceVerdict winding_existence_hhm_on_circle(double k, double v, double c, double Q) {
  std::vector<std::string> trace;
  if (c != 0.0)
    return inadmissible("only the c = 0 sine family winds on the circle", trace);
  const double alpha = v * v - k * k + 2.0 * Q;
  trace.push_back(fmt::format("alpha = v^2 - k^2 + 2Q = {:.6g}", alpha));
  if (!(alpha < 0.0)) return inadmissible("alpha < 0 fails", trace);
  const double bound = k * k * v * v / (2.0 * alpha);
  trace.push_back(fmt::format("Q = {:.6g}, k^2 v^2 / (2 alpha) = {:.6g}", Q, bound));
  if (!(Q > bound)) return inadmissible("Q > k^2 v^2 / (2 alpha) fails", trace);
  trace.push_back("two real zeros with P > 0 between them: sine profile on S^1");
  ExistenceVerdict out{Verdict::WindingOnCircle, 0, "c = 0 sine family", std::move(trace),
                       build_P_hhm(k, v, c, Q)};
  return out;
}

ConditionsOnR check_conditions_hhm_on_R(double k, double v, double c, double Q, double tol) {
  ConditionsOnR out;
  const auto P = build_P_hhm(k, v, c, Q);
  const auto roots = classify_roots(P, tol);
  double p0 = 0.0;
  if (v != 0.0) {
    p0 = k / v;
    double mag = 0.0, pw = 1.0;
    for (double a : P.coefficients) {
      mag += std::abs(a) * pw;
      pw *= std::abs(p0);
    }
    out.vanishes_at_k_over_v = std::abs(P(p0)) <= 1e-9 * (mag + 1e-300);
  }
  if (roots.kind != RootKind::DoubleRootPlusSimple) return out;
  out.double_plus_simple = true;
  const double d = roots.real_roots(2).front();
  const double s = roots.real_roots(1).front();
  out.bounded_nonnegative = P(0.5 * (d + s)) >= 0.0;
  out.double_at_k_over_v = v != 0.0 && std::abs(d - p0) <= roots.cluster_radius * (1.0 + std::abs(d));
  return out;
}

double Axis::at(std::size_t i) const {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

}  // namespace

HhmScanReport winding_feasibility_scan(const HhmScanSpec& spec) {
  HhmScanReport report;
  const std::size_t total = spec.tuples();
  report.rows.resize(total);
  parallel_for(total, spec.threads, [&](std::size_t flat) {
    HhmScanRow& row = report.rows[flat];
    std::size_t rest = flat;
    row.index[3] = rest % spec.Q.n;
    rest /= spec.Q.n;
    row.index[2] = rest % spec.c.n;
    rest /= spec.c.n;
    row.index[1] = rest % spec.v.n;
    row.index[0] = rest / spec.v.n;
    row.k = spec.k.at(row.index[0]);
    row.v = spec.v.at(row.index[1]);
    row.c = spec.c.at(row.index[2]);
    row.Q = spec.Q.at(row.index[3]);
    row.kind = classify_roots(build_P_hhm(row.k, row.v, row.c, row.Q), spec.tol).kind;
    const auto verdict = winding_existence_hhm_on_R(row.k, row.v, row.c, row.Q);
    row.verdict = verdict.verdict;
    row.case_letter = verdict.case_letter;
    row.feasible_on_R = check_conditions_hhm_on_R(row.k, row.v, row.c, row.Q, spec.tol).all();
    row.winding_on_circle = winding_existence_hhm_on_circle(row.k, row.v, row.c, row.Q).verdict ==
                            Verdict::WindingOnCircle;
  });
  for (const auto& row : report.rows) {
    if (row.verdict == Verdict::NoWindingOnR) {
      ++report.no_winding_on_R;
      ++report.by_case[static_cast<std::size_t>(row.case_letter - 'a')];
    } else {
      ++report.inadmissible;
    }
    report.feasible_on_R += row.feasible_on_R;
    report.winding_on_circle += row.winding_on_circle;
  }
  return report;
}

HsmScanReport hsm_jk_scan(const HsmScanSpec& spec) {
  HsmScanReport report;
  const std::size_t total = spec.tuples();
  report.rows.resize(total);
  parallel_for(total, spec.threads, [&](std::size_t flat) {
    HsmScanRow& row = report.rows[flat];
    row.index = {flat / spec.rho.n, flat % spec.rho.n};
    row.q = spec.q.at(row.index[0]);
    row.rho = spec.rho.at(row.index[1]);
    const auto match = match_JK(row.q, row.rho);
    if (const auto* bad = std::get_if<Inadmissible>(&match)) {
      row.failed_condition = bad->condition;
      return;
    }
    const auto& jk = std::get<JKMatch>(match);
    row.admissible = true;
    row.j_squared = jk.j_squared;
    row.k_squared = jk.k_squared;
    const std::vector<double> bracket{(2.0 + 4.0 * row.q + 16.0 * row.rho * row.rho) / 4.0, 0.0,
                                      (6.0 + 4.0 * row.q) / 4.0, 0.0, 1.0};
    row.kind = classify_roots(bracket, spec.tol).kind;
    row.line_profile = hsm_line_profile(row.q, row.rho, spec.tol);
  });
  for (const auto& row : report.rows) {
    report.admissible += row.admissible;
    report.tanh_kink += row.line_profile == HsmLineProfile::TanhKink;
    report.periodic += row.line_profile == HsmLineProfile::Periodic;
  }
  return report;
}

}  // namespace hyperwind::reduction
