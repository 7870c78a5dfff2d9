#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperwind/errors.hpp"
#include "hyperwind/reduction.hpp"
#include "oracles.hpp"

using namespace hyperwind::reduction;

TEST_CASE("HHM cubic coefficients") {
  const auto P = build_P_hhm(2.0, 1.0, 0.5, 0.25);
  REQUIRE(P.coefficients.size() == 4);
  CHECK(P.coefficients[0] == doctest::Approx(0.25));
  CHECK(P.coefficients[1] == doctest::Approx(0.5 - 2.0));
  CHECK(P.coefficients[2] == doctest::Approx((1.0 - 4.0 + 0.5) / 2));
  CHECK(P.coefficients[3] == doctest::Approx(0.5));
  CHECK(P.convention == Convention::HalfSquared);
}

TEST_CASE("c = 0 leaves the quadratic branch") {
  const double k = 2, v = 1, Q = -1;
  const auto P = build_P_hhm(k, v, 0.0, Q);
  const double alpha = v * v - k * k + 2 * Q;
  for (double p : {-3.0, -0.5, 0.0, 1.7})
    CHECK(P(p) == doctest::Approx(alpha / 2 * p * p - k * v * p + Q));
  const auto rs = classify_roots(P);
  CHECK(rs.degree == 2);
  CHECK(rs.degree_reduced);
}

TEST_CASE("circle region gives two real zeros with P positive between") {
  const double k = 2, v = 1, Q = 0;  // alpha = -3 < 0, k^2 v^2/(2 alpha) = -2/3 < Q
  const auto rs = classify_roots(build_P_hhm(k, v, 0.0, Q));
  CHECK(rs.kind == RootKind::TwoDistinctReal);
  REQUIRE(rs.positive_intervals.size() == 1);
  const auto P = build_P_hhm(k, v, 0.0, Q);
  const auto [lo, hi] = rs.positive_intervals[0];
  CHECK(P((lo + hi) / 2) > 0);
  CHECK(winding_existence_hhm_on_circle(k, v, 0.0, Q).verdict == Verdict::WindingOnCircle);
  CHECK(winding_existence_hhm_on_circle(k, v, 0.0, -2.0).verdict == Verdict::Inadmissible);
  CHECK(winding_existence_hhm_on_circle(k, v, 0.1, Q).verdict == Verdict::Inadmissible);
}

TEST_CASE("root classification of representative polynomials") {
  const auto kind = [](std::vector<double> roots) {
    return classify_roots(expand_roots(std::span<const double>(roots))).kind;
  };
  CHECK(kind({1.0, 2.0, 3.0}) == RootKind::ThreeDistinctReal);
  CHECK(kind({1.0, 1.0, -2.0}) == RootKind::DoubleRootPlusSimple);
  CHECK(kind({0.5, 0.5, 0.5}) == RootKind::TripleRoot);
  CHECK(kind({1.0, -1.0, 2.0, -2.0}) == RootKind::FourDistinctReal);
  CHECK(kind({1.0, 1.0, -1.0, -1.0}) == RootKind::TwoDoubleRoots);
  CHECK(kind({2.0, 2.0, 2.0, 2.0}) == RootKind::QuadrupleRoot);
  CHECK(kind({0.1, 0.1, 0.1, -1.0}) == RootKind::TripleRootPlusSimple);
  CHECK(kind({0.3, 0.3, 0.3}) == RootKind::TripleRoot);
  CHECK(kind({1.0, 1.0 + 1e-4, 1.0 - 1e-4}) == RootKind::ThreeDistinctReal);
  CHECK(classify_roots(std::vector<double>{1.0, 0.0, 1.0}).kind == RootKind::ComplexPair);
  CHECK(classify_roots(std::vector<double>{-1.0, 0.0, 0.0, 1.0}).kind == RootKind::OneRealPlusComplexPair);
  CHECK(classify_roots(std::vector<double>{5.0}).kind == RootKind::NoRoots);
  CHECK_THROWS_AS(classify_roots(std::vector<double>{1, 1, 1, 1, 1, 1}), hyperwind::DomainError);
}

TEST_CASE("reconstruction round-trips random cubics") {
  auto gen = oracle::rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> c{U(gen), U(gen), U(gen), 1.0 + std::abs(U(gen))};
    const auto rs = classify_roots(c);
    const auto back = rs.reconstruct(c.back());
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(back[j] == doctest::Approx(c[j]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("inner HSM quartic at q = -4, rho = 1") {
  const auto [Q, R] = hsm_Q_R(2.0, -4.0, 1.0);
  const auto P = build_P_hsm(2.0, 1.0, Q, R);
  const auto inner = P.root_coefficients();
  REQUIRE(inner.size() == 5);
  CHECK(inner[4] == doctest::Approx(1.0));
  CHECK(inner[2] == doctest::Approx(-2.5));
  CHECK(inner[0] == doctest::Approx(0.5));
  CHECK(P.scale == doctest::Approx(1.0 / 9.0));
  const auto rs = classify_roots(P);
  CHECK(rs.kind == RootKind::FourDistinctReal);
  const auto r = rs.real_roots();
  CHECK(r[0] == doctest::Approx(std::sqrt(2.2807764064044154)));
  CHECK(r[1] == doctest::Approx(std::sqrt(0.21922359359558485)));
}

TEST_CASE("HSM reduction rejects the light cone and c = 0") {
  CHECK_THROWS_AS(build_P_hsm(1.0, 1.0, 0.0, 0.0), hyperwind::SingularReductionError);
  CHECK_THROWS_AS(build_P_hsm(-1.0, 1.0, 0.0, 0.0), hyperwind::SingularReductionError);
  CHECK_THROWS_AS(build_P_hsm(2.0, 0.0, 0.0, 0.0), hyperwind::DomainError);
}

TEST_CASE("match_JK") {
  const auto ok = match_JK(-4.0, 1.0);
  REQUIRE(std::holds_alternative<JKMatch>(ok));
  const auto& m = std::get<JKMatch>(ok);
  CHECK(m.j_squared + m.k_squared == doctest::Approx(2.5));
  CHECK(m.j_squared * m.k_squared == doctest::Approx(0.5));
  CHECK(m.j_squared == doctest::Approx(0.21922359359558485));

  const auto bad = match_JK(-2.0, 0.1);
  REQUIRE(std::holds_alternative<Inadmissible>(bad));
  CHECK(std::get<Inadmissible>(bad).condition == 2);
  CHECK(std::get<Inadmissible>(bad).reason.find("2q > -(8 rho^2 + 1)") != std::string::npos);

  CHECK(std::get<Inadmissible>(match_JK(-1.0, 0.0)).condition == 1);
  CHECK(std::get<Inadmissible>(match_JK(-2.0, 0.9)).condition == 3);
}

TEST_CASE("q and rho round-trip through (Q, R)") {
  for (double v : {0.3, 2.0, -3.5}) {
    const auto [Q, R] = hsm_Q_R(v, -2.7, 0.4);
    const auto qr = hsm_q_rho(v, Q, R);
    CHECK(qr.q == doctest::Approx(-2.7));
    CHECK(qr.rho == doctest::Approx(0.4));
  }
}

TEST_CASE("line profiles of the HSM quartic") {
  CHECK(hsm_line_profile(-4.0, 1.0) == HsmLineProfile::Periodic);
  // Equal roots: 1 - 2q = 8|rho|.
  CHECK(hsm_line_profile(-3.5, 1.0) == HsmLineProfile::TanhKink);
  CHECK(hsm_line_profile(-1.0, 0.0) == HsmLineProfile::None);
}

TEST_CASE("cnoidal parameters from roots") {
  const double p1 = 0.5, p2 = 0.0, p3 = -2.0;
  const auto par = hhm_c1_params_from_roots(p1, p2, p3);
  const auto P = build_P_hhm(par.k, par.v, 1.0, par.Q);
  for (double r : {p1, p2, p3}) CHECK(std::abs(P(r)) < 1e-12);
  CHECK(par.v > 0);
  const auto ad = hhm_c1_alpha_delta(par.k, par.v, par.Q);
  // alpha is the mean of the roots, Delta the mean square deviation / 3 style invariant.
  CHECK(ad.alpha == doctest::Approx((p1 + p2 + p3) / 3));
  CHECK(ad.Delta == doctest::Approx(ad.alpha * ad.alpha - (p1 * p2 + p2 * p3 + p1 * p3) / 3));
}

TEST_CASE("existence factor") {
  const double k = 1.3, v = 0.7, c = -0.4, Q = 0.9;
  const auto P = build_P_hhm(k, v, c, Q);
  CHECK(2 * v * v * v * P(k / v) == doctest::Approx(hhm_existence_factor(k, v, c, Q)));
}

TEST_CASE("case (d): k = Q = 0") {
  const auto r = winding_existence_hhm_on_R(0.0, 1.5, 0.0, 0.0);
  CHECK(r.verdict == Verdict::NoWindingOnR);
  CHECK(r.case_letter == 'd');
  REQUIRE(r.witness);
  const auto& w = r.witness->coefficients;
  CHECK(w[2] == doctest::Approx(1.5 * 1.5 / 2));
  CHECK(std::abs(w[0]) + std::abs(w[1]) + std::abs(w[3]) < 1e-14);
  CHECK(winding_existence_hhm_on_R(0.0, -2.0, 0.7, 0.0).case_letter == 'd');
}

TEST_CASE("case (e): requires v = +-ik") {
  const double k = 1.2, v = 0.8, c = 0.5;
  const double Q = (k / (2 * v)) * (k * v - 2 * c);
  const auto r = winding_existence_hhm_on_R(k, v, c, Q);
  CHECK(r.verdict == Verdict::NoWindingOnR);
  CHECK(r.case_letter == 'e');
  CHECK(r.reason.find("requires v = ±ik") != std::string::npos);
}

TEST_CASE("case (f): double root at k/v") {
  const double k = 1.5, v = 1.0;
  const double Q = k * k / 2;
  const auto r = winding_existence_hhm_on_R(k, v, 0.0, Q);
  CHECK(r.case_letter == 'f');
  REQUIRE(r.witness);
  for (double p : {-1.0, 0.0, 2.0, 4.0}) CHECK((*r.witness)(p) == doctest::Approx(0.5 * (p - k / v) * (p - k / v)));
}

TEST_CASE("generic tuples are inadmissible on R") {
  const auto r = winding_existence_hhm_on_R(1.0, 2.0, 0.3, 0.4);
  CHECK(r.verdict == Verdict::Inadmissible);
  CHECK_FALSE(r.trace.empty());
  CHECK_FALSE(check_conditions_hhm_on_R(1.0, 2.0, 0.3, 0.4).all());
}

TEST_CASE("v = 0 dispatches to cases b or c") {
  for (double k : {0.5, -1.0, 2.0})
    for (double c : {0.0, 0.3})
      for (double Q : {0.0, -0.4}) {
        const auto r = winding_existence_hhm_on_R(k, 0.0, c, Q);
        if (r.verdict == Verdict::NoWindingOnR) CHECK((r.case_letter == 'b' || r.case_letter == 'c'));
        else CHECK(r.verdict == Verdict::Inadmissible);
      }
}

TEST_CASE("default HHM scan has no feasible tuple") {
  HhmScanSpec spec{{-3, 3, 10}, {-3, 3, 10}, {-2, 2, 10}, {-2, 2, 10}};
  const auto rep = winding_feasibility_scan(spec);
  CHECK(rep.rows.size() == 10000);
  CHECK(rep.feasible_on_R == 0);
  CHECK(rep.no_winding_on_R + rep.inadmissible == 10000);
}

TEST_CASE("scan flags the circle subregion and is thread-independent") {
  HhmScanSpec spec{{1, 3, 5}, {-2, 2, 5}, {0, 0, 1}, {-2, 2, 9}};
  const auto one = winding_feasibility_scan(spec);
  spec.threads = 3;
  const auto three = winding_feasibility_scan(spec);
  REQUIRE(one.rows.size() == three.rows.size());
  std::size_t expected = 0;
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    const auto& r = one.rows[i];
    CHECK(r.winding_on_circle == three.rows[i].winding_on_circle);
    CHECK(r.verdict == three.rows[i].verdict);
    const double alpha = r.v * r.v - r.k * r.k + 2 * r.Q;
    const bool in = alpha < 0 && r.Q > r.k * r.k * r.v * r.v / (2 * alpha);
    CHECK(r.winding_on_circle == in);
    expected += in;
  }
  CHECK(one.winding_on_circle == expected);
  CHECK(expected > 0);
}
