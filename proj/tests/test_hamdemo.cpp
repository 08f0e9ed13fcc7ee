#include <cmath>

#include <gtest/gtest.h>

#include "tkft/error.hpp"
#include "tkft/hamdemo.hpp"

using namespace tkft;

TEST(Field, PresetsAndParse) {
  const auto rot = PolyVectorField::rotation();
  const std::vector<Real> q{3, 5};
  EXPECT_EQ(rot.components[0](q), -5);
  EXPECT_EQ(rot.components[1](q), 3);
  const auto cubic = PolyVectorField::cubic();
  EXPECT_EQ(cubic.components[1](q), -3 - 27);
  const auto parsed = parse_field("-1@0,1 ; 1@1,0");
  EXPECT_EQ(parsed.components[0](q), -5);
  EXPECT_EQ(parsed.components[1](q), 3);
  EXPECT_EQ(parse_field(format_field(cubic)).components[1](q), -30);
  EXPECT_THROW(parse_field("1@1,2,3 ; 1@0"), MalformedInput);
  EXPECT_THROW(parse_field("x"), MalformedInput);
}

TEST(Field, Derivative) {
  // d/dq1 of q1^3 q2 + 2 q2 is 3 q1^2 q2.
  const Polynomial p{2, {{1, {3, 1}}, {2, {0, 1}}}};
  const std::vector<Real> q{2, 7};
  EXPECT_EQ(p.derivative(0)(q), 3 * 4 * 7);
  EXPECT_EQ(p.derivative(1)(q), 8 + 2);
}

TEST(Rhs, Rotation) {
  const auto s = hamiltonian_rhs(PolyVectorField::rotation(), {{1, 0}, {0, 0}});
  EXPECT_EQ(s.q, (std::vector<Real>{0, 1}));
  EXPECT_EQ(s.p, (std::vector<Real>{0, 0}));
}

TEST(Rhs, CotangentLift) {
  // dp_k/dt = -sum_i p_i dx_i/dq_k, here for the cubic field at q = (2, 1).
  const auto s = hamiltonian_rhs(PolyVectorField::cubic(), {{2, 1}, {3, 5}});
  EXPECT_EQ(s.q, (std::vector<Real>{1, -2 - 8}));
  EXPECT_EQ(s.p[0], -(5 * (-1 - 3 * 4)));
  EXPECT_EQ(s.p[1], -3);
}

TEST(Rhs, ZeroSectionInvariant) {
  for (const auto& x : {PolyVectorField::rotation(), PolyVectorField::cubic()}) {
    const auto s = hamiltonian_rhs(x, {{0.3L, -1.7L}, {0, 0}});
    EXPECT_EQ(s.p, (std::vector<Real>{0, 0}));
  }
  const auto z = hamiltonian_rhs(PolyVectorField::zero(3), {{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(z.q, (std::vector<Real>{0, 0, 0}));
  EXPECT_EQ(z.p, (std::vector<Real>{0, 0, 0}));
}

TEST(Universality, Rotation) {
  const std::vector<Real> q0{1, 0};
  const auto r = verify_universality(PolyVectorField::rotation(), q0, 1, 1e-3L);
  EXPECT_LE(r.max_p, 1e-6L);
  EXPECT_LE(r.max_dq, 1e-5L);
  EXPECT_EQ(r.steps, 1000u);
  // RK4 against the exact rotation after one unit of time.
  const auto c = convergence(PolyVectorField::rotation(), q0, 1, 1e-3L, rotation_from_unit);
  EXPECT_LT(c.error_h, 1e-12L);
  EXPECT_GE(c.ratio, 12);
  EXPECT_LE(c.ratio, 20);
}

TEST(Universality, Cubic) {
  const std::vector<Real> q0{0.5L, 0};
  const auto r = verify_universality(PolyVectorField::cubic(), q0, 1, 1e-3L);
  EXPECT_LE(r.max_p, 1e-6L);
  EXPECT_LE(r.max_dq, 1e-5L);
  const auto c = convergence(PolyVectorField::cubic(), q0, 1, 1e-3L);
  EXPECT_GE(c.ratio, 12);
  EXPECT_LE(c.ratio, 20);
}

TEST(Universality, ZeroField) {
  const std::vector<Real> q0{1, 0};
  const auto r = verify_universality(PolyVectorField::zero(2), q0, 1, 1e-3L);
  EXPECT_EQ(r.max_p, 0);
  EXPECT_EQ(r.max_dq, 0);
}

TEST(Universality, ExactFlow) {
  const auto q = rotation_from_unit(std::acos(-1.0L) / 2);
  EXPECT_NEAR(static_cast<double>(q[0]), 0, 1e-15);
  EXPECT_NEAR(static_cast<double>(q[1]), 1, 1e-15);
}

TEST(Universality, SamplesAndCsv) {
  const std::vector<Real> q0{1, 0};
  const auto r = verify_universality(PolyVectorField::rotation(), q0, 1, 1e-2L, 10);
  EXPECT_EQ(r.samples.size(), 11u);
  const auto csv = universality_csv(r, 2);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
}
