// Commutator contraction, iterated collapse, and the 4*beta witness pair.

#include <gtest/gtest.h>

#include <liemetric/liemetric.hpp>

using namespace liemetric;

namespace {

const GroupKind kSu2 = GroupKind::su(2);
const GroupKind kSo3 = GroupKind::so(3);

TEST(Commutator, CommutingPairs) {
  const GroupElement a = so3_rotation_z(0.9);
  const GroupElement b = so3_rotation_z(1.4);  // same axis commutes
  EXPECT_NEAR(op_norm_group(commutator(a, b)), 0.0, 1e-12);
  EXPECT_NEAR(op_norm_group(commutator(a, identity_element(kSo3))), 0.0, 1e-12);
  EXPECT_THROW(commutator(a, haar_sample(kSu2, 1)), std::invalid_argument);
}

TEST(Commutator, SmallAngleBracketRate) {
  // For small s, |[exp(s x), exp(s y)]| = s^2 |[x, y]| + O(s^3).
  const AlgebraVector x = random_algebra_vector(kSu2, 1.0, 41);
  const AlgebraVector y = random_algebra_vector(kSu2, 1.0, 42);
  const double bracket_norm = op_norm_algebra(bracket(x, y));
  ASSERT_GT(bracket_norm, 1e-3);  // generic pair does not commute
  const double s = 1e-3;
  const double c = op_norm_group(commutator(exp_map(scale(s, x)), exp_map(scale(s, y))));
  EXPECT_NEAR(c, s * s * bracket_norm, 0.05 * s * s * bracket_norm);
}

TEST(CommutatorSequence, DecayAndTraceShape) {
  const GroupElement h = random_ball_element(kSo3, 1.2, 10);  // |h| < pi/2
  const GroupElement k = random_ball_element(kSo3, 0.45, 11);  // |k| < alpha
  const CommutatorTrace t = commutator_sequence(h, k, 60);
  EXPECT_TRUE(t.converged);
  ASSERT_GE(t.elements.size(), 2u);
  EXPECT_EQ(t.norms.size(), t.elements.size());
  EXPECT_EQ(t.contraction_ratios.size(), t.norms.size() - 1);
  EXPECT_LT(t.norms.back(), 1e-12);
  const double c = contraction_constant(op_norm_group(k));
  ASSERT_LT(c, 1.0);
  for (size_t i = 0; i + 1 < t.norms.size(); ++i) {
    if (t.norms[i] >= kRatioCheckFloor) {
      EXPECT_LE(t.contraction_ratios[i], c + 1e-9) << i;
    }
    EXPECT_NEAR(op_norm_group(t.elements[i]), t.norms[i], 1e-12);
  }
}

TEST(CommutatorSequence, GeometricEnvelope) {
  const GroupElement h = random_ball_element(kSu2, 1.5, 20);
  const GroupElement k = random_ball_element(kSu2, 0.4, 21);
  const double c = contraction_constant(op_norm_group(k));
  const CommutatorTrace t = commutator_sequence(h, k, 80, 1e-13);
  for (size_t n = 0; n < t.norms.size(); ++n)
    EXPECT_LE(t.norms[n], std::pow(c, double(n)) * (kPi / 2.0) + 1e-9) << n;
}

TEST(CommutatorSequence, Preconditions) {
  const GroupElement big_h = so3_rotation_z(kPi / 2.0 + 0.01);
  const GroupElement small_k = so3_rotation_x(0.3);
  EXPECT_THROW(commutator_sequence(big_h, small_k, 50), std::invalid_argument);
  const GroupElement big_k = so3_rotation_x(alpha_angle() + 0.01);
  EXPECT_THROW(commutator_sequence(so3_rotation_z(0.5), big_k, 50), std::invalid_argument);
  EXPECT_THROW(commutator_sequence(so3_rotation_z(0.5), small_k, 0), std::invalid_argument);
  // Halting immediately on an already-commuting pair.
  const CommutatorTrace t =
      commutator_sequence(identity_element(kSo3), small_k, 5);
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.elements.size(), 1u);
}

TEST(Witness, CanonicalAngleIsFourBeta) {
  const BetaSolution sol = solve_beta(1e-10);
  const WitnessPair wp = construct_witness_pair(sol);
  // h is the rotation about v, so it fixes v exactly.
  EXPECT_NEAR((wp.h.matrix.real() * wp.v - wp.v).norm(), 0.0, 1e-14);
  EXPECT_NEAR(op_norm_group(wp.h), kPi / 2.0 - sol.beta, 1e-12);
  EXPECT_NEAR(op_norm_group(wp.k), sol.alpha - sol.beta, 1e-12);
  const double angle = witness_angle(wp.h, wp.k, wp.v);
  EXPECT_NEAR(angle, 4.0 * sol.beta, 1e-6);
  EXPECT_NEAR(angle, 0.49733102461786927, 1e-6);  // frozen 4*beta
  // The angle is symmetric in the pair and vanishes for commuting pairs.
  EXPECT_NEAR(witness_angle(wp.k, wp.h, wp.v), angle, 1e-12);
  EXPECT_NEAR(witness_angle(wp.h, wp.h, wp.v), 0.0, 1e-12);
}

TEST(Witness, InputGuards) {
  const WitnessPair wp = construct_witness_pair(solve_beta(1e-10));
  EXPECT_THROW(witness_angle(haar_sample(kSu2, 1), wp.k, wp.v), std::invalid_argument);
  EXPECT_THROW(witness_angle(wp.h, wp.k, Eigen::Vector3d::Zero()), std::invalid_argument);
  BetaSolution bad;
  bad.alpha = 0.5;
  bad.beta = 0.0;
  EXPECT_THROW(construct_witness_pair(bad), std::invalid_argument);
}

TEST(Witness, PerturbationsStayNoncommuting) {
  const BetaSolution sol = solve_beta(1e-10);
  const WitnessPair wp = construct_witness_pair(sol);
  for (int i = 0; i < 50; ++i) {
    const GroupElement hp = multiply(wp.h, random_ball_element(kSo3, 0.9 * sol.beta, 100 + i));
    const GroupElement kp = multiply(wp.k, random_ball_element(kSo3, 0.9 * sol.beta, 200 + i));
    EXPECT_GT(perturbation_noncommutation_check(wp.h, wp.k, wp.v, hp, kp), 1e-6) << i;
  }
  // A displacement of size beta (or more) is rejected.
  const GroupElement far_h = multiply(wp.h, so3_rotation_x(sol.beta));
  EXPECT_THROW(perturbation_noncommutation_check(wp.h, wp.k, wp.v, far_h, wp.k),
               std::invalid_argument);
}

}  // namespace
