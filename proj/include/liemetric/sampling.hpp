#pragma once

// Seeded random draws from the algebra and from norm balls in the group.

#include <liemetric/explog.hpp>
#include <liemetric/haar.hpp>

namespace liemetric {

/// Gaussian-direction algebra vector rescaled to the requested operator norm.
inline AlgebraVector random_algebra_vector(const GroupKind& kind, double target_norm,
                                           std::uint64_t seed) {
  const auto basis = algebra_basis(kind);
  std::mt19937_64 rng(split_seed(seed, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  RVec c(basis.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = gauss(rng);
  AlgebraVector x = algebra_from_coordinates(kind, c, basis);
  const double norm = op_norm_algebra(x);
  if (norm == 0.0) return zero_vector(kind);
  return scale(target_norm / norm, x);
}

/// Random element with operator norm at most max_norm (norm drawn uniformly,
/// direction Gaussian), via the norm-preserving exponential.
inline GroupElement random_ball_element(const GroupKind& kind, double max_norm,
                                        std::uint64_t seed) {
  if (max_norm >= 2.0 * kPi / 3.0)
    throw std::invalid_argument("ball sampling is supported inside the log domain");
  std::mt19937_64 rng(split_seed(seed, 1));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r = max_norm * unif(rng);
  return exp_map(random_algebra_vector(kind, r, seed));
}

}  // namespace liemetric
