#pragma once

// The universal diameter constant beta, the threshold angle alpha with
// cos(alpha) = 7/8, and the commutator contraction constant C.

#include <liemetric/group.hpp>

#include <cmath>

namespace liemetric {

/// alpha = arccos(7/8), the norm threshold below which commutation contracts.
inline double alpha_angle() { return std::acos(7.0 / 8.0); }

/// Residual of the defining equation for beta:
/// cos^2(alpha-b) + sin^2(alpha-b) sin(b) - cos(4b).
/// (sin(b) appears as cos(pi/2 - b) in one source form; identical values.)
inline double beta_equation_residual(double beta_candidate) {
  if (beta_candidate < 0.0 || beta_candidate >= kPi / 4.0)
    throw std::invalid_argument("beta candidate must lie in [0, pi/4)");
  const double a = alpha_angle();
  const double c = std::cos(a - beta_candidate);
  const double s = std::sin(a - beta_candidate);
  return c * c + s * s * std::sin(beta_candidate) - std::cos(4.0 * beta_candidate);
}

struct BetaSolution {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  double solver_tolerance = 0.0;
};

/// Smallest positive root of the beta equation, by sign-bracketing scan
/// (step 1e-3 on (0, alpha)) plus bisection down to `tolerance`.
/// The root is simple and isolated near 0.1243, so no derivative is needed.
inline BetaSolution solve_beta(double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 1e-6))
    throw std::invalid_argument("solve_beta tolerance must lie in (0, 1e-6)");
  const double a = alpha_angle();
  const double step = 1e-3;
  double lo = 0.0, hi = 0.0;
  double flo = beta_equation_residual(0.0);
  bool bracketed = false;
  for (double t = step; t < a; t += step) {
    const double ft = beta_equation_residual(t);
    if ((flo < 0.0) != (ft < 0.0)) {
      lo = t - step;
      hi = t;
      bracketed = true;
      break;
    }
    flo = ft;
  }
  if (!bracketed) throw std::runtime_error("solve_beta: no sign change found on (0, alpha)");
  double flo2 = beta_equation_residual(lo);
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double fm = beta_equation_residual(mid);
    if ((flo2 < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo2 = fm;
    } else {
      hi = mid;
    }
  }
  BetaSolution sol;
  sol.alpha = a;
  sol.beta = 0.5 * (lo + hi);
  sol.residual = std::abs(beta_equation_residual(sol.beta));
  sol.solver_tolerance = tolerance;
  return sol;
}

/// C(kappa) = 2 sqrt(2 - 2 cos kappa): the factor by which commutation with
/// an element of norm kappa contracts norms. Strictly increasing on [0, pi];
/// C < 1 exactly when kappa < alpha.
inline double contraction_constant(double kappa) {
  if (kappa < 0.0 || kappa > kPi)
    throw std::domain_error("contraction_constant domain is [0, pi]");
  return 2.0 * std::sqrt(std::max(0.0, 2.0 - 2.0 * std::cos(kappa)));
}

}  // namespace liemetric
