#pragma once

// exp from the algebra to the group, its local inverse on the norm ball of
// radius 2*pi/3, and discrete path length.

#include <liemetric/norms.hpp>

#include <numeric>

namespace liemetric {

/// Norm bound below which log_map is defined (exp is injective up to center
/// on this ball and preserves the operator norm).
inline constexpr double kLogDomainRadius = 2.0 * kPi / 3.0 - 1e-6;

namespace detail {

inline CMat exp_factor(const CMat& x, const GroupKind& kind) {
  // x skew-Hermitian, so -i x is Hermitian; exponentiate eigenphases.
  const CMat h = Complex(0.0, -1.0) * x;
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("exp_map eigensolve failed");
  CVec phases(x.rows());
  for (Eigen::Index j = 0; j < x.rows(); ++j)
    phases(j) = std::exp(Complex(0.0, es.eigenvalues()(j)));
  CMat g = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  if (kind.family == GroupFamily::SpecialOrthogonal) g.imag().setZero();
  return g;
}

// Principal-arc log of a special unitary factor: place all eigenphases on
// the shortest arc (cutting the circle inside the largest phase gap), then
// recenter to a traceless generator. The result x satisfies exp(x) = z g
// for a center phase z and |x| = |g|.
inline CMat log_su_factor(const CMat& g) {
  const int d = static_cast<int>(g.rows());
  Eigen::ComplexSchur<CMat> schur(g, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw std::runtime_error("log_map Schur failed");
  std::vector<double> theta(d);
  for (int j = 0; j < d; ++j) theta[j] = std::arg(schur.matrixT()(j, j));

  std::vector<double> sorted = theta;
  std::sort(sorted.begin(), sorted.end());
  double gap_mid = 0.0, gap_best = -1.0;
  for (int j = 0; j + 1 < d; ++j) {
    const double gap = sorted[j + 1] - sorted[j];
    if (gap > gap_best) {
      gap_best = gap;
      gap_mid = 0.5 * (sorted[j] + sorted[j + 1]);
    }
  }
  const double wrap_gap = sorted.front() + 2.0 * kPi - sorted.back();
  if (wrap_gap > gap_best) {
    gap_best = wrap_gap;
    gap_mid = 0.5 * (sorted.back() + sorted.front() + 2.0 * kPi);
  }
  // Cut the circle at the midpoint of the empty gap so the phases become
  // contiguous real numbers, then shift their mean to zero.
  const double cut = gap_mid - kPi;
  double mean = 0.0;
  std::vector<double> psi(d);
  for (int j = 0; j < d; ++j) {
    psi[j] = wrap_angle(theta[j] - cut);
    mean += psi[j];
  }
  mean /= d;
  CVec phases(d);
  for (int j = 0; j < d; ++j) phases(j) = Complex(0.0, psi[j] - mean);
  CMat x = schur.matrixU() * phases.asDiagonal() * schur.matrixU().adjoint();
  x = 0.5 * (x - CMat(x.adjoint()));           // enforce exact skew-Hermitian
  x -= (x.trace() / double(d)) * CMat::Identity(d, d);
  return x;
}

// Log of a special orthogonal factor from its real Schur form. Rotation
// planes contribute theta * (v u^T - u v^T); -1 eigenvectors pair up into
// half-turn planes. For even d the shift by -I gives a second candidate
// (exp(x) = -g); the smaller-norm candidate is the one inside the ball.
inline CMat log_so_factor(const CMat& gc, const GroupKind& kind) {
  const int d = static_cast<int>(gc.rows());
  const RMat g = gc.real();
  Eigen::RealSchur<RMat> schur(g, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw std::runtime_error("log_map Schur failed");
  const RMat& t = schur.matrixT();
  const RMat& q = schur.matrixU();

  struct Plane {
    int i1, i2;
    double theta;
  };
  std::vector<Plane> planes;
  std::vector<int> plus_cols, minus_cols;
  for (int i = 0; i < d;) {
    if (i + 1 < d && t(i + 1, i) != 0.0) {
      planes.push_back(Plane{i, i + 1, std::atan2(t(i + 1, i), t(i, i))});
      i += 2;
    } else {
      (t(i, i) < 0.0 ? minus_cols : plus_cols).push_back(i);
      i += 1;
    }
  }

  const auto build = [&](const std::vector<Plane>& ps, const std::vector<int>& minus) -> RMat {
    RMat x = RMat::Zero(d, d);
    for (const auto& p : ps) {
      const RVec u = q.col(p.i1), v = q.col(p.i2);
      x += p.theta * (v * u.transpose() - u * v.transpose());
    }
    for (size_t j = 0; j + 1 < minus.size(); j += 2) {
      const RVec u = q.col(minus[j]), v = q.col(minus[j + 1]);
      x += kPi * (v * u.transpose() - u * v.transpose());
    }
    return x;
  };

  std::vector<std::pair<RMat, double>> candidates;
  const auto consider = [&](const std::vector<Plane>& ps, const std::vector<int>& minus) {
    if (minus.size() % 2 != 0) return;
    RMat x = build(ps, minus);
    x = 0.5 * (x - RMat(x.transpose()));
    const double norm =
        detail::op_norm_algebra_factor(x.cast<Complex>(), kind);
    candidates.emplace_back(std::move(x), norm);
  };
  consider(planes, minus_cols);
  if (d % 2 == 0) {
    // Candidate for -g: every plane angle shifts by pi, +1 and -1 lines swap.
    std::vector<Plane> shifted = planes;
    for (auto& p : shifted) p.theta = wrap_angle(p.theta + kPi);
    consider(shifted, plus_cols);
  }
  if (candidates.empty()) throw std::runtime_error("log_map found no valid branch");
  const auto best = std::min_element(candidates.begin(), candidates.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  return best->first.cast<Complex>();
}

}  // namespace detail

/// exp of an algebra vector, block by block. |exp_map(x)| = |x| whenever
/// |x| < 2*pi/3.
inline GroupElement exp_map(const AlgebraVector& x) {
  if (!x.kind.is_product())
    return GroupElement{detail::exp_factor(x.matrix, x.kind), x.kind};
  CMat m = CMat::Zero(x.kind.dim, x.kind.dim);
  const auto ranges = detail::block_ranges(x.kind);
  const auto parts = factor_vectors(x);
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& [off, d] = ranges[i];
    m.block(off, off, d, d) = detail::exp_factor(parts[i].matrix, parts[i].kind);
  }
  return GroupElement{std::move(m), x.kind};
}

/// Inverse of exp_map on the ball |g| < 2*pi/3 - 1e-6, up to center: the
/// returned x has |x| = |g| and distance(exp_map(x), g) = 0, i.e. exp(x)
/// equals g times a center element (a global phase for su factors, -I for
/// even so factors). Throws std::domain_error outside the ball.
inline AlgebraVector log_map(const GroupElement& g) {
  const double gnorm = op_norm_group(g);
  if (gnorm >= kLogDomainRadius)
    throw std::domain_error("log_map: element norm " + std::to_string(gnorm) +
                            " is outside the radius-2pi/3 ball");
  CMat m = CMat::Zero(g.kind.dim, g.kind.dim);
  const auto parts = factor_elements(g);
  const auto ranges = g.kind.is_product() ? detail::block_ranges(g.kind)
                                          : std::vector<std::pair<int, int>>{{0, g.kind.dim}};
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& [off, d] = ranges[i];
    const CMat xf = parts[i].kind.is_unitary_family()
                        ? detail::log_su_factor(parts[i].matrix)
                        : detail::log_so_factor(parts[i].matrix, parts[i].kind);
    m.block(off, off, d, d) = xf;
  }
  AlgebraVector x = make_algebra_vector(std::move(m), g.kind);
  const double xnorm = op_norm_algebra(x);
  if (std::abs(xnorm - gnorm) > 1e-8)
    throw std::runtime_error("log_map: norm mismatch between branch and element");
  return x;
}

/// Length of a discrete path: sum over steps of |log(p_i^-1 p_{i+1})|.
/// Every step must stay inside the log domain. At least the endpoints of a
/// refined enough sampling give length >= distance(first, last).
inline double path_length(const std::vector<GroupElement>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("path_length needs >= 2 samples");
  double total = 0.0;
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const GroupElement step =
        multiply(inverse(samples[i]), samples[i + 1]);
    total += op_norm_algebra(log_map(step));
  }
  return total;
}

}  // namespace liemetric
