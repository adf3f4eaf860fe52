#pragma once

// Principal angles between subspaces, orthogonal complements, Haar-averaged
// projections, and the pi/4 large-angle search.

#include <liemetric/adjoint.hpp>
#include <liemetric/explog.hpp>
#include <liemetric/haar.hpp>

#include <functional>

namespace liemetric {

/// Orthonormal-column basis of a proper nontrivial subspace (1 <= k <= n-1).
struct Subspace {
  CMat basis;  // n x k
  int ambient_dim = 0;
};

inline Subspace make_subspace(CMat basis) {
  const int n = static_cast<int>(basis.rows());
  const int k = static_cast<int>(basis.cols());
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("subspace must be proper and nontrivial (1 <= k <= n-1)");
  const CMat gram = basis.adjoint() * basis;
  if (max_abs(CMat(gram - CMat::Identity(k, k))) > 1e-10)
    throw std::invalid_argument("subspace basis columns are not orthonormal");
  return Subspace{std::move(basis), n};
}

/// Random k-dimensional subspace (Gaussian + QR), deterministic in the seed.
inline Subspace random_subspace(int n, int k, std::uint64_t seed, bool complex_entries = true) {
  std::mt19937_64 rng(split_seed(seed, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat z(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j)
      z(i, j) = complex_entries ? Complex(gauss(rng), gauss(rng)) : Complex(gauss(rng), 0.0);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  return make_subspace(q.leftCols(k));
}

inline CMat projection(const Subspace& w) { return w.basis * w.basis.adjoint(); }

inline double largest_singular_value(const CMat& m) {
  return Eigen::JacobiSVD<CMat>(m).singularValues()(0);
}

/// Angle between subspaces: max of the two directed angles (arcsin of the
/// larger of ||P_perp(W) B_U|| and ||P_perp(U) B_W||). Symmetric; value in
/// [0, pi/2]. Unequal dimensions force a right angle exactly: the projection
/// of the larger space into the smaller is rank-deficient, so some unit
/// vector maps to zero. For equal dimensions the arcsine form is used while
/// well-conditioned and the equivalent arccosine of the smallest singular
/// value of B_U^H B_W past pi/4, keeping full precision near pi/2.
inline double angle_between(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim != w.ambient_dim)
    throw std::invalid_argument("ambient dimension mismatch in angle_between");
  if (u.basis.cols() != w.basis.cols()) return kPi / 2.0;
  const int n = u.ambient_dim;
  const CMat pu = projection(u), pw = projection(w);
  const double su = largest_singular_value((CMat::Identity(n, n) - pw) * u.basis);
  const double sw = largest_singular_value((CMat::Identity(n, n) - pu) * w.basis);
  const double s = std::min(1.0, std::max(su, sw));
  if (s * s <= 0.5) return std::asin(s);
  const double c = Eigen::JacobiSVD<CMat>(u.basis.adjoint() * w.basis).singularValues().minCoeff();
  return std::acos(std::min(1.0, c));
}

/// Orthonormal basis of the orthogonal complement, via QR completion.
inline Subspace perp(const Subspace& w) {
  const int n = w.ambient_dim, k = static_cast<int>(w.basis.cols());
  Eigen::HouseholderQR<CMat> qr(w.basis);
  CMat q = qr.householderQ();
  return make_subspace(q.rightCols(n - k));
}

/// Image of a subspace under a unitary/orthogonal matrix.
inline Subspace apply_to_subspace(const CMat& q, const Subspace& w) {
  return Subspace{q * w.basis, w.ambient_dim};
}

/// A unitary action of the group on an n-dimensional space. The adjoint
/// action is the built-in instance; callers assert irreducibility.
struct Representation {
  GroupKind kind;
  int ambient_dim = 0;
  bool irreducible = false;
  std::function<CMat(const GroupElement&)> action;
};

/// The adjoint representation as a Representation (orthogonal matrices,
/// irreducible over C for the simple kinds handled here).
inline Representation adjoint_representation(const GroupKind& kind) {
  Representation rep;
  rep.kind = kind;
  rep.ambient_dim = kind.algebra_dim();
  rep.irreducible = !kind.is_product();
  rep.action = [](const GroupElement& g) -> CMat {
    return adjoint_matrix(g).matrix.cast<Complex>();
  };
  return rep;
}

inline Complex trace_of_product(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows() || b.cols() != a.rows())
    throw std::invalid_argument("dimension mismatch in trace_of_product");
  return (a * b).trace();
}

/// Monte-Carlo average of projections onto Haar translates g_i W, and its
/// operator-norm deviation from the Schur limit (k/n) I. The deviation
/// scales like 1/sqrt(num_samples). num_samples = 1 means identity-only
/// averaging (returns P_W itself); otherwise at least 100 samples.
inline std::pair<CMat, double> schur_average(const Representation& rep, const Subspace& w,
                                             int num_samples, std::uint64_t seed) {
  if (!rep.irreducible)
    throw std::invalid_argument("schur_average requires an irreducible representation");
  if (w.ambient_dim != rep.ambient_dim)
    throw std::invalid_argument("subspace does not live in the representation space");
  if (num_samples != 1 && num_samples < 100)
    throw std::invalid_argument("schur_average needs num_samples = 1 (identity) or >= 100");
  const int n = rep.ambient_dim;
  const double k = static_cast<double>(w.basis.cols());
  CMat m = CMat::Zero(n, n);
  if (num_samples == 1) {
    m = projection(w);
  } else {
    for (int i = 0; i < num_samples; ++i) {
      const GroupElement g = haar_sample(rep.kind, split_seed(seed, i));
      const CMat gb = rep.action(g) * w.basis;
      m += gb * gb.adjoint();
    }
    m /= double(num_samples);
  }
  const double deviation =
      largest_singular_value(m - (k / n) * CMat::Identity(n, n));
  return {std::move(m), deviation};
}

namespace detail {

// Multiplicative local search: perturb g by exp(eps e_i) on the right for
// each basis direction, keep improvements, halve eps when stuck.
template <typename Objective>
std::pair<GroupElement, double> refine_on_group(GroupElement g, double value,
                                                const Objective& objective, int steps,
                                                bool maximize, double initial_step = 0.1) {
  const auto basis = algebra_basis(g.kind);
  double eps = initial_step;
  const auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
  for (int it = 0; it < steps && eps > 1e-12; ++it) {
    bool improved = false;
    for (const auto& e : basis) {
      for (const double sgn : {1.0, -1.0}) {
        const GroupElement cand = multiply(g, exp_map(scale(sgn * eps, e)));
        const double cv = objective(cand);
        if (better(cv, value)) {
          g = cand;
          value = cv;
          improved = true;
        }
      }
    }
    if (!improved) eps *= 0.5;
  }
  return {std::move(g), value};
}

}  // namespace detail

/// Searches for g with angle_between(W, gW) >= pi/4: Haar sampling over the
/// budget, then 200 steps of multiplicative refinement from the best sample.
/// Throws if the search ends below pi/4 - 1e-3, so a miss is loud.
inline std::pair<GroupElement, double> find_large_angle(const Representation& rep,
                                                        const Subspace& w, int budget,
                                                        std::uint64_t seed) {
  if (!rep.irreducible)
    throw std::invalid_argument("find_large_angle requires an irreducible representation");
  if (w.ambient_dim != rep.ambient_dim)
    throw std::invalid_argument("subspace does not live in the representation space");
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  const auto objective = [&](const GroupElement& g) {
    return angle_between(w, apply_to_subspace(rep.action(g), w));
  };
  GroupElement best = identity_element(rep.kind);
  double best_angle = objective(best);
  for (int i = 0; i < budget; ++i) {
    const GroupElement g = haar_sample(rep.kind, split_seed(seed, i));
    const double a = objective(g);
    if (a > best_angle) {
      best = g;
      best_angle = a;
    }
  }
  auto [g, a] = detail::refine_on_group(best, best_angle, objective, 200, /*maximize=*/true);
  if (a < kPi / 4.0 - 1e-3)
    throw std::runtime_error("find_large_angle: budget exhausted at angle " + std::to_string(a) +
                             " < pi/4 - 1e-3");
  return {std::move(g), a};
}

}  // namespace liemetric
