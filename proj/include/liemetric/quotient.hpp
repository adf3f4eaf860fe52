#pragma once

// Coset distances, diameter lower estimates for G/H, the diagonal-subgroup
// example, the icosahedral quotient, projection monotonicity across product
// factors, and the Killing-metric comparison.

#include <liemetric/builders.hpp>
#include <liemetric/subspace.hpp>

#include <optional>

namespace liemetric {

/// A finite subgroup, or a finite sample of an infinite one. exact means
/// the list is the whole subgroup.
struct SubgroupSample {
  std::vector<GroupElement> elements;
  bool exact = false;
};

inline constexpr double kSubgroupMatchTol = 1e-9;

namespace detail {

inline bool contains_matching(const std::vector<GroupElement>& elements, const CMat& m) {
  for (const auto& e : elements)
    if (max_abs(CMat(e.matrix - m)) <= kSubgroupMatchTol) return true;
  return false;
}

}  // namespace detail

/// Validates identity membership and inverse closure (entrywise nearest
/// match at 1e-9).
inline SubgroupSample make_subgroup_sample(std::vector<GroupElement> elements, bool exact) {
  if (elements.empty()) throw std::invalid_argument("subgroup sample is empty");
  const GroupKind kind = elements.front().kind;
  for (const auto& e : elements)
    if (e.kind != kind) throw std::invalid_argument("subgroup sample mixes kinds");
  if (!detail::contains_matching(elements, CMat::Identity(kind.dim, kind.dim)))
    throw std::invalid_argument("subgroup sample lacks the identity");
  for (const auto& e : elements)
    if (!detail::contains_matching(elements, CMat(e.matrix.adjoint())))
      throw std::invalid_argument("subgroup sample is not closed under inversion");
  return SubgroupSample{std::move(elements), exact};
}

/// d(gH, H) when exact: min over h of |g h|. For a sampled H this is an
/// upper bound on the quotient distance.
inline double coset_distance(const GroupElement& g, const SubgroupSample& h) {
  if (h.elements.empty()) throw std::invalid_argument("empty subgroup sample");
  if (g.kind != h.elements.front().kind)
    throw std::invalid_argument("kind mismatch in coset_distance");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : h.elements) best = std::min(best, op_norm_group(multiply(g, e)));
  return best;
}

/// Lower estimate of diam(G/H): best coset distance over Haar probes, with
/// multiplicative refinement from the best probe. A valid lower bound on
/// the diameter whenever the sample is the exact subgroup.
inline double diameter_lower_estimate(const GroupKind& kind, const SubgroupSample& h,
                                      int num_probes, std::uint64_t seed) {
  if (num_probes < 100) throw std::invalid_argument("diameter estimate needs >= 100 probes");
  if (h.elements.empty() || h.elements.front().kind != kind)
    throw std::invalid_argument("subgroup sample does not live in the given group");
  const auto objective = [&](const GroupElement& g) { return coset_distance(g, h); };
  GroupElement best = identity_element(kind);
  double best_value = objective(best);
  for (int i = 0; i < num_probes; ++i) {
    const GroupElement g = haar_sample(kind, split_seed(seed, i));
    const double v = objective(g);
    if (v > best_value) {
      best = g;
      best_value = v;
    }
  }
  return detail::refine_on_group(best, best_value, objective, 200, /*maximize=*/true).second;
}

/// The 60 rotations of the icosahedron, generated by a 5-fold rotation
/// about z and a half-turn about an adjacent 2-fold (edge) axis, closed
/// under multiplication with dedup at 1e-9.
inline SubgroupSample icosahedral_group() {
  const GroupElement g5 = so3_rotation_z(2.0 * kPi / 5.0);
  // Edge axis between the pole and an adjacent icosahedron vertex.
  const Eigen::Vector3d vertex(2.0 / std::sqrt(5.0), 0.0, 1.0 / std::sqrt(5.0));
  const GroupElement g2 = so3_rotation(Eigen::Vector3d::UnitZ() + vertex, kPi);

  std::vector<GroupElement> elements{identity_element(GroupKind::so(3))};
  std::vector<GroupElement> frontier = elements;
  while (!frontier.empty()) {
    std::vector<GroupElement> fresh;
    for (const auto& a : frontier) {
      for (const auto* gen : {&g5, &g2}) {
        GroupElement p = multiply(a, *gen);
        if (!detail::contains_matching(elements, p.matrix)) {
          elements.push_back(p);
          fresh.push_back(std::move(p));
        }
      }
    }
    if (elements.size() > 120)
      throw std::runtime_error("icosahedral closure did not stabilize at 60 elements");
    frontier = std::move(fresh);
  }
  if (elements.size() != 60)
    throw std::runtime_error("icosahedral closure produced " + std::to_string(elements.size()) +
                             " elements instead of 60");
  return make_subgroup_sample(std::move(elements), /*exact=*/true);
}

/// The diagonal-subgroup lower bound for (H x H)/diag(H): picks h in the
/// factor with |h| = pi and minimizes max(d(h, h'), |h'|) over sampled h'
/// (with refinement); every h' forces the max to be >= pi/2.
inline double diagonal_quotient_estimate(const GroupKind& factor_kind, int num_probes,
                                         std::uint64_t seed) {
  if (factor_kind.is_product())
    throw std::invalid_argument("diagonal_quotient_estimate expects a simple factor kind");
  if (num_probes < 100) throw std::invalid_argument("needs >= 100 probes");
  GroupElement h = identity_element(factor_kind);
  if (factor_kind.is_unitary_family()) {
    std::vector<double> phases(factor_kind.dim, 0.0);
    phases[0] = kPi / 2.0;
    phases[1] = -kPi / 2.0;
    h = su_diagonal(phases);
  } else {
    CMat m = CMat::Identity(factor_kind.dim, factor_kind.dim);
    m(0, 0) = m(1, 1) = -1.0;  // half turn in the first coordinate plane
    h = make_group_element(std::move(m), factor_kind);
  }
  const double hnorm = op_norm_group(h);
  if (std::abs(hnorm - kPi) > 1e-9)
    throw std::runtime_error("one-parameter element failed to reach norm pi");

  const auto objective = [&](const GroupElement& hp) {
    return std::max(distance(h, hp), op_norm_group(hp));
  };
  GroupElement best = identity_element(factor_kind);
  double best_value = objective(best);
  for (int i = 0; i < num_probes; ++i) {
    const GroupElement hp = haar_sample(factor_kind, split_seed(seed, i));
    const double v = objective(hp);
    if (v < best_value) {
      best = hp;
      best_value = v;
    }
  }
  return detail::refine_on_group(best, best_value, objective, 200, /*maximize=*/false).second;
}

/// Coset distance in a 2-factor product vs. the first-factor projection.
/// The product norm is the max over factors, so the first value can never
/// fall below the second.
inline std::pair<double, double> projection_monotonicity_check(const GroupElement& g,
                                                               const SubgroupSample& h) {
  if (!g.kind.is_product() || g.kind.factors.size() != 2)
    throw std::invalid_argument("expected an element of a 2-factor product");
  const double full = coset_distance(g, h);
  std::vector<GroupElement> projected;
  projected.reserve(h.elements.size());
  for (const auto& e : h.elements) projected.push_back(factor_elements(e).front());
  const SubgroupSample hp{std::move(projected), h.exact};
  const double proj = coset_distance(factor_elements(g).front(), hp);
  return {full, proj};
}

struct KillingComparison {
  double d = 0.0;    // operator-norm distance to the identity
  double d_k = 0.0;  // Killing-metric length of log(g)
  int algebra_dim = 0;
};

namespace detail {

inline double killing_quadratic(const AlgebraVector& x) {
  // B(x,x) with the standard normalization: 2d tr(x^2) for su(d),
  // (d-2) tr(x^2) for so(d); direct sum over factors.
  double b = 0.0;
  for (const auto& p : factor_vectors(x)) {
    const double coeff = p.kind.is_unitary_family() ? 2.0 * p.kind.dim : p.kind.dim - 2.0;
    b += coeff * (p.matrix * p.matrix).trace().real();
  }
  return b;
}

}  // namespace detail

/// Compares |g| with the Killing geodesic length of log(g) and checks the
/// two-sided bound d <= d_K <= (3 sqrt(N)/2) d.
inline KillingComparison killing_comparison(const GroupElement& g) {
  const AlgebraVector x = log_map(g);  // enforces the log-domain bound
  KillingComparison out;
  out.d = op_norm_group(g);
  out.d_k = std::sqrt(std::max(0.0, -detail::killing_quadratic(x)));
  out.algebra_dim = g.kind.algebra_dim();
  if (out.d > out.d_k + 1e-9)
    throw std::runtime_error("killing_comparison: lower bound d <= d_K violated");
  if (out.d_k > 1.5 * std::sqrt(double(out.algebra_dim)) * out.d + 1e-9)
    throw std::runtime_error("killing_comparison: upper bound d_K <= 3 sqrt(N) d / 2 violated");
  return out;
}

}  // namespace liemetric
