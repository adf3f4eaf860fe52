#pragma once

// Iterated commutators, the contraction inequality, and the canonical
// SO(3) witness pair whose non-commutation angle is exactly 4*beta.

#include <liemetric/builders.hpp>
#include <liemetric/constants.hpp>
#include <liemetric/norms.hpp>

namespace liemetric {

/// Group commutator [a,b] = a b a^-1 b^-1.
inline GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  if (a.kind != b.kind) throw std::invalid_argument("kind mismatch in commutator");
  return GroupElement{a.matrix * b.matrix * a.matrix.adjoint() * b.matrix.adjoint(), a.kind};
}

/// The orbit h_0 = h, h_{n+1} = [h_n, k] with norms and successive ratios.
struct CommutatorTrace {
  std::vector<GroupElement> elements;
  std::vector<double> norms;
  std::vector<double> contraction_ratios;
  bool converged = false;
};

// Below this norm the relative error of a computed ratio is no longer
// negligible, so the in-loop ratio assertion is skipped (decay there is
// already a foregone conclusion).
inline constexpr double kRatioCheckFloor = 1e-9;

/// Iterates h -> [h,k] until the norm drops under halt_tol or max_iter is
/// hit. Requires |h| < pi/2 and |k| < alpha, which force every ratio
/// norms[i+1]/norms[i] <= C(|k|) < 1; the loop verifies this as it goes.
inline CommutatorTrace commutator_sequence(const GroupElement& h, const GroupElement& k,
                                           int max_iter, double halt_tol = 1e-12) {
  if (h.kind != k.kind) throw std::invalid_argument("kind mismatch in commutator_sequence");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  const double hn = op_norm_group(h);
  const double kn = op_norm_group(k);
  if (hn >= kPi / 2.0)
    throw std::invalid_argument("commutator_sequence requires |h| < pi/2");
  if (kn >= alpha_angle())
    throw std::invalid_argument("commutator_sequence requires |k| < alpha");
  const double c = contraction_constant(kn);

  CommutatorTrace trace;
  trace.elements.push_back(h);
  trace.norms.push_back(hn);
  while (static_cast<int>(trace.elements.size()) <= max_iter && trace.norms.back() >= halt_tol) {
    const GroupElement next = commutator(trace.elements.back(), k);
    const double norm = op_norm_group(next);
    const double prev = trace.norms.back();
    const double ratio = norm / prev;
    if (prev >= kRatioCheckFloor && ratio > c + 1e-9)
      throw std::runtime_error("commutator_sequence: contraction ratio " + std::to_string(ratio) +
                               " exceeds C = " + std::to_string(c));
    trace.elements.push_back(next);
    trace.norms.push_back(norm);
    trace.contraction_ratios.push_back(ratio);
  }
  trace.converged = trace.norms.back() < halt_tol;
  return trace;
}

struct WitnessPair {
  GroupElement h;
  GroupElement k;
  Eigen::Vector3d v;
};

/// The SO(3) pair at the heart of the 4*beta identity: a rotation by
/// pi/2 - beta about z (fixing v = z) and a rotation by alpha - beta
/// about x.
inline WitnessPair construct_witness_pair(const BetaSolution& sol) {
  if (!(sol.beta > 0.0 && sol.beta < sol.alpha))
    throw std::invalid_argument("invalid beta solution");
  WitnessPair wp{so3_rotation_z(kPi / 2.0 - sol.beta),
                 so3_rotation_x(sol.alpha - sol.beta), Eigen::Vector3d::UnitZ()};
  return wp;
}

/// The angle between h k v and k h v; zero exactly when the pair commutes
/// on the orbit of v. For the canonical witness pair this equals 4*beta.
inline double witness_angle(const GroupElement& h, const GroupElement& k,
                            const Eigen::Vector3d& v) {
  if (h.kind != GroupKind::so(3) || k.kind != GroupKind::so(3))
    throw std::invalid_argument("witness_angle expects so(3) elements");
  if (v.norm() == 0.0) throw std::invalid_argument("witness_angle: zero vector");
  const Eigen::Matrix3d hm = h.matrix.real(), km = k.matrix.real();
  const Eigen::Vector3d a = hm * (km * v);
  const Eigen::Vector3d b = km * (hm * v);
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

/// Evaluates the witness angle for a perturbed pair. Perturbations must
/// stay within distance beta of the canonical elements, which pins the
/// perturbed norms under pi/2 and alpha and keeps the angle strictly
/// positive (the pair cannot be made to commute).
inline double perturbation_noncommutation_check(const GroupElement& h, const GroupElement& k,
                                                const Eigen::Vector3d& v,
                                                const GroupElement& h_pert,
                                                const GroupElement& k_pert) {
  const double beta = solve_beta(1e-10).beta;
  if (distance(h, h_pert) >= beta || distance(k, k_pert) >= beta)
    throw std::invalid_argument("perturbation exceeds beta");
  if (op_norm_group(h_pert) >= kPi / 2.0)
    throw std::runtime_error("perturbed h left the |h| < pi/2 region");
  if (op_norm_group(k_pert) >= alpha_angle())
    throw std::runtime_error("perturbed k left the |k| < alpha region");
  return witness_angle(h_pert, k_pert, v);
}

}  // namespace liemetric
