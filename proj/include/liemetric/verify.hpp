#pragma once

// Self-contained verification pass: every documented invariant of every
// module, exercised at fixed budgets with seeded randomness. Returns one
// CheckResult per named property so callers (CLI, test harnesses) can
// print a table and compute an exit code.

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <liemetric/commutator.hpp>
#include <liemetric/quotient.hpp>
#include <liemetric/sampling.hpp>
#include <liemetric/subspace.hpp>
#include <liemetric/universality.hpp>

namespace liemetric {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // stats on pass, first failure message on fail
};

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

namespace detail {

inline std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

inline void require_le(double a, double b, const std::string& what) {
  if (!(a <= b))
    throw std::runtime_error(what + ": " + short_num(a) + " > " + short_num(b));
}

inline void require_close(double a, double b, double tol, const std::string& what) {
  if (!(std::abs(a - b) <= tol))
    throw std::runtime_error(what + ": " + short_num(a) + " vs " + short_num(b) +
                             " (tol " + short_num(tol) + ")");
}

template <typename Fn>
bool throws_invalid(const Fn& fn) {
  try {
    fn();
  } catch (const std::invalid_argument&) {
    return true;
  } catch (const std::domain_error&) {
    return true;
  }
  return false;
}

}  // namespace detail

/// Runs the whole property suite. Deterministic for a fixed seed. When a
/// stream is given, one line per check is emitted as it completes.
inline std::vector<CheckResult> run_property_suite(std::uint64_t seed = 20260815ull,
                                                   std::ostream* log = nullptr) {
  using detail::require;
  using detail::require_close;
  using detail::require_le;
  using detail::short_num;
  using detail::throws_invalid;

  std::vector<CheckResult> results;
  const auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    if (log)
      (*log) << (r.pass ? "pass  " : "FAIL  ") << r.name
             << (r.detail.empty() ? "" : "  [" + r.detail + "]") << std::endl;
    results.push_back(std::move(r));
  };
  const auto sd = [&](std::uint64_t i) { return split_seed(seed, i); };

  const GroupKind su2 = GroupKind::su(2);
  const GroupKind su3 = GroupKind::su(3);
  const GroupKind so3 = GroupKind::so(3);
  const GroupKind so4 = GroupKind::so(4);
  const GroupKind prod = GroupKind::product({su2, so3});

  // ---------------------------------------------------------------- core

  run("core/element-validation", [&] {
    require(throws_invalid([&] {
      CMat m = CMat::Identity(3, 3);
      m(0, 1) = 0.5;  // not unitary
      make_group_element(m, su3);
    }), "non-unitary matrix accepted");
    require(throws_invalid([&] {
      CMat m = CMat::Identity(3, 3);
      m(0, 2) = Complex(0.0, 1e-6);  // complex entries in an orthogonal kind
      make_group_element(m, so3);
    }), "complex so matrix accepted");
    // Scalar phases are quotiented away: the remade element is center-
    // equivalent, so every metric quantity matches to machine precision.
    for (int i = 0; i < 50; ++i) {
      const GroupElement g = haar_sample(su2, sd(1000 + i));
      const Complex phase = std::exp(Complex(0.0, 0.1 + 0.11 * i));
      const GroupElement h = make_group_element(CMat(phase * g.matrix), su2);
      require_le(distance(g, h), 1e-10, "phase changed the element");
      require_le(max_abs(RMat(adjoint_matrix(g).matrix - adjoint_matrix(h).matrix)), 1e-12,
                 "phase changed the adjoint");
    }
    const GroupElement g = haar_sample(prod, sd(1050));
    require_le(distance(multiply(g, inverse(g)), identity_element(prod)), 1e-12,
               "g g^-1 != identity");
    return std::string();
  });

  run("core/norm-methods-agree", [&] {
    double worst = 0.0;
    for (const auto& kind : {su2, su3, so3, prod}) {
      for (int i = 0; i < 400; ++i) {
        const GroupElement g = haar_sample(kind, sd(2000 + i));
        worst = std::max(worst, std::abs(op_norm_group(g) - op_norm_group_spectral(g)));
      }
    }
    require_le(worst, 1e-8, "adjoint-eigenvalue and spectral group norms disagree");
    double worst_alg = 0.0;
    for (const auto& kind : {su2, su3}) {
      for (int i = 0; i < 200; ++i) {
        const AlgebraVector x = random_algebra_vector(kind, 0.1 + 0.003 * i, sd(2500 + i));
        worst_alg = std::max(worst_alg,
                             std::abs(op_norm_algebra(x) - op_norm_algebra_spectral(x)));
      }
    }
    require_le(worst_alg, 1e-8, "ad-singular-value and spectral algebra norms disagree");
    return "group " + short_num(worst) + ", algebra " + short_num(worst_alg);
  });

  run("core/metric-axioms", [&] {
    for (const auto& kind : {su2, su3, so3}) {
      for (int i = 0; i < 200; ++i) {
        const GroupElement a = haar_sample(kind, sd(3000 + 3 * i));
        const GroupElement b = haar_sample(kind, sd(3001 + 3 * i));
        const GroupElement c = haar_sample(kind, sd(3002 + 3 * i));
        const double ab = distance(a, b), bc = distance(b, c), ac = distance(a, c);
        require(ab >= 0.0 && ab <= kPi + 1e-12, "distance outside [0, pi]");
        require_le(std::abs(ab - distance(b, a)), 1e-9, "distance not symmetric");
        require_le(distance(a, a), 1e-12, "d(a,a) != 0");
        require_le(ac, ab + bc + 1e-9, "triangle inequality violated");
        // Bi-invariance: left and right translation preserve distances.
        require_le(std::abs(distance(multiply(c, a), multiply(c, b)) - ab), 1e-9,
                   "left invariance violated");
        require_le(std::abs(distance(multiply(a, c), multiply(b, c)) - ab), 1e-9,
                   "right invariance violated");
        require_le(std::abs(op_norm_group(a) - op_norm_group(inverse(a))), 1e-9,
                   "|g| != |g^-1|");
      }
    }
    return std::string();
  });

  run("core/adjoint-homomorphism", [&] {
    double worst = 0.0;
    for (const auto& kind : {su2, su3, so3, so4}) {
      const int n = kind.algebra_dim();
      for (int i = 0; i < 100; ++i) {
        const GroupElement g = haar_sample(kind, sd(4000 + 2 * i));
        const GroupElement h = haar_sample(kind, sd(4001 + 2 * i));
        const RMat ag = adjoint_matrix(g).matrix;
        const RMat ah = adjoint_matrix(h).matrix;
        worst = std::max(worst, max_abs(RMat(adjoint_matrix(multiply(g, h)).matrix - ag * ah)));
        worst = std::max(worst, max_abs(RMat(ag * ag.transpose() - RMat::Identity(n, n))));
        // Conjugation preserves the algebra norm.
        const AlgebraVector x = random_algebra_vector(kind, 0.7, sd(4100 + i));
        worst = std::max(worst,
                         std::abs(op_norm_algebra(adjoint_apply(g, x)) - op_norm_algebra(x)));
        // Matrix action on coordinates agrees with conjugation.
        const RVec lhs = algebra_coordinates(adjoint_apply(g, x));
        const RVec rhs = ag * algebra_coordinates(x);
        worst = std::max(worst, max_abs(RMat((lhs - rhs).eval())));
      }
    }
    require_le(worst, 1e-9, "adjoint homomorphism identities violated");
    return "max deviation " + short_num(worst);
  });

  run("core/algebra-basis-structure", [&] {
    double worst_gram = 0.0, worst_jacobi = 0.0, worst_skew = 0.0;
    for (const auto& kind :
         {su2, su3, GroupKind::su(4), so3, so4, GroupKind::so(5), prod}) {
      const auto basis = algebra_basis(kind);
      const int n = kind.algebra_dim();
      require(static_cast<int>(basis.size()) == n, "basis size != algebra dim");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          worst_gram = std::max(worst_gram, std::abs(inner_product(basis[i], basis[j]) -
                                                     (i == j ? 1.0 : 0.0)));
      std::mt19937_64 rng(sd(5000));
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int t = 0; t < 40; ++t) {
        const auto& x = basis[pick(rng)];
        const auto& y = basis[pick(rng)];
        const auto& z = basis[pick(rng)];
        const AlgebraVector b = bracket(x, y);  // closure: constructor validates
        // <[x,y], z> = -<y, [x,z]> (invariance of the inner product).
        worst_skew = std::max(worst_skew, std::abs(inner_product(b, z) +
                                                   inner_product(y, bracket(x, z))));
        const AlgebraVector j1 = bracket(x, bracket(y, z));
        const AlgebraVector j2 = bracket(y, bracket(z, x));
        const AlgebraVector j3 = bracket(z, bracket(x, y));
        worst_jacobi = std::max(worst_jacobi, frobenius_norm(add(add(j1, j2), j3)));
      }
    }
    require_le(worst_gram, 1e-12, "basis is not orthonormal");
    require_le(worst_skew, 1e-10, "inner product is not ad-invariant");
    require_le(worst_jacobi, 1e-10, "Jacobi identity violated");
    return std::string();
  });

  run("core/exp-log-round-trip", [&] {
    double worst_mat = 0.0, worst_norm = 0.0;
    for (const auto& kind : {su2, su3, so3, so4, prod}) {
      for (int i = 0; i < 300; ++i) {
        const double target = (2.0 * kPi / 3.0 - 0.01) * (i + 1) / 301.0;
        const AlgebraVector x = random_algebra_vector(kind, target, sd(6000 + i));
        const GroupElement g = exp_map(x);
        worst_norm = std::max(worst_norm, std::abs(op_norm_group(g) - target));
        const AlgebraVector back = log_map(g);
        worst_mat = std::max(worst_mat, max_abs(CMat(back.matrix - x.matrix)));
      }
    }
    require_le(worst_norm, 1e-8, "|exp x| != |x| inside the injectivity ball");
    require_le(worst_mat, 1e-8, "log(exp x) != x inside the injectivity ball");
    require(throws_invalid([&] { log_map(su2_rotation(Eigen::Vector3d::UnitX(), 2.2)); }),
            "log accepted an element outside its domain");
    return "matrix " + short_num(worst_mat) + ", norm " + short_num(worst_norm);
  });

  run("core/exp-one-parameter", [&] {
    double worst_add = 0.0, worst_len = 0.0;
    for (const auto& kind : {su2, su3, so3}) {
      for (int i = 0; i < 50; ++i) {
        const AlgebraVector x = random_algebra_vector(kind, 1.3, sd(7000 + i));
        const GroupElement whole = exp_map(x);
        const GroupElement halves = multiply(exp_map(scale(0.3, x)), exp_map(scale(0.7, x)));
        worst_add = std::max(worst_add, max_abs(CMat(whole.matrix - halves.matrix)));
      }
      // Sampling exp(t x) reproduces |x| as the path length.
      const AlgebraVector x = random_algebra_vector(kind, 1.1, sd(7100));
      std::vector<GroupElement> samples;
      for (int t = 0; t <= 100; ++t) samples.push_back(exp_map(scale(t / 100.0, x)));
      worst_len = std::max(worst_len, std::abs(path_length(samples) - 1.1));
      // Any discrete path is at least as long as the endpoint separation.
      for (int p = 0; p < 30; ++p) {
        std::vector<GroupElement> path{haar_sample(kind, sd(7200 + p))};
        for (int s = 0; s < 10; ++s)
          path.push_back(multiply(path.back(),
                                  exp_map(random_algebra_vector(kind, 0.2, sd(7300 + 10 * p + s)))));
        require_le(distance(path.front(), path.back()), path_length(path) + 1e-9,
                   "path shorter than endpoint distance");
      }
    }
    require_le(worst_add, 1e-12, "exp(s x) exp(t x) != exp((s+t) x)");
    require_le(worst_len, 1e-6, "one-parameter path length != |x|");
    return std::string();
  });

  run("core/haar-moments", [&] {
    const int n = 10000;
    CMat mean2 = CMat::Zero(2, 2);
    double tr2 = 0.0, tr3 = 0.0;
    for (int i = 0; i < n; ++i) {
      const GroupElement g = haar_sample(su2, sd(8000 + i));
      mean2 += g.matrix;
      tr2 += std::norm(g.matrix.trace());
      tr3 += haar_sample(so3, sd(18000 + i)).matrix.trace().real();
    }
    require_le(max_abs(CMat(mean2 / double(n))), 0.05, "su(2) Haar mean entry too large");
    require_close(tr2 / n, 1.0, 0.05, "su(2) Haar E|tr|^2");
    require_close(tr3 / n, 0.0, 0.05, "so(3) Haar E[tr]");
    const GroupElement a = haar_sample(prod, 123u);
    const GroupElement b = haar_sample(prod, 123u);
    require_le(max_abs(CMat(a.matrix - b.matrix)), 0.0, "haar_sample not deterministic");
    return "E|tr|^2 = " + short_num(tr2 / n);
  });

  // ----------------------------------------------------------- constants

  run("constants/beta-solution", [&] {
    const BetaSolution sol = solve_beta(1e-10);
    require_close(sol.alpha, std::acos(7.0 / 8.0), 1e-15, "alpha");
    require(sol.beta > 0.0 && sol.beta < sol.alpha, "beta outside (0, alpha)");
    require_le(std::abs(sol.residual), 1e-9, "residual at the root");
    require_le(std::abs(beta_equation_residual(sol.beta)), 1e-9, "recomputed residual");
    require(beta_equation_residual(sol.beta - 1e-4) < 0.0 &&
                beta_equation_residual(sol.beta + 1e-4) > 0.0,
            "no sign change across the root");
    require_le(4.0 * sol.beta, kPi / 2.0, "4 beta above pi/2");
    require_close(solve_beta(1e-7).beta, sol.beta, 1e-6, "tolerance consistency");
    require(throws_invalid([] { solve_beta(1e-5); }), "loose tolerance accepted");
    require(throws_invalid([] { solve_beta(0.0); }), "zero tolerance accepted");
    return "beta = " + short_num(sol.beta);
  });

  run("constants/residual-shape", [&] {
    require_close(beta_equation_residual(0.0), -15.0 / 64.0, 1e-15, "residual at 0");
    const double alpha = alpha_angle();
    for (int i = 0; i < 200; ++i) {
      const double b = (kPi / 4.0 - 1e-9) * i / 200.0;
      // Same quantity along a different trig path.
      const double alt = std::cos(alpha - b) * std::cos(alpha - b) +
                         std::sin(alpha - b) * std::sin(alpha - b) * std::cos(kPi / 2.0 - b) -
                         std::cos(4.0 * b);
      require_close(beta_equation_residual(b), alt, 1e-12, "residual trig identity");
    }
    require(throws_invalid([] { beta_equation_residual(kPi / 4.0); }),
            "domain end accepted");
    require(throws_invalid([] { beta_equation_residual(-1e-9); }), "negative accepted");
    return std::string();
  });

  run("constants/contraction-constant", [&] {
    require_le(contraction_constant(0.0), 0.0, "C(0)");
    require_close(contraction_constant(alpha_angle()), 1.0, 1e-12, "C(alpha)");
    require_close(contraction_constant(kPi / 3.0), 2.0, 1e-12, "C(pi/3)");
    require_close(contraction_constant(0.4), 0.7946773231802448, 1e-12, "C(0.4)");
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double k = kPi * i / 1000.0;
      const double c = contraction_constant(k);
      require(c > prev, "C not strictly increasing");
      require((c < 1.0) == (k < alpha_angle()), "C < 1 does not match k < alpha");
      require_close(c, 4.0 * std::abs(std::sin(k / 2.0)), 1e-12, "chord-length identity");
      prev = c;
    }
    require(throws_invalid([] { contraction_constant(-1e-9); }), "negative accepted");
    require(throws_invalid([] { contraction_constant(kPi + 1e-9); }), "past pi accepted");
    return std::string();
  });

  // ------------------------------------------------------------ subspace

  run("subspace/angle-metric", [&] {
    double worst = 0.0;
    for (int i = 0; i < 150; ++i) {
      const int n = 4 + i % 5;
      const int k = 1 + i % (n - 1);
      const bool cx = i % 2 == 0;
      const Subspace u = random_subspace(n, k, sd(9000 + 2 * i), cx);
      const Subspace w = random_subspace(n, k, sd(9001 + 2 * i), cx);
      const double a = angle_between(u, w);
      require(a >= 0.0 && a <= kPi / 2.0 + 1e-12, "angle outside [0, pi/2]");
      require_le(std::abs(a - angle_between(w, u)), 1e-12, "angle not symmetric");
      require_le(angle_between(u, u), 1e-7, "angle(U,U) != 0");
      // Complements of equidimensional subspaces form the same angle.
      worst = std::max(worst, std::abs(angle_between(perp(u), perp(w)) - a));
      // A unitary change of frame moves both subspaces rigidly.
      const GroupKind amb = cx ? GroupKind::su(n) : GroupKind::so(n);
      const CMat q = haar_sample(amb, sd(9500 + i)).matrix;
      worst = std::max(worst, std::abs(angle_between(apply_to_subspace(q, u),
                                                     apply_to_subspace(q, w)) -
                                       a));
    }
    require_le(worst, 1e-8, "angle identities violated");
    return "max deviation " + short_num(worst);
  });

  run("subspace/projection-contraction", [&] {
    double worst = 0.0;
    for (int i = 0; i < 150; ++i) {
      const int n = 4 + i % 4;
      const int k = 1 + i % (n - 1);
      const Subspace u = random_subspace(n, k, sd(10000 + 2 * i));
      const Subspace w = random_subspace(n, k, sd(10001 + 2 * i));
      const CMat pu = projection(u), pw = projection(w);
      require_le(max_abs(CMat(pu * pu - pu)), 1e-12, "projection not idempotent");
      require_le(max_abs(CMat(pu - pu.adjoint())), 1e-12, "projection not Hermitian");
      const double s = std::sin(angle_between(u, w));
      // Passing through W and back off U contracts by sin^2 of the angle.
      const CMat off = (CMat::Identity(n, n) - pu) * pw * (CMat::Identity(n, n) - pu);
      require_le(largest_singular_value(off), s * s + 1e-9, "sin^2 contraction violated");
      // The directed sines themselves are bounded by the angle.
      worst = std::max(worst,
                       largest_singular_value((CMat::Identity(n, n) - pw) * u.basis) - s);
    }
    require(worst <= 1e-9, "directed sine exceeds the angle");
    return std::string();
  });

  run("subspace/angle-bounded-by-norm", [&] {
    for (const auto& kind : {su2, su3, so3}) {
      const Representation rep = adjoint_representation(kind);
      const int n = rep.ambient_dim;
      for (int i = 0; i < 150; ++i) {
        const Subspace w = random_subspace(n, 1 + i % (n - 1), sd(11000 + i), false);
        const GroupElement g = haar_sample(kind, sd(11500 + i));
        require_le(angle_between(w, apply_to_subspace(rep.action(g), w)),
                   op_norm_group(g) + 1e-9, "angle(W, gW) exceeds |g|");
      }
    }
    return std::string();
  });

  run("subspace/trace-bound", [&] {
    std::mt19937_64 rng(sd(12000));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 150; ++i) {
      const int n = 4 + i % 5;
      const int k = 1 + i % (n - 1);
      // Random rank-k operator with known largest singular value.
      const Subspace u = random_subspace(n, k, sd(12100 + 2 * i));
      const Subspace v = random_subspace(n, k, sd(12101 + 2 * i));
      CMat a = CMat::Zero(n, n);
      double smax = 0.0;
      for (int j = 0; j < k; ++j) {
        const double s = std::abs(gauss(rng)) + 0.1;
        smax = std::max(smax, s);
        a += s * u.basis.col(j) * v.basis.col(j).adjoint();
      }
      require_le(std::abs(trace_of_product(a, CMat::Identity(n, n)).real()),
                 k * smax + 1e-9, "rank-k trace bound violated");
      const CMat q = haar_sample(GroupKind::su(n), sd(12200 + i)).matrix;
      require_le(std::abs(trace_of_product(projection(u), q)), k + 1e-9,
                 "trace of projected unitary exceeds the rank");
    }
    return std::string();
  });

  run("subspace/schur-average", [&] {
    const Representation rep2 = adjoint_representation(su2);
    const Subspace w1 = random_subspace(3, 1, sd(13000), false);
    const auto [m_id, dev_id] = schur_average(rep2, w1, 1, sd(13001));
    require_le(max_abs(CMat(m_id - projection(w1))), 1e-14,
               "single-sample average is not the projection itself");
    const auto [m, dev] = schur_average(rep2, w1, 20000, sd(13002));
    require_le(dev, 0.02, "irreducible average did not flatten to (k/n) I");
    require_close(m.trace().real(), 1.0, 1e-9, "averaging must preserve the trace");
    const Representation rep3 = adjoint_representation(su3);
    const Subspace w3 = random_subspace(8, 3, sd(13003), false);
    const auto [m3, dev3] = schur_average(rep3, w3, 500, sd(13004));
    require_le(dev3, 0.2, "su(3) average far from (k/n) I");
    require_close(m3.trace().real(), 3.0, 1e-9, "su(3) average trace");
    Representation red = rep2;
    red.irreducible = false;
    require(throws_invalid([&] { schur_average(red, w1, 200, 0u); }),
            "reducible representation accepted");
    return "deviation " + short_num(dev) + " at 20000 samples";
  });

  run("subspace/find-large-angle", [&] {
    // Deterministic sanity: a quarter turn about x moves span(e_z) by pi/2.
    const Subspace ez = make_subspace(CMat(CMat::Identity(3, 3).col(2)));
    const CMat rx = so3_rotation_x(kPi / 2.0).matrix;
    require_close(angle_between(ez, apply_to_subspace(rx, ez)), kPi / 2.0, 1e-12,
                  "quarter-turn angle");
    double least = kPi;
    for (const auto& kind : {su2, su3}) {
      const Representation rep = adjoint_representation(kind);
      for (int i = 0; i < 2; ++i) {
        const Subspace w =
            random_subspace(rep.ambient_dim, 1 + i, sd(14000 + i), false);
        const auto [g, a] = find_large_angle(rep, w, 1500, sd(14100 + i));
        require_close(angle_between(w, apply_to_subspace(rep.action(g), w)), a, 1e-12,
                      "reported angle mismatch");
        require(a >= kPi / 4.0 - 1e-3, "search ended below pi/4");
        least = std::min(least, a);
      }
    }
    return "least angle found " + short_num(least);
  });

  // ---------------------------------------------------------- commutator

  run("commutator/contraction-inequality", [&] {
    double worst = -1.0;
    for (const auto& kind : {su2, so3, prod}) {
      for (int i = 0; i < (kind.is_product() ? 100 : 400); ++i) {
        const GroupElement h =
            exp_map(random_algebra_vector(kind, (kPi / 2.0 - 1e-3) * (i % 97 + 1) / 97.0,
                                          sd(15000 + 2 * i)));
        const GroupElement k =
            exp_map(random_algebra_vector(kind, (alpha_angle() - 1e-3) * (i % 89 + 1) / 89.0,
                                          sd(15001 + 2 * i)));
        const double lhs = op_norm_group(commutator(h, k));
        const double rhs = contraction_constant(op_norm_group(k)) * op_norm_group(h);
        worst = std::max(worst, lhs - rhs);
        require_le(lhs, rhs + 1e-9, "|[h,k]| > C(|k|) |h|");
      }
    }
    return "max lhs-rhs " + short_num(worst);
  });

  run("commutator/sequence-decay", [&] {
    for (const auto& kind : {su2, so3}) {
      for (int i = 0; i < 40; ++i) {
        const GroupElement h =
            exp_map(random_algebra_vector(kind, 1.4, sd(16000 + 2 * i)));
        const GroupElement k =
            exp_map(random_algebra_vector(kind, 0.45, sd(16001 + 2 * i)));
        const double c = contraction_constant(op_norm_group(k));
        const CommutatorTrace tr = commutator_sequence(h, k, 200, 1e-12);
        require(tr.converged, "sequence failed to converge in 200 steps");
        double bound = tr.norms.front();
        for (size_t s = 1; s < tr.norms.size(); ++s) {
          bound *= c;
          require_le(tr.norms[s], bound + 1e-9, "norm above the geometric envelope");
          require_le(max_abs(CMat(tr.elements[s].matrix -
                                  commutator(tr.elements[s - 1], k).matrix)),
                     1e-12, "trace elements inconsistent");
        }
        for (size_t s = 0; s + 1 < tr.norms.size(); ++s)
          if (tr.norms[s] >= kRatioCheckFloor)
            require_le(tr.contraction_ratios[s], c + 1e-9, "recorded ratio above C");
      }
    }
    require(throws_invalid([&] {
      commutator_sequence(so3_rotation_z(kPi / 2.0 + 0.1), so3_rotation_x(0.1), 10, 1e-12);
    }), "|h| >= pi/2 accepted");
    require(throws_invalid([&] {
      commutator_sequence(so3_rotation_z(0.1), so3_rotation_x(alpha_angle() + 0.01), 10, 1e-12);
    }), "|k| >= alpha accepted");
    return std::string();
  });

  run("commutator/witness-4beta", [&] {
    const BetaSolution sol = solve_beta(1e-10);
    const WitnessPair wp = construct_witness_pair(sol);
    require_le(max_abs(CMat(wp.h.matrix * wp.v.cast<Complex>() - wp.v.cast<Complex>())),
               1e-12, "h does not fix v");
    require_close(op_norm_group(wp.h), kPi / 2.0 - sol.beta, 1e-9, "|h|");
    require_close(op_norm_group(wp.k), sol.alpha - sol.beta, 1e-9, "|k|");
    const double angle = witness_angle(wp.h, wp.k, wp.v);
    require_close(angle, 4.0 * sol.beta, 1e-6, "witness angle vs 4 beta");
    require_le(std::abs(witness_angle(wp.k, wp.h, wp.v) - angle), 1e-12,
               "witness angle not symmetric in h, k");
    require_le(witness_angle(wp.h, so3_rotation_z(0.3), wp.v), 1e-12,
               "commuting pair with nonzero witness angle");
    return "angle " + short_num(angle) + " = 4 beta +/- " +
           short_num(std::abs(angle - 4.0 * sol.beta));
  });

  run("commutator/perturbation-positivity", [&] {
    const BetaSolution sol = solve_beta(1e-10);
    const WitnessPair wp = construct_witness_pair(sol);
    double least = kPi;
    for (int i = 0; i < 400; ++i) {
      const double r = 0.9 * sol.beta * (i % 10 + 1) / 10.0;
      const GroupElement hp =
          multiply(wp.h, exp_map(random_algebra_vector(so3, r, sd(17000 + 2 * i))));
      const GroupElement kp =
          multiply(wp.k, exp_map(random_algebra_vector(so3, r, sd(17001 + 2 * i))));
      const double a = perturbation_noncommutation_check(wp.h, wp.k, wp.v, hp, kp);
      require(a > 1e-6, "perturbed witness angle collapsed to zero");
      least = std::min(least, a);
    }
    require(throws_invalid([&] {
      const GroupElement far =
          multiply(wp.h, so3_rotation_y(1.05 * sol.beta));
      perturbation_noncommutation_check(wp.h, wp.k, wp.v, far, wp.k);
    }), "perturbation beyond beta accepted");
    return "least angle " + short_num(least);
  });

  // ------------------------------------------------------------ quotient

  run("quotient/coset-invariance", [&] {
    const SubgroupSample ico = icosahedral_group();
    require(ico.exact && ico.elements.size() == 60, "icosahedral sample malformed");
    for (int i = 0; i < 40; ++i) {
      const GroupElement g = haar_sample(so3, sd(19000 + i));
      const double d = coset_distance(g, ico);
      require(d >= 0.0 && d <= kPi + 1e-12, "coset distance out of range");
      for (int j = 0; j < 8; ++j) {
        const GroupElement gh = multiply(g, ico.elements[(7 * i + 11 * j) % 60]);
        require_le(std::abs(coset_distance(gh, ico) - d), 1e-9,
                   "coset distance not right-invariant");
      }
    }
    for (const auto& h : ico.elements)
      require_le(coset_distance(h, ico), 1e-9, "member at positive coset distance");
    require(throws_invalid([&] {
      make_subgroup_sample({so3_rotation_z(1.0)}, false);  // no identity
    }), "sample without identity accepted");
    require(throws_invalid([&] {
      make_subgroup_sample({identity_element(so3), so3_rotation_z(1.0)}, false);
    }), "sample without inverses accepted");
    return std::string();
  });

  run("quotient/diameter-estimates", [&] {
    const SubgroupSample trivial = make_subgroup_sample({identity_element(so3)}, true);
    const double full = diameter_lower_estimate(so3, trivial, 300, sd(20000));
    require_close(full, kPi, 0.01, "diameter of SO(3) itself");
    const SubgroupSample ico = icosahedral_group();
    std::vector<GroupElement> cyc;
    for (int p = 0; p < 5; ++p) cyc.push_back(so3_rotation_z(2.0 * kPi * p / 5.0));
    const SubgroupSample c5 = make_subgroup_sample(std::move(cyc), true);
    // Pointwise: a larger subgroup can only move the fibers closer.
    for (int i = 0; i < 100; ++i) {
      const GroupElement g = haar_sample(so3, sd(20100 + i));
      require_le(coset_distance(g, ico), coset_distance(g, c5) + 1e-12,
                 "enlarging the subgroup increased a coset distance");
    }
    const double d_ico = diameter_lower_estimate(so3, ico, 300, sd(20001));
    const double d_c5 = diameter_lower_estimate(so3, c5, 300, sd(20001));
    require_le(d_ico, d_c5 + 1e-9, "estimate not monotone under enlargement");
    // Every proper closed subgroup leaves a fiber at least beta away.
    const double beta = solve_beta(1e-10).beta;
    for (const double d : {full, d_ico, d_c5})
      require(d >= beta - 0.01, "estimate below the universal beta gap");
    require(d_ico > 0.7 && d_ico < kPi, "icosahedral quotient estimate implausible");
    require(throws_invalid([&] { diameter_lower_estimate(so3, ico, 99, 0u); }),
            "fewer than 100 probes accepted");
    return "SO(3): " + short_num(full) + ", icosahedral: " + short_num(d_ico) +
           ", C5: " + short_num(d_c5);
  });

  run("quotient/distance-to-subalgebra", [&] {
    const GroupKind pp = GroupKind::product({so3, so3});
    // Sampled diagonal subgroup, closed under inverses by construction.
    std::vector<GroupElement> diag{identity_element(pp)};
    for (int i = 0; i < 400; ++i) {
      const GroupElement h = haar_sample(so3, sd(21000 + i));
      diag.push_back(product_element({h, h}));
      const GroupElement hi = inverse(h);
      diag.push_back(product_element({hi, hi}));
    }
    const SubgroupSample sample = make_subgroup_sample(std::move(diag), false);
    // The diagonal subalgebra, in orthonormal adjoint coordinates.
    CMat basis = CMat::Zero(6, 3);
    for (int i = 0; i < 3; ++i) {
      basis(i, i) = 1.0 / std::sqrt(2.0);
      basis(i + 3, i) = 1.0 / std::sqrt(2.0);
    }
    const Subspace hspace = make_subspace(basis);
    for (int i = 0; i < 40; ++i) {
      const GroupElement g = haar_sample(pp, sd(21500 + i));
      const CMat ad = adjoint_matrix(g).matrix.cast<Complex>();
      const double angle = angle_between(hspace, apply_to_subspace(ad, hspace));
      require_le(angle, coset_distance(g, sample) + 1e-9,
                 "coset distance below the subalgebra angle");
    }
    return std::string();
  });

  run("quotient/diagonal-estimate", [&] {
    const double v = diagonal_quotient_estimate(so3, 1000, sd(22000));
    require(v >= kPi / 2.0 - 0.05, "diagonal estimate below pi/2");
    require(v <= kPi / 2.0 + 0.35, "diagonal estimate failed to localize near pi/2");
    require(throws_invalid([&] { diagonal_quotient_estimate(prod, 1000, 0u); }),
            "product factor kind accepted");
    return "estimate " + short_num(v);
  });

  run("quotient/projection-monotonicity", [&] {
    const GroupKind pp = GroupKind::product({so3, so3});
    const SubgroupSample ico = icosahedral_group();
    std::vector<GroupElement> diag;
    diag.reserve(60);
    for (const auto& h : ico.elements) diag.push_back(product_element({h, h}));
    const SubgroupSample hh = make_subgroup_sample(std::move(diag), true);
    for (int i = 0; i < 150; ++i) {
      const GroupElement g = haar_sample(pp, sd(23000 + i));
      const auto [full, projected] = projection_monotonicity_check(g, hh);
      require_le(projected, full + 1e-9, "projection increased the coset distance");
    }
    const GroupElement g1 = product_element({so3_rotation_z(1.0), identity_element(so3)});
    const SubgroupSample triv = make_subgroup_sample({identity_element(pp)}, true);
    const auto [f, p] = projection_monotonicity_check(g1, triv);
    require_close(f, 1.0, 1e-12, "trivial-subgroup full distance");
    require_close(p, 1.0, 1e-12, "trivial-subgroup projected distance");
    return std::string();
  });

  run("quotient/killing-comparison", [&] {
    for (const auto& kind : {su2, su3, so3, so4}) {
      for (int i = 0; i < 400; ++i) {
        const GroupElement g = exp_map(random_algebra_vector(
            kind, (2.0 * kPi / 3.0 - 0.05) * (i % 93 + 1) / 93.0, sd(24000 + i)));
        const KillingComparison kc = killing_comparison(g);  // throws if a bound fails
        require(kc.algebra_dim == kind.algebra_dim(), "algebra dim mismatch");
        if (kind == su2 || kind == so3)
          require_close(kc.d_k, std::sqrt(2.0) * kc.d, 1e-9,
                        "rank-one Killing length should be sqrt(2) d");
      }
    }
    return std::string();
  });

  // --------------------------------------------------------- universality

  run("universality/ball-net", [&] {
    const auto only = ball_net(su2, 0.0, 0.05);
    require(only.size() == 1 && op_norm_group(only[0]) <= 1e-12,
            "radius-0 net is not exactly the identity");
    const double r = 0.35, spacing = 0.06;
    const auto net = ball_net(su2, r, spacing);
    require(net.size() > 50, "net implausibly small");
    for (const auto& p : net)
      require_le(op_norm_group(p), r + 1e-9, "net point outside the ball");
    const auto net2 = ball_net(su2, r, spacing);
    require(net.size() == net2.size(), "net not deterministic");
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const GroupElement g = random_ball_element(su2, r, sd(25000 + i));
      double best = kPi;
      for (const auto& p : net) best = std::min(best, distance(g, p));
      worst = std::max(worst, best);
    }
    require_le(worst, spacing + 1e-9, "ball point farther than `spacing` from the net");
    require(throws_invalid([&] { ball_net(su2, 0.3, 0.0); }), "zero spacing accepted");
    require(throws_invalid([&] { ball_net(su2, 2.0 * kPi / 3.0, 0.05); }),
            "net radius at the log-domain edge accepted");
    bool capped = false;
    try {
      ball_net(so3, 0.35, 0.06, /*cap=*/10);
    } catch (const std::runtime_error&) {
      capped = true;
    }
    require(capped, "tiny cap did not raise");
    return "worst covering gap " + short_num(worst) + " at spacing " + short_num(spacing);
  });

  run("universality/icosahedral-closure", [&] {
    const GateSet gates = builtin_icosahedral_gates();
    const WordStore store = generate_words(gates, 15, 1e-6);
    require(store.closure_detected, "icosahedral words did not close");
    require(store.group_order && *store.group_order == 60, "closure order is not 60");
    require(store.max_length_reached <= 12, "closure needed more than 12 letters");
    // Re-multiplying every stored pair lands back in the store.
    const detail::AdjointBuilder adb(so3);
    for (const auto& a : store.entries)
      for (const auto& b : store.entries)
        require(store.find(adb(CMat(a.element * b.element))) >= 0,
                "product of stored words escaped the closure");
    // The stored word of every entry multiplies back to the entry.
    for (size_t i = 0; i < store.size(); ++i) {
      CMat m = CMat::Identity(3, 3);
      std::vector<int> gens;
      for (int cur = static_cast<int>(i); cur > 0; cur = store.entries[cur].parent)
        gens.push_back(store.entries[cur].gen);
      for (auto it = gens.rbegin(); it != gens.rend(); ++it)
        m *= store.generator_matrices[*it];
      require_le(max_abs(CMat(m - store.entries[i].element)), 1e-9,
                 "stored word does not reproduce its element");
      require(static_cast<int>(store.word(i).size()) == store.entries[i].depth,
              "word length != stored depth");
    }
    // Same 60 rotations as the independently built subgroup sample.
    const SubgroupSample ico = icosahedral_group();
    for (const auto& h : ico.elements)
      require(store.find(adb(h.matrix)) >= 0, "subgroup element missing from the closure");
    // Rotation angles only from the icosahedral spectrum.
    for (const auto& e : store.entries) {
      const double a = op_norm_group(GroupElement{e.element, so3});
      double best = kPi;
      for (const double c : {0.0, 2.0 * kPi / 5.0, 4.0 * kPi / 5.0, 2.0 * kPi / 3.0, kPi})
        best = std::min(best, std::abs(a - c));
      require_le(best, 1e-9, "rotation angle outside the icosahedral spectrum");
    }
    // Closure of a proper subgroup can never be universal.
    UniversalityConfig cfg;
    cfg.max_length = 15;
    cfg.spacing = 0.05;
    const CoverageReport rep = test_universality(gates, cfg);
    require(rep.verdict == Verdict::NotUniversal, "closure not reported NotUniversal");
    require(rep.group_order && *rep.group_order == 60, "report lost the group order");
    require(rep.certified_margin < 0.0, "finite subgroup claimed a coverage margin");
    return "closure at depth " + std::to_string(store.max_length_reached);
  });

  run("universality/phase-blind-words", [&] {
    const GateSet plain = make_gate_set(
        {su2_rotation(Eigen::Vector3d::UnitZ(), 1.0), su2_rotation(Eigen::Vector3d::UnitX(), 1.0)},
        {"a", "b"});
    std::vector<GroupElement> phased;
    for (const auto& g : plain.gates)
      phased.push_back(make_group_element(CMat(std::exp(Complex(0.0, 0.7)) * g.matrix), su2));
    const GateSet twisted = make_gate_set(std::move(phased), {"a", "b"});
    const WordStore s1 = generate_words(plain, 6, 1e-6);
    const WordStore s2 = generate_words(twisted, 6, 1e-6);
    require(s1.size() == s2.size(), "scalar phase changed the word count");
    double worst = 0.0;
    for (size_t i = 0; i < s1.size(); ++i) {
      worst = std::max(worst, max_abs(RMat(s1.entries[i].ad - s2.entries[i].ad)));
      worst = std::max(
          worst, distance(GroupElement{s1.entries[i].element, su2},
                          GroupElement{s2.entries[i].element, su2}));
    }
    require_le(worst, 1e-9, "scalar phase left a metric trace");
    return "max deviation " + short_num(worst);
  });

  run("universality/two-rotation-coverage", [&] {
    const double beta = solve_beta(1e-10).beta;
    UniversalityConfig cfg;
    cfg.max_length = 11;
    cfg.spacing = 0.02;
    const GateSet gates = builtin_two_rotation_gates();
    const WordStore store = generate_words(gates, cfg.max_length, cfg.dedup_tol, cfg.word_cap);
    require(!store.closure_detected && !store.cap_exceeded,
            "dense generators unexpectedly closed or capped");
    require(store.size() > 100000 && store.size() < 600000, "word count implausible");
    const std::vector<GroupElement> net = ball_net(so3, 2.0 * beta, cfg.spacing, cfg.net_cap);
    const CoveragePartial c11 = coverage_check(net, store, beta, cfg.spacing);
    require(c11.all_covered && c11.distances_exact, "11-letter words fail to cover the net");
    const double margin11 = beta - cfg.spacing - c11.worst_distance;
    require(margin11 > 0.0, "11-letter margin not positive");
    // Truncating to 10 letters (a prefix of the level-synchronous store)
    // still covers; more words can only improve the margin.
    WordStore trimmed;
    trimmed.kind = store.kind;
    trimmed.dedup_tol = store.dedup_tol;
    trimmed.generator_labels = store.generator_labels;
    trimmed.generator_matrices = store.generator_matrices;
    for (const auto& e : store.entries) {
      if (e.depth > 10) break;
      trimmed.trace_index.emplace(e.ad.trace(), static_cast<int>(trimmed.entries.size()));
      trimmed.entries.push_back(e);
      trimmed.max_length_reached = std::max(trimmed.max_length_reached, e.depth);
    }
    require(trimmed.size() < store.size(), "depth-11 level added nothing");
    const CoveragePartial c10 = coverage_check(net, trimmed, beta, cfg.spacing);
    require(c10.all_covered, "10-letter words fail to cover the net");
    const double margin10 = beta - cfg.spacing - c10.worst_distance;
    require(margin10 > 0.0, "10-letter margin not positive");
    require_le(margin10, margin11 + 1e-12, "margin shrank as words were added");
    // Soundness behind the certificate: random points of the 2 beta ball
    // really are within beta of some word.
    Eigen::MatrixXd pts(9, store.size());
    for (size_t j = 0; j < store.size(); ++j)
      pts.col(j) = Eigen::Map<const RVec>(store.entries[j].ad.data(), 9);
    const detail::KdTree tree(std::move(pts));
    const detail::AdjointBuilder adb(so3);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const GroupElement g = random_ball_element(so3, 2.0 * beta, sd(26000 + i));
      const RMat ad = adb(g.matrix);
      const auto [j, d2] = tree.nearest(Eigen::Map<const RVec>(ad.data(), 9));
      worst = std::max(worst, std::acos(std::clamp(1.0 - d2 / 4.0, -1.0, 1.0)));
    }
    require_le(worst, beta, "a ball point escaped the certified beta radius");
    return "margins " + short_num(margin10) + " (10 letters) -> " + short_num(margin11) +
           " (11 letters); ball spot-check worst " + short_num(worst);
  });

  return results;
}

}  // namespace liemetric
