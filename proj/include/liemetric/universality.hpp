#pragma once

// Gate-set universality tester: enumerate words of the generated subgroup,
// lay an epsilon-net over the 2*beta ball, and certify whether every net
// point is (beta - spacing)-close to a word.

#include <liemetric/builders.hpp>
#include <liemetric/constants.hpp>
#include <liemetric/detail/kdtree.hpp>
#include <liemetric/explog.hpp>

#include <functional>
#include <map>
#include <optional>

namespace liemetric {

inline constexpr std::size_t kDefaultWordCap = 2000000;
inline constexpr std::size_t kDefaultNetCap = 2000000;

/// Finite generator list. Words are products of gates (and inverses when
/// include_inverses is set).
struct GateSet {
  GroupKind kind;
  std::vector<GroupElement> gates;
  std::vector<std::string> labels;
  bool include_inverses = true;
};

inline GateSet make_gate_set(std::vector<GroupElement> gates, std::vector<std::string> labels,
                             bool include_inverses = true) {
  if (gates.empty()) throw std::invalid_argument("gate set is empty");
  if (labels.size() != gates.size())
    throw std::invalid_argument("gate set needs one label per gate");
  const GroupKind kind = gates.front().kind;
  for (const auto& g : gates)
    if (g.kind != kind) throw std::invalid_argument("gate set mixes group kinds");
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw std::invalid_argument("gate labels must be distinct");
  return GateSet{kind, std::move(gates), std::move(labels), include_inverses};
}

namespace detail {

// Reusable adjoint-matrix builder (skips per-call revalidation; inputs are
// products of validated elements).
struct AdjointBuilder {
  GroupKind kind;
  std::vector<std::vector<AlgebraVector>> bases;
  std::vector<std::pair<int, int>> mat_ranges;
  std::vector<std::pair<int, int>> alg_ranges;
  int algebra_dim = 0;

  explicit AdjointBuilder(const GroupKind& k) : kind(k) {
    algebra_dim = kind.algebra_dim();
    if (kind.is_product()) {
      mat_ranges = block_ranges(kind);
      int aoff = 0;
      for (const auto& f : kind.factors) {
        bases.push_back(algebra_basis(f));
        alg_ranges.emplace_back(aoff, f.algebra_dim());
        aoff += f.algebra_dim();
      }
    } else {
      mat_ranges = {{0, kind.dim}};
      alg_ranges = {{0, algebra_dim}};
      bases.push_back(algebra_basis(kind));
    }
  }

  RMat operator()(const CMat& m) const {
    RMat ad = RMat::Zero(algebra_dim, algebra_dim);
    for (size_t f = 0; f < bases.size(); ++f) {
      const auto& [moff, md] = mat_ranges[f];
      const auto& [aoff, an] = alg_ranges[f];
      ad.block(aoff, aoff, an, an) = adjoint_block(m.block(moff, moff, md, md), bases[f]);
    }
    return ad;
  }
};

}  // namespace detail

/// Deduplicated BFS enumeration of words in the generators. Dedup is a
/// nearest-neighbor match on adjoint matrices (phase-blind), indexed by
/// adjoint trace for sublinear lookup. Each entry keeps its parent link,
/// so the shortest word for any element can be read back.
struct WordStore {
  struct Entry {
    CMat element;
    RMat ad;
    int parent = -1;  // entry index; -1 for the identity
    int gen = -1;     // generator index into generator_labels
    int depth = 0;
  };

  GroupKind kind;
  double dedup_tol = 1e-6;
  std::size_t cap = kDefaultWordCap;
  std::vector<Entry> entries;
  std::multimap<double, int> trace_index;
  std::vector<std::string> generator_labels;
  std::vector<CMat> generator_matrices;  // aligned with generator_labels
  int max_length_reached = 0;
  bool closure_detected = false;
  bool cap_exceeded = false;
  std::optional<std::uint64_t> group_order;

  std::size_t size() const { return entries.size(); }

  /// Index of a stored element whose adjoint matches within dedup_tol, or -1.
  int find(const RMat& ad) const {
    const double key = ad.trace();
    const double slack = dedup_tol * ad.rows() + 1e-12;
    const auto lo = trace_index.lower_bound(key - slack);
    const auto hi = trace_index.upper_bound(key + slack);
    for (auto it = lo; it != hi; ++it)
      if (max_abs(RMat(ad - entries[it->second].ad)) <= dedup_tol) return it->second;
    return -1;
  }

  GroupElement element(int i) const { return GroupElement{entries.at(i).element, kind}; }

  /// Generator labels of the stored (shortest) word for entry i, in
  /// multiplication order.
  std::vector<std::string> word(int i) const {
    std::vector<std::string> out;
    for (int cur = i; cur > 0; cur = entries.at(cur).parent)
      out.push_back(generator_labels.at(entries.at(cur).gen));
    std::reverse(out.begin(), out.end());
    return out;
  }
};

/// Level-synchronous BFS over products of generators (and inverses).
/// closure_detected is set when a whole level adds nothing new; the
/// generated group is then exactly the stored finite set.
inline WordStore generate_words(const GateSet& gates, int max_length, double dedup_tol,
                                std::size_t cap = kDefaultWordCap) {
  if (max_length < 1) throw std::invalid_argument("max_length must be >= 1");
  if (!(dedup_tol >= 1e-9 && dedup_tol <= 1e-3))
    throw std::invalid_argument("dedup_tol must lie in [1e-9, 1e-3]");
  WordStore store;
  store.kind = gates.kind;
  store.dedup_tol = dedup_tol;
  store.cap = cap;
  const detail::AdjointBuilder adb(gates.kind);

  std::vector<CMat> gen_mats;
  std::vector<RMat> gen_ads;
  const auto add_generator = [&](const CMat& m, const std::string& label) {
    const RMat ad = adb(m);
    for (const auto& prev : gen_ads)
      if (max_abs(RMat(ad - prev)) <= dedup_tol) return;  // e.g. self-inverse gate
    gen_mats.push_back(m);
    gen_ads.push_back(ad);
    store.generator_labels.push_back(label);
    store.generator_matrices.push_back(m);
  };
  for (size_t i = 0; i < gates.gates.size(); ++i)
    add_generator(gates.gates[i].matrix, gates.labels[i]);
  if (gates.include_inverses)
    for (size_t i = 0; i < gates.gates.size(); ++i)
      add_generator(gates.gates[i].matrix.adjoint(), gates.labels[i] + "'");

  const auto insert = [&](CMat m, RMat ad, int parent, int gen, int depth) -> int {
    const int idx = static_cast<int>(store.entries.size());
    store.trace_index.emplace(ad.trace(), idx);
    store.entries.push_back(WordStore::Entry{std::move(m), std::move(ad), parent, gen, depth});
    return idx;
  };
  insert(CMat::Identity(gates.kind.dim, gates.kind.dim), RMat::Identity(adb.algebra_dim, adb.algebra_dim),
         -1, -1, 0);

  std::vector<int> frontier{0};
  for (int depth = 1; depth <= max_length; ++depth) {
    std::vector<int> fresh;
    for (const int idx : frontier) {
      for (size_t gi = 0; gi < gen_mats.size(); ++gi) {
        if (store.size() >= cap) {
          store.cap_exceeded = true;
          return store;
        }
        CMat m = store.entries[idx].element * gen_mats[gi];
        RMat ad = adb(m);
        if (store.find(ad) < 0)
          fresh.push_back(insert(std::move(m), std::move(ad), idx, static_cast<int>(gi), depth));
      }
    }
    if (fresh.empty()) {
      store.closure_detected = true;
      store.group_order = store.size();
      break;
    }
    store.max_length_reached = depth;
    frontier = std::move(fresh);
  }
  return store;
}

namespace detail {

// Norm comparison constants for coordinates in the orthonormal basis:
// |x| <= c ||coords||_2 with c = sqrt(2) for su(d), 1/sqrt(2) for so(3),
// 1 for so(d >= 4); and ||coords||_2 <= |x| / m per factor, combined in
// quadrature for products.
inline double coord_norm_upper_factor(const GroupKind& kind) {
  if (kind.is_unitary_family()) return std::sqrt(2.0);
  return kind.dim == 3 ? 1.0 / std::sqrt(2.0) : 1.0;
}

inline double coord_norm_upper(const GroupKind& kind) {
  if (!kind.is_product()) return coord_norm_upper_factor(kind);
  double c = 0.0;
  for (const auto& f : kind.factors) c = std::max(c, coord_norm_upper_factor(f));
  return c;
}

inline double lattice_enum_radius(const GroupKind& kind, double r) {
  if (kind.is_product()) {
    double s = 0.0;
    for (const auto& f : kind.factors) {
      const double rf = lattice_enum_radius(f, r);
      s += rf * rf;
    }
    return std::sqrt(s);
  }
  if (kind.is_unitary_family()) {
    const double d = kind.dim;
    // Smallest operator norm at unit coordinate length: 2/sqrt(d) for even
    // d, 2 sqrt(d/(d^2-1)) for odd d (balanced two-level eigenphases).
    const double m = (kind.dim % 2 == 0) ? 2.0 / std::sqrt(d) : 2.0 * std::sqrt(d / (d * d - 1.0));
    return r / m;
  }
  return r * std::sqrt(2.0);
}

// Exact closed-form |x| from coordinates for the 3-dimensional algebras.
inline bool algebra_norm_from_coords(const GroupKind& kind, double cnorm, double& out) {
  if (kind.is_product()) return false;
  if (kind.is_unitary_family() && kind.dim == 2) {
    out = std::sqrt(2.0) * cnorm;
    return true;
  }
  if (!kind.is_unitary_family() && kind.dim == 3) {
    out = cnorm / std::sqrt(2.0);
    return true;
  }
  return false;
}

}  // namespace detail

/// A spacing-net of the ball {|g| <= radius}: a cubic lattice of step
/// spacing/sqrt(N) in orthonormal algebra coordinates, intersected with
/// the norm ball and pushed through exp (norm-preserving at this radius).
/// Lattice points in the thin shell just outside the ball are scaled back
/// onto the boundary so edge regions stay covered. Covering radius:
/// a Euclidean displacement e moves the norm by at most c*e (c documented
/// in detail::coord_norm_upper), so the half-diagonal c*sqrt(N)*step/2 =
/// c*spacing/2 <= spacing covers interior points with margin; the step
/// shrink below extends the same guarantee past the snapped boundary.
inline std::vector<GroupElement> ball_net(const GroupKind& kind, double radius, double spacing,
                                          std::size_t cap = kDefaultNetCap) {
  if (spacing <= 0.0) throw std::invalid_argument("spacing must be positive");
  if (radius < 0.0) throw std::invalid_argument("radius must be nonnegative");
  if (radius + spacing >= 2.0 * kPi / 3.0)
    throw std::invalid_argument("radius + spacing must stay inside the log domain");
  std::vector<GroupElement> net;
  if (radius == 0.0) {
    net.push_back(identity_element(kind));
    return net;
  }
  const auto basis = algebra_basis(kind);
  const int n = static_cast<int>(basis.size());
  const double c_up = detail::coord_norm_upper(kind);
  double step = spacing / std::sqrt(double(n));
  // For the 3-dimensional algebras |x| is exactly proportional to the
  // coordinate length, so scaling a shell point back onto the (convex)
  // ball is the nearest-point projection and cannot hurt the covering
  // radius. For every other kind the snap is merely radial; shrinking the
  // step by 1 + c_up/m keeps the covering radius under `spacing` there too.
  double unused;
  if (!detail::algebra_norm_from_coords(kind, 1.0, unused)) {
    const double m_low = radius / detail::lattice_enum_radius(kind, radius);
    step /= 1.0 + c_up / m_low;
  }
  const double shell = c_up * std::sqrt(double(n)) * step;  // one lattice diagonal of slack
  const double enum_radius = detail::lattice_enum_radius(kind, radius + shell);

  RVec coords = RVec::Zero(n);
  const std::function<void(int, double)> visit = [&](int dim, double rem2) {
    if (dim == n) {
      const double cnorm = coords.norm();
      double norm;
      if (!detail::algebra_norm_from_coords(kind, cnorm, norm))
        norm = op_norm_algebra(algebra_from_coordinates(kind, coords, basis));
      double t = 1.0;
      if (norm > radius + 1e-12) {
        if (norm > radius + shell) return;
        t = radius / norm;  // snap shell points onto the boundary
      }
      if (net.size() >= cap) throw std::runtime_error("ball_net: net size exceeds cap");
      const AlgebraVector x = algebra_from_coordinates(kind, RVec(t * coords), basis);
      net.push_back(exp_map(x));
      return;
    }
    const int kmax = static_cast<int>(std::floor(std::sqrt(std::max(0.0, rem2)) / step));
    for (int k = -kmax; k <= kmax; ++k) {
      coords(dim) = k * step;
      visit(dim + 1, rem2 - double(k) * k * step * step);
    }
    coords(dim) = 0.0;
  };
  visit(0, enum_radius * enum_radius);
  return net;
}

/// Outcome of a coverage pass over a net.
struct CoveragePartial {
  bool all_covered = false;
  std::size_t covered_count = 0;
  double worst_distance = 0.0;  // largest (upper bound on) distance to the words
  int worst_index = -1;
  bool distances_exact = true;
};

/// For each net point, the distance to the nearest stored word; covered
/// means within beta - spacing (the margin extends coverage from net
/// points to the whole ball). Distances are measured on adjoint matrices:
/// a kd-tree prunes in the Frobenius metric, which for the 3-dimensional
/// algebras converts exactly to the angle via cos(theta) = 1 - f^2/4.
inline CoveragePartial coverage_check(const std::vector<GroupElement>& net,
                                      const WordStore& words, double beta, double spacing) {
  if (net.empty()) throw std::invalid_argument("coverage_check: empty net");
  if (words.entries.empty()) throw std::invalid_argument("coverage_check: empty word store");
  if (!(spacing > 0.0 && spacing < beta))
    throw std::invalid_argument("coverage_check requires 0 < spacing < beta");
  const GroupKind kind = words.kind;
  if (net.front().kind != kind) throw std::invalid_argument("net and words disagree on kind");
  const int n = kind.algebra_dim();
  const bool exact_map = (n == 3) && !kind.is_product();
  const double threshold = beta - spacing;

  Eigen::MatrixXd points(n * n, words.entries.size());
  for (std::size_t j = 0; j < words.entries.size(); ++j)
    points.col(j) = Eigen::Map<const RVec>(words.entries[j].ad.data(), n * n);
  const detail::KdTree tree(std::move(points));
  // Frobenius radius guaranteed to contain every word within `threshold`.
  const double frob_radius =
      std::sqrt(std::max(0.0, 2.0 * n * (1.0 - std::cos(threshold)))) + 1e-9;

  const detail::AdjointBuilder adb(kind);
  CoveragePartial out;
  out.worst_distance = -1.0;
  for (std::size_t b = 0; b < net.size(); ++b) {
    const RMat ad = adb(net[b].matrix);
    const RVec q = Eigen::Map<const RVec>(ad.data(), n * n);
    double min_dist;
    bool covered;
    if (exact_map) {
      const auto [j, d2] = tree.nearest(q);
      min_dist = std::acos(std::clamp(1.0 - d2 / 4.0, -1.0, 1.0));
      covered = min_dist <= threshold;
    } else {
      min_dist = std::numeric_limits<double>::infinity();
      for (const int j : tree.within(q, frob_radius)) {
        const RMat rel = words.entries[j].ad.transpose() * ad;
        min_dist = std::min(min_dist, detail::max_arg_of_real_matrix_eigenvalues(rel));
      }
      covered = min_dist <= threshold;
      if (!covered) {
        // True minimum may lie outside the pruning radius; report the
        // exact angle of the Frobenius-nearest word as an upper bound.
        const auto [j, d2] = tree.nearest(q);
        const RMat rel = words.entries[j].ad.transpose() * ad;
        min_dist = std::min(min_dist, detail::max_arg_of_real_matrix_eigenvalues(rel));
        out.distances_exact = false;
      }
    }
    if (covered) ++out.covered_count;
    if (min_dist > out.worst_distance) {
      out.worst_distance = min_dist;
      out.worst_index = static_cast<int>(b);
    }
  }
  out.all_covered = out.covered_count == net.size();
  return out;
}

enum class Verdict { Universal, NotUniversal, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Universal: return "Universal";
    case Verdict::NotUniversal: return "NotUniversal";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct UniversalityConfig {
  int max_length = 12;
  double spacing = 0.02;
  double dedup_tol = 1e-6;
  std::size_t word_cap = kDefaultWordCap;
  std::size_t net_cap = kDefaultNetCap;
};

struct CoverageReport {
  Verdict verdict = Verdict::Inconclusive;
  double beta = 0.0;
  double net_spacing = 0.0;
  double certified_margin = 0.0;
  double worst_distance = 0.0;
  std::optional<GroupElement> worst_point;
  std::size_t words_count = 0;
  int words_max_length = 0;
  std::optional<std::uint64_t> group_order;
  std::size_t net_size = 0;
  bool closure_detected = false;
  bool cap_exceeded = false;
  bool distances_exact = true;
};

/// Full pipeline: generate words, net the 2*beta ball, check coverage.
/// Universal needs every net point covered with positive margin;
/// NotUniversal fires only on closure (a finite group is always a proper
/// closed subgroup of a connected G, hence leaves points >= beta away);
/// anything else is Inconclusive, with the worst point as a restart hint.
inline CoverageReport test_universality(const GateSet& gates, const UniversalityConfig& cfg) {
  const double beta = solve_beta(1e-10).beta;
  const WordStore store = generate_words(gates, cfg.max_length, cfg.dedup_tol, cfg.word_cap);

  CoverageReport rep;
  rep.beta = beta;
  rep.net_spacing = cfg.spacing;
  rep.words_count = store.size();
  rep.words_max_length = store.max_length_reached;
  rep.group_order = store.group_order;
  rep.closure_detected = store.closure_detected;
  rep.cap_exceeded = store.cap_exceeded;

  const std::vector<GroupElement> net = ball_net(gates.kind, 2.0 * beta, cfg.spacing, cfg.net_cap);
  rep.net_size = net.size();
  const CoveragePartial cov = coverage_check(net, store, beta, cfg.spacing);
  rep.worst_distance = cov.worst_distance;
  if (cov.worst_index >= 0) rep.worst_point = net[cov.worst_index];
  rep.distances_exact = cov.distances_exact;
  rep.certified_margin = beta - cfg.spacing - cov.worst_distance;

  if (store.closure_detected)
    rep.verdict = Verdict::NotUniversal;
  else if (cov.all_covered && rep.certified_margin > 0.0)
    rep.verdict = Verdict::Universal;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

/// Two rotations by 1 radian about orthogonal axes: generates a dense
/// subgroup of SO(3).
inline GateSet builtin_two_rotation_gates() {
  return make_gate_set({so3_rotation_z(1.0), so3_rotation_x(1.0)}, {"rz1", "rx1"});
}

/// The icosahedral generators (5-fold about z, half-turn about an adjacent
/// edge axis): generates the order-60 icosahedral group.
inline GateSet builtin_icosahedral_gates() {
  const Eigen::Vector3d vertex(2.0 / std::sqrt(5.0), 0.0, 1.0 / std::sqrt(5.0));
  return make_gate_set(
      {so3_rotation_z(2.0 * kPi / 5.0), so3_rotation(Eigen::Vector3d::UnitZ() + vertex, kPi)},
      {"r5", "r2"});
}

}  // namespace liemetric
