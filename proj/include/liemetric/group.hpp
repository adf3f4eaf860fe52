#pragma once

// Validated matrix elements of SU(d), SO(d), and block products.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace liemetric {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr const char* kToolkitVersion = "0.1.0";

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Construction tolerances (max-entry norm unless stated otherwise).
inline constexpr double kTolUnitary = 1e-10;
inline constexpr double kTolDet = 1e-9;
inline constexpr double kTolReal = 1e-12;
inline constexpr double kTolSkew = 1e-12;
inline constexpr double kTolTrace = 1e-12;

enum class GroupFamily { SpecialUnitary, SpecialOrthogonal, Product };

/// Identifies SU(d), SO(d), or a finite block-diagonal product of those.
struct GroupKind {
  GroupFamily family = GroupFamily::SpecialUnitary;
  int dim = 0;                     // defining matrix dimension (total for products)
  std::vector<GroupKind> factors;  // nonempty only for products

  static GroupKind su(int d) {
    if (d < 2) throw std::invalid_argument("su(d) requires d >= 2");
    GroupKind k;
    k.family = GroupFamily::SpecialUnitary;
    k.dim = d;
    return k;
  }

  static GroupKind so(int d) {
    if (d < 3) throw std::invalid_argument("so(d) requires d >= 3");
    GroupKind k;
    k.family = GroupFamily::SpecialOrthogonal;
    k.dim = d;
    return k;
  }

  static GroupKind product(std::vector<GroupKind> fs) {
    if (fs.size() < 2) throw std::invalid_argument("product requires >= 2 factors");
    GroupKind k;
    k.family = GroupFamily::Product;
    k.factors = std::move(fs);
    k.dim = 0;
    for (const auto& f : k.factors) {
      if (f.is_product()) throw std::invalid_argument("nested products are not supported");
      k.dim += f.dim;
    }
    return k;
  }

  bool is_product() const { return family == GroupFamily::Product; }

  bool is_unitary_family() const { return family == GroupFamily::SpecialUnitary; }

  /// Dimension of the Lie algebra: d^2-1 for su(d), d(d-1)/2 for so(d), sum for products.
  int algebra_dim() const {
    switch (family) {
      case GroupFamily::SpecialUnitary:
        return dim * dim - 1;
      case GroupFamily::SpecialOrthogonal:
        return dim * (dim - 1) / 2;
      case GroupFamily::Product: {
        int n = 0;
        for (const auto& f : factors) n += f.algebra_dim();
        return n;
      }
    }
    return 0;
  }

  std::string name() const {
    switch (family) {
      case GroupFamily::SpecialUnitary:
        return "su(" + std::to_string(dim) + ")";
      case GroupFamily::SpecialOrthogonal:
        return "so(" + std::to_string(dim) + ")";
      case GroupFamily::Product: {
        std::string s;
        for (size_t i = 0; i < factors.size(); ++i) {
          if (i) s += " x ";
          s += factors[i].name();
        }
        return s;
      }
    }
    return "?";
  }

  friend bool operator==(const GroupKind& a, const GroupKind& b) {
    return a.family == b.family && a.dim == b.dim && a.factors == b.factors;
  }
  friend bool operator!=(const GroupKind& a, const GroupKind& b) { return !(a == b); }
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// A group element in the defining representation. For unitary kinds the
/// matrix is det-normalized; it stands for the class of g in the centerless
/// quotient, on which the adjoint-based norm and distance live.
struct GroupElement {
  CMat matrix;
  GroupKind kind;
};

namespace detail {

inline void check_square(const CMat& m, int d, const char* what) {
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(d) + "x" +
                                std::to_string(d) + " matrix");
}

inline void check_unitary(const CMat& m) {
  const CMat gram = m.adjoint() * m;
  const double err = max_abs(gram - CMat::Identity(m.rows(), m.cols()));
  // Negated comparison so that NaN entries (err = NaN) also fail validation.
  if (!(err <= kTolUnitary))
    throw std::invalid_argument("matrix is not unitary (deviation " + std::to_string(err) + ")");
}

// Per-factor views of a block-diagonal matrix.
inline std::vector<std::pair<int, int>> block_ranges(const GroupKind& kind) {
  std::vector<std::pair<int, int>> out;
  int off = 0;
  for (const auto& f : kind.factors) {
    out.emplace_back(off, f.dim);
    off += f.dim;
  }
  return out;
}

}  // namespace detail

GroupElement make_group_element(CMat m, const GroupKind& kind);

namespace detail {

inline CMat validate_factor(CMat m, const GroupKind& kind) {
  check_square(m, kind.dim, kind.name().c_str());
  if (kind.family == GroupFamily::SpecialOrthogonal) {
    if (m.imag().cwiseAbs().maxCoeff() > kTolReal)
      throw std::invalid_argument("so-kind element has non-real entries");
    m.imag().setZero();
  }
  check_unitary(m);
  Complex det = m.determinant();
  if (kind.family == GroupFamily::SpecialUnitary) {
    // Global phases are invisible to the adjoint action; normalize to det = 1
    // by the principal d-th root so canonical forms are stable.
    const double delta = std::arg(det);
    m *= std::exp(Complex(0.0, -delta / kind.dim));
    det = m.determinant();
  }
  if (std::abs(det - Complex(1.0, 0.0)) > kTolDet)
    throw std::invalid_argument(kind.name() + " element has det != 1");
  return m;
}

}  // namespace detail

/// Validates (and for unitary kinds phase-normalizes) a group element.
inline GroupElement make_group_element(CMat m, const GroupKind& kind) {
  if (!kind.is_product()) return GroupElement{detail::validate_factor(std::move(m), kind), kind};

  detail::check_square(m, kind.dim, "product element");
  const auto ranges = detail::block_ranges(kind);
  CMat out = CMat::Zero(kind.dim, kind.dim);
  // Off-block entries must vanish.
  CMat mask = m;
  for (const auto& [off, d] : ranges) mask.block(off, off, d, d).setZero();
  if (max_abs(mask) > kTolUnitary)
    throw std::invalid_argument("product element is not block-diagonal");
  for (size_t i = 0; i < kind.factors.size(); ++i) {
    const auto& [off, d] = ranges[i];
    out.block(off, off, d, d) = detail::validate_factor(m.block(off, off, d, d), kind.factors[i]);
  }
  return GroupElement{std::move(out), kind};
}

inline GroupElement identity_element(const GroupKind& kind) {
  return GroupElement{CMat::Identity(kind.dim, kind.dim), kind};
}

/// Group product. Inputs must share a kind; the result needs no revalidation
/// (unitarity and block structure are preserved up to roundoff).
inline GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.kind != b.kind) throw std::invalid_argument("group kind mismatch in multiply");
  return GroupElement{a.matrix * b.matrix, a.kind};
}

inline GroupElement inverse(const GroupElement& g) {
  return GroupElement{g.matrix.adjoint(), g.kind};
}

/// Splits a product element into its factor elements.
inline std::vector<GroupElement> factor_elements(const GroupElement& g) {
  if (!g.kind.is_product()) return {g};
  std::vector<GroupElement> out;
  const auto ranges = detail::block_ranges(g.kind);
  for (size_t i = 0; i < g.kind.factors.size(); ++i) {
    const auto& [off, d] = ranges[i];
    out.push_back(GroupElement{g.matrix.block(off, off, d, d), g.kind.factors[i]});
  }
  return out;
}

/// Assembles a block-diagonal product element from per-factor elements.
inline GroupElement product_element(const std::vector<GroupElement>& parts) {
  std::vector<GroupKind> fs;
  int dim = 0;
  for (const auto& p : parts) {
    fs.push_back(p.kind);
    dim += p.kind.dim;
  }
  GroupKind kind = GroupKind::product(std::move(fs));
  CMat m = CMat::Zero(dim, dim);
  int off = 0;
  for (const auto& p : parts) {
    m.block(off, off, p.kind.dim, p.kind.dim) = p.matrix;
    off += p.kind.dim;
  }
  return GroupElement{std::move(m), kind};
}

}  // namespace liemetric
