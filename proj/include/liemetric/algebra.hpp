#pragma once

// Lie algebra vectors, orthonormal bases, and coordinate maps.

#include <liemetric/group.hpp>

#include <cmath>

namespace liemetric {

/// A tangent vector at the identity: traceless skew-Hermitian for su(d),
/// real antisymmetric for so(d), block-diagonal for products.
struct AlgebraVector {
  CMat matrix;
  GroupKind kind;
};

namespace detail {

inline CMat validate_algebra_factor(CMat m, const GroupKind& kind) {
  check_square(m, kind.dim, kind.name().c_str());
  if (kind.family == GroupFamily::SpecialOrthogonal) {
    if (m.imag().cwiseAbs().maxCoeff() > kTolReal)
      throw std::invalid_argument("so-kind algebra vector has non-real entries");
    m.imag().setZero();
  }
  if (max_abs(CMat(m + m.adjoint())) > kTolSkew)
    throw std::invalid_argument("algebra vector is not skew-Hermitian");
  if (std::abs(m.trace()) > kTolTrace)
    throw std::invalid_argument("algebra vector is not traceless");
  return m;
}

}  // namespace detail

inline AlgebraVector make_algebra_vector(CMat m, const GroupKind& kind) {
  if (!kind.is_product())
    return AlgebraVector{detail::validate_algebra_factor(std::move(m), kind), kind};
  detail::check_square(m, kind.dim, "product algebra vector");
  const auto ranges = detail::block_ranges(kind);
  CMat mask = m;
  for (const auto& [off, d] : ranges) mask.block(off, off, d, d).setZero();
  if (max_abs(mask) > kTolSkew)
    throw std::invalid_argument("product algebra vector is not block-diagonal");
  CMat out = CMat::Zero(kind.dim, kind.dim);
  for (size_t i = 0; i < kind.factors.size(); ++i) {
    const auto& [off, d] = ranges[i];
    out.block(off, off, d, d) =
        detail::validate_algebra_factor(m.block(off, off, d, d), kind.factors[i]);
  }
  return AlgebraVector{std::move(out), kind};
}

inline AlgebraVector zero_vector(const GroupKind& kind) {
  return AlgebraVector{CMat::Zero(kind.dim, kind.dim), kind};
}

/// Inner product <x,y> = -tr(xy), real and positive definite on compact algebras.
inline double inner_product(const AlgebraVector& x, const AlgebraVector& y) {
  if (x.kind != y.kind) throw std::invalid_argument("kind mismatch in inner_product");
  return -(x.matrix * y.matrix).trace().real();
}

inline double frobenius_norm(const AlgebraVector& x) {
  return std::sqrt(inner_product(x, x));
}

namespace detail {

// Basis of su(d) orthonormal under -tr(xy): i*S_jk and i*A_jk over pairs
// j<k in lexicographic order, then i*D_l for l=1..d-1, where
//   S_jk = (E_jk + E_kj)/sqrt(2), A_jk = -i(E_jk - E_kj)/sqrt(2),
//   D_l  = diag(1,...,1,-l,0,...,0)/sqrt(l(l+1))  (l ones).
inline std::vector<CMat> su_basis_matrices(int d) {
  std::vector<CMat> out;
  const Complex iu(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMat sym = CMat::Zero(d, d);
      sym(j, k) = s;
      sym(k, j) = s;
      out.push_back(iu * sym);
      CMat asym = CMat::Zero(d, d);
      asym(j, k) = -iu * s;
      asym(k, j) = iu * s;
      out.push_back(iu * asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    CMat diag = CMat::Zero(d, d);
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -double(l) * norm;
    out.push_back(iu * diag);
  }
  return out;
}

// Basis of so(d): L_jk = (E_jk - E_kj)/sqrt(2) over pairs j<k, lexicographic.
inline std::vector<CMat> so_basis_matrices(int d) {
  std::vector<CMat> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMat m = CMat::Zero(d, d);
      m(j, k) = s;
      m(k, j) = -s;
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace detail

/// Orthonormal basis of the algebra under <x,y> = -tr(xy), in a fixed
/// documented order. Product bases embed factor bases block by block,
/// factors in order.
inline std::vector<AlgebraVector> algebra_basis(const GroupKind& kind) {
  if (kind.dim > 8 && !kind.is_product())
    throw std::invalid_argument("algebra_basis supports factor dimension <= 8");
  std::vector<AlgebraVector> out;
  if (kind.is_product()) {
    const auto ranges = detail::block_ranges(kind);
    for (size_t i = 0; i < kind.factors.size(); ++i) {
      const auto& [off, d] = ranges[i];
      for (const auto& e : algebra_basis(kind.factors[i])) {
        CMat m = CMat::Zero(kind.dim, kind.dim);
        m.block(off, off, d, d) = e.matrix;
        out.push_back(AlgebraVector{std::move(m), kind});
      }
    }
    return out;
  }
  const auto mats = kind.is_unitary_family() ? detail::su_basis_matrices(kind.dim)
                                             : detail::so_basis_matrices(kind.dim);
  out.reserve(mats.size());
  for (const auto& m : mats) out.push_back(AlgebraVector{m, kind});
  return out;
}

/// Coordinates of x in the orthonormal basis.
inline RVec algebra_coordinates(const AlgebraVector& x,
                                const std::vector<AlgebraVector>& basis) {
  RVec c(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) c(i) = inner_product(basis[i], x);
  return c;
}

inline RVec algebra_coordinates(const AlgebraVector& x) {
  return algebra_coordinates(x, algebra_basis(x.kind));
}

/// Builds sum_i c_i e_i from coordinates (no validation round-trip needed:
/// the span is exactly the algebra).
inline AlgebraVector algebra_from_coordinates(const GroupKind& kind, const RVec& c,
                                              const std::vector<AlgebraVector>& basis) {
  if (c.size() != static_cast<Eigen::Index>(basis.size()))
    throw std::invalid_argument("coordinate length does not match basis size");
  CMat m = CMat::Zero(kind.dim, kind.dim);
  for (size_t i = 0; i < basis.size(); ++i) m += c(i) * basis[i].matrix;
  return AlgebraVector{std::move(m), kind};
}

inline AlgebraVector algebra_from_coordinates(const GroupKind& kind, const RVec& c) {
  return algebra_from_coordinates(kind, c, algebra_basis(kind));
}

inline AlgebraVector scale(double t, const AlgebraVector& x) {
  return AlgebraVector{t * x.matrix, x.kind};
}

inline AlgebraVector add(const AlgebraVector& x, const AlgebraVector& y) {
  if (x.kind != y.kind) throw std::invalid_argument("kind mismatch in add");
  return AlgebraVector{x.matrix + y.matrix, x.kind};
}

/// Lie bracket [x,y] = xy - yx.
inline AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) {
  if (x.kind != y.kind) throw std::invalid_argument("kind mismatch in bracket");
  return AlgebraVector{x.matrix * y.matrix - y.matrix * x.matrix, x.kind};
}

inline std::vector<AlgebraVector> factor_vectors(const AlgebraVector& x) {
  if (!x.kind.is_product()) return {x};
  std::vector<AlgebraVector> out;
  const auto ranges = detail::block_ranges(x.kind);
  for (size_t i = 0; i < x.kind.factors.size(); ++i) {
    const auto& [off, d] = ranges[i];
    out.push_back(AlgebraVector{x.matrix.block(off, off, d, d), x.kind.factors[i]});
  }
  return out;
}

}  // namespace liemetric
