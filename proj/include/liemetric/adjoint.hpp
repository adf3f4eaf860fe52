#pragma once

// Matrix of the adjoint action Ad_g in the orthonormal algebra basis.

#include <liemetric/algebra.hpp>

namespace liemetric {

/// Real orthogonal N x N matrix of Ad_g, N = algebra_dim. Entries are
/// Ad(g)_ij = <e_i, g e_j g^-1> = -tr(e_i g e_j g^-1) in the basis from
/// algebra_basis(kind); block-diagonal across product factors.
struct AdjointMatrix {
  RMat matrix;
  GroupKind kind;
  std::string basis_id;
};

// Orthogonality within 1e-9 (max entry) and det within 1e-8 of +1.
inline constexpr double kTolAdjointOrtho = 1e-9;
inline constexpr double kTolAdjointDet = 1e-8;

namespace detail {

inline std::string basis_id_for(const GroupKind& kind) {
  if (kind.is_product()) {
    std::string s = "product[";
    for (size_t i = 0; i < kind.factors.size(); ++i) {
      if (i) s += ",";
      s += basis_id_for(kind.factors[i]);
    }
    return s + "]";
  }
  return (kind.is_unitary_family() ? std::string("su-pairs-then-diag-") : std::string("so-pairs-")) +
         std::to_string(kind.dim);
}

// Ad block for a single su/so factor. basis holds that factor's own basis.
inline RMat adjoint_block(const CMat& g, const std::vector<AlgebraVector>& basis) {
  const int n = static_cast<int>(basis.size());
  RMat ad(n, n);
  const CMat gi = g.adjoint();
  for (int j = 0; j < n; ++j) {
    const CMat conj = g * basis[j].matrix * gi;
    for (int i = 0; i < n; ++i)
      ad(i, j) = -(basis[i].matrix * conj).trace().real();
  }
  return ad;
}

inline void check_adjoint(const RMat& ad) {
  const RMat gram = ad.transpose() * ad;
  if (max_abs(RMat(gram - RMat::Identity(ad.rows(), ad.cols()))) > kTolAdjointOrtho)
    throw std::runtime_error("adjoint matrix failed orthogonality check");
  if (std::abs(ad.determinant() - 1.0) > kTolAdjointDet)
    throw std::runtime_error("adjoint matrix failed det=+1 check");
}

}  // namespace detail

/// Computes Ad_g. Result is orthogonal with det +1; for products it is
/// block-diagonal with factor blocks in order.
inline AdjointMatrix adjoint_matrix(const GroupElement& g) {
  const GroupKind& kind = g.kind;
  RMat ad = RMat::Zero(kind.algebra_dim(), kind.algebra_dim());
  if (kind.is_product()) {
    const auto parts = factor_elements(g);
    int off = 0;
    for (const auto& p : parts) {
      const int n = p.kind.algebra_dim();
      ad.block(off, off, n, n) = detail::adjoint_block(p.matrix, algebra_basis(p.kind));
      off += n;
    }
  } else {
    ad = detail::adjoint_block(g.matrix, algebra_basis(kind));
  }
  detail::check_adjoint(ad);
  return AdjointMatrix{std::move(ad), kind, detail::basis_id_for(kind)};
}

/// Applies Ad_g to an algebra vector directly: g x g^-1.
inline AlgebraVector adjoint_apply(const GroupElement& g, const AlgebraVector& x) {
  if (g.kind != x.kind) throw std::invalid_argument("kind mismatch in adjoint_apply");
  return AlgebraVector{g.matrix * x.matrix * g.matrix.adjoint(), x.kind};
}

}  // namespace liemetric
