#pragma once

// Seeded Haar sampling via Ginibre + QR, and deterministic seed splitting.

#include <liemetric/group.hpp>

#include <cstdint>
#include <random>

namespace liemetric {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Derives an independent stream seed: split_seed(s, i) feeds the i-th
/// parallel task. Streams from distinct indices never share mt19937_64
/// state because the composed splitmix64 map is a bijection per index.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  return detail::splitmix64(seed ^ detail::splitmix64(index + 0x9e3779b97f4a7c15ull));
}

namespace detail {

inline CMat haar_factor(const GroupKind& kind, std::mt19937_64& rng) {
  const int d = kind.dim;
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat z(d, d);
  const bool complex_entries = kind.is_unitary_family();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      z(i, j) = complex_entries ? Complex(gauss(rng), gauss(rng)) : Complex(gauss(rng), 0.0);
  // QR with the R-diagonal phase fix makes Q Haar on U(d) / O(d).
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0.0 ? rjj / a : Complex(1.0, 0.0));
  }
  if (complex_entries) {
    // Push down to SU(d) by the principal root; the induced measure is the
    // Haar measure of SU(d) up to center, which the metric cannot see.
    const double delta = std::arg(q.determinant());
    q *= std::exp(Complex(0.0, -delta / d));
  } else {
    q.imag().setZero();
    if (q.real().determinant() < 0.0) q.col(0) *= -1.0;  // reflections -> SO(d)
  }
  return q;
}

}  // namespace detail

/// Haar-distributed element, deterministic in the seed. Product factors
/// draw from independent streams split off the given seed by factor index.
inline GroupElement haar_sample(const GroupKind& kind, std::uint64_t seed) {
  if (kind.is_product()) {
    std::vector<GroupElement> parts;
    for (size_t i = 0; i < kind.factors.size(); ++i) {
      std::mt19937_64 rng(split_seed(seed, i));
      parts.push_back(GroupElement{detail::haar_factor(kind.factors[i], rng), kind.factors[i]});
    }
    return product_element(parts);
  }
  std::mt19937_64 rng(split_seed(seed, 0));
  return GroupElement{detail::haar_factor(kind, rng), kind};
}

}  // namespace liemetric
