#pragma once

// JSON encoding of matrices, subspaces, gate sets, subgroup samples, and
// coverage reports. Matrices travel as
//   {"kind": "su"|"so"|"product", "d": int, "re": [[...]], "im": [[...]]}
// with row-major arrays; "im" is omitted for so-kind; product kinds carry
// a "factors" array of {"kind","d"} descriptors.

#include <liemetric/quotient.hpp>
#include <liemetric/subspace.hpp>
#include <liemetric/universality.hpp>

#include <json.hpp>

namespace liemetric {

using Json = nlohmann::ordered_json;

inline Json kind_to_json(const GroupKind& kind) {
  Json j;
  switch (kind.family) {
    case GroupFamily::SpecialUnitary: j["kind"] = "su"; break;
    case GroupFamily::SpecialOrthogonal: j["kind"] = "so"; break;
    case GroupFamily::Product: j["kind"] = "product"; break;
  }
  j["d"] = kind.dim;
  if (kind.is_product()) {
    Json factors = Json::array();
    for (const auto& f : kind.factors) factors.push_back(kind_to_json(f));
    j["factors"] = factors;
  }
  return j;
}

inline GroupKind kind_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "su") return GroupKind::su(j.at("d").get<int>());
  if (kind == "so") return GroupKind::so(j.at("d").get<int>());
  if (kind == "product") {
    std::vector<GroupKind> factors;
    for (const auto& f : j.at("factors")) factors.push_back(kind_from_json(f));
    const GroupKind out = GroupKind::product(std::move(factors));
    if (j.contains("d") && j.at("d").get<int>() != out.dim)
      throw std::invalid_argument("product dimension disagrees with factors");
    return out;
  }
  throw std::invalid_argument("unknown group kind '" + kind + "'");
}

namespace detail {

inline Json real_rows(const CMat& m, bool imaginary_part) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(imaginary_part ? m(i, j).imag() : m(i, j).real());
    rows.push_back(row);
  }
  return rows;
}

inline CMat matrix_from_parts(const Json& re, const Json* im) {
  const int rows = static_cast<int>(re.size());
  if (rows == 0) throw std::invalid_argument("matrix has no rows");
  const int cols = static_cast<int>(re.at(0).size());
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(re.at(i).size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < cols; ++j) {
      const double a = re.at(i).at(j).get<double>();
      const double b = im ? im->at(i).at(j).get<double>() : 0.0;
      m(i, j) = Complex(a, b);
    }
  }
  return m;
}

}  // namespace detail

inline Json matrix_to_json(const GroupElement& g) {
  Json j = kind_to_json(g.kind);
  j["re"] = detail::real_rows(g.matrix, false);
  if (g.kind.family != GroupFamily::SpecialOrthogonal) j["im"] = detail::real_rows(g.matrix, true);
  return j;
}

inline GroupElement group_element_from_json(const Json& j,
                                            const GroupKind* default_kind = nullptr) {
  GroupKind kind = GroupKind::su(2);
  if (j.contains("kind"))
    kind = kind_from_json(j);
  else if (default_kind)
    kind = *default_kind;
  else
    throw std::invalid_argument("matrix JSON lacks a group kind");
  const Json& re = j.at("re");
  const Json* im = j.contains("im") ? &j.at("im") : nullptr;
  CMat m = detail::matrix_from_parts(re, im);
  if (m.rows() != kind.dim || m.cols() != kind.dim)
    throw std::invalid_argument("matrix JSON has the wrong dimension");
  return make_group_element(std::move(m), kind);
}

inline Json algebra_to_json(const AlgebraVector& x) {
  Json j = kind_to_json(x.kind);
  j["re"] = detail::real_rows(x.matrix, false);
  if (x.kind.family != GroupFamily::SpecialOrthogonal) j["im"] = detail::real_rows(x.matrix, true);
  return j;
}

inline Json subspace_to_json(const Subspace& w) {
  Json j;
  j["ambient"] = w.ambient_dim;
  j["basis"] = detail::real_rows(w.basis, false);
  if (max_abs(RMat(w.basis.imag())) > 0.0) j["basis_im"] = detail::real_rows(w.basis, true);
  return j;
}

inline Subspace subspace_from_json(const Json& j) {
  const Json& re = j.at("basis");
  const Json* im = j.contains("basis_im") ? &j.at("basis_im") : nullptr;
  CMat basis = detail::matrix_from_parts(re, im);
  if (j.contains("ambient") && j.at("ambient").get<int>() != basis.rows())
    throw std::invalid_argument("subspace ambient dimension disagrees with basis rows");
  return make_subspace(std::move(basis));
}

inline Json gate_set_to_json(const GateSet& gs) {
  Json j = kind_to_json(gs.kind);
  Json gates = Json::array();
  for (const auto& g : gs.gates) gates.push_back(matrix_to_json(g));
  j["gates"] = gates;
  j["labels"] = gs.labels;
  j["include_inverses"] = gs.include_inverses;
  return j;
}

inline GateSet gate_set_from_json(const Json& j) {
  const GroupKind kind = kind_from_json(j);
  std::vector<GroupElement> gates;
  for (const auto& g : j.at("gates")) gates.push_back(group_element_from_json(g, &kind));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    for (size_t i = 0; i < gates.size(); ++i) labels.push_back("g" + std::to_string(i));
  }
  const bool inv = j.contains("include_inverses") ? j.at("include_inverses").get<bool>() : true;
  for (const auto& g : gates)
    if (g.kind != kind) throw std::invalid_argument("gate kind mismatch");
  return make_gate_set(std::move(gates), std::move(labels), inv);
}

/// Subgroup files: either a bare JSON array of matrices (treated as an
/// exact listing) or {"elements": [...], "exact": bool}.
inline SubgroupSample subgroup_from_json(const Json& j) {
  const Json* arr = nullptr;
  bool exact = true;
  if (j.is_array()) {
    arr = &j;
  } else {
    arr = &j.at("elements");
    exact = j.contains("exact") ? j.at("exact").get<bool>() : true;
  }
  std::vector<GroupElement> elements;
  for (const auto& m : *arr) elements.push_back(group_element_from_json(m));
  return make_subgroup_sample(std::move(elements), exact);
}

inline Json coverage_report_to_json(const CoverageReport& rep) {
  Json j;
  j["verdict"] = verdict_name(rep.verdict);
  j["beta"] = rep.beta;
  j["net_spacing"] = rep.net_spacing;
  j["net_size"] = rep.net_size;
  j["words"] = Json{{"count", rep.words_count}, {"max_length", rep.words_max_length}};
  j["closure_detected"] = rep.closure_detected;
  j["cap_exceeded"] = rep.cap_exceeded;
  if (rep.group_order) j["group_order"] = *rep.group_order;
  j["certified_margin"] = rep.certified_margin;
  j["worst_distance"] = rep.worst_distance;
  j["distances_exact"] = rep.distances_exact;
  if (rep.worst_point) j["worst_point"] = matrix_to_json(*rep.worst_point);
  return j;
}

}  // namespace liemetric
