// Command-line front end: every library operation behind JSON input/output
// with deterministic seeding. Exit codes: 0 success, 1 verification
// failure, 2 bad input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <liemetric/liemetric.hpp>

namespace {

using liemetric::Json;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

// Kind strings: "su2", "su(2)", "so3", products joined with 'x'
// ("su2xso3"). Case-insensitive, spaces ignored.
liemetric::GroupKind parse_kind_string(const std::string& text) {
  std::string s;
  for (const char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(std::tolower(c));
  std::vector<liemetric::GroupKind> factors;
  size_t pos = 0;
  while (pos < s.size()) {
    if (!factors.empty()) {
      if (s[pos] != 'x') throw std::invalid_argument("bad kind string: " + text);
      ++pos;
    }
    if (pos + 2 > s.size()) throw std::invalid_argument("bad kind string: " + text);
    const std::string fam = s.substr(pos, 2);
    pos += 2;
    if (pos < s.size() && s[pos] == '(') ++pos;
    size_t digits = pos;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits == pos) throw std::invalid_argument("bad kind string: " + text);
    const int d = std::stoi(s.substr(pos, digits - pos));
    pos = digits;
    if (pos < s.size() && s[pos] == ')') ++pos;
    if (fam == "su")
      factors.push_back(liemetric::GroupKind::su(d));
    else if (fam == "so")
      factors.push_back(liemetric::GroupKind::so(d));
    else
      throw std::invalid_argument("bad kind string: " + text);
  }
  if (factors.empty()) throw std::invalid_argument("empty kind string");
  return factors.size() == 1 ? factors.front() : liemetric::GroupKind::product(factors);
}

Json provenance(std::uint64_t seed, Json budgets = Json::object()) {
  Json p;
  p["toolkit_version"] = liemetric::kToolkitVersion;
  p["seed"] = seed;
  p["budgets"] = std::move(budgets);
  return p;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-norm geometry toolkit for compact matrix groups"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--seed", seed, "Seed for all randomized operations")->capture_default_str();
  app.add_option("--out", out_path, "Write the JSON result to a file instead of stdout");

  // ---- beta ----
  auto* cmd_beta = app.add_subcommand("beta", "Solve the diameter-bound equation for beta");
  double beta_tol = 1e-10;
  cmd_beta->add_option("--tol", beta_tol, "Bisection tolerance")->capture_default_str();

  // ---- norm ----
  auto* cmd_norm = app.add_subcommand("norm", "Operator norm of a group element");
  std::string norm_path;
  cmd_norm->add_option("matrix", norm_path, "Matrix JSON file")->required();

  // ---- dist ----
  auto* cmd_dist = app.add_subcommand("dist", "Bi-invariant distance between two elements");
  std::string dist_a, dist_b;
  cmd_dist->add_option("a", dist_a, "Matrix JSON file")->required();
  cmd_dist->add_option("b", dist_b, "Matrix JSON file")->required();

  // ---- explog ----
  auto* cmd_explog = app.add_subcommand("explog", "Logarithm, coordinates, and round trip");
  std::string explog_path;
  cmd_explog->add_option("matrix", explog_path, "Matrix JSON file")->required();

  // ---- witness ----
  auto* cmd_witness = app.add_subcommand("witness", "Canonical witness pair and its 4*beta angle");
  double witness_tol = 1e-10;
  cmd_witness->add_option("--tol", witness_tol, "Beta solver tolerance")->capture_default_str();

  // ---- contract ----
  auto* cmd_contract = app.add_subcommand("contract", "Iterated-commutator contraction trace");
  std::string contract_h, contract_k;
  int contract_max_iter = 100;
  double contract_halt = 1e-12;
  cmd_contract->add_option("h-matrix", contract_h, "Matrix JSON file (the contracted element)")
      ->required();
  cmd_contract->add_option("k-matrix", contract_k, "Matrix JSON file (the fixed conjugator)")
      ->required();
  cmd_contract->add_option("--max-iter", contract_max_iter, "Iteration cap")->capture_default_str();
  cmd_contract->add_option("--halt-tol", contract_halt, "Stop when the norm drops below this")
      ->capture_default_str();

  // ---- angle ----
  auto* cmd_angle = app.add_subcommand("angle", "Largest principal angle between two subspaces");
  std::string angle_u, angle_w;
  cmd_angle->add_option("u", angle_u, "Subspace JSON file")->required();
  cmd_angle->add_option("w", angle_w, "Subspace JSON file")->required();

  // ---- schur ----
  auto* cmd_schur = app.add_subcommand(
      "schur", "Monte-Carlo Schur averaging of projections in the adjoint representation");
  std::string schur_subspace, schur_kind = "su2";
  int schur_samples = 1000;
  cmd_schur->add_option("subspace", schur_subspace, "Subspace JSON file")->required();
  cmd_schur->add_option("--group", schur_kind, "Group kind, e.g. su2, so3")
      ->capture_default_str();
  cmd_schur->add_option("--samples", schur_samples, "Haar samples (1 = identity only)")
      ->capture_default_str();

  // ---- diameter ----
  auto* cmd_diameter = app.add_subcommand("diameter", "Quotient-diameter lower estimate");
  std::string diameter_builtin, diameter_in;
  int diameter_probes = 1000;
  cmd_diameter->add_option("--builtin", diameter_builtin,
                           "Built-in subgroup: icosahedral or diagonal-so3");
  cmd_diameter->add_option("--in", diameter_in, "Subgroup sample JSON file");
  cmd_diameter->add_option("--budget-probes", diameter_probes, "Haar probes")
      ->capture_default_str();

  // ---- universality ----
  auto* cmd_universality =
      app.add_subcommand("universality", "Coverage-based universality test for a gate set");
  std::string universality_builtin, universality_in;
  liemetric::UniversalityConfig ucfg;
  cmd_universality->add_option("--builtin", universality_builtin,
                               "Built-in gate set: two-rotations or icosahedral");
  cmd_universality->add_option("--in", universality_in, "Gate set JSON file");
  cmd_universality->add_option("--max-length", ucfg.max_length, "Longest word generated")
      ->capture_default_str();
  cmd_universality->add_option("--spacing", ucfg.spacing, "Net spacing")->capture_default_str();
  cmd_universality->add_option("--dedup-tol", ucfg.dedup_tol, "Word deduplication tolerance")
      ->capture_default_str();
  cmd_universality->add_option("--budget-words", ucfg.word_cap, "Word store cap")
      ->capture_default_str();

  // ---- verify ----
  auto* cmd_verify =
      app.add_subcommand("verify", "Run the full property suite and report a pass/fail table");

  CLI11_PARSE(app, argc, argv);

  try {
    const Timer timer;
    Json result;
    bool verification_failed = false;

    if (*cmd_beta) {
      const liemetric::BetaSolution sol = liemetric::solve_beta(beta_tol);
      result["alpha"] = sol.alpha;
      result["beta"] = sol.beta;
      result["residual"] = sol.residual;
      result["solver_tolerance"] = sol.solver_tolerance;
      result["provenance"] = provenance(seed, {{"tol", beta_tol}});
    } else if (*cmd_norm) {
      const liemetric::GroupElement g =
          liemetric::group_element_from_json(read_json_file(norm_path));
      result["kind"] = liemetric::kind_to_json(g.kind);
      result["norm"] = liemetric::op_norm_group(g);
      result["norm_spectral"] = liemetric::op_norm_group_spectral(g);
      result["provenance"] = provenance(seed);
    } else if (*cmd_dist) {
      const liemetric::GroupElement a =
          liemetric::group_element_from_json(read_json_file(dist_a));
      const liemetric::GroupElement b =
          liemetric::group_element_from_json(read_json_file(dist_b));
      result["distance"] = liemetric::distance(a, b);
      result["provenance"] = provenance(seed);
    } else if (*cmd_explog) {
      const liemetric::GroupElement g =
          liemetric::group_element_from_json(read_json_file(explog_path));
      const liemetric::AlgebraVector x = liemetric::log_map(g);
      const liemetric::RVec coords = liemetric::algebra_coordinates(x);
      result["kind"] = liemetric::kind_to_json(g.kind);
      result["group_norm"] = liemetric::op_norm_group(g);
      result["algebra_norm"] = liemetric::op_norm_algebra(x);
      result["log"] = liemetric::algebra_to_json(x);
      result["coordinates"] = std::vector<double>(coords.data(), coords.data() + coords.size());
      result["round_trip_distance"] = liemetric::distance(liemetric::exp_map(x), g);
      result["provenance"] = provenance(seed);
    } else if (*cmd_witness) {
      const liemetric::BetaSolution sol = liemetric::solve_beta(witness_tol);
      const liemetric::WitnessPair wp = liemetric::construct_witness_pair(sol);
      const double angle = liemetric::witness_angle(wp.h, wp.k, wp.v);
      result["beta"] = sol.beta;
      result["h"] = liemetric::matrix_to_json(wp.h);
      result["k"] = liemetric::matrix_to_json(wp.k);
      result["v"] = {wp.v(0), wp.v(1), wp.v(2)};
      result["witness_angle"] = angle;
      result["four_beta"] = 4.0 * sol.beta;
      result["identity_error"] = std::abs(angle - 4.0 * sol.beta);
      result["provenance"] = provenance(seed, {{"tol", witness_tol}});
    } else if (*cmd_contract) {
      const liemetric::GroupElement h =
          liemetric::group_element_from_json(read_json_file(contract_h));
      const liemetric::GroupElement k =
          liemetric::group_element_from_json(read_json_file(contract_k));
      const liemetric::CommutatorTrace trace =
          liemetric::commutator_sequence(h, k, contract_max_iter, contract_halt);
      result["contraction_constant"] = liemetric::contraction_constant(liemetric::op_norm_group(k));
      result["norms"] = trace.norms;
      result["contraction_ratios"] = trace.contraction_ratios;
      result["converged"] = trace.converged;
      result["provenance"] =
          provenance(seed, {{"max_iter", contract_max_iter}, {"halt_tol", contract_halt}});
    } else if (*cmd_angle) {
      const liemetric::Subspace u = liemetric::subspace_from_json(read_json_file(angle_u));
      const liemetric::Subspace w = liemetric::subspace_from_json(read_json_file(angle_w));
      result["angle"] = liemetric::angle_between(u, w);
      result["provenance"] = provenance(seed);
    } else if (*cmd_schur) {
      const liemetric::Subspace w = liemetric::subspace_from_json(read_json_file(schur_subspace));
      const liemetric::Representation rep =
          liemetric::adjoint_representation(parse_kind_string(schur_kind));
      const auto [m, deviation] = liemetric::schur_average(rep, w, schur_samples, seed);
      result["ambient_dim"] = rep.ambient_dim;
      result["subspace_dim"] = static_cast<int>(w.basis.cols());
      result["deviation"] = deviation;
      result["schur_ratio"] = double(w.basis.cols()) / rep.ambient_dim;
      result["provenance"] = provenance(seed, {{"samples", schur_samples}});
    } else if (*cmd_diameter) {
      if (diameter_builtin.empty() == diameter_in.empty())
        throw std::invalid_argument("diameter needs exactly one of --builtin or --in");
      if (diameter_builtin == "diagonal-so3") {
        result["quotient"] = "(SO(3) x SO(3)) / diagonal";
        result["estimate"] = liemetric::diagonal_quotient_estimate(liemetric::GroupKind::so(3),
                                                                   diameter_probes, seed);
      } else {
        liemetric::SubgroupSample sample;
        if (diameter_builtin == "icosahedral") {
          sample = liemetric::icosahedral_group();
          result["quotient"] = "SO(3) / icosahedral";
        } else if (!diameter_builtin.empty()) {
          throw std::invalid_argument("unknown builtin: " + diameter_builtin);
        } else {
          sample = liemetric::subgroup_from_json(read_json_file(diameter_in));
          result["quotient"] = "G / H from " + diameter_in;
        }
        result["subgroup_order"] = sample.elements.size();
        result["subgroup_exact"] = sample.exact;
        result["estimate"] = liemetric::diameter_lower_estimate(sample.elements.front().kind,
                                                                sample, diameter_probes, seed);
      }
      result["provenance"] = provenance(seed, {{"probes", diameter_probes}});
    } else if (*cmd_universality) {
      if (universality_builtin.empty() == universality_in.empty())
        throw std::invalid_argument("universality needs exactly one of --builtin or --in");
      liemetric::GateSet gates;
      if (universality_builtin == "two-rotations")
        gates = liemetric::builtin_two_rotation_gates();
      else if (universality_builtin == "icosahedral")
        gates = liemetric::builtin_icosahedral_gates();
      else if (!universality_builtin.empty())
        throw std::invalid_argument("unknown builtin: " + universality_builtin);
      else
        gates = liemetric::gate_set_from_json(read_json_file(universality_in));
      const liemetric::CoverageReport rep = liemetric::test_universality(gates, ucfg);
      result = liemetric::coverage_report_to_json(rep);
      result["provenance"] = provenance(
          seed, {{"max_length", ucfg.max_length},
                 {"spacing", ucfg.spacing},
                 {"dedup_tol", ucfg.dedup_tol},
                 {"word_cap", ucfg.word_cap}});
    } else if (*cmd_verify) {
      const auto checks = liemetric::run_property_suite(seed, &std::cerr);
      Json arr = Json::array();
      int failed = 0;
      for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass) ++failed;
      }
      result["checks"] = std::move(arr);
      result["total"] = checks.size();
      result["failed"] = failed;
      result["provenance"] = provenance(seed);
      verification_failed = failed > 0;
    }

    result["timing"] = {{"elapsed_ms", timer.elapsed_ms()}};
    emit(result, out_path);
    return verification_failed ? 1 : 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  }
}
