// End-to-end tests of the command-line tool: each subcommand is executed as
// a child process and its JSON output parsed back.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <liemetric/liemetric.hpp>

using namespace liemetric;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LIEMETRIC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  std::string output;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  const int status = pclose(pipe);
  CommandResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.output = std::move(output);
  return res;
}

Json parse_output(const CommandResult& res) {
  EXPECT_EQ(res.exit_code, 0) << res.output;
  return Json::parse(res.output);
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::filesystem::temp_directory_path() /
           ("liemetric_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  static void TearDownTestSuite() { std::filesystem::remove_all(dir_); }

  static std::string write_json(const std::string& name, const Json& j) {
    const std::filesystem::path p = dir_ / name;
    std::ofstream out(p);
    out << j.dump(2);
    return p.string();
  }

  static std::filesystem::path dir_;
};

std::filesystem::path CliTest::dir_;

TEST_F(CliTest, BetaCommand) {
  const Json j = parse_output(run_cli("--seed 1 beta"));
  EXPECT_NEAR(j.at("beta").get<double>(), 0.124332756154467, 1e-9);
  EXPECT_NEAR(j.at("alpha").get<double>(), 0.5053605102841573, 1e-12);
  EXPECT_LE(j.at("residual").get<double>(), 1e-9);
  EXPECT_EQ(j.at("provenance").at("toolkit_version").get<std::string>(), kToolkitVersion);
  EXPECT_EQ(j.at("provenance").at("seed").get<std::uint64_t>(), 1u);
  EXPECT_DOUBLE_EQ(j.at("provenance").at("budgets").at("tol").get<double>(), 1e-10);
  EXPECT_GE(j.at("timing").at("elapsed_ms").get<double>(), 0.0);
  // Solver tolerance outside (0, 1e-6) is a usage error.
  EXPECT_EQ(run_cli("beta --tol 1e-5").exit_code, 2);
}

TEST_F(CliTest, NormAndDist) {
  const std::string id_path = write_json("id_so3.json", matrix_to_json(identity_element(GroupKind::so(3))));
  const Json id = parse_output(run_cli("norm " + id_path));
  EXPECT_NEAR(id.at("norm").get<double>(), 0.0, 1e-12);
  EXPECT_EQ(id.at("kind").at("kind").get<std::string>(), "so");

  const Eigen::Vector3d axis(0.0, 1.0, 1.0);
  const std::string rot_path = write_json("su2_rot.json", matrix_to_json(su2_rotation(axis, 0.7)));
  const Json rot = parse_output(run_cli("norm " + rot_path));
  EXPECT_NEAR(rot.at("norm").get<double>(), 0.7, 1e-10);
  EXPECT_NEAR(rot.at("norm_spectral").get<double>(), 0.7, 1e-10);
  EXPECT_EQ(rot.at("kind").at("d").get<int>(), 2);

  const std::string a_path = write_json("a.json", matrix_to_json(su2_rotation(axis, 0.3)));
  const std::string b_path = write_json("b.json", matrix_to_json(su2_rotation(axis, 0.9)));
  const Json d = parse_output(run_cli("dist " + a_path + " " + b_path));
  EXPECT_NEAR(d.at("distance").get<double>(), 0.6, 1e-10);
  // Kind mismatch between the operands is a usage error.
  EXPECT_EQ(run_cli("dist " + a_path + " " + id_path).exit_code, 2);
  EXPECT_EQ(run_cli("norm " + (dir_ / "missing.json").string()).exit_code, 2);
}

TEST_F(CliTest, ExplogCommand) {
  const std::string path =
      write_json("so3_rot.json", matrix_to_json(so3_rotation(Eigen::Vector3d(1, 2, 0), 1.2)));
  const Json j = parse_output(run_cli("explog " + path));
  EXPECT_NEAR(j.at("group_norm").get<double>(), 1.2, 1e-10);
  EXPECT_NEAR(j.at("algebra_norm").get<double>(), 1.2, 1e-10);
  EXPECT_LE(j.at("round_trip_distance").get<double>(), 1e-9);
  EXPECT_EQ(j.at("coordinates").size(), 3u);
  // A half turn lies outside the log domain: usage error, not a crash.
  const std::string pi_path = write_json("halfturn.json", matrix_to_json(so3_rotation_z(kPi)));
  EXPECT_EQ(run_cli("explog " + pi_path).exit_code, 2);
}

TEST_F(CliTest, WitnessCommand) {
  const Json j = parse_output(run_cli("witness"));
  EXPECT_LE(j.at("identity_error").get<double>(), 1e-6);
  EXPECT_NEAR(j.at("four_beta").get<double>(), 0.49733102461786927, 1e-8);
  EXPECT_NEAR(j.at("witness_angle").get<double>(), 4.0 * j.at("beta").get<double>(), 1e-6);
  const GroupElement h = group_element_from_json(j.at("h"));
  const GroupElement k = group_element_from_json(j.at("k"));
  EXPECT_NEAR(op_norm_group(h), kPi / 2.0 - j.at("beta").get<double>(), 1e-9);
  EXPECT_NEAR(op_norm_group(k), alpha_angle() - j.at("beta").get<double>(), 1e-9);
  const auto v = j.at("v").get<std::vector<double>>();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[2], 1.0);
}

TEST_F(CliTest, ContractCommand) {
  const std::string h_path = write_json("h.json", matrix_to_json(so3_rotation_z(1.0)));
  const std::string k_path = write_json("k.json", matrix_to_json(so3_rotation_x(0.3)));
  const Json j = parse_output(run_cli("contract " + h_path + " " + k_path));
  EXPECT_TRUE(j.at("converged").get<bool>());
  const double c = j.at("contraction_constant").get<double>();
  EXPECT_NEAR(c, contraction_constant(0.3), 1e-10);
  const auto norms = j.at("norms").get<std::vector<double>>();
  ASSERT_GE(norms.size(), 2u);
  EXPECT_NEAR(norms.front(), 1.0, 1e-10);
  EXPECT_LT(norms.back(), 1e-12);
  for (const double r : j.at("contraction_ratios").get<std::vector<double>>())
    EXPECT_LE(r, c + 1e-9);
  // |h| >= pi/2 violates the contraction hypotheses: usage error.
  const std::string big_path = write_json("big.json", matrix_to_json(so3_rotation_z(2.0)));
  EXPECT_EQ(run_cli("contract " + big_path + " " + k_path).exit_code, 2);
}

TEST_F(CliTest, AngleCommand) {
  CMat b0(2, 1), b1(2, 1);
  b0 << 1.0, 0.0;
  b1 << std::cos(0.5), std::sin(0.5);
  const std::string u_path = write_json("u.json", subspace_to_json(make_subspace(b0)));
  const std::string w_path = write_json("w.json", subspace_to_json(make_subspace(b1)));
  const Json j = parse_output(run_cli("angle " + u_path + " " + w_path));
  EXPECT_NEAR(j.at("angle").get<double>(), 0.5, 1e-10);
}

TEST_F(CliTest, SchurCommand) {
  CMat b = CMat::Zero(3, 1);
  b(2, 0) = 1.0;
  const std::string path = write_json("line.json", subspace_to_json(make_subspace(b)));
  const Json j = parse_output(run_cli("--seed 7 schur " + path + " --group su2 --samples 500"));
  EXPECT_EQ(j.at("ambient_dim").get<int>(), 3);
  EXPECT_EQ(j.at("subspace_dim").get<int>(), 1);
  EXPECT_NEAR(j.at("schur_ratio").get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_LT(j.at("deviation").get<double>(), 0.2);
  EXPECT_EQ(j.at("provenance").at("budgets").at("samples").get<int>(), 500);
  // Identity-only averaging keeps the projection: deviation 2/3 for a line.
  const Json one = parse_output(run_cli("schur " + path + " --group su2 --samples 1"));
  EXPECT_NEAR(one.at("deviation").get<double>(), 2.0 / 3.0, 1e-9);
  EXPECT_EQ(run_cli("schur " + path + " --group su2 --samples 50").exit_code, 2);
}

TEST_F(CliTest, DiameterCommand) {
  const Json ico = parse_output(run_cli("--seed 3 diameter --builtin icosahedral --budget-probes 150"));
  EXPECT_EQ(ico.at("subgroup_order").get<std::uint64_t>(), 60u);
  EXPECT_TRUE(ico.at("subgroup_exact").get<bool>());
  const double est = ico.at("estimate").get<double>();
  EXPECT_GE(est, solve_beta(1e-10).beta - 0.01);
  EXPECT_LE(est, kPi + 1e-9);

  const Json diag = parse_output(run_cli("--seed 3 diameter --builtin diagonal-so3 --budget-probes 120"));
  EXPECT_GE(diag.at("estimate").get<double>(), kPi / 2.0 - 1e-6);
  EXPECT_EQ(diag.at("quotient").get<std::string>(), "(SO(3) x SO(3)) / diagonal");

  // A custom subgroup file: the three-element cyclic group about z.
  Json arr = Json::array();
  for (int k = 0; k < 3; ++k) arr.push_back(matrix_to_json(so3_rotation_z(2.0 * kPi * k / 3.0)));
  const std::string c3_path = write_json("c3.json", arr);
  const Json c3 = parse_output(run_cli("--seed 3 diameter --in " + c3_path + " --budget-probes 120"));
  EXPECT_EQ(c3.at("subgroup_order").get<std::uint64_t>(), 3u);
  EXPECT_GE(c3.at("estimate").get<double>(), est - 1e-9);  // smaller subgroup, wider quotient

  EXPECT_EQ(run_cli("diameter").exit_code, 2);
  EXPECT_EQ(run_cli("diameter --builtin icosahedral --in " + c3_path).exit_code, 2);
  EXPECT_EQ(run_cli("diameter --builtin no-such-thing").exit_code, 2);
  EXPECT_EQ(run_cli("diameter --builtin icosahedral --budget-probes 99").exit_code, 2);
}

TEST_F(CliTest, UniversalityCommand) {
  const std::string cmd = "--seed 2 universality --builtin icosahedral --spacing 0.05";
  const Json j = parse_output(run_cli(cmd));
  EXPECT_EQ(j.at("verdict").get<std::string>(), "NotUniversal");
  EXPECT_TRUE(j.at("closure_detected").get<bool>());
  EXPECT_EQ(j.at("group_order").get<std::uint64_t>(), 60u);
  EXPECT_LE(j.at("certified_margin").get<double>(), 0.0);

  // Deterministic output: identical runs agree bit for bit except timing.
  Json second = parse_output(run_cli(cmd));
  Json first = j;
  first.erase("timing");
  second.erase("timing");
  EXPECT_EQ(first.dump(), second.dump());

  // Custom gate file: a single five-fold rotation closes at order 5.
  const std::string gates_path = write_json(
      "c5_gates.json",
      gate_set_to_json(make_gate_set({so3_rotation_z(2.0 * kPi / 5.0)}, {"r"})));
  const Json c5 = parse_output(run_cli("universality --in " + gates_path + " --spacing 0.05"));
  EXPECT_EQ(c5.at("verdict").get<std::string>(), "NotUniversal");
  EXPECT_EQ(c5.at("group_order").get<std::uint64_t>(), 5u);

  EXPECT_EQ(run_cli("universality").exit_code, 2);
  EXPECT_EQ(run_cli("universality --builtin unknown").exit_code, 2);
  EXPECT_EQ(run_cli("universality --builtin icosahedral --spacing 0.2").exit_code, 2);
}

TEST_F(CliTest, OutFileWriting) {
  const std::string out = (dir_ / "beta_out.json").string();
  const CommandResult res = run_cli("--out " + out + " beta");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(res.output.empty());
  std::ifstream in(out);
  ASSERT_TRUE(in.good());
  Json j;
  in >> j;
  EXPECT_NEAR(j.at("beta").get<double>(), 0.124332756154467, 1e-9);
}

TEST_F(CliTest, VerifyCommand) {
  const CommandResult res = run_cli("--seed 20260815 verify");
  ASSERT_EQ(res.exit_code, 0) << res.output;
  const Json j = Json::parse(res.output);
  EXPECT_EQ(j.at("failed").get<int>(), 0);
  EXPECT_GE(j.at("total").get<int>(), 30);
  for (const auto& c : j.at("checks")) EXPECT_TRUE(c.at("pass").get<bool>()) << c.dump();
}

}  // namespace
