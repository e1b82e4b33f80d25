#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = LINDYN_CLI_PATH;
const fs::path kTmp = LINDYN_TEST_TMP;

struct CliResult {
  int exit_code = 0;
  json summary;
};

void write_config(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << j.dump(2);
}

json base_config() {
  return json{{"seed", 42},
              {"space", {{"norm", "l1"}, {"dim", 64}}},
              {"weights", {{"kind", "constant"}, {"c", 2.0}}},
              {"potential", {{"kind", "zero"}}},
              {"apriori", {{"sigma", 1.0}, {"quad_order", 64}}},
              {"grid", {{"depth", 1}, {"resolution", 33}}},
              {"chain", {{"steps", 5000}, {"burn_in", 500}}}};
}

CliResult run_cli(const std::string& subcommand, const fs::path& config,
                  const fs::path& out_dir, const std::string& extra = "") {
  std::ostringstream cmd;
  cmd << kCli << " " << subcommand << " --config " << config << " --out " << out_dir << " "
      << extra << " > " << (out_dir.string() + ".stdout.txt") << " 2>&1";
  fs::create_directories(out_dir);
  const int rc = std::system(cmd.str().c_str());
  CliResult res;
  res.exit_code = WEXITSTATUS(rc);
  const fs::path summary = out_dir / "summary.json";
  if (fs::exists(summary)) {
    std::ifstream in(summary);
    in >> res.summary;
  }
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("chaos subcommand emits tables and a convergent verdict") {
  const fs::path cfg = kTmp / "chaos.json";
  write_config(cfg, base_config());
  CliResult r = run_cli("chaos", cfg, kTmp / "chaos_out");
  REQUIRE(r.exit_code == 0);
  CHECK(r.summary.at("chaos").at("verdict") == "converges");
  CHECK(fs::exists(kTmp / "chaos_out" / "tables" / "dn.csv"));
  CHECK(fs::exists(kTmp / "chaos_out" / "meta.json"));
}

TEST_CASE("spectrum of the zero potential reports the trivial eigenvalue") {
  const fs::path cfg = kTmp / "spec.json";
  write_config(cfg, base_config());
  CliResult r = run_cli("spectrum", cfg, kTmp / "spec_out");
  REQUIRE(r.exit_code == 0);
  CHECK(std::abs(r.summary.at("lambda").get<double>() - 1.0) < 1e-10);
  CHECK(r.summary.at("normalization_defect").get<double>() < 1e-10);
  CHECK(fs::exists(kTmp / "spec_out" / "plots" / "psi_slice.csv"));
}

TEST_CASE("missing seed fails validation with the offending path") {
  json j = base_config();
  j.erase("seed");
  const fs::path cfg = kTmp / "noseed.json";
  write_config(cfg, j);
  CliResult r = run_cli("chaos", cfg, kTmp / "noseed_out");
  CHECK(r.exit_code == 2);
  const std::string out = slurp(fs::path((kTmp / "noseed_out").string() + ".stdout.txt"));
  json err = json::parse(out);
  CHECK(err.at("error") == "config");
  CHECK(err.at("path") == "seed");
}

TEST_CASE("unknown potential kind names the config path") {
  json j = base_config();
  j["potential"] = {{"kind", "mystery"}};
  const fs::path cfg = kTmp / "badkind.json";
  write_config(cfg, j);
  CliResult r = run_cli("spectrum", cfg, kTmp / "badkind_out");
  CHECK(r.exit_code == 2);
  const std::string out = slurp(fs::path((kTmp / "badkind_out").string() + ".stdout.txt"));
  CHECK(json::parse(out).at("path") == "potential.kind");
}

TEST_CASE("summaries are byte-identical across reruns with a fixed seed") {
  json j = base_config();
  j["potential"] = {{"kind", "quadratic_well"}, {"coord", 1}, {"weight", 1.0}};
  const fs::path cfg = kTmp / "det.json";
  write_config(cfg, j);
  CliResult r1 = run_cli("gibbs", cfg, kTmp / "det_a");
  CliResult r2 = run_cli("gibbs", cfg, kTmp / "det_b");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(kTmp / "det_a" / "summary.json") == slurp(kTmp / "det_b" / "summary.json"));

  // a different seed must change the sampled numbers
  CliResult r3 = run_cli("gibbs", cfg, kTmp / "det_c", "--seed 43");
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(kTmp / "det_a" / "summary.json") != slurp(kTmp / "det_c" / "summary.json"));
}

TEST_CASE("environment variable overrides the output directory") {
  const fs::path cfg = kTmp / "env.json";
  write_config(cfg, base_config());
  const fs::path env_out = kTmp / "env_dir";
  fs::create_directories(env_out);
  std::ostringstream cmd;
  cmd << "LINDYN_OUT=" << env_out << " " << kCli << " chaos --config " << cfg << " --out "
      << (kTmp / "env_ignored") << " > /dev/null 2>&1";
  const int rc = std::system(cmd.str().c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  CHECK(fs::exists(env_out / "summary.json"));
  CHECK_FALSE(fs::exists(kTmp / "env_ignored" / "summary.json"));
}

TEST_CASE("verify-examples passes on the default configuration") {
  const fs::path cfg = kTmp / "verify.json";
  write_config(cfg, base_config());
  CliResult r = run_cli("verify-examples", cfg, kTmp / "verify_out");
  CHECK(r.exit_code == 0);
  CHECK(r.summary.at("failures").get<int>() == 0);
}

TEST_CASE("maximize subcommand lands on the fixed point") {
  json j = base_config();
  j["potential"] = {{"kind", "neg_dist"}, {"center", "fixed_point"}};
  j["maximize"] = {{"k_max", 2}, {"starts", 8}};
  const fs::path cfg = kTmp / "max.json";
  write_config(cfg, j);
  CliResult r = run_cli("maximize", cfg, kTmp / "max_out");
  REQUIRE(r.exit_code == 0);
  CHECK(std::abs(r.summary.at("m_periodic").get<double>()) < 1e-8);
  CHECK(r.summary.contains("m_spectral"));  // both estimates always present
}

TEST_CASE("sweep subcommand writes tables, plots and the extrapolation") {
  json j = base_config();
  j["potential"] = {{"kind", "neg_dist_projected"}, {"center", "fixed_point"}, {"depth", 1}};
  j["sweep"] = {{"t_values", {1.0, 2.0, 4.0, 8.0}}, {"steps", 2000}, {"burn_in", 200}};
  const fs::path cfg = kTmp / "sweep.json";
  write_config(cfg, j);
  CliResult r = run_cli("sweep", cfg, kTmp / "sweep_out");
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(kTmp / "sweep_out" / "tables" / "sweep.csv"));
  CHECK(fs::exists(kTmp / "sweep_out" / "plots" / "log_lambda_over_t.csv"));
  CHECK(fs::exists(kTmp / "sweep_out" / "plots" / "int_a.csv"));
  CHECK(r.summary.at("points").size() == 4);
  CHECK(r.summary.contains("m_spectral"));
}

TEST_CASE("mane subcommand emits the radius-by-horizon matrices") {
  json j = base_config();
  j["potential"] = {{"kind", "neg_dist"}, {"center", "fixed_point"}};
  j["mane"] = {{"n_max", 8}, {"pairs", 2}};
  const fs::path cfg = kTmp / "mane.json";
  write_config(cfg, j);
  CliResult r = run_cli("mane", cfg, kTmp / "mane_out");
  REQUIRE(r.exit_code == 0);
  CHECK(r.summary.at("max_phi").get<double>() <= 1e-8);
  CHECK(r.summary.at("min_subaction_defect").get<double>() >= -1e-12);
  CHECK(fs::exists(kTmp / "mane_out" / "tables" / "mane_pair0.csv"));
}
