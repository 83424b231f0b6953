#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(SUBDIVQI_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  int status = pclose(pipe);
  res.exit_code = WEXITSTATUS(status);
  return res;
}

fs::path tmpdir(const std::string& name) {
  fs::path dir = fs::path(SUBDIVQI_TEST_TMPDIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("weights subcommand prints the closed forms") {
  RunResult r = run("weights --scheme cc --valence 4");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(doc["weights"]["w1"].get<double>() == doctest::Approx(100.0 / 9).epsilon(1e-14));
  CHECK(doc["weights"]["w6"].get<double>() == doctest::Approx(1.0 / 36).epsilon(1e-14));

  RunResult l = run("weights --scheme loop --valence 6");
  REQUIRE(l.exit_code == 0);
  nlohmann::json ldoc = nlohmann::json::parse(l.output);
  CHECK(ldoc["weights"]["w1"].get<double>() == doctest::Approx(31.0 / 6).epsilon(1e-14));

  // loop-equivalent reduction is the default mask table
  RunResult m = run("weights --scheme mloop --valence 5");
  REQUIRE(m.exit_code == 0);
  nlohmann::json mdoc = nlohmann::json::parse(m.output);
  RunResult l5 = run("weights --scheme loop --valence 5");
  nlohmann::json l5doc = nlohmann::json::parse(l5.output);
  CHECK(mdoc["weights"]["w3"].get<double>() ==
        doctest::Approx(l5doc["weights"]["w3"].get<double>()).epsilon(1e-13));
}

TEST_CASE("verify subcommand runs the consistency suites") {
  RunResult r = run("verify --scheme cc --valence-min 3 --valence-max 6 --nets 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[ok]") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("corrupted mask tables are rejected naming the identity") {
  fs::path dir = tmpdir("cli_masks");
  fs::path path = dir / "bad_masks.json";
  {
    std::ofstream out(path);
    out << R"({"lambda":0.25,"valences":{"5":{"alpha":0.9,"beta":0.1,)"
        << R"("gamma":0.375,"gamma_j":[0.375,0.125,0,0,0.125]}}})";
  }
  RunResult r = run("weights --scheme mloop --valence 5 --masks " + path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("alpha + n*beta") != std::string::npos);
}

TEST_CASE("project writes coefficients and the fitted mesh") {
  fs::path dir = tmpdir("cli_project");
  RunResult r = run("project --scheme cc --gen quad:4 --fn one --depth 1 --out " +
                    dir.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "coefficients.json"));
  REQUIRE(fs::exists(dir / "fitted.obj"));
  std::ifstream in(dir / "coefficients.json");
  nlohmann::json doc;
  in >> doc;
  for (double c : doc["coefficients"].get<std::vector<double>>())
    CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convergence writes a report and is deterministic") {
  fs::path dir1 = tmpdir("cli_conv1");
  fs::path dir2 = tmpdir("cli_conv2");
  std::string args = "convergence --scheme loop --valence 6 --levels 3 --depth 2 --out ";
  RunResult r1 = run(args + dir1.string());
  REQUIRE(r1.exit_code == 0);
  RunResult r2 = run(args + dir2.string());
  REQUIRE(r2.exit_code == 0);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::string csv1 = slurp(dir1 / "report.csv");
  CHECK(csv1.rfind("level,h,E2,Einf,order2,orderInf\n", 0) == 0);
  CHECK(csv1 == slurp(dir2 / "report.csv"));
  CHECK(slurp(dir1 / "report.json") == slurp(dir2 / "report.json"));
}

TEST_CASE("config file supplies defaults and flags win") {
  fs::path dir = tmpdir("cli_config");
  fs::path cfg = dir / "run.json";
  {
    std::ofstream out(cfg);
    out << R"({"scheme":"cc","valence":3})";
  }
  RunResult r = run("weights --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(doc["valence"] == 3);

  RunResult over = run("weights --config " + cfg.string() + " --valence 4");
  nlohmann::json odoc = nlohmann::json::parse(over.output);
  CHECK(odoc["valence"] == 4);
}

TEST_CASE("validation failures exit with code 1") {
  RunResult r = run("project --scheme cc");
  CHECK(r.exit_code == 1);
  RunResult bad = run("weights --scheme nope --valence 4");
  CHECK(bad.exit_code == 1);
}
