#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcoh/errors.hpp"
#include "gcoh/jobs.hpp"

using namespace gcoh;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(GCOH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(GCOH_TEST_DATA) + "/" + name; }

Json load(const std::string& name) {
  std::ifstream f(data(name));
  return Json::parse(f);
}

}  // namespace

TEST_CASE("verify scenarios pass through the binary") {
  for (const std::string s : {"paper-example", "lemma-i+n", "u3-resolution", "exactness-sweep", "formal-h90"}) {
    CAPTURE(s);
    Run r = run_cli("verify " + s);
    CHECK(r.code == kExitOk);
    Json j = Json::parse(r.out);
    CHECK(j["passed"].get<bool>());
    CHECK(j["version"] == kVersion);
    CHECK(j["convention"] == kConvention);
  }
  CHECK(run_cli("verify --scenario paper-example").code == kExitOk);
  CHECK(run_cli("massey " + data("scenario.json")).code == kExitOk);
  CHECK(Json::parse(run_cli("massey " + data("scenario.json")).out)["passed"].get<bool>());
  CHECK(run_cli("verify no-such-scenario").code == kExitInput);
  CHECK(run_cli("").code == kExitInput);
}

TEST_CASE("massey jobs") {
  Run paper = run_cli("massey " + data("paper_triple.json"));
  REQUIRE(paper.code == kExitOk);
  Json j = Json::parse(paper.out);
  CHECK(j["status"] == "DefinedNotVanishing");
  CHECK(j["version"] == kVersion);
  CHECK(j["convention"] == kConvention);

  Json square = Json::parse(run_cli("massey " + data("cyclic2_square.json")).out);
  CHECK(square["status"] == "DefinedNotVanishing");
  CHECK(square["defined"].get<bool>());
  CHECK_FALSE(square["vanishes"].get<bool>());

  Json zero = Json::parse(run_cli("massey " + data("zero_factor.json")).out);
  CHECK(zero["status"] == "Vanishes");
  CHECK(zero["witness"]["n"] == 3);
  for (const auto& v : zero["witness"]["value"]) CHECK(v.is_number_unsigned());

  // In-process and binary reports agree.
  CHECK(run_massey(load("paper_triple.json"), {}) == j);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("massey " + data("paper_triple.json") + " --budget 10").code == kExitBudget);
  CHECK(run_cli("massey " + data("bad_character.json")).code == kExitInput);
  CHECK(run_cli("massey " + data("malformed.json")).code == kExitInput);
  CHECK(run_cli("massey " + data("does_not_exist.json")).code == kExitInput);
  CHECK(run_cli("massey " + data("klein_cohomology.json")).code == kExitInput);
  CHECK(run_cli("cohomology " + data("klein_cohomology.json") + " --modulus-exponent 9").code == kExitInput);

  JobOptions tight;
  tight.budget = 10;
  CHECK_THROWS_AS(run_massey(load("paper_triple.json"), tight), BudgetExceeded);
  CHECK_THROWS_AS(run_massey(load("bad_character.json"), {}), NotHomomorphism);
  CHECK_THROWS_AS(run_verify("no-such-scenario"), UnknownScenario);
}

TEST_CASE("cohomology jobs") {
  Json k = Json::parse(run_cli("cohomology " + data("klein_cohomology.json")).out);
  CHECK(k["h1_dim"] == 2);
  CHECK(k["h2_dim"] == 3);
  CHECK(k["cup_products"].size() == 4);
  CHECK(k["four_term"].size() == 3);
  for (const auto& t : k["four_term"]) CHECK((t["exact_at_h1"].get<bool>() && t["exact_at_h2"].get<bool>()));
  CHECK_FALSE(k.contains("formal_h90"));

  Json h = Json::parse(run_cli("cohomology " + data("cyclic2_h90.json")).out);
  REQUIRE(h.contains("formal_h90"));
  CHECK_FALSE(h["formal_h90"]["all_surjective"].get<bool>());
}

TEST_CASE("output is deterministic and written atomically") {
  Run a = run_cli("massey " + data("paper_triple.json"));
  Run b = run_cli("massey " + data("paper_triple.json"));
  CHECK(a.out == b.out);
  CHECK(run_cli("verify exactness-sweep").out == run_cli("verify exactness-sweep").out);

  fs::path dir = fs::temp_directory_path() / "gcoh_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path target = dir / "report.json";
  CHECK(run_cli("massey " + data("paper_triple.json") + " --output " + target.string()).code == kExitOk);
  std::ifstream f(target);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == a.out);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);

  // A failing job leaves an existing report untouched.
  CHECK(run_cli("massey " + data("paper_triple.json") + " --budget 10 -o " + target.string()).code == kExitBudget);
  std::ifstream g(target);
  std::stringstream again;
  again << g.rdbuf();
  CHECK(again.str() == a.out);

  write_atomic((dir / "direct.json").string(), "{}\n");
  std::ifstream d(dir / "direct.json");
  std::string line;
  std::getline(d, line);
  CHECK(line == "{}");
  fs::remove_all(dir);
}
