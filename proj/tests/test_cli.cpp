#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "cliffell");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cliffell::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("operators expand") {
  const Result r = run({"operators", "expand", "(1-E1)(1+E1)"});
  CHECK(r.code == 0);
  CHECK(r.out == "+1·I −1·E1²\n");
  CHECK(run({"operators", "expand", "(1-E1"}).code == 2);
}

TEST_CASE("eval") {
  const Result r = run({"-l", "m0-square", "eval", "--fn", "zeta", "--at", "0.5", "0", "--radius", "60",
                        "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["function"] == "zeta");
  CHECK(j["radius_used"] == 60);
  CHECK(j["value"].contains("1"));
  // A lone number is a scalar.
  const Result s = run({"-l", "m0-square", "eval", "--at", "0.5", "--radius", "60", "--format", "json"});
  CHECK(nlohmann::json::parse(s.out)["value"] == j["value"]);

  const Result pole = run({"-l", "m0-square", "eval", "--fn", "C", "--at", "1", "0"});
  CHECK(pole.code == 1);
  CHECK(pole.err.find("pole error") != std::string::npos);

  CHECK(run({"-l", "m0-square", "eval", "--fn", "Q", "--at", "0.1", "0.2"}).code == 2);
  CHECK(run({"-l", "m0-square", "eval", "--at", "0.1", "0.2", "0.3"}).code == 2);
  CHECK(run({"-l", "nowhere", "eval", "--at", "0.1"}).code == 2);
  CHECK(run({"eval"}).code == 2);
}

TEST_CASE("lemma and config") {
  CHECK(run({"lemma", "--n", "5"}).code == 0);
  CHECK(run({"lemma", "--n", "11"}).code == 2);
  const Result c = run({"config"});
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["radius_hi"] == 24);
}

TEST_CASE("verify writes a report") {
  const auto dir = std::filesystem::temp_directory_path() / "cliffell_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "residues.csv").string();
  const Result r = run({"-l", "m0-square", "verify", "residues", "-o", path});
  CHECK(r.code == 0);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "check_id,function,point,defect_norm,tail_estimate,threshold,pass");
  CHECK(run({"-l", "m0-square", "verify", "residues", "-o", path, "--set", "bogus=1"}).code == 2);
  CHECK(run({"-l", "m0-square", "verify", "bogus"}).code == 2);
  std::filesystem::remove_all(dir);
}
