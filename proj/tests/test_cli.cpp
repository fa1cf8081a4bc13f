#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include <json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = percolab::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

}  // namespace

TEST_CASE("theta-curve writes a provenance comment, a header and one row per p") {
  const auto r = run({"theta-curve", "--graph", "free:2", "--R", "6", "--p", "0.2,0.5,0.8", "--trials", "500",
                      "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("# ", 0) == 0);
  CHECK(rows[0].find("seed=3") != std::string::npos);
  CHECK(rows[0].find("workers") == std::string::npos);
  CHECK(rows[1] == "p,theta_hat,stderr,trials");
  CHECK(rows[2].rfind("0.2,", 0) == 0);
}

TEST_CASE("acp header") {
  const auto r = run({"acp", "--model", "two-line", "--shift", "2", "--n", "4,8", "--trials", "200"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1] == "n,mismatch,stderr,srw_bound");
}

TEST_CASE("output is byte-identical across runs and worker counts") {
  const std::vector<std::string> base = {"acp", "--model", "two-line", "--shift", "2", "--n", "8,16", "--trials", "3000",
                                         "--seed", "11"};
  auto with = [&](const std::string& workers) {
    auto args = base;
    args.push_back("--workers");
    args.push_back(workers);
    return run(args).out;
  };
  const auto a = with("1");
  CHECK(a == with("1"));
  CHECK(a == with("4"));
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run({"theta", "--graph", "lattice:2", "--R", "4", "--p", "1.5"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"acp", "--model", "two-line", "--R", "5", "--n", "8", "--shift", "2"}).code == 2);
  const auto r = run({"acp", "--model", "two-line", "--R", "5", "--n", "8", "--shift", "2"});
  CHECK(r.err.find("need R >=") != std::string::npos);
  CHECK(run({"theta", "--graph", "klein", "--R", "4", "--p", "0.5"}).code == 2);
  CHECK(run({"exact-measure", "--graph", "lattice:2", "--R", "5", "--p", "0.5", "--event", "root-boundary"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json output carries the columns and data") {
  const auto r = run({"srw-oracle", "--steps", "1,3", "--lo", "0", "--hi", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["columns"] == nlohmann::json::array({"steps", "lo", "hi", "probability"}));
  REQUIRE(doc["data"]["steps"].size() == 2);
  CHECK(doc["data"]["steps"][1] == 3);
  CHECK(doc["data"]["probability"][0].get<double>() == 0.0);
  CHECK(doc["provenance"]["subcommand"] == "srw-oracle");
}

TEST_CASE("srw-oracle values") {
  const auto r = run({"srw-oracle", "--steps", "1,2", "--lo", "-2", "--hi", "2"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[2] == "1,-2,2,1");
  CHECK(rows[3] == "2,-2,2,1");
  const auto zero = lines(run({"srw-oracle", "--steps", "2", "--lo", "0", "--hi", "0"}).out);
  CHECK(zero[2] == "2,0,0,0.5");
}

TEST_CASE("--out writes the same bytes to a file") {
  const std::string path = "test_cli_out.csv";
  const std::vector<std::string> args = {"ball-info", "--graph", "lattice:2", "--R", "3"};
  const auto to_stdout = run(args);
  auto file_args = args;
  file_args.push_back("--out");
  file_args.push_back(path);
  const auto to_file = run(file_args);
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_stdout.out);
  CHECK(lines(to_stdout.out).back() == "lattice:2,3,25,36,12");
  std::remove(path.c_str());
}
