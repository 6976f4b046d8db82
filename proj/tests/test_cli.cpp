#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mql/cli.hpp"
#include "mql/instances.hpp"
#include "mql/io.hpp"

using namespace mql;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "mqlearn");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("mql_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes a loadable instance") {
  TempDir dir;
  const auto r = call({"gen", "--n", "12", "--s", "3", "--r", "2", "--seed", "5", "--out", dir / "f.json"});
  CHECK(r.code == 0);
  const Mdnf f = io::instance_from_json(io::read_json(dir / "f.json"));
  CHECK(f == random_instance(12, 3, 2, 5));
  const auto doc = io::read_json(dir / "f.json");
  CHECK(doc.at("generator").at("seed") == 5);

  const auto stdout_run = call({"gen", "--n", "12", "--s", "3", "--r", "2", "--seed", "5"});
  CHECK(stdout_run.code == 0);
  CHECK(stdout_run.out == slurp(dir / "f.json"));
}

TEST_CASE("gen --hard round trips") {
  TempDir dir;
  CHECK(call({"gen", "--hard", "--ell", "6", "--t", "2", "--seed", "1", "--out", dir / "p.json"}).code == 0);
  const InstancePair p = io::pair_from_json(io::read_json(dir / "p.json"));
  const InstancePair q = hard_pair(6, 2, 1);
  CHECK(p.f == q.f);
  CHECK(p.g == q.g);
  CHECK(p.k == q.k);
  CHECK(p.hidden == q.hidden);
  CHECK(p.witness == q.witness);
}

TEST_CASE("gen usage errors") {
  CHECK(call({"gen", "--n", "2", "--s", "5", "--r", "1"}).code == cli::kUsage);
  CHECK(call({"gen", "--hard", "--ell", "3", "--t", "2"}).code == cli::kUsage);
  CHECK(call({"gen", "--n", "4"}).code == cli::kUsage);
  CHECK(call({"nope"}).code == cli::kUsage);
  CHECK(call({}).code == cli::kUsage);
}

TEST_CASE("learn") {
  TempDir dir;
  REQUIRE(call({"gen", "--n", "10", "--s", "3", "--r", "3", "--seed", "8", "--out", dir / "f.json"}).code == 0);

  const auto r1 = call({"learn", "--alg", "1", "--instance", dir / "f.json", "--s-max", "3", "--r-max", "3",
                        "--report", dir / "r1.json"});
  CHECK(r1.code == 0);
  const auto rep = io::read_json(dir / "r1.json");
  CHECK(rep.at("success") == true);
  CHECK(rep.at("algorithm") == 1);
  CHECK(rep.at("elapsed_ms") == 0);
  CHECK(rep.at("queries").get<int>() > 0);
  CHECK(rep.contains("bounds"));
  const Mdnf target = io::instance_from_json(io::read_json(dir / "f.json"));
  CHECK(io::instance_from_json(rep.at("hypothesis")) == target);

  // Same seed, same bytes.
  for (const char* name : {"a.json", "b.json"}) {
    CHECK(call({"learn", "--alg", "3", "--instance", dir / "f.json", "--s-max", "3", "--r-max", "3", "--seed", "4",
                "--report", dir / name})
              .code != cli::kUsage);
  }
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  const auto cut = call({"learn", "--alg", "2", "--instance", dir / "f.json", "--s-max", "3", "--r-max", "3",
                         "--budget", "0", "--report", dir / "cut.json"});
  CHECK(cut.code == cli::kResource);
  const auto cut_rep = io::read_json(dir / "cut.json");
  CHECK(cut_rep.at("queries") == 0);
  CHECK(cut_rep.at("budget_exhausted") == true);

  CHECK(call({"learn", "--alg", "6", "--instance", dir / "f.json", "--s-max", "3", "--r-max", "3"}).code ==
        cli::kUsage);
  CHECK(call({"learn", "--alg", "1", "--instance", dir / "missing.json", "--s-max", "3", "--r-max", "3"}).code ==
        cli::kUsage);
  CHECK(call({"learn", "--alg", "4", "--instance", dir / "f.json", "--s-max", "3", "--r-max", "3", "--cff-mode",
              "random"})
            .code == cli::kLearnerFailure);
}

TEST_CASE("learn reads pair files and rejects unreduced input") {
  TempDir dir;
  REQUIRE(call({"gen", "--hard", "--ell", "6", "--t", "3", "--seed", "2", "--out", dir / "p.json"}).code == 0);
  const auto g = call({"learn", "--alg", "2", "--instance", dir / "p.json", "--s-max", "3", "--r-max", "4"});
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out).at("terms_found") == 3);
  const auto f = call({"learn", "--alg", "2", "--instance", dir / "p.json", "--s-max", "3", "--r-max", "4",
                       "--pair-member", "f"});
  CHECK(f.code == 0);
  CHECK(nlohmann::json::parse(f.out).at("terms_found") == 2);

  {
    std::ofstream out(dir / "u.json");
    out << R"({"n": 4, "terms": [[0], [0, 1]]})";
  }
  CHECK(call({"learn", "--alg", "1", "--instance", dir / "u.json", "--s-max", "2", "--r-max", "2"}).code ==
        cli::kUsage);
  CHECK(call({"learn", "--alg", "1", "--instance", dir / "u.json", "--s-max", "2", "--r-max", "2", "--raw"}).code ==
        0);
}

TEST_CASE("bench") {
  TempDir dir;
  {
    std::ofstream out(dir / "suite.json");
    out << R"({"n": [8, 12], "s": [2], "r": [2], "algorithms": [1, 4], "seeds": [3]})";
  }
  REQUIRE(call({"bench", "--suite", dir / "suite.json", "--csv", dir / "a.csv", "--threads", "1"}).code == 0);
  REQUIRE(call({"bench", "--suite", dir / "suite.json", "--csv", dir / "b.csv", "--threads", "4"}).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

  const auto rows = lines(slurp(dir / "a.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].starts_with("# "));
  CHECK(rows[0].find("prng=") != std::string::npos);
  CHECK(rows[1] == cli::kBenchHeader);
  CHECK(rows[2].starts_with("1,8,2,2,3,"));
  CHECK(rows[3].starts_with("4,8,2,2,3,"));
  CHECK(rows[4].starts_with("1,12,2,2,3,"));
  CHECK(rows[5].starts_with("4,12,2,2,3,"));

  const auto parsed = cli::run_suite(io::read_json(dir / "suite.json"), 2);
  for (const auto& row : parsed) {
    const BoundValues b = bound_values(row.n, row.s, row.r);
    CHECK(row.bound_info == doctest::Approx(b.info));
    CHECK(row.bound_lower == doctest::Approx(b.lower()));
    CHECK(row.bound_alg_ref == doctest::Approx(b.for_algorithm(row.alg)));
    CHECK(row.success);
  }

  {
    std::ofstream out(dir / "bad.json");
    out << R"({"n": [8], "s": [2], "r": [2], "algorithms": [7]})";
  }
  CHECK(call({"bench", "--suite", dir / "bad.json"}).code == cli::kUsage);
}

TEST_CASE("cff build and verify") {
  TempDir dir;
  REQUIRE(call({"cff", "build", "--ground-n", "3", "--s", "1", "--r", "1", "--out", dir / "e.json"}).code == 0);
  const auto ok = call({"cff", "verify", "--in", dir / "e.json"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "PASS rows=4\n");

  // Without 011 nothing zeroes x0 while x1 is set.
  auto doc = io::read_json(dir / "e.json");
  CHECK(doc.at("rows") == nlohmann::json({"011", "101", "110", "111"}));
  doc["rows"] = {"101", "110", "111"};
  io::write_json(dir / "m.json", doc);
  const auto bad = call({"cff", "verify", "--in", dir / "m.json"});
  CHECK(bad.code == cli::kLearnerFailure);
  CHECK(bad.out == "FAIL tuple=[0,1] zeros=[0]\n");

  for (const char* name : {"r1.json", "r2.json"}) {
    CHECK(call({"cff", "build", "--ground-n", "8", "--s", "1", "--r", "2", "--mode", "random", "--seed", "9",
                "--out", dir / name})
              .code == 0);
  }
  CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));
  CHECK(call({"cff", "build", "--ground-n", "8", "--s", "1", "--r", "2", "--mode", "greedy", "--out",
              dir / "g.json"})
            .code == 0);
  CHECK(call({"cff", "verify", "--in", dir / "g.json"}).code == 0);
  CHECK(call({"cff", "build", "--ground-n", "3", "--s", "1", "--r", "1", "--mode", "bogus"}).code == cli::kUsage);
  CHECK(call({"cff"}).code == cli::kUsage);
}

}  // TEST_SUITE
