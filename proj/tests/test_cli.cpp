#include "linkforge/cli.hpp"

#include "doctest.h"
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = linkforge::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(LINKFORGE_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("milnor 123 on the Borromean rings") {
  auto r = run({"milnor", "--index", "123", fixture("borromean.pd")});
  REQUIRE(r.code == 0);
  auto d = r.doc();
  CHECK(d["index"] == "123");
  CHECK(std::abs(d["value"].get<int>()) == 1);
  CHECK(d["indeterminacy"] == 0);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("verify the fig4 representation") {
  auto r = run({"verify", fixture("fig4.fpg"), fixture("fig4_rep.json")});
  REQUIRE(r.code == 0);
  auto d = r.doc();
  CHECK(d["valid"] == true);
  CHECK(d["eta_prime_image"] == json::parse("[[3,1],[4,0]]"));
}

TEST_CASE("tree --m 7") {
  auto r = run({"tree", "--m", "7"});
  REQUIRE(r.code == 0);
  CHECK(r.doc() == json::parse(R"({"h":3,"k":2,"leaf_depths":[4,4,4,4,3,3,1]})"));
}

TEST_CASE("exit codes") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"milnor", fixture("borromean.pd"), "--bogus"}).code == 2);
  CHECK(run({"parse", "no/such/file.pd"}).code == 1);
  CHECK(run({"milnor", "--index", "1", fixture("borromean.pd")}).code == 1);
  CHECK(run({"milnor", "--index", "129", fixture("borromean.pd")}).code == 1);
  CHECK(run({"tree", "--m", "1"}).code == 1);

  fs::path bad = fs::temp_directory_path() / "linkforge_test_bad.pd";
  std::ofstream(bad) << "X[1,2,3\n";
  auto r = run({"parse", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  fs::remove(bad);
}

TEST_CASE("LINKFORGE_FIXTURES overrides the fixture directory") {
  fs::path dir = fs::temp_directory_path() / "linkforge_fixture_override";
  fs::create_directories(dir);
  fs::copy_file(fixture("hopf.pd"), dir / "borromean.pd", fs::copy_options::overwrite_existing);
  ::setenv("LINKFORGE_FIXTURES", dir.c_str(), 1);
  auto r = run({"lk", "nowhere/borromean.pd"});
  ::unsetenv("LINKFORGE_FIXTURES");
  REQUIRE(r.code == 0);
  CHECK(r.doc()["linking_matrix"].size() == 2);

  auto fallback = run({"lk", "nowhere/borromean.pd"});
  REQUIRE(fallback.code == 0);
  CHECK(fallback.doc()["linking_matrix"].size() == 3);
  fs::remove_all(dir);
}

TEST_CASE("repsearch output does not depend on the worker count") {
  std::vector<std::string> base{"repsearch", fixture("fig4.fpg"), "--p", "3", "--all"};
  auto one = run(base);
  REQUIRE(one.code == 0);
  for (const char* w : {"2", "4"}) {
    auto args = base;
    args.insert(args.end(), {"--workers", w});
    auto r = run(args);
    REQUIRE(r.code == 0);
    CHECK(r.out == one.out);
  }
}

TEST_CASE("identical runs print identical bytes") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"alex", fixture("borromean.pd")},
           {"milnor", "--max-length", "3", fixture("borromean.pd")},
           {"rho", "--seifert", fixture("trefoil_seifert.csv")}}) {
    auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.doc().dump(2) + "\n" == a.out);
  }
}

TEST_CASE("bing --out writes a PD file that parses back") {
  fs::path out = fs::temp_directory_path() / "linkforge_bing_1234.pd";
  auto r = run({"bing", "--index", "1234", "--out", out.string()});
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(out));
  auto back = run({"lk", out.string()});
  REQUIRE(back.code == 0);
  CHECK(back.doc()["linking_matrix"] == r.doc()["linking_matrix"]);
  CHECK(r.doc()["components"] == 4);
  auto mu = run({"milnor", "--index", "1234", out.string()});
  REQUIRE(mu.code == 0);
  CHECK(std::abs(mu.doc()["value"].get<int>()) == 1);
  fs::remove(out);
}

TEST_CASE("--report carries hashes and the output") {
  fs::path rep = fs::temp_directory_path() / "linkforge_report.json";
  auto r = run({"--report", rep.string(), "arf", fixture("trefoil.pd")});
  REQUIRE(r.code == 0);
  std::ifstream in(rep);
  json report = json::parse(in);
  CHECK(report["command"] == "arf");
  CHECK(report["outputs"] == r.doc());
  CHECK(report["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(r.doc()["arf"] == 1);
  fs::remove(rep);
}
