#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "flasque/io/json_io.hpp"

using namespace flasque;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("flabby-test-" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("check reports a counterexample") {
  Run r = run({"--json", "check", "--corpus", "pseudocircle", "--sheaf", "const-Z", "--mode", "traditional"});
  CHECK(r.code == kExitViolated);
  Json j = parse_json(r.out);
  CHECK(j["verdict"] == false);
  CHECK(j["counterexample"]["open"] == Json::array({"a", "b"}));
  CHECK(j["inputs"].get<std::string>().size() == 16);

  Run ok = run({"check", "--corpus", "pseudocircle", "--sheaf", "omega", "--mode", "all"});
  CHECK(ok.code == kExitPass);
  CHECK(ok.out.find("internal: flabby") != std::string::npos);
}

TEST_CASE("cohomology and higher direct images") {
  Run r = run({"cohomology", "--corpus", "pseudocircle", "--sheaf", "const-Z"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("H0 = Z\nH1 = Z\n") == 0);

  Run d = run({"--json", "rderived", "--corpus-map", "sphere2->point", "--sheaf", "const-Z", "--check-stalks"});
  CHECK(d.code == kExitPass);
  Json j = parse_json(d.out);
  CHECK(j["table"]["R2"]["*"] == "Z");
  CHECK(j["mismatches"].empty());
}

TEST_CASE("sheaves from files") {
  std::string site = temp_file("site.json", R"({"format":1,"kind":"poset","points":["p0","p1"],"le":[["p0","p1"]]})");
  std::string sheaf = temp_file(
      "sheaf.json",
      R"({"format":1,"kind":"set-sheaf","stalks":{"p0":["0"],"p1":["0","1"]},"maps":[{"from":"p0","to":"p1","map":[0]}]})");
  Run r = run({"check", "--sheaf", sheaf, "--site", site, "--mode", "local"});
  CHECK(r.code == kExitViolated);
  std::string formula = temp_file("f.sexp", "(exists (x X) true)");
  Run e = run({"internal", "eval", "--sheaf", sheaf, "--site", site, "--formula", formula});
  CHECK(e.code == kExitPass);
  CHECK(e.out.find("holds globally: yes") != std::string::npos);
}

TEST_CASE("injectivity from the command line") {
  Run r = run({"injective", "--corpus", "sierpinski", "--sheaf", "sky-p1-Z2", "--family", "2"});
  CHECK(r.code == kExitPass);
  Run z = run({"injective", "--corpus", "sierpinski", "--sheaf", "const-Z"});
  CHECK(z.code == kExitInput);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"check", "--sheaf", "/nonexistent.json"}).code == kExitInput);
  CHECK(run({"check", "--corpus", "pseudocircle", "--sheaf", "const-Z", "--mode", "sideways"}).code == kExitInput);
  CHECK(run({"check", "--corpus", "nowhere", "--sheaf", "const-Z"}).code == kExitInput);
  CHECK(run({"check", "--sheaf", temp_file("bad.json", "{\"kind\":")}).code == kExitInput);
  std::string bad = temp_file(
      "nonfunctor.json",
      R"({"format":1,"kind":"set-sheaf","site":{"format":1,"kind":"poset","points":["p0","p1"],"le":[["p0","p1"]]},"stalks":{"p0":["0"],"p1":["0"]},"maps":[{"from":"p0","to":"p1","map":[3]}]})");
  Run r = run({"check", "--sheaf", bad});
  CHECK(r.code == kExitInput);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"corpus", "list", "--enumerate", "6"}).code == kExitInput);
  CHECK(run({"internal", "eval", "--corpus", "point", "--sheaf", "const-set-2", "--expr", "(eq x"}).code == kExitInput);
}

TEST_CASE("suite and corpus listing") {
  Run s = run({"suite", "--max-points", "2", "--filter", "site"});
  CHECK(s.code == kExitPass);
  CHECK(s.out.find("FAIL") == std::string::npos);
  Run c = run({"--json", "corpus", "list", "--enumerate", "2", "--max-stalk", "2"});
  CHECK(c.code == kExitPass);
  Json j = parse_json(c.out);
  CHECK(j["maps"].size() >= 20);
  CHECK(j["enumerated"]["counts"][1]["posets"] == 2);
}
