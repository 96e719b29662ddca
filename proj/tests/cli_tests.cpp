// End-to-end checks of the command-line tool: exit codes, artifacts,
// manifests, and byte-level reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "smk/json_io.hpp"
#include "smk/sliced.hpp"

namespace fs = std::filesystem;
using namespace smk;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SMK_CLI_PATH) + " " + args + " >cli_stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path prev;
  fs::path dir;
  TempDir() {
    prev = fs::current_path();
    dir = fs::temp_directory_path() / "smk_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::current_path(dir);
  }
  ~TempDir() {
    fs::current_path(prev);
    fs::remove_all(dir);
  }
};

void write_measure(const std::string& path, const DiscreteMeasure& m) {
  save_json_file(path, measure_to_json(m));
}

}  // namespace

TEST_CASE("distance: report, manifest, reproducibility") {
  TempDir tmp;
  write_measure("a.json", DiscreteMeasure::dirac({0.0, 0.0}));
  write_measure("b.json", DiscreteMeasure::dirac({1.0, 0.0}));

  REQUIRE(run("distance a.json b.json --p 2 --q 2 --dirs circle:720 --out rep.json") == 0);
  const json rep = load_json_file("rep.json");
  const double expected = sliced_mkpq(DiscreteMeasure::dirac({0.0, 0.0}),
                                      DiscreteMeasure::dirac({1.0, 0.0}), 2.0, 2.0,
                                      circle_grid(720));
  CHECK(rep.at("aggregate").get<double>() == expected);

  const json manifest = load_json_file("smk_manifest.json");
  CHECK(manifest.at("command") == "distance");
  CHECK(manifest.at("artifact_hashes").at("rep.json") == fnv1a64_file("rep.json"));
  CHECK(manifest.at("version").get<std::string>().rfind("smk ", 0) == 0);

  // same measure twice: aggregate 0
  REQUIRE(run("distance a.json a.json --p 2 --q 2 --out same.json") == 0);
  CHECK(load_json_file("same.json").at("aggregate").get<double>() == 0.0);

  // q = inf literal
  REQUIRE(run("distance a.json b.json --p 2 --q inf --out maxrep.json") == 0);
  CHECK(load_json_file("maxrep.json").at("q") == "inf");

  // byte-identical output under identical command + seed (mc directions)
  REQUIRE(run("distance a.json b.json --p 2 --q 2 --dirs mc:256 --seed 7 --out r1.json") == 0);
  REQUIRE(run("distance a.json b.json --p 2 --q 2 --dirs mc:256 --seed 7 --out r2.json") == 0);
  CHECK(slurp("r1.json") == slurp("r2.json"));
}

TEST_CASE("usage errors exit with code 2") {
  TempDir tmp;
  CHECK(run("distance missing.json also_missing.json") == 2);
  write_measure("a.json", DiscreteMeasure::dirac({0.0, 0.0}));
  CHECK(run("distance a.json a.json --q huge") == 2);
  CHECK(run("distance a.json a.json --p 0.5") == 2);
  CHECK(run("distance a.json a.json --dirs circle:7") == 2);
  CHECK(run("verify no-such-suite") == 2);
  CHECK(run("nonsense-subcommand") == 2);
}

TEST_CASE("verify: passing suite exits 0, table printed") {
  TempDir tmp;
  REQUIRE(run("verify remark") == 0);
  const std::string out = slurp("cli_stdout.txt");
  CHECK(out.find("[PASS]") != std::string::npos);
  CHECK(out.find("suite: remark") != std::string::npos);

  CHECK(run("verify density") == 0);
  CHECK(run("--threads 1 verify linear-geodesic --seeds 10") == 0);
  CHECK(run("verify duality --p 2 --q 4 --seeds 10") == 0);
  CHECK(run("verify metric --seeds 10") == 0);
  CHECK(run("verify comparison --seeds 10") == 0);
}

TEST_CASE("verify nongeodesic reports the intersecting candidate sets and exits 1") {
  TempDir tmp;
  // the candidate-set row is red by design (the sets intersect); the
  // coverage certificate row passes
  CHECK(run("verify nongeodesic --p 2 --q 2") == 1);
  const std::string out = slurp("cli_stdout.txt");
  CHECK(out.find("[FAIL] E and E' disjoint") != std::string::npos);
  CHECK(out.find("[PASS] midpoint support coverage fails at theta = pi/8") !=
        std::string::npos);
}

TEST_CASE("rates: sampling mode writes CSV and manifest") {
  TempDir tmp;
  REQUIRE(run("rates --mode sampling --p 2 --q 2 --Ns 32,64 --trials 6 --dirs circle:16 "
              "--out rates.csv") == 0);
  const std::string csv = slurp("rates.csv");
  CHECK(csv.rfind("N,statistic_id,mean,std_error,bound,pass", 0) == 0);
  const json manifest = load_json_file("smk_manifest.json");
  CHECK(manifest.at("parameters").at("mode") == "sampling");
  CHECK(manifest.at("artifact_hashes").contains("rates.csv"));
}

TEST_CASE("rates: separation cap exceeded exits 3") {
  TempDir tmp;
  CHECK(run("rates --mode separation --p 2 --q 2 --Ns 2048 --trials 2 --dirs circle:16") == 3);
}

TEST_CASE("barycenter: solution, trace, manifest") {
  TempDir tmp;
  json problem{{"inputs",
                {{{"measure", measure_to_json(DiscreteMeasure::dirac({0.0, 0.0}))},
                  {"lambda", 0.5}},
                 {{"measure", measure_to_json(DiscreteMeasure::dirac({2.0, 0.0}))},
                  {"lambda", 0.5}}}},
               {"p", 2.0},
               {"q", 2.0},
               {"kappa", 2.0},
               {"support_size", 1},
               {"dirs", "circle:48"}};
  save_json_file("problem.json", problem);
  REQUIRE(run("barycenter problem.json --iters 400 --out sol.json --trace trace.csv") == 0);
  const json sol = load_json_file("sol.json");
  CHECK(sol.at("final_objective").get<double>() <= sol.at("initial_objective").get<double>());
  const std::string trace = slurp("trace.csv");
  CHECK(trace.rfind("iteration,objective_estimate,step", 0) == 0);
  const json manifest = load_json_file("smk_manifest.json");
  CHECK(manifest.at("artifact_hashes").contains("sol.json"));
  CHECK(manifest.at("artifact_hashes").contains("trace.csv"));

  CHECK(run("barycenter nothere.json") == 2);
}

