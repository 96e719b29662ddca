// Command-line interface: sliced distances, verification suites, sampling
// rate experiments, and barycenter runs, all with reproducible manifests.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smk/barycenter.hpp"
#include "smk/empirics.hpp"
#include "smk/json_io.hpp"
#include "smk/numerics.hpp"
#include "smk/sliced.hpp"
#include "smk/suites.hpp"

namespace {

constexpr const char* kVersion = "smk 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

double parse_q(const std::string& s) {
  if (s == "inf") return smk::kInf;
  try {
    const double q = std::stod(s);
    if (q < 1.0) throw smk::InvalidExponent("--q must be >= 1 or 'inf'");
    return q;
  } catch (const std::invalid_argument&) {
    throw smk::InvalidParam("--q must be a real >= 1 or the literal 'inf'");
  }
}

smk::DirectionSet parse_dirs(const std::string& spec, int dim, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::size_t count =
      colon == std::string::npos ? 0 : static_cast<std::size_t>(std::stoul(spec.substr(colon + 1)));
  if (kind == "circle") {
    if (dim != 2) throw smk::InvalidParam("--dirs circle:* requires 2-dimensional measures");
    return smk::circle_grid(count == 0 ? 720 : count);
  }
  if (kind == "mc") return smk::mc_directions(dim, count == 0 ? 2048 : count, seed);
  throw smk::InvalidParam("--dirs must be circle:<M> or mc:<M>");
}

struct ManifestWriter {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, std::string> artifact_hashes;
  std::string path = "smk_manifest.json";

  void add_artifact(const std::string& file) {
    artifact_hashes[file] = smk::fnv1a64_file(file);
  }
  void write() const {
    smk::json j{{"command", command},
                {"parameters", parameters},
                {"seeds", seeds},
                {"artifact_hashes", artifact_hashes},
                {"version", kVersion}};
    smk::save_json_file(path, j);
  }
};

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? s.npos : comma - pos);
    out.push_back(static_cast<std::size_t>(std::stoul(tok)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw smk::InvalidParam("empty list");
  return out;
}

int cmd_distance(const std::string& file_a, const std::string& file_b, double p,
                 const std::string& q_str, const std::string& dirs_spec, std::uint64_t seed,
                 const std::string& out_path, const std::string& manifest_path) {
  const double q = parse_q(q_str);
  const smk::DiscreteMeasure mu = smk::measure_from_json(smk::load_json_file(file_a));
  const smk::DiscreteMeasure nu = smk::measure_from_json(smk::load_json_file(file_b));
  const smk::DirectionSet dirs = parse_dirs(dirs_spec, mu.dim(), seed);
  const smk::SlicedDistanceReport rep = smk::sliced_distance(mu, nu, p, q, dirs);

  std::printf("aggregate = %.17g\n", rep.aggregate);
  smk::save_json_file(out_path, smk::report_to_json(rep));

  ManifestWriter m;
  m.command = "distance";
  m.parameters = {{"a", file_a}, {"b", file_b},       {"p", std::to_string(p)},
                  {"q", q_str},  {"dirs", dirs_spec}, {"out", out_path}};
  m.seeds = {seed};
  m.path = manifest_path;
  m.add_artifact(out_path);
  m.write();
  return kExitOk;
}

int cmd_verify(const std::string& suite, double p, const std::string& q_str, int seeds,
               std::uint64_t seed, const std::string& manifest_path) {
  smk::SuiteOptions opt;
  opt.p = p;
  opt.q = parse_q(q_str);
  opt.seeds = seeds;
  opt.seed = seed;
  const smk::SuiteResult res = smk::run_suite(suite, opt);

  std::printf("suite: %s\n", res.suite.c_str());
  for (const auto& row : res.rows)
    std::printf("  [%s] %-68s %s\n", row.pass ? "PASS" : "FAIL", row.name.c_str(),
                row.detail.c_str());

  ManifestWriter m;
  m.command = "verify";
  m.parameters = {{"suite", suite},
                  {"p", std::to_string(p)},
                  {"q", q_str},
                  {"seeds", std::to_string(seeds)},
                  {"all_pass", res.all_pass() ? "true" : "false"}};
  m.seeds = {seed};
  m.path = manifest_path;
  m.write();
  return res.all_pass() ? kExitOk : kExitSuiteFailure;
}

int cmd_rates(const std::string& mode, double p, const std::string& q_str, const std::string& ns,
              std::size_t trials, const std::string& dirs_spec, int dim, std::uint64_t seed,
              const std::string& out_csv, const std::string& manifest_path,
              const std::string& shape_str) {
  const double q = parse_q(q_str);
  const std::vector<std::size_t> n_list = parse_size_list(ns);
  const smk::DirectionSet dirs = parse_dirs(dirs_spec, dim, seed);

  ManifestWriter m;
  m.command = "rates";
  m.parameters = {{"mode", mode},          {"p", std::to_string(p)},
                  {"q", q_str},            {"Ns", ns},
                  {"trials", std::to_string(trials)}, {"dirs", dirs_spec},
                  {"dim", std::to_string(dim)},       {"out", out_csv},
                  {"shape", shape_str}};
  m.seeds = {seed};
  m.path = manifest_path;

  if (mode == "sampling") {
    const auto res = smk::sampling_rate_experiment(p, q, n_list, trials, dirs, seed);
    smk::write_rate_records_csv(out_csv, res.records);
    std::printf("slope = %.4f  bound_constant = %.6g  bound_holds = %s\n", res.slope,
                res.bound_constant, res.bound_holds ? "true" : "false");
    for (const auto& r : res.records)
      std::printf("  N=%zu mean=%.6g se=%.3g%s\n", r.n, r.mean_value, r.std_error,
                  r.has_bound ? (" bound=" + std::to_string(r.bound)).c_str() : "");
    m.parameters["slope"] = std::to_string(res.slope);
    m.add_artifact(out_csv);
    m.write();
    return kExitOk;
  }
  if (mode == "separation") {
    const smk::SourceShape shape =
        shape_str == "cube" ? smk::SourceShape::Cube : smk::SourceShape::Square;
    const auto res = smk::rate_separation_experiment(p, q, dim, shape, n_list, {trials}, dirs, seed);
    smk::write_rate_records_csv(out_csv, res.records);
    std::printf("classical_slope = %.4f  sliced_slope = %.4f  ratio_monotone = %s\n",
                res.classical_slope, res.sliced_slope, res.ratio_monotone ? "true" : "false");
    std::printf("  (monotone ratio growth is evidence of rate separation, not a proof)\n");
    for (const auto& row : res.rows)
      std::printf("  N=%zu classical=%.6g sliced=%.6g ratio=%.4f\n", row.n, row.classical_mean,
                  row.sliced_mean, row.ratio);
    m.parameters["classical_slope"] = std::to_string(res.classical_slope);
    m.parameters["sliced_slope"] = std::to_string(res.sliced_slope);
    m.add_artifact(out_csv);
    m.write();
    return kExitOk;
  }
  throw smk::InvalidParam("--mode must be sampling or separation");
}

int cmd_barycenter(const std::string& problem_file, std::size_t iters, std::uint64_t seed,
                   const std::string& out_path, const std::string& trace_path,
                   const std::string& manifest_path) {
  const smk::json j = smk::load_json_file(problem_file);
  std::vector<smk::BarycenterInput> inputs;
  for (const auto& item : j.at("inputs"))
    inputs.push_back({smk::measure_from_json(item.at("measure")),
                      item.at("lambda").get<double>()});
  if (inputs.empty()) throw smk::InvalidParam("problem has no inputs");
  const int dim = inputs.front().measure.dim();
  const double p = j.at("p").get<double>();
  const double q = smk::q_from_json(j.at("q"));
  const double kappa = j.at("kappa").get<double>();
  const std::size_t support = j.at("support_size").get<std::size_t>();
  smk::DirectionSet dirs = j.at("dirs").is_string()
                               ? parse_dirs(j.at("dirs").get<std::string>(), dim, seed)
                               : smk::direction_set_from_json(j.at("dirs"));
  smk::BarycenterProblem problem(std::move(inputs), p, q, kappa, support, std::move(dirs));

  smk::SolveOptions opts;
  opts.iters = iters;
  opts.seed = seed;
  const smk::BarycenterSolution sol = smk::solve_fixed_support(problem, opts);

  std::printf("initial objective = %.9g\nfinal objective   = %.9g\n", sol.initial_objective,
              sol.final_objective);
  smk::json out{{"measure", smk::measure_to_json(sol.nu)},
                {"initial_objective", sol.initial_objective},
                {"final_objective", sol.final_objective}};
  smk::save_json_file(out_path, out);
  smk::write_trace_csv(trace_path, sol.trace);

  ManifestWriter m;
  m.command = "barycenter";
  m.parameters = {{"problem", problem_file},
                  {"iters", std::to_string(iters)},
                  {"out", out_path},
                  {"trace", trace_path}};
  m.seeds = {seed};
  m.path = manifest_path;
  m.add_artifact(out_path);
  m.add_artifact(trace_path);
  m.write();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sliced Monge-Kantorovich metrics: distances, certificates, experiments"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap worker parallelism (default: all cores)");

  // distance
  auto* dist = app.add_subcommand("distance", "sliced distance between two measure files");
  std::string da, db, dq = "2", ddirs = "circle:720", dout = "distance_report.json",
              dman = "smk_manifest.json";
  double dp = 2.0;
  std::uint64_t dseed = 42;
  dist->add_option("a", da, "measure JSON")->required();
  dist->add_option("b", db, "measure JSON")->required();
  dist->add_option("--p", dp, "order p >= 1");
  dist->add_option("--q", dq, "order q >= 1 or 'inf'");
  dist->add_option("--dirs", ddirs, "circle:<M> or mc:<M>");
  dist->add_option("--seed", dseed, "seed for mc directions");
  dist->add_option("--out", dout, "report JSON path");
  dist->add_option("--manifest", dman, "manifest path");

  // verify
  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  std::string vsuite, vq = "2", vman = "smk_manifest.json";
  double vp = 2.0;
  int vseeds = 50;
  std::uint64_t vseed = 42;
  ver->add_option("suite", vsuite, "metric|comparison|nongeodesic|linear-geodesic|duality|remark|density")
      ->required();
  ver->add_option("--p", vp, "order p");
  ver->add_option("--q", vq, "order q or 'inf'");
  ver->add_option("--seeds", vseeds, "random instance count");
  ver->add_option("--seed", vseed, "master seed");
  ver->add_option("--manifest", vman, "manifest path");

  // rates
  auto* rat = app.add_subcommand("rates", "empirical sampling-rate experiments");
  std::string rmode = "sampling", rq = "2", rns = "64,128,256,512,1024", rdirs = "circle:48",
              rcsv = "rates.csv", rman = "smk_manifest.json", rshape = "square";
  double rp = 2.0;
  std::size_t rtrials = 50;
  int rdim = 2;
  std::uint64_t rseed = 42;
  rat->add_option("--mode", rmode, "sampling|separation");
  rat->add_option("--p", rp, "order p");
  rat->add_option("--q", rq, "order q or 'inf'");
  rat->add_option("--Ns", rns, "comma-separated sample sizes");
  rat->add_option("--trials", rtrials, "trials per N");
  rat->add_option("--dirs", rdirs, "circle:<M> or mc:<M>");
  rat->add_option("--dim", rdim, "ambient dimension");
  rat->add_option("--shape", rshape, "square|cube (separation mode)");
  rat->add_option("--seed", rseed, "master seed");
  rat->add_option("--out", rcsv, "CSV path");
  rat->add_option("--manifest", rman, "manifest path");

  // barycenter
  auto* bar = app.add_subcommand("barycenter", "fixed-support barycenter solve");
  std::string bprob, bout = "barycenter_solution.json", btrace = "barycenter_trace.csv",
              bman = "smk_manifest.json";
  std::size_t biters = 2000;
  std::uint64_t bseed = 42;
  bar->add_option("problem", bprob, "problem JSON")->required();
  bar->add_option("--iters", biters, "iterations");
  bar->add_option("--seed", bseed, "seed");
  bar->add_option("--out", bout, "solution JSON path");
  bar->add_option("--trace", btrace, "trace CSV path");
  bar->add_option("--manifest", bman, "manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (threads > 0) smk::set_max_threads(threads);

  try {
    if (*dist) return cmd_distance(da, db, dp, dq, ddirs, dseed, dout, dman);
    if (*ver) return cmd_verify(vsuite, vp, vq, vseeds, vseed, vman);
    if (*rat)
      return cmd_rates(rmode, rp, rq, rns, rtrials, rdirs, rdim, rseed, rcsv, rman, rshape);
    if (*bar) return cmd_barycenter(bprob, biters, bseed, bout, btrace, bman);
  } catch (const smk::TooLarge& e) {
    std::fprintf(stderr, "resource cap exceeded: %s\n", e.what());
    return kExitResource;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
