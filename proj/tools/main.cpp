#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "kclust/errors.hpp"
#include "kclust/gaussian.hpp"
#include "kclust/graph.hpp"
#include "kclust/matrix.hpp"
#include "kclust/pipeline.hpp"
#include "kclust/rng.hpp"

using nlohmann::json;
using namespace kclust;

namespace {

SymMatrix load_matrix_checked(const std::string& path) {
  SymMatrix m = load_matrix_file(path);
  if (m.asymmetry_warning())
    std::cerr << "warning: " << path << " was not symmetric; entries were averaged\n";
  return m;
}

std::vector<int> one_based(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = labels[i] + 1;
  return out;
}

json round_report_json(const RoundReport& rounds) {
  json arms = json::array();
  for (const ArmStats& arm : rounds.arms) {
    arms.push_back({{"s", arm.s},
                    {"labels", one_based(arm.label_set)},
                    {"mean", arm.mean},
                    {"std_error", arm.std_error},
                    {"best_value", arm.best_value},
                    {"trials", arm.trials}});
  }
  return {{"arms", arms},
          {"round_mean", rounds.round_mean},
          {"round_std_error", rounds.round_std_error},
          {"trials", rounds.trials}};
}

json report_json(const SolveReport& report) {
  json j{{"n", report.n},
         {"k", report.k},
         {"variant", report.variant},
         {"best_value", report.assignment.value},
         {"labels", one_based(report.assignment.labels)},
         {"sdp_primal", report.sdp_primal},
         {"apriori_ratio", report.apriori_ratio},
         {"empirical_ratio", report.empirical_ratio},
         {"radius", report.radius},
         {"w_norm", report.w_norm},
         {"rounding", round_report_json(report.rounds)},
         {"sdp_iterations", report.sdp.iterations}};
  if (report.sdp_dual) j["sdp_dual"] = *report.sdp_dual;
  if (report.analytic_bound) j["analytic_bound"] = *report.analytic_bound;
  if (report.diameter)
    j["diameter"] = {{"p", report.diameter->p + 1},
                     {"q", report.diameter->q + 1},
                     {"distance", report.diameter->distance}};
  if (report.triple)
    j["triple"] = {{"subset", one_based(report.triple->subset)},
                   {"spread", report.triple->spread},
                   {"phi", report.triple->phi},
                   {"psi", report.triple->psi}};
  return j;
}

SymMatrix comparison_matrix(const std::string& path, int identity_k) {
  if (!path.empty()) return load_matrix_checked(path);
  SymMatrix eye(identity_k);
  for (int i = 0; i < identity_k; ++i) eye.set(i, i, 1.0);
  return eye;
}

int run_solve(const std::string& matrix_path, const std::string& comparison_path, int identity_k,
              const PipelineParams& params) {
  const SymMatrix a = load_matrix_checked(matrix_path);
  const SymMatrix b = comparison_matrix(comparison_path, identity_k);
  const KernelInstance inst = KernelInstance::make(a, b);
  const SolveReport report = approximate_clust_auto(inst, params);
  std::cout << report_json(report).dump(2) << "\n";
  return 0;
}

int run_oracle(const std::string& matrix_path, const std::string& comparison_path, int identity_k,
               long long limit) {
  const SymMatrix a = load_matrix_checked(matrix_path);
  const SymMatrix b = comparison_matrix(comparison_path, identity_k);
  const KernelInstance inst = KernelInstance::make(a, b);
  const Assignment best = brute_force_clust(inst, limit);
  const json j{{"n", a.dim()},
               {"k", b.dim()},
               {"optimum", best.value},
               {"labels", one_based(best.labels)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_maxcut(const std::string& graph_path) {
  std::ifstream in(graph_path);
  if (!in) throw ParseError("cannot open graph file: " + graph_path);
  int dups = 0;
  const Graph g = parse_edge_list(in, &dups);
  if (dups > 0) std::cerr << "warning: dropped " << dups << " duplicate edge(s)\n";
  const long long cut = maxcut_exact(g);
  const json j{{"n", g.n},
               {"m", static_cast<int>(g.edges.size())},
               {"maxcut", cut},
               {"clust_value", 4 * cut}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_geometry_table(int kmax) {
  const std::vector<double> table = geometry_table(kmax);
  for (int k = 2; k <= kmax; ++k) std::printf("R(%d) = %.10f\n", k, table[k - 2]);
  return 0;
}

int run_propeller(int k, int restarts, double samples, std::uint64_t seed) {
  const PropellerResult result =
      propeller_search(k, restarts, static_cast<long long>(samples), seed);
  json gens = json::array();
  for (const Vec& g : result.best.generators) gens.push_back(g);
  const json j{{"k", k},
               {"restarts", result.restarts},
               {"samples", result.samples},
               {"best_total", result.best_total},
               {"std_error", result.std_error},
               {"search_total", result.search_total},
               {"generators", gens},
               {"note", "heuristic search; values are evidence, not certificates"}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_bench(const std::string& family, int n, int k, double edge_prob, int rank,
              std::uint64_t seed, const PipelineParams& params, long long limit) {
  RandomStream rng = RandomStream::keyed(seed, 0xBE7C4, 0);
  SymMatrix a(1);
  if (family == "laplacian") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < edge_prob) edges.emplace_back(i, j);
    if (edges.empty() && n >= 2) edges.emplace_back(0, 1);
    a = laplacian(Graph::make(n, edges));
  } else if (family == "random") {
    a = random_centered_psd(n, rank > 0 ? std::min(rank, n) : n, rng);
  } else {
    throw InvalidArgumentError("bench: family must be laplacian or random");
  }
  SymMatrix b(k);
  for (int i = 0; i < k; ++i) b.set(i, i, 1.0);

  const auto t0 = std::chrono::steady_clock::now();
  const KernelInstance inst = KernelInstance::make(a, b);
  const SolveReport report = approximate_clust_auto(inst, params);
  const auto t1 = std::chrono::steady_clock::now();

  json j = report_json(report);
  j["family"] = family;
  j["seed"] = seed;
  j["solve_seconds"] = std::chrono::duration<double>(t1 - t0).count();
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos *= k;
  if (combos <= static_cast<double>(limit)) {
    const auto t2 = std::chrono::steady_clock::now();
    const Assignment opt = brute_force_clust(inst, limit);
    const auto t3 = std::chrono::steady_clock::now();
    j["oracle_value"] = opt.value;
    j["oracle_seconds"] = std::chrono::duration<double>(t3 - t2).count();
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel clustering: relaxation-and-rounding solver, exact oracle, and "
               "Gaussian partition geometry"};
  app.require_subcommand(1);

  std::string matrix_path;
  std::string comparison_path;
  std::string graph_path;
  std::string family = "laplacian";
  int identity_k = 0;
  int kmax = 25;
  int k = 4;
  int n = 10;
  int restarts = 50;
  int rank = 0;
  double samples = 1e6;
  double edge_prob = 0.5;
  long long limit = 10'000'000;
  std::uint64_t seed = 12345;
  PipelineParams params;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--trials", params.trials, "rounding trials")->capture_default_str();
    cmd->add_option("--seed", params.solver.seed, "random seed")->capture_default_str();
    cmd->add_option("--restarts", params.solver.restarts, "ascent restarts")
        ->capture_default_str();
    cmd->add_option("--max-sweeps", params.solver.max_sweeps, "ascent sweep cap")
        ->capture_default_str();
    cmd->add_option("--rel-tol", params.solver.rel_tol, "ascent convergence tolerance")
        ->capture_default_str();
    cmd->add_option("--enable-s", params.extra_s, "extra rounding subset sizes (s >= 4)");
  };

  CLI::App* solve = app.add_subcommand("solve", "approximate a clustering instance");
  solve->add_option("--matrix", matrix_path, "kernel matrix file")->required();
  solve->add_option("--comparison", comparison_path, "comparison matrix file");
  solve->add_option("--identity", identity_k, "use the k x k identity comparison");
  add_solver_flags(solve);

  CLI::App* oracle = app.add_subcommand("oracle", "exact optimum by enumeration");
  oracle->add_option("--matrix", matrix_path, "kernel matrix file")->required();
  oracle->add_option("--comparison", comparison_path, "comparison matrix file");
  oracle->add_option("--identity", identity_k, "use the k x k identity comparison");
  oracle->add_option("--limit", limit, "max number of assignments")->capture_default_str();

  CLI::App* maxcut = app.add_subcommand("maxcut", "exact MaxCut of an edge-list graph");
  maxcut->add_option("--graph", graph_path, "edge list file (\"n m\" then \"i j\" lines)")
      ->required();

  CLI::App* table = app.add_subcommand("geometry-table", "print the R(k) constant table");
  table->add_option("--kmax", kmax, "largest k")->capture_default_str();

  CLI::App* prop = app.add_subcommand("propeller-search",
                                      "search simplicial conical partitions for the largest "
                                      "sum of squared Gaussian moments");
  prop->add_option("--k", k, "number of cells")->capture_default_str();
  prop->add_option("--restarts", restarts, "random restarts")->capture_default_str();
  prop->add_option("--samples", samples, "Monte Carlo samples for the final value")
      ->capture_default_str();
  prop->add_option("--seed", seed, "random seed")->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "generate a random instance and solve it");
  bench->add_option("--family", family, "laplacian | random")->capture_default_str();
  bench->add_option("--n", n, "kernel size")->capture_default_str();
  bench->add_option("--k", k, "comparison size (identity)")->capture_default_str();
  bench->add_option("--edge-prob", edge_prob, "edge probability (laplacian family)")
      ->capture_default_str();
  bench->add_option("--rank", rank, "Gram rank (random family; 0 = full)")
      ->capture_default_str();
  bench->add_option("--limit", limit, "oracle enumeration limit")->capture_default_str();
  add_solver_flags(bench);
  bench->add_option("--bench-seed", seed, "instance seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (comparison_path.empty() == (identity_k == 0))
        throw InvalidArgumentError("solve: pass exactly one of --comparison or --identity");
      return run_solve(matrix_path, comparison_path, identity_k, params);
    }
    if (oracle->parsed()) {
      if (comparison_path.empty() == (identity_k == 0))
        throw InvalidArgumentError("oracle: pass exactly one of --comparison or --identity");
      return run_oracle(matrix_path, comparison_path, identity_k, limit);
    }
    if (maxcut->parsed()) return run_maxcut(graph_path);
    if (table->parsed()) return run_geometry_table(kmax);
    if (prop->parsed()) return run_propeller(k, restarts, samples, seed);
    if (bench->parsed()) return run_bench(family, n, k, edge_prob, rank, seed, params, limit);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
