#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "archegraph/error.hpp"
#include "archegraph/experiments.hpp"
#include "archegraph/json_io.hpp"
#include "archegraph/matching.hpp"
#include "archegraph/pencil.hpp"
#include "archegraph/simquery.hpp"
#include "archegraph/spectral.hpp"
#include "archegraph/synth.hpp"

using namespace archegraph;

namespace {

constexpr int kExitCriterion = 1;
constexpr int kExitInput = 2;

// Writes to the named file, or stdout for "" or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_json(const std::string& path, const Json& j) { Output(path).stream() << j.dump(2) << '\n'; }

// CSV payload preceded by the header as a single comment line.
void write_csv(const std::string& path, const Json& header, const std::string& csv) {
  Output out(path);
  out.stream() << "# " << header.dump() << '\n' << csv;
}

Graph load_graph(const std::string& path) {
  LoadReport rep;
  Graph g = load_edge_list_file(path, &rep);
  if (rep.self_loops_dropped || rep.duplicates_dropped) {
    std::cerr << path << ": dropped " << rep.self_loops_dropped << " self-loops and "
              << rep.duplicates_dropped << " duplicate edges\n";
  }
  return g;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("ARCHEGRAPH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"Vertex similarity by simplex fitting and graph similarity by Laplacian pencils"};
  app.require_subcommand(1);
  int exit_code = 0;

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Spectral embedding of a graph");
  std::string graph_a, graph_b, out_path;
  int k = 2;
  bool largest = false;
  embed_cmd->add_option("graph", graph_a, "Edge-list file")->required();
  embed_cmd->add_option("-k,--k", k, "Embedding dimension");
  embed_cmd->add_flag("--largest-component", largest, "Embed the largest connected component");
  embed_cmd->add_option("-o,--output", out_path, "Output JSON file (default stdout)");
  embed_cmd->callback([&] {
    Graph g = load_graph(graph_a);
    if (largest) g = largest_component(g);
    const Embedding e = embed(g, k);
    Json j;
    j["header"] = run_header("embed", {{"graph", graph_a}, {"k", k}, {"largest_component", largest}});
    j["embedding"] = to_json(e);
    write_json(out_path, j);
  });

  // vertexsim
  auto* vs_cmd = app.add_subcommand("vertexsim", "Embed, fit a minimum-volume simplex, dump mixtures");
  double gamma = 1.0;
  int max_iters = FitOptions{}.max_iters;
  vs_cmd->add_option("graph", graph_a, "Edge-list file")->required();
  vs_cmd->add_option("-k,--k", k, "Embedding dimension");
  vs_cmd->add_option("--gamma", gamma, "Volume weight");
  vs_cmd->add_option("--max-iters", max_iters, "Fit iteration cap");
  vs_cmd->add_flag("--largest-component", largest, "Use the largest connected component");
  vs_cmd->add_option("-o,--output", out_path, "Output fit JSON (default stdout)");
  vs_cmd->callback([&] {
    Graph g = load_graph(graph_a);
    if (largest) g = largest_component(g);
    const Embedding e = embed(g, k);
    FitOptions opts;
    opts.max_iters = max_iters;
    const SimplexFit fit = fit_min_volume_simplex(e.coords, gamma, opts);
    Json j;
    j["header"] = run_header("vertexsim", {{"graph", graph_a}, {"k", k}, {"gamma", gamma},
                                           {"max_iters", max_iters}, {"largest_component", largest}});
    j["fit"] = fit_to_json(fit, e.vertices, gamma);
    write_json(out_path, j);
  });

  // query
  auto* q_cmd = app.add_subcommand("query", "Most similar or dissimilar vertices from a fit file");
  std::string fit_path, vertex, mode = "similar";
  long t = 5;
  q_cmd->add_option("fit", fit_path, "Fit JSON written by vertexsim")->required();
  q_cmd->add_option("-v,--vertex", vertex, "Query vertex label")->required();
  q_cmd->add_option("-t,--t", t, "Number of results");
  q_cmd->add_option("--mode", mode, "similar or dissimilar")->check(CLI::IsMember({"similar", "dissimilar"}));
  q_cmd->add_option("-o,--output", out_path, "Output CSV (default stdout)");
  q_cmd->callback([&] {
    std::ifstream in(fit_path);
    if (!in) throw InputError("cannot open " + fit_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InputError(fit_path + ": " + e.what());
    }
    const LabeledMixture lm = mixture_from_fit_json(j.contains("fit") ? j["fit"] : j);
    Eigen::Index v = -1;
    for (std::size_t i = 0; i < lm.labels.size(); ++i) {
      if (lm.labels[i] == vertex) v = static_cast<Eigen::Index>(i);
    }
    if (v < 0) throw InputError("unknown vertex '" + vertex + "'");
    const SimilarityIndex index(lm.table);
    const auto res = mode == "similar" ? index.most_similar(v, t) : index.most_dissimilar(v, t);
    std::ostringstream csv;
    write_neighbors_csv(csv, res, lm.labels);
    write_csv(out_path, run_header("query", {{"fit", fit_path}, {"vertex", vertex}, {"t", t}, {"mode", mode}}),
              csv.str());
  });

  // kappa
  auto* k_cmd = app.add_subcommand("kappa", "Generalized condition number of two Laplacians");
  std::string method = "exact";
  double epsilon = 0.01;
  k_cmd->add_option("graph_a", graph_a)->required();
  k_cmd->add_option("graph_b", graph_b)->required();
  k_cmd->add_option("--method", method, "exact or shifted")->check(CLI::IsMember({"exact", "shifted"}));
  k_cmd->add_option("--epsilon", epsilon, "Shift for the shifted method");
  k_cmd->add_option("-o,--output", out_path);
  k_cmd->callback([&] {
    const auto la = laplacian(load_graph(graph_a));
    const auto lb = laplacian(load_graph(graph_b));
    const KappaResult r = method == "exact" ? kappa(la, lb) : kappa_shifted(la, lb, epsilon);
    Json j;
    Json params{{"graph_a", graph_a}, {"graph_b", graph_b}, {"method", method}};
    if (method == "shifted") params["epsilon"] = epsilon;
    j["header"] = run_header("kappa", params);
    j["result"] = to_json(r);
    write_json(out_path, j);
  });

  // match
  auto* m_cmd = app.add_subcommand("match", "Greedy transposition descent on the condition number");
  int q = 200;
  double tol = 0.0;
  std::string init_path;
  m_cmd->add_option("graph_a", graph_a)->required();
  m_cmd->add_option("graph_b", graph_b)->required();
  m_cmd->add_option("-q,--q", q, "Maximum iterations");
  m_cmd->add_option("--epsilon", tol, "Minimum accepted improvement");
  m_cmd->add_option("--init", init_path, "Initial alignment file, lines 'i j'");
  m_cmd->add_option("-o,--output", out_path);
  m_cmd->callback([&] {
    const Graph ga = load_graph(graph_a);
    const Graph gb = load_graph(graph_b);
    Permutation sigma0;
    if (!init_path.empty()) sigma0 = parse_alignment_file(init_path, ga, gb);
    DescentOptions opts;
    opts.max_iters = q;
    opts.tolerance = tol;
    const MatchResult r = cond_sim_grad_descent(laplacian(ga).entries, laplacian(gb).entries, opts, sigma0);
    Json j;
    j["header"] = run_header("match", {{"graph_a", graph_a}, {"graph_b", graph_b}, {"q", q},
                                       {"epsilon", tol}, {"init", init_path}});
    j["result"] = to_json(r);
    write_json(out_path, j);
  });

  // metropolis
  auto* mc_cmd = app.add_subcommand("metropolis", "Metropolis chain over vertex alignments");
  double lambda = 10.0;
  int steps = 1000;
  std::uint64_t seed = 1;
  mc_cmd->add_option("graph_a", graph_a)->required();
  mc_cmd->add_option("graph_b", graph_b)->required();
  mc_cmd->add_option("--lambda", lambda, "Base of the acceptance rule, >= 1");
  mc_cmd->add_option("--steps", steps);
  mc_cmd->add_option("--seed", seed);
  mc_cmd->add_option("-o,--output", out_path, "Samples CSV (default stdout)");
  mc_cmd->callback([&] {
    const auto la = laplacian(load_graph(graph_a)).entries;
    const auto lb = laplacian(load_graph(graph_b)).entries;
    const auto samples = metropolis_chain(la, lb, lambda, steps, seed);
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,accepted,f_value,sigma\n";
    for (const auto& s : samples) {
      csv << s.step_index << ',' << (s.accepted ? 1 : 0) << ',' << s.f_value << ',';
      for (std::size_t i = 0; i < s.sigma.size(); ++i) csv << (i ? " " : "") << s.sigma(i);
      csv << '\n';
    }
    write_csv(out_path, run_header("metropolis", {{"graph_a", graph_a}, {"graph_b", graph_b},
                                                  {"lambda", lambda}, {"steps", steps}, {"seed", seed}}),
              csv.str());
  });

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Synthetic inputs");
  gen_cmd->require_subcommand(1);
  std::string prefix = "out";
  int n = 8, cycles = 1, points = 1000, levels = 3, attempts = -1;
  double p = 0.5, alpha = 0.8, p0 = 0.1, sigma = 0.01;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", seed);
    c->add_option("-o,--output", prefix, "Output path prefix");
  };
  auto sidecar = [&](const std::string& cmd, Json params, Json extra = Json::object()) {
    params["seed"] = seed;
    Json j;
    j["header"] = run_header(cmd, params);
    for (auto& [key, value] : extra.items()) j[key] = value;
    write_json(prefix + ".json", j);
  };
  auto write_graph = [&](const Graph& g) {
    Output out(prefix + ".edges");
    write_edge_list(out.stream(), g);
  };

  auto* er_cmd = gen_cmd->add_subcommand("er", "Erdos-Renyi G(n, p)");
  er_cmd->add_option("--n", n);
  er_cmd->add_option("--p", p);
  add_common(er_cmd);
  er_cmd->callback([&] {
    write_graph(gen_er(n, p, seed));
    sidecar("gen er", {{"n", n}, {"p", p}});
  });

  auto* rmat_cmd = gen_cmd->add_subcommand("rmat", "R-MAT graph");
  RmatParams rp;
  rmat_cmd->add_option("--levels", levels, "n = 2^levels");
  rmat_cmd->add_option("--edges", attempts, "Edge attempts (default 8 n)");
  rmat_cmd->add_option("--a", rp.a);
  rmat_cmd->add_option("--b", rp.b);
  rmat_cmd->add_option("--c", rp.c);
  rmat_cmd->add_option("--d", rp.d);
  add_common(rmat_cmd);
  rmat_cmd->callback([&] {
    rp.levels = levels;
    rp.edge_attempts = attempts;
    write_graph(gen_rmat(rp, seed));
    sidecar("gen rmat", {{"levels", levels}, {"edge_attempts", attempts}, {"a", rp.a}, {"b", rp.b},
                         {"c", rp.c}, {"d", rp.d}});
  });

  auto* st_cmd = gen_cmd->add_subcommand("stratified", "Age-stratified network");
  st_cmd->add_option("--n", n);
  st_cmd->add_option("--alpha", alpha);
  st_cmd->add_option("--p0", p0);
  add_common(st_cmd);
  st_cmd->callback([&] {
    StratifiedParams sp;
    sp.n = n;
    sp.alpha = alpha;
    sp.p0 = p0;
    const StratifiedGraph sg = gen_stratified(sp, seed);
    write_graph(sg.graph);
    sidecar("gen stratified", {{"n", n}, {"alpha", alpha}, {"p0", p0}}, {{"ages", sg.ages}});
  });

  auto* cloud_cmd = gen_cmd->add_subcommand("cloud", "Noisy point cloud in a random simplex");
  cloud_cmd->add_option("-k,--k", k);
  cloud_cmd->add_option("--points", points);
  cloud_cmd->add_option("--sigma", sigma);
  add_common(cloud_cmd);
  cloud_cmd->callback([&] {
    const SimplexCloud c = gen_simplex_cloud(k, points, sigma, seed);
    auto dump = [](const std::string& path, const Eigen::MatrixXd& m) {
      Output out(path);
      out.stream().precision(17);
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index col = 0; col < m.cols(); ++col) out.stream() << (col ? "," : "") << m(r, col);
        out.stream() << '\n';
      }
    };
    dump(prefix + ".points.csv", c.points);
    dump(prefix + ".simplex.csv", c.true_simplex.vertices().transpose());
    sidecar("gen cloud", {{"k", k}, {"points", points}, {"sigma", sigma}});
  });

  auto* perm_cmd = gen_cmd->add_subcommand("perm", "Uniform permutation with a given cycle count");
  perm_cmd->add_option("--n", n);
  perm_cmd->add_option("--cycles", cycles);
  add_common(perm_cmd);
  perm_cmd->callback([&] {
    const Permutation s = random_permutation_k_cycles(n, cycles, seed);
    Output out(prefix + ".perm");
    for (std::size_t i = 0; i < s.size(); ++i) out.stream() << i << ' ' << s(i) << '\n';
    sidecar("gen perm", {{"n", n}, {"cycles", cycles}}, {{"sigma", to_json(s)}});
  });

  // experiment
  auto* ex_cmd = app.add_subcommand("experiment", "Run a reproduction experiment end to end");
  std::string name, table_path, football;
  std::string type = "er";
  ex_cmd->add_option("name", name)
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "table2", "shift-accuracy", "cospectral"}));
  ex_cmd->add_option("--seed", seed, "Master seed");
  ex_cmd->add_option("--sigma", sigma, "fig3 noise level");
  ex_cmd->add_option("--gamma", gamma, "Volume weight (fig3 default 10, fig4 default 1)");
  ex_cmd->add_option("--n", n, "table2 graph order");
  ex_cmd->add_option("--type", type, "table2 generator: er or rmat");
  ex_cmd->add_option("--football", football, "Edge list added as a permuted pair in shift-accuracy");
  ex_cmd->add_option("-o,--output", out_path, "Report JSON (default stdout)");
  ex_cmd->add_option("--table", table_path, "Plot-ready CSV");
  ex_cmd->callback([&] {
    ExperimentReport r;
    Json params{{"name", name}, {"seed", seed}};
    if (name == "fig3") {
      Fig3Params fp;
      fp.seed = seed;
      if (ex_cmd->count("--sigma")) fp.sigma = sigma;
      if (ex_cmd->count("--gamma")) fp.gamma = gamma;
      params["sigma"] = fp.sigma;
      params["gamma"] = fp.gamma;
      r = run_fig3(fp);
    } else if (name == "fig4") {
      Fig4Params fp;
      fp.seed = seed;
      if (ex_cmd->count("--gamma")) fp.gamma = gamma;
      params["gamma"] = fp.gamma;
      r = run_fig4(fp);
    } else if (name == "table2") {
      Table2Params tp;
      tp.seed = seed;
      tp.type = type;
      if (ex_cmd->count("--n")) tp.n = n;
      params["n"] = tp.n;
      params["type"] = tp.type;
      r = run_table2(tp);
    } else if (name == "shift-accuracy") {
      ShiftParams sp;
      sp.seed = seed;
      if (!football.empty()) sp.football_path = football;
      params["football"] = football;
      r = run_shift_accuracy(sp);
    } else {
      r = run_cospectral();
    }
    const Json header = run_header("experiment", params);
    Json j;
    j["header"] = header;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["summary"] = r.summary;
    j["details"] = r.details;
    write_json(out_path, j);
    if (!table_path.empty()) write_csv(table_path, header, r.table);
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.summary << '\n';
    if (!r.passed) exit_code = kExitCriterion;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return exit_code;
}
