#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tprod/chernoff.hpp"
#include "tprod/expander.hpp"
#include "tprod/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* env = std::getenv("TCHERNOFF_SEED");
  if (!env || !*env) return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw std::invalid_argument("TCHERNOFF_SEED: not an unsigned integer");
  }
}

void load_config_file(const std::string& path, tprod::ExperimentConfig& cfg,
                      std::string& csv_path, std::string& json_path, bool& seed_from_file) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  const auto fetch = [&](const char* key, auto& slot) {
    if (!j.contains(key)) return;
    try {
      slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string("config: bad value for field '") + key + "'");
    }
  };
  fetch("graph", cfg.graph);
  fetch("m", cfg.m);
  fetch("p", cfg.p);
  fetch("r", cfg.r);
  fetch("centered", cfg.centered);
  fetch("poly", cfg.poly.a);
  fetch("s", cfg.poly.s);
  fetch("kappa", cfg.kappa);
  fetch("k", cfg.k);
  fetch("C", cfg.C);
  fetch("sigma", cfg.sigma);
  fetch("theta", cfg.theta_list);
  fetch("trials", cfg.trials);
  fetch("threads", cfg.threads);
  fetch("csv", csv_path);
  fetch("json", json_path);
  if (j.contains("seed")) {
    fetch("seed", cfg.master_seed);
    seed_from_file = true;
  }
  for (const auto& item : j.items()) {
    static const std::vector<std::string> known = {
        "graph", "m",     "p",     "r",      "centered", "poly", "s",    "kappa",
        "k",     "C",     "sigma", "theta",  "trials",   "seed", "threads", "csv",
        "json"};
    bool found = false;
    for (const std::string& k : known)
      if (item.key() == k) found = true;
    if (!found) throw std::invalid_argument("config: unknown field '" + item.key() + "'");
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << body;
}

std::string sci(double v) {
  char buf[40];
  if (std::isfinite(v)) {
    std::snprintf(buf, sizeof buf, "%.8e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%s", v > 0 ? "inf" : (v < 0 ? "-inf" : "nan"));
  }
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-product tensor concentration toolkit"};
  app.require_subcommand(1);

  // ---- verify ----
  std::string verify_suite_name = "all";
  std::uint64_t verify_seed = 0;
  bool verify_seed_set = false;
  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("suite", verify_suite_name,
                     "core|spectral|majorization|expander|chernoff|all");
  verify->add_option("--seed", verify_seed, "suite master seed")
      ->each([&](const std::string&) { verify_seed_set = true; });

  // ---- experiment ----
  std::string config_path, exp_csv = "tail.csv", exp_json = "tail.json";
  tprod::ExperimentConfig cfg;
  std::uint64_t exp_seed = 0;
  CLI::App* experiment = app.add_subcommand("experiment", "Monte Carlo tail vs bound");
  experiment->add_option("--config", config_path, "JSON config file");
  auto* f_graph = experiment->add_option("--graph", cfg.graph, "graph spec");
  auto* f_m = experiment->add_option("--m", cfg.m, "tensor rows");
  auto* f_p = experiment->add_option("--p", cfg.p, "tensor depth");
  auto* f_r = experiment->add_option("--r", cfg.r, "norm cap");
  auto* f_centered = experiment->add_flag("--centered", cfg.centered, "center the assignment");
  auto* f_poly = experiment->add_option("--poly", cfg.poly.a, "coefficients a0,a1,...")->delimiter(',');
  auto* f_s = experiment->add_option("--s", cfg.poly.s, "outer power");
  auto* f_kappa = experiment->add_option("--kappa", cfg.kappa, "walk length");
  auto* f_k = experiment->add_option("--k", cfg.k, "Ky Fan index");
  auto* f_C = experiment->add_option("--C", cfg.C, "domination constant (<=0: fit)");
  auto* f_sigma = experiment->add_option("--sigma", cfg.sigma, "domination width");
  auto* f_theta = experiment->add_option("--theta", cfg.theta_list, "threshold list")->delimiter(',');
  auto* f_trials = experiment->add_option("--trials", cfg.trials, "Monte Carlo trials");
  auto* f_seed = experiment->add_option("--seed", exp_seed, "master seed");
  auto* f_threads = experiment->add_option("--threads", cfg.threads, "worker threads");
  auto* f_csv = experiment->add_option("--csv", exp_csv, "CSV output path");
  auto* f_json = experiment->add_option("--json", exp_json, "JSON output path");

  // ---- bound ----
  tprod::BoundParams bparams;
  int b_m = 2, b_p = 2;
  double b_r = 1.0, b_lambda = 0.5;
  bool b_corollary = false;
  CLI::App* bound = app.add_subcommand("bound", "evaluate the minimized tail bound");
  bound->add_option("--theta", bparams.theta_list, "threshold list")->required()->delimiter(',');
  bound->add_option("--kappa", bparams.kappa, "walk length");
  bound->add_option("--k", bparams.k, "Ky Fan index");
  bound->add_option("--poly", bparams.poly.a, "coefficients a0,a1,...")->delimiter(',');
  bound->add_option("--s", bparams.poly.s, "outer power");
  bound->add_option("--C", bparams.C, "domination constant");
  bound->add_option("--sigma", bparams.sigma, "domination width");
  bound->add_option("--lambda", b_lambda, "graph second eigenvalue");
  bound->add_option("--m", b_m, "tensor rows");
  bound->add_option("--p", b_p, "tensor depth");
  bound->add_option("--r", b_r, "norm cap");
  bound->add_flag("--corollary", b_corollary, "append closed-form columns");

  // ---- graph gen ----
  std::string g_spec = "complete:5", g_out;
  CLI::App* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  CLI::App* graph_gen = graph->add_subcommand("gen", "generate and serialize a graph");
  graph_gen->add_option("--graph", g_spec, "graph spec");
  graph_gen->add_option("--out", g_out, "output path (default stdout)");

  // ---- moment ----
  std::string mo_graph = "complete:3";
  int mo_m = 2, mo_p = 2, mo_kappa = 3;
  double mo_t = 0.1, mo_a = 1.0, mo_b = 0.0, mo_r = 0.5;
  std::uint64_t mo_seed = 0;
  bool mo_seed_set = false;
  CLI::App* moment = app.add_subcommand("moment", "enumerated vs transfer-operator moment");
  moment->add_option("--graph", mo_graph, "graph spec");
  moment->add_option("--m", mo_m, "tensor rows");
  moment->add_option("--p", mo_p, "tensor depth");
  moment->add_option("--t", mo_t, "exponent scale");
  moment->add_option("--a", mo_a, "real part weight");
  moment->add_option("--b", mo_b, "imaginary part weight");
  moment->add_option("--kappa", mo_kappa, "walk length");
  moment->add_option("--r", mo_r, "norm cap");
  moment->add_option("--seed", mo_seed, "assignment seed")
      ->each([&](const std::string&) { mo_seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      const std::uint64_t seed = verify_seed_set ? verify_seed : env_seed(1);
      const std::vector<tprod::VerifyResult> results =
          tprod::verify_suite(verify_suite_name, seed);
      std::cout << tprod::verify_json(verify_suite_name, results);
      return tprod::all_pass(results) ? kExitOk : kExitAssertion;
    }

    if (*experiment) {
      bool seed_from_file = false;
      tprod::ExperimentConfig file_cfg;
      std::string file_csv = exp_csv, file_json = exp_json;
      if (!config_path.empty())
        load_config_file(config_path, file_cfg, file_csv, file_json, seed_from_file);
      // precedence: command-line flag > config file > environment > default
      tprod::ExperimentConfig merged = file_cfg;
      if (*f_graph) merged.graph = cfg.graph;
      if (*f_m) merged.m = cfg.m;
      if (*f_p) merged.p = cfg.p;
      if (*f_r) merged.r = cfg.r;
      if (*f_centered) merged.centered = cfg.centered;
      if (*f_poly) merged.poly.a = cfg.poly.a;
      if (*f_s) merged.poly.s = cfg.poly.s;
      if (*f_kappa) merged.kappa = cfg.kappa;
      if (*f_k) merged.k = cfg.k;
      if (*f_C) merged.C = cfg.C;
      if (*f_sigma) merged.sigma = cfg.sigma;
      if (*f_theta) merged.theta_list = cfg.theta_list;
      if (*f_trials) merged.trials = cfg.trials;
      if (*f_threads) merged.threads = cfg.threads;
      if (*f_seed)
        merged.master_seed = exp_seed;
      else if (!seed_from_file)
        merged.master_seed = env_seed(merged.master_seed);
      const std::string csv_path = *f_csv ? exp_csv : file_csv;
      const std::string json_path = *f_json ? exp_json : file_json;

      const tprod::ExperimentResult result = tprod::run_experiment(merged);
      write_file(csv_path, result.report.csv());
      write_file(json_path, result.report.json());
      std::cout << result.summary << "\n";
      return result.tail_within_bound ? kExitOk : kExitAssertion;
    }

    if (*bound) {
      bparams.lambda_bar = 1.0 - b_lambda;
      std::sort(bparams.theta_list.begin(), bparams.theta_list.end());
      const std::vector<tprod::BoundResult> rows =
          tprod::main_bound(bparams, b_m, b_p, b_r);
      std::cout << (b_corollary ? "theta,bound,t_star,corollary_printed,corollary_derived"
                                : "theta,bound,t_star")
                << "\n";
      for (const tprod::BoundResult& row : rows) {
        std::cout << sci(row.theta) << ',' << sci(row.value) << ',' << sci(row.t_star);
        if (b_corollary) {
          const tprod::CorollaryResult cor =
              tprod::corollary_bound(row.theta, bparams, b_m, b_p, b_r);
          std::cout << ',' << sci(cor.value_printed) << ',' << sci(cor.value_derived);
        }
        std::cout << "\n";
      }
      return kExitOk;
    }

    if (*graph) {
      const tprod::RegularGraph g = tprod::parse_graph_spec(g_spec);
      std::ostringstream body;
      tprod::write_graph(body, g);
      if (g_out.empty()) {
        std::cout << body.str();
      } else {
        write_file(g_out, body.str());
        std::cout << "n=" << g.n << " d=" << g.d << " lambda=" << g.lambda << "\n";
      }
      return kExitOk;
    }

    if (*moment) {
      const tprod::RegularGraph g = tprod::parse_graph_spec(mo_graph);
      const std::uint64_t seed = mo_seed_set ? mo_seed : env_seed(1);
      const tprod::TensorAssignment asg =
          tprod::random_assignment(g, mo_m, mo_p, mo_r, false, seed);
      const tprod::MomentOperator op =
          tprod::make_moment_operator(g, asg, mo_t, mo_a, mo_b);
      const double exact = tprod::moment_exact(op, mo_kappa);
      const double transfer = tprod::moment_transfer(op, mo_kappa);
      const bool valid = tprod::lemma43_validity(mo_t, mo_a, mo_b, asg.r, g.lambda);
      const double bound43 =
          tprod::lemma43_bound(mo_t, mo_a, mo_b, asg.r, g.lambda, mo_kappa, mo_m, mo_p);
      char line[256];
      std::snprintf(line, sizeof line,
                    "n=%d d=%d lambda=%.12g m=%d p=%d kappa=%d t=%.12g a=%.12g b=%.12g "
                    "r=%.12g\n",
                    g.n, g.d, g.lambda, mo_m, mo_p, mo_kappa, mo_t, mo_a, mo_b, asg.r);
      std::cout << line;
      std::snprintf(line, sizeof line, "moment_exact=%.12g\n", exact);
      std::cout << line;
      std::snprintf(line, sizeof line, "moment_transfer=%.12g\n", transfer);
      std::cout << line;
      std::snprintf(line, sizeof line, "relative_gap=%.3g\n",
                    std::abs(exact - transfer) / std::max(1.0, std::abs(exact)));
      std::cout << line;
      std::cout << "bound_valid=" << (valid ? "true" : "false") << "\n";
      std::snprintf(line, sizeof line, "trace_moment_bound=%.12g\n", bound43);
      std::cout << line;
      if (valid && exact > bound43) return kExitAssertion;
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
