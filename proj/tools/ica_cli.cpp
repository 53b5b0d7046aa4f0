#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ica/asymptotics.hpp"
#include "ica/csv.hpp"
#include "ica/estimators.hpp"
#include "ica/indices.hpp"
#include "ica/model.hpp"
#include "ica/rng.hpp"
#include "ica/simulate.hpp"

namespace {

using nlohmann::json;

// exit codes: 0 success, 1 usage/validation, 2 runtime/numerical failure
constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

int cmd_estimate(const std::string& input, const std::string& method,
                 const std::string& g, const std::string& init,
                 std::uint64_t seed, double tol, int max_iter,
                 const std::string& out) {
  if (method == "fobi" && !g.empty()) {
    std::cerr << "error: --g only applies to --method fastica\n";
    return kUsageError;
  }
  ica::Matrix x;
  try {
    x = ica::read_matrix_csv(input);
    ica::check_data(x);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  try {
    json meta;
    ica::Matrix gamma;
    if (method == "fobi") {
      const ica::FobiResult r = ica::fobi(x);
      gamma = r.gamma;
      meta["method"] = "fobi";
      meta["lambdas"] = std::vector<double>(r.lambdas.data(),
                                            r.lambdas.data() + r.lambdas.size());
      meta["eigenvalue_ties"] = r.eigenvalue_ties;
    } else {
      ica::FastIcaConfig cfg;
      cfg.nonlinearity = ica::parse_nonlinearity(g.empty() ? "tanh" : g);
      cfg.tol = tol;
      cfg.max_iter = max_iter;
      cfg.seed = seed;
      if (init == "identity" || init.empty()) {
        cfg.init = ica::FastIcaConfig::Init::Identity;
      } else if (init == "random") {
        cfg.init = ica::FastIcaConfig::Init::RandomOrthogonal;
      } else {
        cfg.init = ica::FastIcaConfig::Init::Given;
        cfg.init_matrix = ica::read_matrix_csv(init);
      }
      const ica::FastIcaResult r = ica::fastica_deflation(x, cfg);
      gamma = r.gamma;
      meta["method"] = "fastica";
      meta["nonlinearity"] = ica::nonlinearity_name(cfg.nonlinearity);
      meta["iterations"] = r.iterations;
      meta["converged"] = std::vector<int>(r.converged.begin(), r.converged.end());
    }
    ica::write_matrix_csv(gamma, out);
    std::ofstream side(out + ".json");
    side << meta.dump() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

int cmd_index(const std::string& gain_path, const std::string& metrics_csv,
              const std::string& omega_path, const std::string& gamma_path) {
  std::vector<std::string> metrics;
  {
    std::stringstream ss(metrics_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) metrics.push_back(tok);
  }
  if (metrics.empty()) {
    std::cerr << "error: --metric requires at least one metric\n";
    return kUsageError;
  }
  try {
    ica::Matrix gain, omega, gamma;
    const bool need_gain = std::any_of(metrics.begin(), metrics.end(),
                                       [](const std::string& m) { return m != "gce"; });
    const bool need_gce = std::find(metrics.begin(), metrics.end(), "gce") != metrics.end();
    try {
      if (need_gain) {
        if (gain_path.empty()) {
          std::cerr << "error: --gain required for metrics other than gce\n";
          return kUsageError;
        }
        gain = ica::read_matrix_csv(gain_path);
      }
      if (need_gce) {
        if (omega_path.empty() || gamma_path.empty()) {
          std::cerr << "error: gce requires --omega and --gamma\n";
          return kUsageError;
        }
        omega = ica::read_matrix_csv(omega_path);
        gamma = ica::read_matrix_csv(gamma_path);
      }
    } catch (const std::exception& e) {  // unreadable or malformed input
      std::cerr << "error: " << e.what() << '\n';
      return kUsageError;
    }
    for (const std::string& m : metrics) {
      double v;
      if (m == "md") v = ica::md_index(gain);
      else if (m == "md-col") v = ica::md_index_column_variant(gain);
      else if (m == "amari") v = ica::amari_index(gain);
      else if (m == "isr") v = ica::isr_index(gain);
      else if (m == "gce") v = ica::gce_index(omega, gamma);
      else {
        std::cerr << "error: unknown metric " << m << '\n';
        return kUsageError;
      }
      std::cout << m << ',' << ica::format_double(v) << '\n';
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

int cmd_simulate(const std::string& sources, const std::string& method,
                 const std::string& g, const std::string& mixing_path,
                 const std::string& sizes, int reps, std::uint64_t seed,
                 int threads, const std::string& order_label,
                 const std::string& out, const std::string& summary_out) {
  try {
    ica::SimulationConfig cfg;
    cfg.sources = ica::parse_source_list(sources);
    cfg.method = ica::parse_method(method);
    if (cfg.method == ica::Method::Fobi && !g.empty()) {
      std::cerr << "error: --g only applies to --method fastica\n";
      return kUsageError;
    }
    if (cfg.method == ica::Method::FastIca)
      cfg.fastica_cfg.nonlinearity = ica::parse_nonlinearity(g.empty() ? "tanh" : g);
    if (!mixing_path.empty()) cfg.mixing = ica::read_matrix_csv(mixing_path);
    cfg.sample_sizes = parse_int_list(sizes);
    cfg.replications = reps;
    cfg.master_seed = seed;
    cfg.threads = threads;
    cfg.order_label = order_label;
    const ica::SimulationResult res = ica::run_study(cfg);
    if (out.empty()) std::cout << ica::results_csv_string(res);
    else ica::write_results_csv(res, out);
    if (!summary_out.empty()) ica::write_summary_csv(ica::summarize(res), summary_out);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

int cmd_asymptotics(const std::string& sources, const std::string& method,
                    const std::string& g, const std::string& order) {
  try {
    std::vector<ica::SourceSpec> specs = ica::parse_source_list(sources);
    if (order == "a") std::reverse(specs.begin(), specs.end());
    else if (order != "b" && order != "given") {
      std::cerr << "error: --order must be a, b, or given\n";
      return kUsageError;
    }
    if (method != "fastica") {
      std::cerr << "error: closed-form variances are available for fastica only\n";
      return kUsageError;
    }
    const ica::AsvMatrix asv =
        ica::fastica_asv(specs, ica::parse_nonlinearity(g.empty() ? "tanh" : g));
    for (Eigen::Index i = 0; i < asv.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < asv.values.cols(); ++j) {
        if (j) std::cout << ',';
        std::cout << ica::format_double(asv.values(i, j));
      }
      std::cout << '\n';
    }
    std::cout << "trace," << ica::format_double(ica::offdiag_trace_target(asv)) << '\n';
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

int cmd_bench(const std::string& dims, int count, std::uint64_t seed) {
  try {
    std::cout << "p,seconds\n";
    for (int p : parse_int_list(dims)) {
      ica::Rng rng(ica::mix64(seed, static_cast<std::uint64_t>(p)));
      std::vector<ica::Matrix> mats(count);
      for (auto& m : mats) {
        m.resize(p, p);
        for (int i = 0; i < p; ++i)
          for (int j = 0; j < p; ++j) m(i, j) = rng.normal();
      }
      volatile double sink = 0.0;
      const auto t0 = std::chrono::steady_clock::now();
      for (const auto& m : mats) sink = sink + ica::md_index(m);
      const auto t1 = std::chrono::steady_clock::now();
      const double secs = std::chrono::duration<double>(t1 - t0).count();
      std::cout << p << ',' << ica::format_double(secs) << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ICA unmixing estimators and performance indices"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate an unmixing matrix");
  std::string est_input, est_method, est_g, est_init = "identity", est_out;
  std::uint64_t est_seed = 0;
  double est_tol = 1e-8;
  int est_max_iter = 1000;
  est->add_option("--input", est_input)->required();
  est->add_option("--method", est_method)->required()
      ->check(CLI::IsMember({"fobi", "fastica"}));
  est->add_option("--g", est_g)->check(CLI::IsMember({"pow3", "tanh", "gauss"}));
  est->add_option("--init", est_init);
  est->add_option("--seed", est_seed);
  est->add_option("--tol", est_tol);
  est->add_option("--max-iter", est_max_iter);
  est->add_option("--out", est_out)->required();

  // index
  auto* idx = app.add_subcommand("index", "compute performance indices of a gain matrix");
  std::string idx_gain, idx_metric, idx_omega, idx_gamma;
  idx->add_option("--gain", idx_gain);
  idx->add_option("--metric", idx_metric)->required();
  idx->add_option("--omega", idx_omega);
  idx->add_option("--gamma", idx_gamma);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo study of an estimator");
  std::string sim_sources, sim_method, sim_g, sim_mixing, sim_sizes,
      sim_order = "-", sim_out, sim_summary;
  int sim_reps = 1, sim_threads = 0;
  std::uint64_t sim_seed = 0;
  sim->add_option("--sources", sim_sources)->required();
  sim->add_option("--method", sim_method)->required()
      ->check(CLI::IsMember({"fobi", "fastica"}));
  sim->add_option("--g", sim_g)->check(CLI::IsMember({"pow3", "tanh", "gauss"}));
  sim->add_option("--mixing", sim_mixing);
  sim->add_option("--sizes", sim_sizes)->required();
  sim->add_option("--reps", sim_reps)->required();
  sim->add_option("--seed", sim_seed);
  sim->add_option("--threads", sim_threads);
  sim->add_option("--order-label", sim_order);
  sim->add_option("--out", sim_out);
  sim->add_option("--summary-out", sim_summary);

  // asymptotics
  auto* asy = app.add_subcommand("asymptotics", "closed-form limiting variances");
  std::string asy_sources, asy_method = "fastica", asy_g, asy_order = "given";
  asy->add_option("--sources", asy_sources)->required();
  asy->add_option("--method", asy_method);
  asy->add_option("--g", asy_g)->check(CLI::IsMember({"pow3", "tanh", "gauss"}));
  asy->add_option("--order", asy_order);

  // bench
  auto* ben = app.add_subcommand("bench", "index computation timing");
  std::string ben_dims = "3,5,10,25,50,100";
  int ben_count = 1000;
  std::uint64_t ben_seed = 0;
  ben->add_option("--dims", ben_dims);
  ben->add_option("--count", ben_count);
  ben->add_option("--seed", ben_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  if (est->parsed())
    return cmd_estimate(est_input, est_method, est_g, est_init, est_seed,
                        est_tol, est_max_iter, est_out);
  if (idx->parsed()) return cmd_index(idx_gain, idx_metric, idx_omega, idx_gamma);
  if (sim->parsed())
    return cmd_simulate(sim_sources, sim_method, sim_g, sim_mixing, sim_sizes,
                        sim_reps, sim_seed, sim_threads, sim_order, sim_out,
                        sim_summary);
  if (asy->parsed()) return cmd_asymptotics(asy_sources, asy_method, asy_g, asy_order);
  if (ben->parsed()) return cmd_bench(ben_dims, ben_count, ben_seed);
  return kUsageError;
}
