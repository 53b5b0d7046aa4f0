#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ica/estimators.hpp"
#include "ica/model.hpp"
#include "ica/sources.hpp"

namespace ica {

enum class Method { Fobi, FastIca };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct SimulationConfig {
  std::vector<SourceSpec> sources;  // extraction order for fastICA
  Matrix mixing;                    // empty means identity
  Method method = Method::Fobi;
  FastIcaConfig fastica_cfg;
  std::vector<int> sample_sizes;
  int replications = 1;
  std::uint64_t master_seed = 0;
  int threads = 0;                  // 0: hardware concurrency
  std::string method_label;         // defaults to method/nonlinearity name
  std::string order_label = "-";
};

struct SimulationRow {
  std::string method;
  std::string order;
  int n = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  double md = 0.0;
  double npd2 = 0.0;
  bool converged = true;  // false also flags an estimator failure
  bool failed = false;
};

using SimulationResult = std::vector<SimulationRow>;

// n iid draws from one source; stream fully determined by the seed.
std::vector<double> sample_source(const SourceSpec& spec, int n, std::uint64_t seed);

// n x p latent matrix Z; column j uses the j-th source, one shared stream.
Matrix sample_sources(const std::vector<SourceSpec>& sources, int n, std::uint64_t seed);

// For each (sample size, replication): Z ~ sources, X = Z * Omega^T, estimate,
// record D = md_index(Gamma * Omega) and n(p-1)D^2. Replication r at size
// index s uses stream seed mix64(master_seed, s, r); rows come back in
// (size, replication) order regardless of thread count. Estimator failures
// are flagged, never fatal.
SimulationResult run_study(const SimulationConfig& cfg);

struct SummaryRow {
  std::string method;
  std::string order;
  int n = 0;
  double mean_npd2 = 0.0, median_npd2 = 0.0, q1 = 0.0, q3 = 0.0;
  int fail_count = 0;
};

// Per-(method, order, n) mean/median/quartiles of n(p-1)D^2; failed rows are
// counted separately and excluded from the statistics.
std::vector<SummaryRow> summarize(const SimulationResult& result);

// Results CSV: method,order,n,rep,seed,md,npd2,converged
void write_results_csv(const SimulationResult& result, const std::string& path);
std::string results_csv_string(const SimulationResult& result);

// Summary CSV: method,order,n,mean_npd2,median_npd2,q1,q3,fail_count
void write_summary_csv(const std::vector<SummaryRow>& summary, const std::string& path);

}  // namespace ica
