#include "ica/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ica/csv.hpp"
#include "ica/indices.hpp"
#include "ica/rng.hpp"

namespace ica {

Method parse_method(const std::string& name) {
  if (name == "fobi") return Method::Fobi;
  if (name == "fastica") return Method::FastIca;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
  return m == Method::Fobi ? "fobi" : "fastica";
}

std::vector<double> sample_source(const SourceSpec& spec, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_source: n >= 1 required");
  Rng rng(seed);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = spec.sample(rng);
  return out;
}

Matrix sample_sources(const std::vector<SourceSpec>& sources, int n, std::uint64_t seed) {
  const int p = static_cast<int>(sources.size());
  if (p == 0) throw std::invalid_argument("sample_sources: empty source list");
  Rng rng(seed);
  Matrix z(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) z(i, j) = sources[j].sample(rng);
  return z;
}

namespace {

std::string default_label(const SimulationConfig& cfg) {
  if (!cfg.method_label.empty()) return cfg.method_label;
  if (cfg.method == Method::Fobi) return "fobi";
  return "fastica-" + nonlinearity_name(cfg.fastica_cfg.nonlinearity);
}

SimulationRow run_one(const SimulationConfig& cfg, const std::string& label,
                      int n, int rep, std::uint64_t seed) {
  SimulationRow row;
  row.method = label;
  row.order = cfg.order_label;
  row.n = n;
  row.rep = rep;
  row.seed = seed;
  const int p = static_cast<int>(cfg.sources.size());
  try {
    const Matrix z = sample_sources(cfg.sources, n, seed);
    const bool identity_mix = cfg.mixing.size() == 0;
    const Matrix x = identity_mix ? z : Matrix(z * cfg.mixing.transpose());
    Matrix gamma;
    if (cfg.method == Method::Fobi) {
      gamma = fobi(x).gamma;
    } else {
      const FastIcaResult r = fastica_deflation(x, cfg.fastica_cfg);
      gamma = r.gamma;
      row.converged = std::all_of(r.converged.begin(), r.converged.end(),
                                  [](bool b) { return b; });
    }
    const Matrix g = identity_mix ? gamma : Matrix(gamma * cfg.mixing);
    row.md = md_index(g);
    row.npd2 = static_cast<double>(n) * (p - 1) * row.md * row.md;
  } catch (const std::exception&) {
    row.failed = true;
    row.converged = false;
    row.md = std::numeric_limits<double>::quiet_NaN();
    row.npd2 = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

SimulationResult run_study(const SimulationConfig& cfg) {
  if (cfg.sources.size() < 2 || cfg.replications < 1 || cfg.sample_sizes.empty())
    throw std::invalid_argument("run_study: invalid configuration");
  if (cfg.mixing.size() != 0 &&
      cfg.mixing.rows() != static_cast<Eigen::Index>(cfg.sources.size()))
    throw std::invalid_argument("run_study: mixing dimension mismatch");

  const std::string label = default_label(cfg);
  const int num_sizes = static_cast<int>(cfg.sample_sizes.size());
  const int total = num_sizes * cfg.replications;
  SimulationResult rows(total);

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, total));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= total) return;
      const int s = t / cfg.replications;
      const int r = t % cfg.replications;
      const std::uint64_t seed = mix64(cfg.master_seed, s, r);
      rows[t] = run_one(cfg, label, cfg.sample_sizes[s], r, seed);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;  // slot t = (size index, rep) is already the deterministic order
}

std::vector<SummaryRow> summarize(const SimulationResult& result) {
  if (result.empty()) throw std::invalid_argument("summarize: empty result");
  // group rows by (method, order, n) preserving first-seen order
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> groups;
  auto find_group = [&](const SimulationRow& r) -> size_t {
    for (size_t i = 0; i < out.size(); ++i)
      if (out[i].method == r.method && out[i].order == r.order && out[i].n == r.n)
        return i;
    out.push_back({r.method, r.order, r.n, 0, 0, 0, 0, 0});
    groups.emplace_back();
    return out.size() - 1;
  };
  for (const auto& r : result) {
    const size_t i = find_group(r);
    if (r.failed) {
      ++out[i].fail_count;
    } else {
      groups[i].push_back(r.npd2);
    }
  }
  auto quantile = [](std::vector<double>& v, double q) {
    // type-7 (linear interpolation), v sorted
    const double h = q * (static_cast<double>(v.size()) - 1.0);
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - std::floor(h)) * (v[hi] - v[lo]);
  };
  for (size_t i = 0; i < out.size(); ++i) {
    auto& v = groups[i];
    if (v.empty()) continue;
    out[i].mean_npd2 = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    std::sort(v.begin(), v.end());
    out[i].median_npd2 = quantile(v, 0.5);
    out[i].q1 = quantile(v, 0.25);
    out[i].q3 = quantile(v, 0.75);
  }
  return out;
}

std::string results_csv_string(const SimulationResult& result) {
  std::ostringstream out;
  out << "method,order,n,rep,seed,md,npd2,converged\n";
  for (const auto& r : result) {
    out << r.method << ',' << r.order << ',' << r.n << ',' << r.rep << ','
        << r.seed << ',' << format_double(r.md) << ',' << format_double(r.npd2)
        << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

void write_results_csv(const SimulationResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << results_csv_string(result);
}

void write_summary_csv(const std::vector<SummaryRow>& summary, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "method,order,n,mean_npd2,median_npd2,q1,q3,fail_count\n";
  for (const auto& s : summary) {
    f << s.method << ',' << s.order << ',' << s.n << ','
      << format_double(s.mean_npd2) << ',' << format_double(s.median_npd2)
      << ',' << format_double(s.q1) << ',' << format_double(s.q3) << ','
      << s.fail_count << '\n';
  }
}

}  // namespace ica
