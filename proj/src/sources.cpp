#include "ica/sources.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ica {

namespace {
constexpr double kLaplaceScale = 0.7071067811865475244;   // 1/sqrt(2)
const double kLogisticScale = std::sqrt(3.0) / M_PI;
const double kBetaStretch = std::sqrt(28.0);
}  // namespace

double SourceSpec::density(double z) const {
  switch (family) {
    case SourceFamily::Laplace:
      return std::exp(-std::abs(z) / kLaplaceScale) / (2.0 * kLaplaceScale);
    case SourceFamily::Logistic: {
      const double e = std::exp(-std::abs(z) / kLogisticScale);
      const double d = 1.0 + e;
      return e / (kLogisticScale * d * d);
    }
    case SourceFamily::Beta33: {
      const double x = z / kBetaStretch + 0.5;
      if (x <= 0.0 || x >= 1.0) return 0.0;
      const double q = x * (1.0 - x);
      return 30.0 * q * q / kBetaStretch;
    }
    case SourceFamily::Normal:
      return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  }
  return 0.0;
}

double SourceSpec::support_lo() const {
  return family == SourceFamily::Beta33 ? -0.5 * kBetaStretch : -40.0;
}

double SourceSpec::support_hi() const {
  return family == SourceFamily::Beta33 ? 0.5 * kBetaStretch : 40.0;
}

double SourceSpec::sample(Rng& rng) const {
  switch (family) {
    case SourceFamily::Laplace: {
      const double u = rng.uniform() - 0.5;
      const double s = u < 0.0 ? -1.0 : 1.0;
      return -kLaplaceScale * s * std::log1p(-2.0 * std::abs(u));
    }
    case SourceFamily::Logistic: {
      const double u = rng.uniform();
      return kLogisticScale * std::log(u / (1.0 - u));
    }
    case SourceFamily::Beta33: {
      // beta(3,3) is the median of five independent uniforms
      double v[5];
      for (double& x : v) x = rng.uniform();
      for (int i = 1; i < 5; ++i) {  // insertion sort, 5 elements
        double key = v[i];
        int j = i - 1;
        while (j >= 0 && v[j] > key) { v[j + 1] = v[j]; --j; }
        v[j + 1] = key;
      }
      return (v[2] - 0.5) * kBetaStretch;
    }
    case SourceFamily::Normal:
      return rng.normal();
  }
  return 0.0;
}

std::string SourceSpec::name() const {
  switch (family) {
    case SourceFamily::Laplace: return "laplace";
    case SourceFamily::Logistic: return "logistic";
    case SourceFamily::Beta33: return "beta33";
    case SourceFamily::Normal: return "normal";
  }
  return "?";
}

SourceSpec SourceSpec::parse(const std::string& name) {
  if (name == "laplace") return {SourceFamily::Laplace};
  if (name == "logistic") return {SourceFamily::Logistic};
  if (name == "beta33") return {SourceFamily::Beta33};
  if (name == "normal") return {SourceFamily::Normal};
  throw std::invalid_argument("unknown source family: " + name);
}

std::vector<SourceSpec> parse_source_list(const std::string& csv) {
  std::vector<SourceSpec> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(SourceSpec::parse(tok));
  if (out.empty()) throw std::invalid_argument("empty source list");
  return out;
}

}  // namespace ica
