#pragma once

#include <string>
#include <vector>

#include "ica/rng.hpp"

namespace ica {

// Marginal source distributions, all standardized to mean 0, variance 1:
//   laplace  - scale b = 1/sqrt(2)
//   logistic - scale s = sqrt(3)/pi
//   beta33   - beta(3,3), affinely mapped by z = (x - 1/2) * sqrt(28)
//   normal   - standard normal (used as the degenerate reference case)
enum class SourceFamily { Laplace, Logistic, Beta33, Normal };

struct SourceSpec {
  SourceFamily family = SourceFamily::Laplace;

  double density(double z) const;
  double support_lo() const;
  double support_hi() const;
  double sample(Rng& rng) const;

  std::string name() const;
  static SourceSpec parse(const std::string& name);
};

std::vector<SourceSpec> parse_source_list(const std::string& comma_separated);

}  // namespace ica
