#pragma once

#include <string>
#include <vector>

#include "gpt/rational.hpp"

namespace gpt {

/// A labelled probability distribution over measurement outcomes.  For
/// classical and box-world systems the probabilities are exact rationals;
/// quantum outcome probabilities are double precision only.
struct OutcomeDistribution {
  std::vector<std::string> labels;
  std::vector<Rat> exact;     // empty when only doubles are available
  std::vector<double> probs;  // always populated, same order as labels

  static OutcomeDistribution from_exact(std::vector<std::string> labels, std::vector<Rat> p);
  static OutcomeDistribution from_doubles(std::vector<std::string> labels, std::vector<double> p);

  bool has_exact() const { return !exact.empty(); }
  size_t size() const { return labels.size(); }

  /// Checks nonnegativity and normalization (exact when rationals are present,
  /// within `tol` otherwise).
  void validate(double tol = 1e-12) const;
};

/// Shannon entropy in bits, with the 0*log(0) = 0 convention.
double shannon_bits(const std::vector<double>& p);
double shannon_bits(const std::vector<Rat>& p);
double shannon_bits(const OutcomeDistribution& d);

/// Renyi entropy of order alpha in bits.  alpha must be positive; alpha = 1
/// falls back to Shannon and alpha = infinity gives the min-entropy.
double renyi_bits(const std::vector<double>& p, double alpha);
double renyi_bits(const OutcomeDistribution& d, double alpha);

double binary_entropy_bits(double p);

}  // namespace gpt
