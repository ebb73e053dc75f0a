#include "gpt/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace gpt {

OutcomeDistribution OutcomeDistribution::from_exact(std::vector<std::string> labels,
                                                    std::vector<Rat> p) {
  OutcomeDistribution d;
  d.labels = std::move(labels);
  d.exact = std::move(p);
  d.probs.reserve(d.exact.size());
  for (const Rat& r : d.exact) d.probs.push_back(to_double(r));
  return d;
}

OutcomeDistribution OutcomeDistribution::from_doubles(std::vector<std::string> labels,
                                                      std::vector<double> p) {
  OutcomeDistribution d;
  d.labels = std::move(labels);
  d.probs = std::move(p);
  return d;
}

void OutcomeDistribution::validate(double tol) const {
  if (labels.size() != probs.size())
    throw ValidationError("outcome distribution: label/probability size mismatch");
  if (has_exact()) {
    if (exact.size() != labels.size())
      throw ValidationError("outcome distribution: exact/label size mismatch");
    Rat sum = 0;
    for (const Rat& r : exact) {
      if (r < 0) throw ValidationError("outcome distribution: negative probability");
      sum += r;
    }
    if (sum != 1) throw ValidationError("outcome distribution: probabilities sum to " + rat_string(sum));
    return;
  }
  double sum = 0;
  for (double p : probs) {
    if (p < -tol) throw ValidationError("outcome distribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol)
    throw ValidationError("outcome distribution: probabilities sum to " + std::to_string(sum));
}

double shannon_bits(const std::vector<double>& p) {
  double h = 0;
  for (double x : p) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

double shannon_bits(const std::vector<Rat>& p) {
  double h = 0;
  for (const Rat& r : p) {
    if (r > 0) {
      const double x = to_double(r);
      h -= x * std::log2(x);
    }
  }
  return h;
}

double shannon_bits(const OutcomeDistribution& d) {
  return d.has_exact() ? shannon_bits(d.exact) : shannon_bits(d.probs);
}

double renyi_bits(const std::vector<double>& p, double alpha) {
  if (!(alpha > 0)) throw ValidationError("renyi_bits: order must be positive");
  if (alpha == 1.0) return shannon_bits(p);
  if (std::isinf(alpha)) {
    double pmax = 0;
    for (double x : p) pmax = std::max(pmax, x);
    return -std::log2(pmax);
  }
  double s = 0;
  for (double x : p) {
    if (x > 0) s += std::pow(x, alpha);
  }
  return std::log2(s) / (1.0 - alpha);
}

double renyi_bits(const OutcomeDistribution& d, double alpha) { return renyi_bits(d.probs, alpha); }

double binary_entropy_bits(double p) {
  double h = 0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

}  // namespace gpt
