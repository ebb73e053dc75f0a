#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gpt/boxworld.hpp"
#include "gpt/classical.hpp"
#include "gpt/distribution.hpp"
#include "gpt/quantum.hpp"
#include "gpt/strategies.hpp"

namespace gpt {

/// A measurement as a labelled list of effects summing to the unit effect.
template <class E>
struct Measurement {
  std::vector<std::pair<std::string, E>> outcomes;
};

/// Box-world effect: nonnegative coefficients Q(x_out|x_in) over the fiducial
/// effects, evaluated as sum Q * P on the state table.  Two tables describe
/// the same functional iff they agree on every non-signalling state.
struct BoxEffect {
  box::Signature sig;
  std::vector<Rat> coeff;  // indexed like a state table

  static BoxEffect zero(const box::Signature& sig);
  static BoxEffect unit(const box::Signature& sig);
  static BoxEffect fiducial(const box::Signature& sig, const std::vector<int>& inputs,
                            const std::vector<int>& outcomes);
  Rat evaluate(const box::State& s) const;
};

BoxEffect operator+(const BoxEffect& a, const BoxEffect& b);

using ClassicalMeasurement = Measurement<classical::Effect>;
using BoxMeasurement = Measurement<BoxEffect>;
using QuantumMeasurement = Measurement<quantum::Mat>;

/// The d-outcome fiducial measurement of classical theory; up to trivial
/// refinement it is the only fine-grained classical measurement.
ClassicalMeasurement fiducial_classical(int d);
std::vector<ClassicalMeasurement> fine_grained_measurements_classical(int d);

/// The measurement induced by an adaptive strategy: one fiducial product
/// effect per leaf.
BoxMeasurement strategy_measurement(const box::Strategy& strat);

void validate_measurement(int d, const ClassicalMeasurement& m);
void validate_measurement(const box::Signature& sig, const BoxMeasurement& m);
void validate_measurement(int d, const QuantumMeasurement& m);

OutcomeDistribution apply_measurement(const classical::State& s, const ClassicalMeasurement& m);
OutcomeDistribution apply_measurement(const box::State& s, const BoxMeasurement& m);
OutcomeDistribution apply_measurement(const quantum::Density& s, const QuantumMeasurement& m);

/// Merges outcomes according to label_map (which must be total on m's
/// labels); effects of merged outcomes are summed.
template <class E>
Measurement<E> coarse_grain(const Measurement<E>& m, const std::map<std::string, std::string>& label_map) {
  Measurement<E> out;
  std::map<std::string, size_t> index;
  for (const auto& [label, effect] : m.outcomes) {
    const auto it = label_map.find(label);
    if (it == label_map.end()) throw ValidationError("coarse_grain: label '" + label + "' missing from map");
    const auto [pos, inserted] = index.try_emplace(it->second, out.outcomes.size());
    if (inserted) {
      out.outcomes.emplace_back(it->second, effect);
    } else {
      out.outcomes[pos->second].second = out.outcomes[pos->second].second + effect;
    }
  }
  return out;
}

/// True iff every effect of e is proportional to its image under label_map,
/// i.e. the refinement e of f is trivial (pure post-processing randomness).
/// The map must witness a coarse-graining of e into f.
bool is_trivial_refinement(int d, const ClassicalMeasurement& e, const ClassicalMeasurement& f,
                           const std::map<std::string, std::string>& label_map);
bool is_trivial_refinement(const box::Signature& sig, const BoxMeasurement& e, const BoxMeasurement& f,
                           const std::map<std::string, std::string>& label_map);

/// A state of any implemented theory, for CLI-level dispatch.
using AnyState = std::variant<classical::State, quantum::Density, box::State>;

/// Operational distance: total variation for classical states, trace distance
/// for quantum states, and the exact maximum over adaptive strategies for box
/// world.
double distance(const AnyState& a, const AnyState& b);

}  // namespace gpt
