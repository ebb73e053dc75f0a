#include "gpt/measurement.hpp"

#include <algorithm>

namespace gpt {

BoxEffect BoxEffect::zero(const box::Signature& sig) {
  BoxEffect e;
  e.sig = sig;
  e.coeff.assign(sig.table_size(), Rat(0));
  return e;
}

BoxEffect BoxEffect::unit(const box::Signature& sig) {
  // Canonical representative: weight 1 on the all-zero fiducial input.
  BoxEffect e = zero(sig);
  const long jo = sig.joint_outputs();
  for (long o = 0; o < jo; ++o) e.coeff[o] = 1;
  return e;
}

BoxEffect BoxEffect::fiducial(const box::Signature& sig, const std::vector<int>& inputs,
                              const std::vector<int>& outcomes) {
  BoxEffect e = zero(sig);
  e.coeff[sig.input_index(inputs) * sig.joint_outputs() + sig.output_index(outcomes)] = 1;
  return e;
}

Rat BoxEffect::evaluate(const box::State& s) const {
  if (!(s.sig == sig)) throw TheoryMismatch("box effect/state signature mismatch");
  Rat v = 0;
  for (size_t i = 0; i < coeff.size(); ++i) {
    if (coeff[i] != 0) v += coeff[i] * s.table[i];
  }
  return v;
}

BoxEffect operator+(const BoxEffect& a, const BoxEffect& b) {
  if (!(a.sig == b.sig)) throw TheoryMismatch("box effect addition: signature mismatch");
  BoxEffect out = a;
  for (size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += b.coeff[i];
  return out;
}

ClassicalMeasurement fiducial_classical(int d) {
  ClassicalMeasurement m;
  for (int i = 0; i < d; ++i) m.outcomes.emplace_back(std::to_string(i), classical::Effect::point(d, i));
  return m;
}

std::vector<ClassicalMeasurement> fine_grained_measurements_classical(int d) {
  if (d < 1) throw ValidationError("fine_grained_measurements_classical: d must be >= 1");
  return {fiducial_classical(d)};
}

BoxMeasurement strategy_measurement(const box::Strategy& strat) {
  BoxMeasurement m;
  box::for_each_leaf(strat, [&](const std::vector<int>& in, const std::vector<int>& out) {
    m.outcomes.emplace_back(box::outcome_label(out), BoxEffect::fiducial(strat.sig, in, out));
  });
  // Stable label order for reproducible coarse-graining maps.
  std::sort(m.outcomes.begin(), m.outcomes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return m;
}

void validate_measurement(int d, const ClassicalMeasurement& m) {
  if (m.outcomes.empty()) throw ValidationError("measurement: no outcomes");
  std::vector<Rat> sum(d, 0);
  std::vector<std::string> labels;
  for (const auto& [label, effect] : m.outcomes) {
    labels.push_back(label);
    if (static_cast<int>(effect.q.size()) != d) throw ValidationError("measurement: effect dimension mismatch");
    for (int i = 0; i < d; ++i) {
      if (effect.q[i] < 0 || effect.q[i] > 1)
        throw ValidationError("measurement: classical effect coefficient outside [0,1]");
      sum[i] += effect.q[i];
    }
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw ValidationError("measurement: duplicate outcome label");
  for (int i = 0; i < d; ++i)
    if (sum[i] != 1) throw ValidationError("measurement: effects do not sum to the unit effect");
}

void validate_measurement(const box::Signature& sig, const BoxMeasurement& m) {
  if (m.outcomes.empty()) throw ValidationError("measurement: no outcomes");
  std::vector<std::string> labels;
  for (const auto& [label, effect] : m.outcomes) {
    labels.push_back(label);
    if (!(effect.sig == sig)) throw TheoryMismatch("measurement: effect signature mismatch");
    for (const Rat& c : effect.coeff)
      if (c < 0) throw ValidationError("measurement: box effect coefficient negative");
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw ValidationError("measurement: duplicate outcome label");
  // Unit-sum is a functional identity; the product-deterministic states span
  // the non-signalling subspace, so checking on them is exact and sufficient.
  for (const box::State& s : box::product_deterministic_states(sig)) {
    Rat total = 0;
    for (const auto& [label, effect] : m.outcomes) total += effect.evaluate(s);
    if (total != 1) throw ValidationError("measurement: effects do not sum to the unit effect");
  }
}

void validate_measurement(int d, const QuantumMeasurement& m) {
  std::vector<quantum::Mat> elems;
  std::vector<std::string> labels;
  for (const auto& [label, effect] : m.outcomes) {
    labels.push_back(label);
    elems.push_back(effect);
  }
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw ValidationError("measurement: duplicate outcome label");
  const quantum::Povm p = quantum::Povm::validated(std::move(elems));
  if (p.dim() != d) throw ValidationError("measurement: POVM dimension mismatch");
}

OutcomeDistribution apply_measurement(const classical::State& s, const ClassicalMeasurement& m) {
  validate_measurement(s.size(), m);
  std::vector<std::string> labels;
  std::vector<Rat> p;
  for (const auto& [label, effect] : m.outcomes) {
    labels.push_back(label);
    p.push_back(effect.evaluate(s));
  }
  auto d = OutcomeDistribution::from_exact(std::move(labels), std::move(p));
  d.validate();
  return d;
}

OutcomeDistribution apply_measurement(const box::State& s, const BoxMeasurement& m) {
  validate_measurement(s.sig, m);
  std::vector<std::string> labels;
  std::vector<Rat> p;
  for (const auto& [label, effect] : m.outcomes) {
    labels.push_back(label);
    p.push_back(effect.evaluate(s));
  }
  auto d = OutcomeDistribution::from_exact(std::move(labels), std::move(p));
  d.validate();
  return d;
}

OutcomeDistribution apply_measurement(const quantum::Density& s, const QuantumMeasurement& m) {
  validate_measurement(s.dim(), m);
  std::vector<std::string> labels;
  std::vector<double> p;
  for (const auto& [label, effect] : m.outcomes) {
    labels.push_back(label);
    p.push_back(std::max(0.0, (s.rho * effect).trace().real()));
  }
  auto d = OutcomeDistribution::from_doubles(std::move(labels), std::move(p));
  d.validate(1e-8);
  return d;
}

namespace {

// Checks exact proportionality of two evaluation vectors (v = c * w, c >= 0).
bool proportional(const std::vector<Rat>& v, const std::vector<Rat>& w) {
  Rat c = 0;
  bool have_c = false;
  for (size_t i = 0; i < v.size(); ++i) {
    if (w[i] == 0) {
      if (v[i] != 0) return false;
      continue;
    }
    const Rat ratio = v[i] / w[i];
    if (!have_c) {
      c = ratio;
      have_c = true;
    } else if (ratio != c) {
      return false;
    }
  }
  return true;
}

template <class M, class EvalFn>
bool trivial_refinement_impl(const M& e, const M& f, const std::map<std::string, std::string>& label_map,
                             const EvalFn& eval) {
  // The map must witness a coarse-graining: merged e-effects equal f-effects.
  std::map<std::string, std::vector<Rat>> merged;
  std::map<std::string, std::vector<Rat>> e_vectors;
  for (const auto& [label, effect] : e.outcomes) {
    const auto it = label_map.find(label);
    if (it == label_map.end())
      throw ValidationError("is_trivial_refinement: label '" + label + "' missing from map");
    std::vector<Rat> v = eval(effect);
    e_vectors[label] = v;
    auto& acc = merged[it->second];
    if (acc.empty()) acc.assign(v.size(), Rat(0));
    for (size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
  }
  std::map<std::string, std::vector<Rat>> f_vectors;
  for (const auto& [label, effect] : f.outcomes) f_vectors[label] = eval(effect);
  if (merged.size() != f_vectors.size())
    throw ValidationError("is_trivial_refinement: map is not onto f's outcomes");
  for (const auto& [label, acc] : merged) {
    const auto it = f_vectors.find(label);
    if (it == f_vectors.end() || it->second != acc)
      throw ValidationError("is_trivial_refinement: map is not a coarse-graining witness");
  }
  for (const auto& [label, v] : e_vectors) {
    if (!proportional(v, f_vectors[label_map.at(label)])) return false;
  }
  return true;
}

}  // namespace

bool is_trivial_refinement(int d, const ClassicalMeasurement& e, const ClassicalMeasurement& f,
                           const std::map<std::string, std::string>& label_map) {
  validate_measurement(d, e);
  validate_measurement(d, f);
  // Point masses are states, so coefficient vectors determine the functional.
  return trivial_refinement_impl(e, f, label_map, [](const classical::Effect& eff) { return eff.q; });
}

bool is_trivial_refinement(const box::Signature& sig, const BoxMeasurement& e, const BoxMeasurement& f,
                           const std::map<std::string, std::string>& label_map) {
  validate_measurement(sig, e);
  validate_measurement(sig, f);
  const auto spanning = box::product_deterministic_states(sig);
  const auto eval = [&](const BoxEffect& eff) {
    std::vector<Rat> v;
    v.reserve(spanning.size());
    for (const auto& s : spanning) v.push_back(eff.evaluate(s));
    return v;
  };
  return trivial_refinement_impl(e, f, label_map, eval);
}

double distance(const AnyState& a, const AnyState& b) {
  if (a.index() != b.index()) throw TheoryMismatch("distance: states from different theories");
  if (std::holds_alternative<classical::State>(a)) {
    return to_double(classical::tv_distance(std::get<classical::State>(a), std::get<classical::State>(b)));
  }
  if (std::holds_alternative<quantum::Density>(a)) {
    return quantum::trace_distance(std::get<quantum::Density>(a), std::get<quantum::Density>(b));
  }
  return to_double(box::distance_exact(std::get<box::State>(a), std::get<box::State>(b)));
}

}  // namespace gpt
