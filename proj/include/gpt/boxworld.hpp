#pragma once

#include <string>
#include <vector>

#include "gpt/classical.hpp"
#include "gpt/distribution.hpp"
#include "gpt/rational.hpp"

namespace gpt::box {

/// One elementary subsystem: a box with `inputs` fiducial measurement choices,
/// each with `outputs` possible results.
struct Part {
  int inputs = 1;
  int outputs = 2;
  bool operator==(const Part&) const = default;
};

/// Ordered list of elementary subsystems.  Joint input/output tuples are
/// flattened mixed-radix with part 0 most significant.
struct Signature {
  std::vector<Part> parts;

  static Signature classical(int outputs) { return Signature{{Part{1, outputs}}}; }
  static Signature single(int inputs, int outputs) { return Signature{{Part{inputs, outputs}}}; }

  int num_parts() const { return static_cast<int>(parts.size()); }
  long joint_inputs() const;
  long joint_outputs() const;
  long table_size() const { return joint_inputs() * joint_outputs(); }
  long max_outcomes() const { return joint_outputs(); }

  long input_index(const std::vector<int>& in) const;
  long output_index(const std::vector<int>& out) const;
  std::vector<int> input_tuple(long idx) const;
  std::vector<int> output_tuple(long idx) const;

  Signature subset(const std::vector<int>& keep) const;
  bool operator==(const Signature&) const = default;

  void validate() const;
};

Signature concat(const Signature& a, const Signature& b);

/// A (validated) non-signalling conditional probability table
/// P(x_out-tuple | x_in-tuple), exact rationals.  Flat index layout:
/// input index major, output index minor.
struct State {
  Signature sig;
  std::vector<Rat> table;

  const Rat& at(long in_idx, long out_idx) const { return table[in_idx * sig.joint_outputs() + out_idx]; }
  Rat& at(long in_idx, long out_idx) { return table[in_idx * sig.joint_outputs() + out_idx]; }

  /// Checks shape, nonnegativity, exact per-input normalization and the exact
  /// non-signalling conditions; throws ValidationError with a report naming
  /// the offending subsystem and marginal pair.
  static State validated(Signature sig, std::vector<Rat> table);
  static State uniform(const Signature& sig);
  static State from_classical(const classical::State& s);

  classical::State to_classical() const;  // requires every part to have 1 input
  bool operator==(const State&) const = default;
};

State tensor(const State& a, const State& b);

/// Marginal over the kept parts (ascending part order).  Discarded parts are
/// measured with input 0; non-signalling guarantees the choice is immaterial.
State marginal(const State& s, const std::vector<int>& keep);

/// Probability of seeing `outcome` when part `part` is measured with `input`.
Rat outcome_probability(const State& s, int part, int input, int outcome);

/// Conditions on fiducial results for several parts at once; the returned
/// state lives on the remaining parts in their original order.
struct Conditioning {
  int part;
  int input;
  int outcome;
};
State condition_many(const State& s, const std::vector<Conditioning>& fixed);
State condition(const State& s, int part, int input, int outcome);

State pr_box();

/// Bipartite binary box satisfying x_out^1 xor x_out^2 = x_in^1 * x_in^2 with
/// probability p, uniform noise otherwise; p in [1/2, 1].
State noisy_pr(const Rat& p);

/// CHSH expression E00 + E01 + E10 - E11 from the correlators of a bipartite
/// binary box.
double chsh_value(const State& s);

/// All products of local deterministic boxes.  These span the linear space
/// carrying the non-signalling polytope, so functional identities (effect
/// equality, unit-sum checks) can be tested exactly on this finite set.
std::vector<State> product_deterministic_states(const Signature& sig);

struct VertexGuard {
  long max_table = 64;
  long max_nodes = 20000000;
};

struct VertexSet {
  Signature sig;
  std::vector<State> vertices;
  std::vector<bool> is_product;  // tensor of its single-part marginals

  int num_product() const;
  int num_entangled() const { return static_cast<int>(vertices.size()) - num_product(); }
};

/// Exact vertex enumeration of the non-signalling polytope via basic-solution
/// enumeration of the equality-and-bound system.
VertexSet enumerate_pure_states(const Signature& sig, const VertexGuard& guard = {});

}  // namespace gpt::box
