#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpt/measurement.hpp"

namespace gpt::entropy {

/// Result of an entropic minimization: value in bits, the argmin witness
/// (measurement strategy / decomposition), and whether the infimum was
/// attained by a complete finite search.
struct Report {
  double value_bits = 0;
  std::string witness;
  bool exact = true;
  bool upper_bound_only = false;  // set on the quantum Renyi path
};

/// Measurement entropy: minimal Shannon entropy of the outcome distribution
/// over fine-grained measurements.  Classical states use the fiducial
/// measurement, quantum states the eigenbasis (optimal), box-world states an
/// exhaustive search over adaptive strategies.
Report hhat(const classical::State& s);
Report hhat(const quantum::Density& s);
Report hhat(const box::State& s, const box::StrategyGuard& guard = box::StrategyGuard::from_env());
Report hhat(const AnyState& s, const box::StrategyGuard& guard = box::StrategyGuard::from_env());

/// Renyi-order variant.  alpha > 0; alpha = 1 delegates to hhat; for quantum
/// states the result is an upper bound (eigenbasis plus a random rank-1 POVM
/// sweep) and is flagged as such.
Report hhat_alpha(const classical::State& s, double alpha);
Report hhat_alpha(const box::State& s, double alpha, const box::StrategyGuard& guard = box::StrategyGuard::from_env());
Report hhat_alpha(const quantum::Density& s, double alpha, uint64_t seed = 7, int povm_samples = 200);
Report hhat_alpha(const AnyState& s, double alpha, const box::StrategyGuard& guard = box::StrategyGuard::from_env());

/// H(AB) - H(B) for a bipartition of a box state given by the A part indices;
/// may be negative.
double cond_standard(const box::State& s, const std::vector<int>& a_parts,
                     const box::StrategyGuard& guard = box::StrategyGuard::from_env());
double cond_standard_quantum(const quantum::Density& ab, int da, int db);

/// Alternative conditional entropy: the minimum over all measurements on B
/// (adaptive strategies, their outcome mergings, and the unit measurement) of
/// the expected entropy of the conditioned A states.  Always >= 0.
double cond_plus(const box::State& s, const std::vector<int>& a_parts,
                 const box::StrategyGuard& guard = box::StrategyGuard::from_env());

double mutual(const box::State& s, const std::vector<int>& a_parts,
              const box::StrategyGuard& guard = box::StrategyGuard::from_env());
double mutual_plus(const box::State& s, const std::vector<int>& a_parts,
                   const box::StrategyGuard& guard = box::StrategyGuard::from_env());

/// I(A;B|C) = H(A|C) - H(A|BC) with C the complement of A and B.
double cond_mutual(const box::State& s, const std::vector<int>& a_parts, const std::vector<int>& b_parts,
                   const box::StrategyGuard& guard = box::StrategyGuard::from_env());

/// Maximum classical mutual information over pairs of local fine-grained
/// strategies (classical post-processing cannot increase it).
double accessible_info(const box::State& s, const std::vector<int>& a_parts,
                       const box::StrategyGuard& guard = box::StrategyGuard::from_env());

struct DecompositionReport {
  double value_bits = 0;
  bool exact = true;
  std::vector<std::pair<Rat, int>> weights;  // (weight, vertex index), argmin decomposition
  box::VertexSet vertices;
  std::string witness;
};

/// Decomposition entropy: the minimal Shannon entropy of the weights over
/// pure-state decompositions.  The minimum of a concave function over the
/// decomposition polytope is attained at a basic solution, so the exact
/// enumeration of extreme decompositions is exhaustive.
DecompositionReport decomposition_entropy(const box::State& s, const box::VertexGuard& guard = {});
DecompositionReport decomposition_entropy(const classical::State& s);

/// True iff some fine-grained strategy on B leaves every (positive-probability)
/// conditioned A state deterministic; A must consist of classical parts.
bool can_determine(const box::State& s, const std::vector<int>& a_parts,
                   const box::StrategyGuard& guard = box::StrategyGuard::from_env());

enum class CondFn { Standard, Plus };
enum class Verdict { Pass, Fail, Vacuous };

struct ReasonablenessReport {
  bool determinable = false;
  double value = 0;
  Verdict cond1 = Verdict::Vacuous;       // determinable => value == 0
  Verdict cond2 = Verdict::Vacuous;       // not determinable => value > 0
  Verdict cond2prime = Verdict::Vacuous;  // not determinable => value != 0
};

ReasonablenessReport check_reasonableness(CondFn fn, const box::State& s, const std::vector<int>& a_parts,
                                          const box::StrategyGuard& guard = box::StrategyGuard::from_env());

struct SsaReport {
  double lhs = 0;  // H(ABC) + H(C)
  double rhs = 0;  // H(AC) + H(BC)
  bool violated = false;
};

SsaReport check_strong_subadditivity(const box::State& s, const std::vector<int>& a_parts,
                                     const std::vector<int>& b_parts,
                                     const box::StrategyGuard& guard = box::StrategyGuard::from_env());

}  // namespace gpt::entropy
