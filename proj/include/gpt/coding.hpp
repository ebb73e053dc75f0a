#pragma once

#include <cstdint>
#include <vector>

#include "gpt/classical.hpp"

namespace gpt::coding {

/// An i.i.d. source emitting classical state states[k] with probability q[k]
/// in each time step; all emitted states share one alphabet.
struct Source {
  std::vector<Rat> q;
  std::vector<classical::State> states;

  static Source validated(std::vector<Rat> q, std::vector<classical::State> states);
  /// The source that emits the point mass on letter i with probability p_i.
  static Source iid_letters(const classical::State& p);

  int alphabet() const { return states.empty() ? 0 : states[0].size(); }
  classical::State mixture() const;  // Src = sum q_k states[k]
  double entropy_bits() const;       // H(Src)
  bool point_mass_states() const;
};

struct TypicalGuard {
  long max_n = 10000;
  int max_alphabet = 16;
  unsigned long max_types = 2000000;
};

/// Exact mass and cardinality of the eps-typical set of the fiducial
/// measurement on Src^n, computed over type classes.  Membership compares
/// -log2(P)/n against H(Src) in double precision (~1e-12 slack); the mass and
/// count of the resulting set are exact.
struct TypicalReport {
  long n = 0;
  double eps = 0;
  double entropy_bits = 0;
  Rat mass;        // h_T(Src^n), exact
  BigInt count;    // |T(n, eps)|, exact
  double log2_count = 0;
  bool upper_bound_ok = false;  // log2|T| <= n (H + eps)
  bool lower_bound_ok = false;  // log2|T| >= log2(mass) + n (H - eps)
};

TypicalReport typical_mass_and_count(const Source& src, long n, double eps, const TypicalGuard& guard = {});

/// Membership predicate for a single outcome sequence.
bool sequence_typical(const Source& src, const std::vector<int>& seq, double eps);

struct CompressionReport {
  TypicalReport typical;
  long n = 0;
  double rate = 0;
  double eps = 0;
  bool dimension_ok = false;  // log2 |T| <= n R
  Rat exact_avg_distance;     // sum_k q_k D(emitted, reconstructed) = atypical mass
  double mc_avg_distance = 0;
  long trials = 0;
  uint64_t seed = 0;
  bool rate_below_entropy_warning = false;
  double disturbance_bound = 0;  // (c+1) * delta^eps_wd with delta = atypical mass
};

/// Weak-disturbance constants of the encoding measurement; the classical
/// restrict-and-renormalize update has c = 1, eps_wd = 1.
struct DisturbanceConstants {
  double c = 1.0;
  double eps_wd = 1.0;
};

/// Simulates the typical-set compression scheme: measure {h_T, h_A}, keep the
/// renormalized restriction on outcome T, emit a fixed typical point mass on
/// outcome A.  Reports the exact average distance and a Monte-Carlo estimate.
CompressionReport simulate_compression(const Source& src, long n, double rate, double eps, long trials,
                                       uint64_t seed, const TypicalGuard& guard = {},
                                       const DisturbanceConstants& constants = {});

/// Optimal asymmetric hypothesis-testing error: the minimal probability of
/// concluding "s1" on s2^n over all tests whose probability of concluding
/// "s2" on s1^n is at most type1_bound.  Exact Neyman-Pearson optimum with a
/// randomized threshold test.
Rat hypothesis_test_pn(const classical::State& s1, const classical::State& s2, long n,
                       const Rat& type1_bound = Rat(1, 2), const TypicalGuard& guard = {});

/// -log2(p_N)/N for each N in n_list; infinity when p_N = 0.
std::vector<std::pair<long, double>> relative_entropy_estimate(const classical::State& s1,
                                                               const classical::State& s2,
                                                               const std::vector<long>& n_list,
                                                               const Rat& type1_bound = Rat(1, 2),
                                                               const TypicalGuard& guard = {});

/// Letters on which a full classical effect is 1; the subspace it defines.
/// Throws if the effect is not full (no letter with coefficient 1).
std::vector<int> subspace_of(const classical::Effect& f);

/// Dimension of a classical state set given by its support letters.
int dimension_of(const std::vector<int>& letters);

double kl_divergence_bits(const classical::State& s1, const classical::State& s2);

}  // namespace gpt::coding
