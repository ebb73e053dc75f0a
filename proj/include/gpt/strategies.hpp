#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gpt/boxworld.hpp"
#include "gpt/distribution.hpp"

namespace gpt::box {

/// Node of an adaptive measurement tree: measure `part` with fiducial input
/// `input`; children are indexed by that part's outcome.  Every root-to-leaf
/// path measures each subsystem exactly once, so the tree realizes a
/// fine-grained measurement whose leaf effects are products of fiducial
/// effects.
struct StrategyNode {
  int part = 0;
  int input = 0;
  std::vector<std::shared_ptr<const StrategyNode>> children;  // one per outcome; null once all parts are measured
};
using StrategyNodePtr = std::shared_ptr<const StrategyNode>;

struct Strategy {
  Signature sig;
  StrategyNodePtr root;

  std::string to_string() const;
};

struct StrategyGuard {
  long max_joint_outputs = 64;
  int max_parts = 4;
  long max_count = 5000000;

  /// Applies the GPT_ENTROPY_MAX_STRATEGIES environment override to max_count.
  static StrategyGuard from_env();
};

/// Number of adaptive strategies on a signature (order and inputs both chosen
/// adaptively), by the closed-form recursion
///   N(S) = sum_{i in S} k_i * prod_{o < m_i} N(S \ {i}),  N({}) = 1.
BigInt count_strategies(const Signature& sig);

/// Exhaustive, deterministic (lexicographic) enumeration of every adaptive
/// strategy.  Throws GuardExceeded when the guard limits are breached.
std::vector<Strategy> enumerate_strategies(const Signature& sig, const StrategyGuard& guard = StrategyGuard::from_env());

/// Visits each leaf of the strategy with the fiducial inputs used along its
/// path and the outcomes obtained, both indexed by part.
void for_each_leaf(const Strategy& strat,
                   const std::function<void(const std::vector<int>& inputs, const std::vector<int>& outcomes)>& fn);

/// Leaf-label distribution of measuring `s` with the strategy.  Labels are the
/// per-part outcome symbols joined with '.', ordered lexicographically by
/// outcome tuple; exact rationals.
OutcomeDistribution apply_strategy(const State& s, const Strategy& strat);

std::string outcome_label(const std::vector<int>& outcomes);

/// The product strategy measuring `a`'s tree first and then `b`'s tree
/// (with `b` parts re-indexed after `a`'s) at every leaf.
Strategy tensor_strategy(const Strategy& a, const Strategy& b);

/// Exact operational distance between two box states: the maximum total
/// variation of outcome distributions over all adaptive strategies.
Rat distance_exact(const State& a, const State& b, const StrategyGuard& guard = StrategyGuard::from_env());

}  // namespace gpt::box
