#include "gpt/strategies.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

namespace gpt::box {

namespace {

void node_to_string(const StrategyNodePtr& node, std::ostringstream& os) {
  if (!node) return;
  os << "p" << node->part << "i" << node->input;
  if (!node->children.empty()) {
    os << "(";
    for (size_t c = 0; c < node->children.size(); ++c) {
      if (c) os << ",";
      node_to_string(node->children[c], os);
    }
    os << ")";
  }
}

BigInt count_for_mask(const Signature& sig, unsigned mask, std::map<unsigned, BigInt>& memo) {
  if (mask == 0) return 1;
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  BigInt total = 0;
  for (int k = 0; k < sig.num_parts(); ++k) {
    if (!(mask & (1u << k))) continue;
    const Part& p = sig.parts[k];
    BigInt sub = count_for_mask(sig, mask & ~(1u << k), memo);
    BigInt branches = 1;
    for (int o = 0; o < p.outputs; ++o) branches *= sub;
    total += BigInt(p.inputs) * branches;
  }
  memo.emplace(mask, total);
  return total;
}

// Memoized per-mask lists of subtrees; trees are immutable and shared.
struct Enumerator {
  const Signature& sig;
  std::map<unsigned, std::vector<StrategyNodePtr>> memo;

  const std::vector<StrategyNodePtr>& lists(unsigned mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<StrategyNodePtr> out;
    if (mask != 0) {
      for (int k = 0; k < sig.num_parts(); ++k) {
        if (!(mask & (1u << k))) continue;
        const Part& p = sig.parts[k];
        const auto& subs = lists(mask & ~(1u << k));
        for (int input = 0; input < p.inputs; ++input) {
          // Odometer over the independent choice of one subtree per outcome.
          std::vector<size_t> choice(p.outputs, 0);
          while (true) {
            auto node = std::make_shared<StrategyNode>();
            node->part = k;
            node->input = input;
            node->children.reserve(p.outputs);
            for (int o = 0; o < p.outputs; ++o) node->children.push_back(subs[choice[o]]);
            out.push_back(std::move(node));
            int pos = p.outputs - 1;
            while (pos >= 0) {
              if (++choice[pos] < subs.size()) break;
              choice[pos] = 0;
              --pos;
            }
            if (pos < 0) break;
          }
        }
      }
    } else {
      out.push_back(nullptr);  // the empty tree
    }
    return memo.emplace(mask, std::move(out)).first->second;
  }
};

void walk_leaves(const StrategyNodePtr& node, std::vector<int>& inputs, std::vector<int>& outcomes,
                 const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
  inputs[node->part] = node->input;
  for (size_t o = 0; o < node->children.size(); ++o) {
    outcomes[node->part] = static_cast<int>(o);
    if (node->children[o]) {
      walk_leaves(node->children[o], inputs, outcomes, fn);
    } else {
      fn(inputs, outcomes);
    }
  }
}

}  // namespace

std::string Strategy::to_string() const {
  std::ostringstream os;
  node_to_string(root, os);
  return os.str();
}

StrategyGuard StrategyGuard::from_env() {
  StrategyGuard g;
  if (const char* env = std::getenv("GPT_ENTROPY_MAX_STRATEGIES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) g.max_count = v;
  }
  return g;
}

BigInt count_strategies(const Signature& sig) {
  sig.validate();
  if (sig.num_parts() > 31) throw GuardExceeded("count_strategies: too many subsystems");
  std::map<unsigned, BigInt> memo;
  return count_for_mask(sig, (1u << sig.num_parts()) - 1u, memo);
}

std::vector<Strategy> enumerate_strategies(const Signature& sig, const StrategyGuard& guard) {
  sig.validate();
  if (sig.num_parts() > guard.max_parts)
    throw GuardExceeded("enumerate_strategies: " + std::to_string(sig.num_parts()) +
                        " subsystems exceed the limit of " + std::to_string(guard.max_parts));
  if (sig.joint_outputs() > guard.max_joint_outputs)
    throw GuardExceeded("enumerate_strategies: joint output count " + std::to_string(sig.joint_outputs()) +
                        " exceeds the limit of " + std::to_string(guard.max_joint_outputs));
  const BigInt count = count_strategies(sig);
  if (count > guard.max_count)
    throw GuardExceeded("enumerate_strategies: " + count.str() + " strategies exceed the limit of " +
                        std::to_string(guard.max_count) + " (override with GPT_ENTROPY_MAX_STRATEGIES)");

  Enumerator e{sig, {}};
  const auto& roots = e.lists((1u << sig.num_parts()) - 1u);
  std::vector<Strategy> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(Strategy{sig, r});
  return out;
}

void for_each_leaf(const Strategy& strat,
                   const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
  std::vector<int> inputs(strat.sig.num_parts(), 0), outcomes(strat.sig.num_parts(), 0);
  walk_leaves(strat.root, inputs, outcomes, fn);
}

std::string outcome_label(const std::vector<int>& outcomes) {
  std::ostringstream os;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (i) os << ".";
    os << outcomes[i];
  }
  return os.str();
}

OutcomeDistribution apply_strategy(const State& s, const Strategy& strat) {
  if (!(s.sig == strat.sig)) throw TheoryMismatch("apply_strategy: signature mismatch");
  const long jo = s.sig.joint_outputs();
  std::vector<Rat> p(jo, Rat(0));
  // The probability of a leaf is the table entry at the inputs induced along
  // its path: the sequential conditional probabilities telescope exactly.
  for_each_leaf(strat, [&](const std::vector<int>& in, const std::vector<int>& out) {
    p[s.sig.output_index(out)] = s.at(s.sig.input_index(in), s.sig.output_index(out));
  });
  std::vector<std::string> labels;
  labels.reserve(jo);
  for (long o = 0; o < jo; ++o) labels.push_back(outcome_label(s.sig.output_tuple(o)));
  auto d = OutcomeDistribution::from_exact(std::move(labels), std::move(p));
  d.validate();
  return d;
}

namespace {

StrategyNodePtr graft(const StrategyNodePtr& node, const StrategyNodePtr& suffix, int part_offset) {
  if (!node) return suffix;
  auto n = std::make_shared<StrategyNode>();
  n->part = node->part + part_offset;
  n->input = node->input;
  n->children.reserve(node->children.size());
  for (const auto& c : node->children) n->children.push_back(graft(c, suffix, part_offset));
  return n;
}

}  // namespace

Strategy tensor_strategy(const Strategy& a, const Strategy& b) {
  const Signature sig = concat(a.sig, b.sig);
  const StrategyNodePtr shifted_b = graft(b.root, nullptr, a.sig.num_parts());
  return Strategy{sig, graft(a.root, shifted_b, 0)};
}

Rat distance_exact(const State& a, const State& b, const StrategyGuard& guard) {
  if (!(a.sig == b.sig)) throw TheoryMismatch("distance: signature mismatch");
  Rat best = 0;
  for (const Strategy& strat : enumerate_strategies(a.sig, guard)) {
    const auto da = apply_strategy(a, strat);
    const auto db = apply_strategy(b, strat);
    Rat tv = 0;
    for (size_t i = 0; i < da.exact.size(); ++i) tv += abs(da.exact[i] - db.exact[i]);
    tv /= 2;
    if (tv > best) best = tv;
  }
  return best;
}

}  // namespace gpt::box
