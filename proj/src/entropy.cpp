#include "gpt/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gpt/exact_lp.hpp"

namespace gpt::entropy {

namespace {

constexpr double kZeroTol = 1e-9;

std::vector<int> complement_parts(const box::State& s, const std::vector<int>& a_parts) {
  std::vector<bool> in_a(s.sig.num_parts(), false);
  for (const int p : a_parts) {
    if (p < 0 || p >= s.sig.num_parts()) throw ValidationError("partition: part index out of range");
    if (in_a[p]) throw ValidationError("partition: duplicate part index");
    in_a[p] = true;
  }
  std::vector<int> rest;
  for (int p = 0; p < s.sig.num_parts(); ++p)
    if (!in_a[p]) rest.push_back(p);
  if (a_parts.empty() || rest.empty()) throw ValidationError("partition: both sides must be non-empty");
  return rest;
}

double min_over_strategies(const box::State& s, const box::StrategyGuard& guard, double alpha,
                           std::string* witness) {
  double best = std::numeric_limits<double>::infinity();
  for (const box::Strategy& strat : box::enumerate_strategies(s.sig, guard)) {
    const OutcomeDistribution d = box::apply_strategy(s, strat);
    const double h = (alpha == 1.0) ? shannon_bits(d) : renyi_bits(d, alpha);
    if (h < best) {
      best = h;
      if (witness) *witness = strat.to_string();
    }
  }
  return best;
}

// Restricted-growth-string enumeration of set partitions of {0..n-1}; calls fn
// with the block index of each element.
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int max_block) {
    if (i == n) {
      fn(a);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(max_block, b));
    }
  };
  if (n == 0) return;
  a[0] = 0;
  rec(1, 0);
}

struct ConditionedLeaf {
  Rat weight;          // probability of the leaf on the B marginal
  box::State a_state;  // conditioned state on the A parts
};

// All positive-probability leaves of a strategy on the B parts, with the
// conditioned A states.
std::vector<ConditionedLeaf> conditioned_leaves(const box::State& s, const std::vector<int>& b_parts,
                                                const box::Strategy& strat_on_b) {
  std::vector<ConditionedLeaf> out;
  box::for_each_leaf(strat_on_b, [&](const std::vector<int>& in, const std::vector<int>& outc) {
    std::vector<box::Conditioning> fixed;
    for (size_t i = 0; i < b_parts.size(); ++i) fixed.push_back({b_parts[i], in[i], outc[i]});
    // Leaf probability from the B marginal; exact.
    Rat w = 1;
    {
      box::State cur = s;
      // Condition part by part, tracking the remaining indices of b_parts.
      std::vector<int> remaining(cur.sig.num_parts());
      for (int i = 0; i < cur.sig.num_parts(); ++i) remaining[i] = i;
      for (const auto& fx : fixed) {
        int local = -1;
        for (size_t i = 0; i < remaining.size(); ++i)
          if (remaining[i] == fx.part) local = static_cast<int>(i);
        const Rat p = box::outcome_probability(cur, local, fx.input, fx.outcome);
        w *= p;
        if (p == 0) break;
        cur = box::condition(cur, local, fx.input, fx.outcome);
        remaining.erase(remaining.begin() + local);
      }
      if (w != 0) {
        // cur is now the conditioned state on the A parts (original order).
        out.push_back({w, std::move(cur)});
        return;
      }
    }
  });
  return out;
}

box::State mix_states(const std::vector<std::pair<Rat, const box::State*>>& weighted) {
  Rat total = 0;
  for (const auto& [w, s] : weighted) total += w;
  std::vector<Rat> table(weighted[0].second->table.size(), Rat(0));
  for (const auto& [w, s] : weighted) {
    for (size_t i = 0; i < table.size(); ++i) table[i] += (w / total) * s->table[i];
  }
  return box::State::validated(weighted[0].second->sig, std::move(table));
}

}  // namespace

Report hhat(const classical::State& s) {
  return Report{classical::shannon(s), "fiducial", true, false};
}

Report hhat(const quantum::Density& s) {
  return Report{quantum::von_neumann_entropy_bits(s), "eigenbasis", true, false};
}

Report hhat(const box::State& s, const box::StrategyGuard& guard) {
  Report r;
  r.value_bits = min_over_strategies(s, guard, 1.0, &r.witness);
  r.exact = true;
  return r;
}

Report hhat(const AnyState& s, const box::StrategyGuard& guard) {
  if (const auto* c = std::get_if<classical::State>(&s)) return hhat(*c);
  if (const auto* q = std::get_if<quantum::Density>(&s)) return hhat(*q);
  return hhat(std::get<box::State>(s), guard);
}

Report hhat_alpha(const classical::State& s, double alpha) {
  if (alpha == 1.0) return hhat(s);
  std::vector<double> p;
  for (const Rat& x : s.p) p.push_back(to_double(x));
  return Report{renyi_bits(p, alpha), "fiducial", true, false};
}

Report hhat_alpha(const box::State& s, double alpha, const box::StrategyGuard& guard) {
  if (alpha == 1.0) return hhat(s, guard);
  Report r;
  r.value_bits = min_over_strategies(s, guard, alpha, &r.witness);
  r.exact = true;
  return r;
}

Report hhat_alpha(const quantum::Density& s, double alpha, uint64_t seed, int povm_samples) {
  if (alpha == 1.0) return hhat(s);
  // Optimality of the eigenbasis is only established for the Shannon case, so
  // the value returned here is an upper bound refined by a random POVM sweep.
  Report r;
  r.value_bits = renyi_bits(eigenvalues_clamped(s), alpha);
  r.witness = "eigenbasis";
  r.exact = false;
  r.upper_bound_only = true;
  for (int k = 0; k < povm_samples; ++k) {
    const auto povm = quantum::sample_random_rank1_povm(s.dim(), s.dim(), seed + k);
    const double h = renyi_bits(apply_povm(s, povm), alpha);
    if (h < r.value_bits) {
      r.value_bits = h;
      r.witness = "random rank-1 povm #" + std::to_string(k);
    }
  }
  return r;
}

Report hhat_alpha(const AnyState& s, double alpha, const box::StrategyGuard& guard) {
  if (const auto* c = std::get_if<classical::State>(&s)) return hhat_alpha(*c, alpha);
  if (const auto* q = std::get_if<quantum::Density>(&s)) return hhat_alpha(*q, alpha);
  return hhat_alpha(std::get<box::State>(s), alpha, guard);
}

double cond_standard(const box::State& s, const std::vector<int>& a_parts, const box::StrategyGuard& guard) {
  const std::vector<int> b_parts = complement_parts(s, a_parts);
  return hhat(s, guard).value_bits - hhat(box::marginal(s, b_parts), guard).value_bits;
}

double cond_standard_quantum(const quantum::Density& ab, int da, int db) {
  return quantum::conditional_vn_bits(ab, da, db);
}

double cond_plus(const box::State& s, const std::vector<int>& a_parts, const box::StrategyGuard& guard) {
  const std::vector<int> b_parts = complement_parts(s, a_parts);
  std::vector<int> sorted_a = a_parts;
  std::sort(sorted_a.begin(), sorted_a.end());
  const box::State a_marginal = box::marginal(s, sorted_a);

  // Unit measurement on B: no conditioning at all.
  double best = hhat(a_marginal, guard).value_bits;

  const box::Signature b_sig = s.sig.subset(b_parts);
  for (const box::Strategy& strat : box::enumerate_strategies(b_sig, guard)) {
    const auto leaves = conditioned_leaves(s, b_parts, strat);
    const int n = static_cast<int>(leaves.size());
    if (n == 0) continue;
    if (n > 12) throw GuardExceeded("cond_plus: too many outcomes for the merging sweep");
    // Entropy of each conditioned state (finest partition), reused below.
    for_each_set_partition(n, [&](const std::vector<int>& block_of) {
      const int blocks = *std::max_element(block_of.begin(), block_of.end()) + 1;
      double value = 0;
      for (int g = 0; g < blocks; ++g) {
        std::vector<std::pair<Rat, const box::State*>> members;
        Rat wg = 0;
        for (int i = 0; i < n; ++i) {
          if (block_of[i] == g) {
            members.emplace_back(leaves[i].weight, &leaves[i].a_state);
            wg += leaves[i].weight;
          }
        }
        const box::State mixed = mix_states(members);
        value += to_double(wg) * hhat(mixed, guard).value_bits;
      }
      if (value < best) best = value;
    });
  }
  return best;
}

double mutual(const box::State& s, const std::vector<int>& a_parts, const box::StrategyGuard& guard) {
  const std::vector<int> b_parts = complement_parts(s, a_parts);
  std::vector<int> sorted_a = a_parts;
  std::sort(sorted_a.begin(), sorted_a.end());
  return hhat(box::marginal(s, sorted_a), guard).value_bits + hhat(box::marginal(s, b_parts), guard).value_bits -
         hhat(s, guard).value_bits;
}

double mutual_plus(const box::State& s, const std::vector<int>& a_parts, const box::StrategyGuard& guard) {
  std::vector<int> sorted_a = a_parts;
  std::sort(sorted_a.begin(), sorted_a.end());
  complement_parts(s, a_parts);  // validates the bipartition
  return hhat(box::marginal(s, sorted_a), guard).value_bits - cond_plus(s, a_parts, guard);
}

double cond_mutual(const box::State& s, const std::vector<int>& a_parts, const std::vector<int>& b_parts,
                   const box::StrategyGuard& guard) {
  std::vector<int> ab = a_parts;
  ab.insert(ab.end(), b_parts.begin(), b_parts.end());
  const std::vector<int> c_parts = complement_parts(s, ab);
  std::vector<int> ac = a_parts;
  ac.insert(ac.end(), c_parts.begin(), c_parts.end());
  std::sort(ac.begin(), ac.end());
  std::vector<int> sorted_c = c_parts;
  // H(A|C) - H(A|BC) = [H(AC) - H(C)] - [H(ABC) - H(BC)]
  std::vector<int> bc = b_parts;
  bc.insert(bc.end(), c_parts.begin(), c_parts.end());
  std::sort(bc.begin(), bc.end());
  const double h_ac = hhat(box::marginal(s, ac), guard).value_bits;
  const double h_c = hhat(box::marginal(s, sorted_c), guard).value_bits;
  const double h_abc = hhat(s, guard).value_bits;
  const double h_bc = hhat(box::marginal(s, bc), guard).value_bits;
  return (h_ac - h_c) - (h_abc - h_bc);
}

double accessible_info(const box::State& s, const std::vector<int>& a_parts, const box::StrategyGuard& guard) {
  const std::vector<int> b_parts = complement_parts(s, a_parts);
  std::vector<int> sorted_a = a_parts;
  std::sort(sorted_a.begin(), sorted_a.end());
  const box::Signature a_sig = s.sig.subset(sorted_a);
  const box::Signature b_sig = s.sig.subset(b_parts);

  struct Leaf {
    std::vector<int> in, out;
  };
  const auto leaves_of = [](const box::Strategy& strat) {
    std::vector<Leaf> ls;
    box::for_each_leaf(strat, [&](const std::vector<int>& in, const std::vector<int>& out) {
      ls.push_back({in, out});
    });
    return ls;
  };

  const auto a_strats = box::enumerate_strategies(a_sig, guard);
  const auto b_strats = box::enumerate_strategies(b_sig, guard);
  double best = 0;
  const int n = s.sig.num_parts();
  for (const auto& sa : a_strats) {
    const auto la = leaves_of(sa);
    for (const auto& sb : b_strats) {
      const auto lb = leaves_of(sb);
      std::vector<Rat> joint;
      joint.reserve(la.size() * lb.size());
      for (const Leaf& x : la) {
        for (const Leaf& y : lb) {
          std::vector<int> in(n), out(n);
          for (size_t i = 0; i < sorted_a.size(); ++i) {
            in[sorted_a[i]] = x.in[i];
            out[sorted_a[i]] = x.out[i];
          }
          for (size_t i = 0; i < b_parts.size(); ++i) {
            in[b_parts[i]] = y.in[i];
            out[b_parts[i]] = y.out[i];
          }
          joint.push_back(s.at(s.sig.input_index(in), s.sig.output_index(out)));
        }
      }
      const double mi =
          classical::mutual_information_bits(joint, static_cast<int>(la.size()), static_cast<int>(lb.size()));
      best = std::max(best, mi);
    }
  }
  return best;
}

DecompositionReport decomposition_entropy(const box::State& s, const box::VertexGuard& guard) {
  DecompositionReport rep;
  rep.vertices = box::enumerate_pure_states(s.sig, guard);

  // A vertex can carry weight only if its support is inside the state's.
  std::vector<int> usable;
  for (size_t v = 0; v < rep.vertices.vertices.size(); ++v) {
    bool ok = true;
    for (size_t i = 0; i < s.table.size() && ok; ++i) {
      if (s.table[i] == 0 && rep.vertices.vertices[v].table[i] != 0) ok = false;
    }
    if (ok) usable.push_back(static_cast<int>(v));
  }

  const int rows = static_cast<int>(s.table.size()) + 1;
  exact::Matrix A(rows, static_cast<int>(usable.size()));
  std::vector<Rat> b(rows, Rat(0));
  for (size_t i = 0; i < s.table.size(); ++i) b[i] = s.table[i];
  b[rows - 1] = 1;
  for (size_t c = 0; c < usable.size(); ++c) {
    const box::State& v = rep.vertices.vertices[usable[c]];
    for (size_t i = 0; i < v.table.size(); ++i) A.at(static_cast<int>(i), static_cast<int>(c)) = v.table[i];
    A.at(rows - 1, static_cast<int>(c)) = 1;
  }

  const auto solutions = exact::enumerate_extreme_solutions(A, b, guard.max_nodes);
  if (solutions.empty()) throw ValidationError("decomposition_entropy: state is not inside the pure-state polytope");

  double best = std::numeric_limits<double>::infinity();
  for (const auto& sol : solutions) {
    const double h = shannon_bits(sol.weights);
    if (h < best) {
      best = h;
      rep.weights.clear();
      for (size_t i = 0; i < sol.support.size(); ++i) rep.weights.emplace_back(sol.weights[i], usable[sol.support[i]]);
    }
  }
  rep.value_bits = best;
  rep.exact = true;
  std::ostringstream os;
  for (size_t i = 0; i < rep.weights.size(); ++i) {
    if (i) os << " + ";
    os << rat_string(rep.weights[i].first) << "*v" << rep.weights[i].second;
  }
  rep.witness = os.str();
  return rep;
}

DecompositionReport decomposition_entropy(const classical::State& s) {
  return decomposition_entropy(box::State::from_classical(s));
}

bool can_determine(const box::State& s, const std::vector<int>& a_parts, const box::StrategyGuard& guard) {
  for (const int p : a_parts) {
    if (s.sig.parts[p].inputs != 1)
      throw ValidationError("can_determine: the predicted system must be classical (single-input parts)");
  }
  const std::vector<int> b_parts = complement_parts(s, a_parts);
  const box::Signature b_sig = s.sig.subset(b_parts);
  for (const box::Strategy& strat : box::enumerate_strategies(b_sig, guard)) {
    bool all_deterministic = true;
    for (const ConditionedLeaf& leaf : conditioned_leaves(s, b_parts, strat)) {
      bool deterministic = false;
      for (const Rat& x : leaf.a_state.table)
        if (x == 1) deterministic = true;
      if (!deterministic) {
        all_deterministic = false;
        break;
      }
    }
    if (all_deterministic) return true;
  }
  return false;
}

ReasonablenessReport check_reasonableness(CondFn fn, const box::State& s, const std::vector<int>& a_parts,
                                          const box::StrategyGuard& guard) {
  ReasonablenessReport rep;
  rep.determinable = can_determine(s, a_parts, guard);
  rep.value = (fn == CondFn::Standard) ? cond_standard(s, a_parts, guard) : cond_plus(s, a_parts, guard);
  if (rep.determinable) {
    rep.cond1 = std::abs(rep.value) <= kZeroTol ? Verdict::Pass : Verdict::Fail;
    rep.cond2 = Verdict::Vacuous;
    rep.cond2prime = Verdict::Vacuous;
  } else {
    rep.cond1 = Verdict::Vacuous;
    rep.cond2 = rep.value > kZeroTol ? Verdict::Pass : Verdict::Fail;
    rep.cond2prime = std::abs(rep.value) > kZeroTol ? Verdict::Pass : Verdict::Fail;
  }
  return rep;
}

SsaReport check_strong_subadditivity(const box::State& s, const std::vector<int>& a_parts,
                                     const std::vector<int>& b_parts, const box::StrategyGuard& guard) {
  std::vector<int> ab = a_parts;
  ab.insert(ab.end(), b_parts.begin(), b_parts.end());
  const std::vector<int> c_parts = complement_parts(s, ab);
  std::vector<int> ac = a_parts, bc = b_parts;
  ac.insert(ac.end(), c_parts.begin(), c_parts.end());
  bc.insert(bc.end(), c_parts.begin(), c_parts.end());
  std::sort(ac.begin(), ac.end());
  std::sort(bc.begin(), bc.end());
  SsaReport rep;
  rep.lhs = hhat(s, guard).value_bits + hhat(box::marginal(s, c_parts), guard).value_bits;
  rep.rhs = hhat(box::marginal(s, ac), guard).value_bits + hhat(box::marginal(s, bc), guard).value_bits;
  rep.violated = rep.lhs > rep.rhs + kZeroTol;
  return rep;
}

}  // namespace gpt::entropy
