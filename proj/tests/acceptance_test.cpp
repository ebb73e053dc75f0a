// Acceptance suite: one pass/fail line per criterion, exit 0 iff all hold.

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include "gpt/coding.hpp"
#include "gpt/entropy.hpp"
#include "gpt/games.hpp"
#include "gpt/measurement.hpp"
#include "gpt/strategies.hpp"

using namespace gpt;
using box::Part;
using box::Signature;

namespace {

constexpr double kTol = 1e-9;

struct Criterion {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      notes.push_back(what);
    }
  }
  void expect_near(double got, double want, const std::string& what, double tol = kTol) {
    if (std::abs(got - want) > tol) {
      ++failures;
      notes.push_back(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
    }
  }
};

box::State random_ns_state(const box::VertexSet& vs, std::mt19937_64& rng) {
  std::vector<Rat> w(vs.vertices.size());
  Rat sum = 0;
  for (auto& x : w) {
    x = Rat(static_cast<int>(rng() % 10), 1);
    sum += x;
  }
  if (sum == 0) {
    w[0] = 1;
    sum = 1;
  }
  std::vector<Rat> table(vs.sig.table_size(), Rat(0));
  for (size_t v = 0; v < vs.vertices.size(); ++v)
    for (size_t i = 0; i < table.size(); ++i) table[i] += (w[v] / sum) * vs.vertices[v].table[i];
  return box::State::validated(vs.sig, std::move(table));
}

int run(int index, const std::string& name, const std::function<void(Criterion&)>& body) {
  Criterion c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures++;
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  if (c.failures == 0) {
    std::cout << "[PASS] criterion " << index << ": " << name << "\n";
    return 0;
  }
  std::cout << "[FAIL] criterion " << index << ": " << name << "\n";
  for (const auto& note : c.notes) std::cout << "       " << note << "\n";
  return 1;
}

}  // namespace

int main() {
  int failures = 0;
  const box::State rac = games::build_rac_state();
  const box::State x0z = box::marginal(rac, {0, 2});
  const box::State x1z = box::marginal(rac, {1, 2});

  failures += run(1, "entropy reference values for the parity-encoding states", [&](Criterion& c) {
    c.expect_near(entropy::hhat(classical::State::uniform(2)).value_bits, 1, "H(X)");
    const box::State pr = box::pr_box();
    c.expect_near(entropy::hhat(box::marginal(pr, {0})).value_bits, 1, "H(Y)");
    c.expect_near(entropy::hhat(box::marginal(pr, {1})).value_bits, 1, "H(Z)");
    c.expect_near(entropy::hhat(pr).value_bits, 1, "H(YZ)");
    c.expect_near(entropy::hhat(box::marginal(rac, {0})).value_bits, 1, "H(X0)");
    c.expect_near(entropy::hhat(box::marginal(rac, {1})).value_bits, 1, "H(X1)");
    c.expect_near(entropy::hhat(box::marginal(rac, {2})).value_bits, 1, "H(Z rac)");
    c.expect_near(entropy::hhat(box::marginal(rac, {0, 1})).value_bits, 2, "H(X0X1)");
    c.expect_near(entropy::hhat(rac).value_bits, 2, "H(X0X1Z)");
    c.expect_near(entropy::hhat(x0z).value_bits, 1, "H(X0Z)");
    c.expect_near(entropy::hhat(x1z).value_bits, 1, "H(X1Z)");
  });

  failures += run(2, "conditional and mutual information reference values", [&](Criterion& c) {
    c.expect_near(entropy::cond_standard(x0z, {0}), 0, "H(X0|Z)");
    c.expect_near(entropy::cond_standard(x1z, {0}), 0, "H(X1|Z)");
    c.expect_near(entropy::cond_standard(rac, {0, 1}), 1, "H(X0X1|Z)");
    c.expect_near(entropy::cond_standard(rac, {0}), 1, "H(X0|X1Z)");
    c.expect_near(entropy::cond_plus(x0z, {0}), 0, "H+(X0|Z)");
    c.expect_near(entropy::cond_plus(rac, {0, 1}), 1, "H+(X0X1|Z)");
    c.expect_near(entropy::cond_plus(rac, {0}), 0, "H+(X0|ZX1)");
    c.expect_near(entropy::mutual(x0z, {0}), 1, "I(X0;Z)");
    c.expect_near(entropy::mutual(x1z, {0}), 1, "I(X1;Z)");
    c.expect_near(entropy::mutual(rac, {0, 1}), 1, "I(X0X1;Z)");
  });

  failures += run(3, "strong subadditivity fails by exactly one bit", [&](Criterion& c) {
    const auto ssa = entropy::check_strong_subadditivity(rac, {0}, {1});
    c.expect_near(ssa.lhs - ssa.rhs, 1, "lhs - rhs");
    c.expect(ssa.violated, "violation flag");
  });

  failures += run(4, "one-bit-message information values", [&](Criterion& c) {
    const box::State ic = games::build_ic_state();
    c.expect_near(entropy::mutual(ic, {0}), 0, "I(A0;A1MZ)");
    c.expect_near(entropy::mutual(box::marginal(ic, {0, 2, 3}), {0}), 1, "I(A0;MZ)");
    c.expect_near(entropy::mutual(ic, {0, 1}), 1, "I(A0A1;MZ)");
    c.expect_near(entropy::mutual_plus(ic, {0, 1}), 1, "I+(A0A1;MZ)");
    c.expect_near(games::ic_inequality_value(ic), 2, "ic value");
  });

  failures += run(5, "decomposition entropy values and counterexamples", [&](Criterion& c) {
    const Signature one{{Part{2, 2}}};
    const box::State s1 = box::State::validated(one, {Rat(1), Rat(0), Rat(1, 2), Rat(1, 2)});
    const box::State s2 = box::State::validated(one, {Rat(1, 2), Rat(1, 2), Rat(1), Rat(0)});
    const auto r1 = entropy::decomposition_entropy(s1);
    const auto r2 = entropy::decomposition_entropy(s2);
    c.expect_near(r1.value_bits, 1, "Hd(S1)");
    c.expect_near(r2.value_bits, 1, "Hd(S2)");
    std::vector<Rat> mix(4);
    for (int i = 0; i < 4; ++i) mix[i] = (s1.table[i] + s2.table[i]) / 2;
    const auto rmix = entropy::decomposition_entropy(box::State::validated(one, mix));
    c.expect_near(rmix.value_bits, binary_entropy_bits(0.75), "Hd(Smix)");
    c.expect(rmix.value_bits < 0.5 * r1.value_bits + 0.5 * r2.value_bits - 1e-6, "concavity fails strictly");

    const Signature two{{Part{2, 2}, Part{2, 2}}};
    const std::vector<Rat> t = {Rat(2, 8), Rat(3, 8), Rat(3, 8), Rat(0),    Rat(2, 8), Rat(3, 8),
                                Rat(3, 8), Rat(0),    Rat(5, 8), Rat(0),    Rat(0),    Rat(3, 8),
                                Rat(2, 8), Rat(3, 8), Rat(3, 8), Rat(0)};
    const box::State sab = box::State::validated(two, t);
    const auto rab = entropy::decomposition_entropy(sab);
    c.expect_near(rab.value_bits, 2, "Hd(S_AB)");
    c.expect(rab.weights.size() == 4, "witness has four atoms");
    int entangled = 0;
    for (const auto& [w, v] : rab.weights) {
      c.expect(w == Rat(1, 4), "witness weights are all 1/4");
      if (!rab.vertices.is_product[v]) ++entangled;
    }
    c.expect(entangled == 1, "witness uses one entangled and three product states");
    const auto ra = entropy::decomposition_entropy(box::marginal(sab, {0}));
    const auto rb = entropy::decomposition_entropy(box::marginal(sab, {1}));
    c.expect_near(ra.value_bits, binary_entropy_bits(0.375), "Hd(A)");
    c.expect_near(rb.value_bits, binary_entropy_bits(0.375), "Hd(B)");
    c.expect(rab.value_bits > ra.value_bits + rb.value_bits + 1e-6, "subadditivity fails strictly");

    c.expect_near(entropy::decomposition_entropy(x0z).value_bits, 2, "Hd(X0Z)");
  });

  failures += run(6, "vertex enumeration and CHSH values", [&](Criterion& c) {
    const auto vs = box::enumerate_pure_states(Signature{{Part{2, 2}, Part{2, 2}}});
    c.expect(vs.vertices.size() == 24, "24 vertices");
    c.expect(vs.num_product() == 16, "16 product vertices");
    c.expect(vs.num_entangled() == 8, "8 entangled vertices");
    c.expect_near(box::chsh_value(box::pr_box()), 4, "CHSH(PR)");
    double best_local = -8;
    for (size_t v = 0; v < vs.vertices.size(); ++v)
      if (vs.is_product[v]) best_local = std::max(best_local, box::chsh_value(vs.vertices[v]));
    c.expect_near(best_local, 2, "local deterministic maximum");
  });

  failures += run(7, "reduction to the Shannon and von Neumann entropies", [&](Criterion& c) {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 100; ++rep) {
      const int d = 2 + static_cast<int>(rng() % 4);
      std::vector<Rat> p(d);
      Rat sum = 0;
      for (auto& x : p) {
        x = Rat(static_cast<int>(rng() % 40), 1);
        sum += x;
      }
      if (sum == 0) p[0] = sum = 1;
      for (auto& x : p) x /= sum;
      const auto s = classical::State::validated(p);
      double shannon = 0;
      for (const Rat& x : s.p)
        if (x > 0) shannon -= to_double(x) * std::log2(to_double(x));
      if (std::abs(entropy::hhat(s).value_bits - shannon) > 1e-12) {
        c.expect(false, "classical reduction at rep " + std::to_string(rep));
        break;
      }
    }
    int povms = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const int d = rep % 2 == 0 ? 2 : 3;
      const auto rho = quantum::random_density(d, 5000 + rep);
      const double s = quantum::von_neumann_entropy_bits(rho);
      c.expect(std::abs(entropy::hhat(rho).value_bits - s) <= 1e-12, "quantum reduction");
      for (int k = 0; k < 2; ++k, ++povms) {
        const auto povm = quantum::sample_random_rank1_povm(d, d + (k % 2), 9000 + 31 * rep + k);
        if (quantum::povm_output_entropy(rho, povm) < s - kTol) {
          c.expect(false, "a random POVM beat the eigenbasis at rep " + std::to_string(rep));
        }
      }
    }
    c.expect(povms == 200, "200 POVM samples exercised");
  });

  failures += run(8, "metric, entropy and conditional-entropy property suites", [&](Criterion& c) {
    std::mt19937_64 rng(81);
    const auto vs2 = box::enumerate_pure_states(Signature{{Part{2, 2}, Part{2, 2}}});

    // metric axioms
    for (int rep = 0; rep < 10; ++rep) {
      const auto a = random_ns_state(vs2, rng), b = random_ns_state(vs2, rng), d = random_ns_state(vs2, rng);
      const Rat dab = box::distance_exact(a, b), dba = box::distance_exact(b, a);
      const Rat dad = box::distance_exact(a, d), dbd = box::distance_exact(b, d);
      c.expect(dab >= 0 && dab <= 1, "distance range");
      c.expect(dab == dba, "symmetry");
      c.expect(box::distance_exact(a, a) == 0, "identity");
      c.expect(to_double(dad) <= to_double(dab) + to_double(dbd) + kTol, "triangle inequality");
      if (!(a.table == b.table)) c.expect(dab > 0, "indiscernibility");
    }

    // concavity, subadditivity, boundedness, limited continuity
    const double log_outputs = std::log2(4.0);
    int continuity_checked = 0;
    for (int rep = 0; rep < 60; ++rep) {
      const auto s1 = random_ns_state(vs2, rng);
      const auto s2 = random_ns_state(vs2, rng);
      const double h1 = entropy::hhat(s1).value_bits;
      const double h2v = entropy::hhat(s2).value_bits;
      c.expect(h1 >= -1e-12 && h1 <= log_outputs + kTol, "boundedness");
      for (const Rat& p : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
        std::vector<Rat> mixed(s1.table.size());
        for (size_t i = 0; i < mixed.size(); ++i) mixed[i] = p * s1.table[i] + (1 - p) * s2.table[i];
        const auto sm = box::State::validated(s1.sig, mixed);
        c.expect(entropy::hhat(sm).value_bits >= to_double(p) * h1 + (1 - to_double(p)) * h2v - kTol,
                 "concavity");
      }
      const double ha = entropy::hhat(box::marginal(s1, {0})).value_bits;
      const double hb = entropy::hhat(box::marginal(s1, {1})).value_bits;
      c.expect(ha + hb >= h1 - kTol, "subadditivity");
      const double dist = to_double(box::distance_exact(s1, s2));
      if (dist > 0 && dist < 1.0 / std::exp(1.0)) {
        ++continuity_checked;
        c.expect(std::abs(h1 - h2v) <= dist * std::log2(4.0 / dist) + kTol, "limited continuity");
      }
    }
    c.expect(continuity_checked > 0, "continuity cases sampled");

    // conditioning monotonicity and the chain rule for classical messages
    const Signature tri{{Part{1, 2}, Part{1, 2}, Part{2, 2}}};
    const auto vs3 = box::enumerate_pure_states(tri);
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = random_ns_state(vs3, rng);
      const double ha = entropy::hhat(box::marginal(s, {0})).value_bits;
      const double h_ab = entropy::cond_plus(box::marginal(s, {0, 1}), {0});
      const double h_abc = entropy::cond_plus(s, {0});
      c.expect(ha >= h_ab - kTol && h_ab >= h_abc - kTol, "conditioning reduces entropy");
      const double chain_lhs = entropy::cond_plus(s, {0});
      const double chain_rhs = entropy::cond_plus(s, {0, 1}) - entropy::hhat(box::marginal(s, {1})).value_bits;
      c.expect(chain_lhs >= chain_rhs - kTol, "box chain rule");
      const double with_m = entropy::mutual_plus(s, {0});
      const double without = entropy::mutual_plus(box::marginal(s, {0, 2}), {0});
      c.expect(with_m <= without + 1.0 + kTol, "one-bit transmission bound");
    }

    // Renyi ordering: entropies are non-increasing in the order
    const double orders[] = {0.5, 1.0, 2.0, std::numeric_limits<double>::infinity()};
    for (int rep = 0; rep < 10; ++rep) {
      const auto s = random_ns_state(vs2, rng);
      double prev = std::numeric_limits<double>::infinity();
      for (const double a : orders) {
        const double h = entropy::hhat_alpha(s, a).value_bits;
        c.expect(h <= prev + kTol, "Renyi ordering");
        prev = h;
      }
    }
  });

  failures += run(9, "no reasonable conditional entropy is subadditive here", [&](Criterion& c) {
    c.expect(entropy::can_determine(x0z, {0}), "X0 is determinable from Z");
    c.expect(entropy::can_determine(x1z, {0}), "X1 is determinable from Z");
    c.expect(!entropy::can_determine(rac, {0, 1}), "the pair is not determinable from Z");

    const auto plus_x0 = entropy::check_reasonableness(entropy::CondFn::Plus, x0z, {0});
    const auto plus_pair = entropy::check_reasonableness(entropy::CondFn::Plus, rac, {0, 1});
    c.expect(plus_x0.cond1 == entropy::Verdict::Pass, "cond_plus satisfies {1}");
    c.expect(plus_pair.cond2 == entropy::Verdict::Pass, "cond_plus satisfies {2}");

    const auto std_x0 = entropy::check_reasonableness(entropy::CondFn::Standard, rac, {0});
    c.expect(std_x0.cond1 == entropy::Verdict::Fail, "cond_standard violates {1}");

    const double pair_given_z = entropy::cond_plus(rac, {0, 1});
    const double x0_given_z = entropy::cond_plus(x0z, {0});
    const double x1_given_z = entropy::cond_plus(x1z, {0});
    const double x0_given_x1z = entropy::cond_plus(rac, {0});
    c.expect(pair_given_z > x0_given_z + x1_given_z + 1e-6, "cond_plus violates subadditivity");
    c.expect(std::abs(pair_given_z - (x1_given_z + x0_given_x1z)) > 1e-6, "cond_plus violates the chain rule");
  });

  failures += run(10, "typical sets, compression and hypothesis testing", [&](Criterion& c) {
    const auto src = coding::Source::iid_letters(classical::State::validated({Rat(9, 10), Rat(1, 10)}));
    double prev_mass = 0;
    for (const long n : {200L, 1000L, 2000L}) {
      const auto rep = coding::typical_mass_and_count(src, n, 0.05);
      c.expect(to_double(rep.mass) > prev_mass, "typical mass grows at n=" + std::to_string(n));
      prev_mass = to_double(rep.mass);
      c.expect(rep.upper_bound_ok, "count upper bound at n=" + std::to_string(n));
      c.expect(rep.lower_bound_ok, "count lower bound at n=" + std::to_string(n));
    }
    const auto comp = coding::simulate_compression(src, 2000, 0.6, 0.05, 5, 11);
    c.expect(to_double(comp.exact_avg_distance) <= 0.05, "exact average distance <= 0.05");
    c.expect(comp.dimension_ok, "achieved dimension <= 2^(nR)");
    c.expect(comp.exact_avg_distance == 1 - comp.typical.mass, "distance equals the atypical mass");
    c.expect(to_double(comp.exact_avg_distance) <= comp.disturbance_bound + 1e-12, "disturbance bound");

    const auto s1 = classical::State::uniform(2);
    const auto s2 = classical::State::validated({Rat(1, 4), Rat(3, 4)});
    const double kl = coding::kl_divergence_bits(s1, s2);
    c.expect_near(kl, 0.5 + 0.5 * std::log2(2.0 / 3.0), "KL oracle", 1e-12);
    const auto rates = coding::relative_entropy_estimate(s1, s2, {5000});
    c.expect(std::abs(rates[0].second - kl) <= 0.02, "error exponent within 0.02 of the divergence");
  });

  failures += run(11, "noisy-box threshold for the one-bit-message bound", [&](Criterion& c) {
    const auto ic_gap = [](double p) {
      return games::ic_inequality_value(games::build_ic_state_noisy(parse_rat(std::to_string(p)))) - 1.0;
    };
    double lo = 0.5, hi = 1.0;
    c.expect(ic_gap(lo) < 0, "no violation at p = 1/2");
    c.expect(ic_gap(hi) > 0, "violation at p = 1");
    while (hi - lo > 1e-4) {
      const double mid = (lo + hi) / 2;
      (ic_gap(mid) < 0 ? lo : hi) = mid;
    }
    const double threshold = (lo + hi) / 2;
    c.expect(threshold >= 0.88 && threshold <= 0.90,
             "threshold " + std::to_string(threshold) + " inside [0.88, 0.90]");
    // the conditional-subadditivity gap itself is positive all the way down
    const double gap_at_09 = entropy::cond_standard(games::build_rac_state_noisy(Rat(9, 10)), {0, 1}) -
                             entropy::cond_standard(box::marginal(games::build_rac_state_noisy(Rat(9, 10)), {0, 2}), {0}) -
                             entropy::cond_standard(box::marginal(games::build_rac_state_noisy(Rat(9, 10)), {1, 2}), {0});
    c.expect(gap_at_09 > 0, "subadditivity gap positive at p = 0.9");
  });

  if (failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria failed\n";
  return 1;
}
