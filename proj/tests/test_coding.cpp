#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gpt/coding.hpp"

using namespace gpt;
using classical::State;
using coding::Source;

namespace {

// Brute-force oracle: enumerate every length-n sequence directly.
struct BruteTypical {
  Rat mass = 0;
  BigInt count = 0;
};

BruteTypical brute_typical(const Source& src, int n, double eps) {
  const State mix = src.mixture();
  const int d = mix.size();
  BruteTypical out;
  std::vector<int> seq(n, 0);
  while (true) {
    Rat p = 1;
    for (const int x : seq) p *= mix.p[x];
    if (p > 0) {
      const double rate = -log2_rat(p) / n;
      if (std::abs(rate - classical::shannon(mix)) <= eps) {
        out.mass += p;
        out.count += 1;
      }
    }
    int pos = n - 1;
    while (pos >= 0) {
      if (++seq[pos] < d) break;
      seq[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

// Brute-force Neyman-Pearson oracle over sequences (not types).
Rat brute_pn(const State& s1, const State& s2, int n, const Rat& bound) {
  const int d = s1.size();
  struct Seq {
    Rat p1, p2;
  };
  std::vector<Seq> seqs;
  std::vector<int> seq(n, 0);
  while (true) {
    Rat p1 = 1, p2 = 1;
    for (const int x : seq) {
      p1 *= s1.p[x];
      p2 *= s2.p[x];
    }
    if (p1 != 0 || p2 != 0) seqs.push_back({p1, p2});
    int pos = n - 1;
    while (pos >= 0) {
      if (++seq[pos] < d) break;
      seq[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::stable_sort(seqs.begin(), seqs.end(), [](const Seq& a, const Seq& b) {
    const bool ai = a.p2 == 0, bi = b.p2 == 0;
    if (ai != bi) return ai;
    if (ai) return false;
    return a.p1 * b.p2 > b.p1 * a.p2;
  });
  const Rat need = 1 - bound;
  Rat cum = 0, err = 0;
  for (const auto& s : seqs) {
    if (s.p1 == 0) break;
    if (cum + s.p1 <= need) {
      cum += s.p1;
      err += s.p2;
      if (cum == need) return err;
    } else {
      return err + ((need - cum) / s.p1) * s.p2;
    }
  }
  return err;
}

}  // namespace

TEST_CASE("typical sets: small-n type DP agrees with sequence enumeration") {
  const Source src = Source::iid_letters(State::validated({Rat(9, 10), Rat(1, 10)}));
  for (const int n : {4, 8, 12}) {
    for (const double eps : {0.05, 0.2, 0.5}) {
      const auto brute = brute_typical(src, n, eps);
      const auto rep = coding::typical_mass_and_count(src, n, eps);
      CHECK(rep.mass == brute.mass);
      CHECK(rep.count == brute.count);
      CHECK(rep.upper_bound_ok);
      CHECK(rep.lower_bound_ok);
    }
  }
}

TEST_CASE("typical sets: uniform sources are entirely typical") {
  const Source src = Source::iid_letters(State::uniform(2));
  for (const int n : {1, 10, 500}) {
    const auto rep = coding::typical_mass_and_count(src, n, 0.1);
    CHECK(rep.mass == 1);
    CHECK(rep.count == boost::multiprecision::pow(BigInt(2), n));
  }
}

TEST_CASE("typical sets: three-letter alphabet goes through the general path") {
  const Source src = Source::iid_letters(State::validated({Rat(1, 2), Rat(1, 3), Rat(1, 6)}));
  const auto brute = brute_typical(src, 6, 0.25);
  const auto rep = coding::typical_mass_and_count(src, 6, 0.25);
  CHECK(rep.mass == brute.mass);
  CHECK(rep.count == brute.count);
}

TEST_CASE("typical mass grows with n and the theorem bounds hold (DP-exact)") {
  const Source src = Source::iid_letters(State::validated({Rat(9, 10), Rat(1, 10)}));
  double prev = 0;
  for (const long n : {200, 1000, 2000}) {
    const auto rep = coding::typical_mass_and_count(src, n, 0.05);
    const double mass = to_double(rep.mass);
    CHECK(mass > prev);
    prev = mass;
    CHECK(rep.upper_bound_ok);
    CHECK(rep.lower_bound_ok);
  }
  CHECK(prev > 0.98);
}

TEST_CASE("guards") {
  const Source src = Source::iid_letters(State::uniform(2));
  coding::TypicalGuard tight;
  tight.max_n = 10;
  CHECK_THROWS_AS(coding::typical_mass_and_count(src, 100, 0.1, tight), GuardExceeded);
  CHECK_THROWS_AS(coding::hypothesis_test_pn(State::uniform(2), State::uniform(2), 100, Rat(1, 2), tight),
                  GuardExceeded);
}

TEST_CASE("compression simulation") {
  SUBCASE("deterministic source compresses with zero distance at any rate") {
    const Source src = Source::iid_letters(State::point_mass(2, 0));
    const auto rep = coding::simulate_compression(src, 50, 0.01, 0.05, 5, 1);
    CHECK(rep.exact_avg_distance == 0);
    CHECK(rep.mc_avg_distance == 0.0);
    CHECK(rep.dimension_ok);
  }
  SUBCASE("exact average distance equals the atypical mass; bound holds") {
    const Source src = Source::iid_letters(State::validated({Rat(9, 10), Rat(1, 10)}));
    const auto rep = coding::simulate_compression(src, 2000, 0.6, 0.05, 10, 7);
    CHECK(rep.exact_avg_distance == 1 - rep.typical.mass);
    CHECK(to_double(rep.exact_avg_distance) <= 0.05);
    CHECK(to_double(rep.exact_avg_distance) <= rep.disturbance_bound + 1e-12);
    CHECK(rep.dimension_ok);
    CHECK_FALSE(rep.rate_below_entropy_warning);
    // the Monte-Carlo estimate is a Bernoulli average of the same quantity
    CHECK(rep.mc_avg_distance >= 0.0);
    CHECK(rep.mc_avg_distance <= 1.0);
  }
  SUBCASE("tiny instance: average distance matches the definitional computation") {
    // source emitting mixed states, small enough to enumerate every emission
    const State s0 = State::validated({Rat(2, 3), Rat(1, 3)});
    const State s1 = State::validated({Rat(1, 6), Rat(5, 6)});
    const Source src = Source::validated({Rat(1, 2), Rat(1, 2)}, {s0, s1});
    const int n = 4;
    const double eps = 0.15;
    const auto rep = coding::simulate_compression(src, n, 2.0, eps, 0, 1);

    // oracle: sum over emission sequences of q * TV(product state, encoded state)
    Rat avg = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Rat q = 1;
      std::vector<const State*> factors;
      for (int j = 0; j < n; ++j) {
        const int k = (mask >> j) & 1;
        q *= src.q[k];
        factors.push_back(&src.states[k]);
      }
      // encoded state keeps the typical part and sends the rest to a fixed
      // typical point mass, so TV = atypical mass of the emitted product
      Rat atypical = 0;
      std::vector<int> seq(n, 0);
      while (true) {
        Rat p = 1;
        for (int j = 0; j < n; ++j) p *= factors[j]->p[seq[j]];
        if (p > 0 && !coding::sequence_typical(src, seq, eps)) atypical += p;
        int pos = n - 1;
        while (pos >= 0) {
          if (++seq[pos] < 2) break;
          seq[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
      avg += q * atypical;
    }
    CHECK(rep.exact_avg_distance == avg);
  }
  SUBCASE("rate below the source entropy raises the warning flag") {
    const Source src = Source::iid_letters(State::uniform(2));
    const auto rep = coding::simulate_compression(src, 20, 0.5, 0.05, 0, 1);
    CHECK(rep.rate_below_entropy_warning);
  }
}

TEST_CASE("weak disturbance identity for restrict-and-renormalize") {
  // h_T(S) * D(S, S_T) = h_T(S) * h_A(S): the TV between a state and its
  // renormalized restriction equals the excluded mass.
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 4 + static_cast<int>(rng() % 5);
    std::vector<Rat> p(d);
    Rat sum = 0;
    for (auto& x : p) {
      x = Rat(static_cast<int>(rng() % 10), 1);
      sum += x;
    }
    if (sum == 0) continue;
    for (auto& x : p) x /= sum;
    // restrict to an arbitrary subset with positive mass
    Rat h_t = 0;
    std::vector<bool> in_t(d, false);
    for (int i = 0; i < d; ++i) {
      in_t[i] = rng() % 2 == 0;
      if (in_t[i]) h_t += p[i];
    }
    if (h_t == 0 || h_t == 1) continue;
    const Rat h_a = 1 - h_t;
    Rat tv = 0;
    for (int i = 0; i < d; ++i) {
      const Rat restricted = in_t[i] ? p[i] / h_t : Rat(0);
      tv += abs(restricted - p[i]);
    }
    tv /= 2;
    CHECK(tv == h_a);
    CHECK(h_t * tv == h_t * h_a);
    CHECK(h_t * tv <= h_a);
  }
}

TEST_CASE("hypothesis testing") {
  SUBCASE("identical states: p_N = 1/2 for every N") {
    const State s = State::validated({Rat(2, 3), Rat(1, 3)});
    for (const long n : {1, 5, 40}) {
      CHECK(coding::hypothesis_test_pn(s, s, n) == Rat(1, 2));
    }
  }
  SUBCASE("type DP agrees with the sequence-level oracle") {
    const State s1 = State::uniform(2);
    const State s2 = State::validated({Rat(1, 4), Rat(3, 4)});
    for (const int n : {1, 3, 6, 9}) {
      CHECK(coding::hypothesis_test_pn(s1, s2, n) == brute_pn(s1, s2, n, Rat(1, 2)));
    }
  }
  SUBCASE("point mass vs uniform: the randomized optimum halves the naive error") {
    const State point = State::point_mass(2, 0);
    const State unif = State::uniform(2);
    for (const long n : {1, 4, 10}) {
      // accept region = the support sequence with acceptance probability 1/2
      const Rat expected = Rat(1, 2) / boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(n));
      CHECK(coding::hypothesis_test_pn(point, unif, n) == expected);
      CHECK(coding::hypothesis_test_pn(point, unif, n) == brute_pn(point, unif, n, Rat(1, 2)));
    }
    // the achievable rate still converges to 1 bit
    const auto rates = coding::relative_entropy_estimate(point, unif, {2000});
    CHECK(rates[0].second == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("disjoint supports give p_N = 0 and an infinite rate") {
    const State a = State::point_mass(2, 0);
    const State b = State::point_mass(2, 1);
    CHECK(coding::hypothesis_test_pn(a, b, 3) == 0);
    const auto rates = coding::relative_entropy_estimate(a, b, {3});
    CHECK(std::isinf(rates[0].second));
  }
  SUBCASE("error rate approaches the KL divergence") {
    const State s1 = State::uniform(2);
    const State s2 = State::validated({Rat(1, 4), Rat(3, 4)});
    const double kl = coding::kl_divergence_bits(s1, s2);
    CHECK(kl == doctest::Approx(0.5 + 0.5 * std::log2(2.0 / 3.0)).epsilon(1e-12));
    const auto rates = coding::relative_entropy_estimate(s1, s2, {500, 2000, 5000});
    CHECK(std::abs(rates[2].second - kl) < 0.02);
    // monotone approach from above at these scales
    CHECK(rates[0].second >= rates[1].second);
    CHECK(rates[1].second >= rates[2].second);
  }
}

TEST_CASE("dimension and subspaces") {
  SUBCASE("full simplex has dimension d") {
    std::vector<int> letters;
    for (int i = 0; i < 5; ++i) letters.push_back(i);
    CHECK(coding::dimension_of(letters) == 5);
  }
  SUBCASE("a full fine-grained effect defines a one-dimensional subspace") {
    CHECK(coding::subspace_of(classical::Effect::point(4, 2)) == std::vector<int>{2});
    CHECK(coding::dimension_of({2}) == 1);
  }
  SUBCASE("non-full effects are rejected") {
    classical::Effect f;
    f.q = {Rat(1, 2), Rat(1, 2)};
    CHECK_THROWS_AS(coding::subspace_of(f), ValidationError);
  }
  SUBCASE("typical subspace dimension at small n matches the count") {
    const Source src = Source::iid_letters(State::validated({Rat(9, 10), Rat(1, 10)}));
    const int n = 10;
    const double eps = 0.25;
    const auto rep = coding::typical_mass_and_count(src, n, eps);
    // explicit effect on the product alphabet: 1 on typical sequences
    classical::Effect h_t;
    h_t.q.assign(1 << n, Rat(0));
    std::vector<int> seq(n, 0);
    for (int code = 0; code < (1 << n); ++code) {
      for (int j = 0; j < n; ++j) seq[j] = (code >> (n - 1 - j)) & 1;
      if (coding::sequence_typical(src, seq, eps)) h_t.q[code] = 1;
    }
    const auto letters = coding::subspace_of(h_t);
    CHECK(BigInt(coding::dimension_of(letters)) == rep.count);
    // log d bounds the entropy of every state supported inside
    CHECK(std::log2(static_cast<double>(letters.size())) >= 0);
  }
}
