#include "gpt/coding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace gpt::coding {

namespace {

using boost::multiprecision::pow;

// Common-denominator integer view of a probability vector: p_i = nums[i]/den.
struct IntegerView {
  std::vector<BigInt> nums;
  BigInt den;
};

IntegerView integer_view(const std::vector<Rat>& p) {
  IntegerView v;
  v.den = 1;
  for (const Rat& x : p) v.den = boost::multiprecision::lcm(v.den, denominator(x));
  for (const Rat& x : p) v.nums.push_back(numerator(x) * (v.den / denominator(x)));
  return v;
}

// Visits every composition (c_0..c_{m-1}) of n over the given letters, along
// with its multinomial coefficient and the product prod nums[i]^(c_i).
// Requires a factorial cache; used for alphabets > 2.
struct TypeVisitor {
  std::function<void(const std::vector<int>& counts, const BigInt& multinomial, const BigInt& prob_num)>
      visit;
};

std::vector<BigInt> factorials(long n) {
  std::vector<BigInt> f(n + 1);
  f[0] = 1;
  for (long i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

void enumerate_types(long n, const std::vector<BigInt>& nums, unsigned long max_types, const TypeVisitor& tv) {
  const int m = static_cast<int>(nums.size());
  // Letters with zero probability can never appear in a positive-probability
  // sequence; their counts are pinned at 0.
  std::vector<int> positive;
  for (int i = 0; i < m; ++i)
    if (nums[i] > 0) positive.push_back(i);
  if (positive.empty()) throw ValidationError("type enumeration: no positive-probability letters");

  const auto fact = factorials(n);
  std::vector<int> counts(m, 0);
  unsigned long visited = 0;
  std::function<void(int, long)> rec = [&](int idx, long left) {
    if (idx == static_cast<int>(positive.size()) - 1) {
      counts[positive[idx]] = static_cast<int>(left);
      if (++visited > max_types) throw GuardExceeded("type enumeration exceeded the type-count limit");
      BigInt multinomial = fact[n];
      BigInt prob = 1;
      for (const int i : positive) {
        multinomial /= fact[counts[i]];
        if (counts[i] > 0) prob *= pow(nums[i], counts[i]);
      }
      tv.visit(counts, multinomial, prob);
      counts[positive[idx]] = 0;
      return;
    }
    for (long c = 0; c <= left; ++c) {
      counts[positive[idx]] = static_cast<int>(c);
      rec(idx + 1, left - c);
    }
    counts[positive[idx]] = 0;
  };
  rec(0, n);
}

// Fast path for binary alphabets with both letters positive: incremental
// exact updates, no factorial cache.
void enumerate_types_binary(long n, const BigInt& a0, const BigInt& a1, const TypeVisitor& tv) {
  BigInt binom = 1;                                 // C(n, k)
  BigInt prob = pow(a0, static_cast<unsigned>(n));  // a0^(n-k) a1^k
  std::vector<int> counts(2, 0);
  for (long k = 0;; ++k) {
    counts[0] = static_cast<int>(n - k);
    counts[1] = static_cast<int>(k);
    tv.visit(counts, binom, prob);
    if (k == n) break;
    binom = binom * (n - k) / (k + 1);
    prob = prob * a1 / a0;
  }
}

void enumerate_types_dispatch(long n, const IntegerView& view, const TypicalGuard& guard, const TypeVisitor& tv) {
  const int m = static_cast<int>(view.nums.size());
  if (m == 2 && view.nums[0] > 0 && view.nums[1] > 0) {
    if (static_cast<unsigned long>(n) + 1 > guard.max_types)
      throw GuardExceeded("type enumeration exceeded the type-count limit");
    enumerate_types_binary(n, view.nums[0], view.nums[1], tv);
    return;
  }
  if (n > 2000 && m > 2)
    throw GuardExceeded("type enumeration: n too large for a non-binary alphabet");
  enumerate_types(n, view.nums, guard.max_types, tv);
}

double type_log2_prob(const std::vector<int>& counts, const std::vector<double>& log2_p) {
  double s = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) s += counts[i] * log2_p[i];
  }
  return s;
}

std::vector<double> letter_log2(const classical::State& p) {
  std::vector<double> v;
  for (const Rat& x : p.p) v.push_back(x > 0 ? std::log2(to_double(x)) : -std::numeric_limits<double>::infinity());
  return v;
}

}  // namespace

Source Source::validated(std::vector<Rat> q, std::vector<classical::State> states) {
  if (q.size() != states.size() || q.empty()) throw ValidationError("source: need matching emissions and weights");
  Rat s = 0;
  for (const Rat& x : q) {
    if (x < 0) throw ValidationError("source: negative emission probability");
    s += x;
  }
  if (s != 1) throw ValidationError("source: emission probabilities sum to " + rat_string(s));
  for (const auto& st : states) {
    if (st.size() != states[0].size()) throw ValidationError("source: emitted states on different alphabets");
  }
  Source src;
  src.q = std::move(q);
  src.states = std::move(states);
  return src;
}

Source Source::iid_letters(const classical::State& p) {
  std::vector<classical::State> states;
  for (int i = 0; i < p.size(); ++i) states.push_back(classical::State::point_mass(p.size(), i));
  return validated(p.p, std::move(states));
}

classical::State Source::mixture() const {
  std::vector<Rat> p(alphabet(), Rat(0));
  for (size_t k = 0; k < q.size(); ++k)
    for (int i = 0; i < alphabet(); ++i) p[i] += q[k] * states[k].p[i];
  return classical::State::validated(std::move(p));
}

double Source::entropy_bits() const { return classical::shannon(mixture()); }

bool Source::point_mass_states() const {
  for (const auto& st : states) {
    bool point = false;
    for (const Rat& x : st.p)
      if (x == 1) point = true;
    if (!point) return false;
  }
  return true;
}

TypicalReport typical_mass_and_count(const Source& src, long n, double eps, const TypicalGuard& guard) {
  if (n < 1 || n > guard.max_n) throw GuardExceeded("typical_mass_and_count: n outside the guard range");
  if (src.alphabet() > guard.max_alphabet)
    throw GuardExceeded("typical_mass_and_count: alphabet exceeds the guard");
  if (!(eps > 0)) throw ValidationError("typical_mass_and_count: eps must be positive");

  const classical::State mix = src.mixture();
  const double h = classical::shannon(mix);
  const auto log2_p = letter_log2(mix);
  const IntegerView view = integer_view(mix.p);

  BigInt mass_num = 0;
  BigInt count = 0;
  const TypeVisitor tv{[&](const std::vector<int>& counts, const BigInt& multinomial, const BigInt& prob_num) {
    const double rate = -type_log2_prob(counts, log2_p) / static_cast<double>(n);
    if (std::isfinite(rate) && std::abs(rate - h) <= eps) {
      count += multinomial;
      mass_num += multinomial * prob_num;
    }
  }};
  enumerate_types_dispatch(n, view, guard, tv);

  TypicalReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.entropy_bits = h;
  rep.mass = Rat(mass_num, pow(view.den, static_cast<unsigned>(n)));
  rep.count = count;
  rep.log2_count = count > 0 ? log2_big(count) : -std::numeric_limits<double>::infinity();
  rep.upper_bound_ok = rep.log2_count <= n * (h + eps) + 1e-6;
  rep.lower_bound_ok =
      rep.mass == 0 || rep.log2_count >= log2_rat(rep.mass) + n * (h - eps) - 1e-6;
  return rep;
}

bool sequence_typical(const Source& src, const std::vector<int>& seq, double eps) {
  const classical::State mix = src.mixture();
  const auto log2_p = letter_log2(mix);
  const double h = classical::shannon(mix);
  std::vector<int> counts(src.alphabet(), 0);
  for (const int x : seq) {
    if (x < 0 || x >= src.alphabet()) throw ValidationError("sequence_typical: letter out of range");
    ++counts[x];
  }
  const double rate = -type_log2_prob(counts, log2_p) / static_cast<double>(seq.size());
  return std::isfinite(rate) && std::abs(rate - h) <= eps;
}

namespace {

// h_T of a product of (possibly different) binary states, by dynamic
// programming over the count of letter 1.  Double precision; Monte-Carlo only.
double typical_mass_binary_product(const std::vector<const classical::State*>& factors, const Source& src,
                                   double eps) {
  const long n = static_cast<long>(factors.size());
  std::vector<double> dp(n + 1, 0.0);
  dp[0] = 1.0;
  for (long j = 0; j < n; ++j) {
    const double p1 = to_double(factors[j]->p[1]);
    for (long k = j + 1; k >= 1; --k) dp[k] = dp[k] * (1 - p1) + dp[k - 1] * p1;
    dp[0] *= (1 - p1);
  }
  const classical::State mix = src.mixture();
  const auto log2_p = letter_log2(mix);
  const double h = classical::shannon(mix);
  double mass = 0;
  for (long k = 0; k <= n; ++k) {
    std::vector<int> counts = {static_cast<int>(n - k), static_cast<int>(k)};
    const double rate = -type_log2_prob(counts, log2_p) / static_cast<double>(n);
    if (std::isfinite(rate) && std::abs(rate - h) <= eps) mass += dp[k];
  }
  return mass;
}

}  // namespace

CompressionReport simulate_compression(const Source& src, long n, double rate, double eps, long trials,
                                       uint64_t seed, const TypicalGuard& guard,
                                       const DisturbanceConstants& constants) {
  if (!(rate > 0)) throw ValidationError("simulate_compression: rate must be positive");
  CompressionReport rep;
  rep.typical = typical_mass_and_count(src, n, eps, guard);
  rep.n = n;
  rep.rate = rate;
  rep.eps = eps;
  rep.seed = seed;
  rep.trials = trials;
  rep.dimension_ok = rep.typical.log2_count <= n * rate + 1e-6;
  rep.rate_below_entropy_warning = rate <= rep.typical.entropy_bits;

  // Encoding keeps the table on the typical set and diverts the atypical
  // branch to a fixed typical point mass, so the distance to the original is
  // exactly the atypical probability; averaging over emissions is linear and
  // gives the atypical mass of Src^n.
  rep.exact_avg_distance = 1 - rep.typical.mass;
  const double delta = to_double(rep.exact_avg_distance);
  rep.disturbance_bound = (constants.c + 1.0) * std::pow(delta, constants.eps_wd);

  if (trials > 0) {
    const bool points = src.point_mass_states();
    std::vector<double> q_cum;
    double acc = 0;
    for (const Rat& x : src.q) {
      acc += to_double(x);
      q_cum.push_back(acc);
    }
    double total = 0;
    for (long t = 0; t < trials; ++t) {
      std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(t + 1)));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      std::vector<int> emitted(n);
      for (long j = 0; j < n; ++j) {
        const double u = unif(rng);
        emitted[j] = static_cast<int>(std::lower_bound(q_cum.begin(), q_cum.end(), u) - q_cum.begin());
        if (emitted[j] >= static_cast<int>(src.q.size())) emitted[j] = static_cast<int>(src.q.size()) - 1;
      }
      double dist;
      if (points) {
        std::vector<int> seq(n);
        for (long j = 0; j < n; ++j) {
          const auto& st = src.states[emitted[j]];
          for (int i = 0; i < st.size(); ++i)
            if (st.p[i] == 1) seq[j] = i;
        }
        dist = sequence_typical(src, seq, eps) ? 0.0 : 1.0;
      } else if (src.alphabet() == 2) {
        std::vector<const classical::State*> factors;
        for (long j = 0; j < n; ++j) factors.push_back(&src.states[emitted[j]]);
        dist = 1.0 - typical_mass_binary_product(factors, src, eps);
      } else {
        throw GuardExceeded("simulate_compression: Monte-Carlo path needs point-mass emissions or a binary alphabet");
      }
      total += dist;
    }
    rep.mc_avg_distance = total / static_cast<double>(trials);
  }
  return rep;
}

Rat hypothesis_test_pn(const classical::State& s1, const classical::State& s2, long n, const Rat& type1_bound,
                       const TypicalGuard& guard) {
  if (s1.size() != s2.size()) throw TheoryMismatch("hypothesis_test_pn: different alphabets");
  if (n < 1 || n > guard.max_n) throw GuardExceeded("hypothesis_test_pn: n outside the guard range");
  if (type1_bound <= 0 || type1_bound >= 1)
    throw ValidationError("hypothesis_test_pn: type-1 bound must lie in (0,1)");

  struct TypeMass {
    Rat p1, p2;
  };
  std::vector<TypeMass> types;

  // Types must range over letters positive in either state.
  std::vector<Rat> support_mix(s1.size());
  for (int i = 0; i < s1.size(); ++i) support_mix[i] = (s1.p[i] + s2.p[i]) / 2;
  const IntegerView mixed_view = integer_view(support_mix);
  const IntegerView v1 = integer_view(s1.p);
  const IntegerView v2 = integer_view(s2.p);
  const BigInt den1 = pow(v1.den, static_cast<unsigned>(n));
  const BigInt den2 = pow(v2.den, static_cast<unsigned>(n));

  // pows[i][j] = nums[i]^j (0^0 = 1), built once and shared across types.
  const auto power_table = [n](const std::vector<BigInt>& nums) {
    std::vector<std::vector<BigInt>> pows(nums.size());
    for (size_t i = 0; i < nums.size(); ++i) {
      pows[i].resize(n + 1);
      pows[i][0] = 1;
      for (long j = 1; j <= n; ++j) pows[i][j] = pows[i][j - 1] * nums[i];
    }
    return pows;
  };
  const auto pows1 = power_table(v1.nums);
  const auto pows2 = power_table(v2.nums);

  const TypeVisitor tv{[&](const std::vector<int>& counts, const BigInt& multinomial, const BigInt&) {
    BigInt n1 = multinomial, n2 = multinomial;
    for (size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) continue;
      n1 *= pows1[i][counts[i]];
      n2 *= pows2[i][counts[i]];
    }
    if (n1 == 0 && n2 == 0) return;
    types.push_back({Rat(n1, den1), Rat(n2, den2)});
  }};
  enumerate_types_dispatch(n, mixed_view, guard, tv);

  // Neyman-Pearson: accept "state 1" on the highest-likelihood-ratio types
  // first, randomizing at the threshold so that the accepted mass under s1^n
  // is exactly 1 - type1_bound.
  std::vector<size_t> order(types.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const TypeMass& x = types[a];
    const TypeMass& y = types[b];
    const bool x_inf = x.p2 == 0, y_inf = y.p2 == 0;
    if (x_inf != y_inf) return x_inf;
    if (x_inf) return false;
    return x.p1 * y.p2 > y.p1 * x.p2;
  });

  const Rat need = 1 - type1_bound;
  Rat cum1 = 0, error = 0;
  for (const size_t i : order) {
    const TypeMass& t = types[i];
    if (t.p1 == 0) break;  // remaining types cannot raise the accepted mass
    if (cum1 + t.p1 <= need) {
      cum1 += t.p1;
      error += t.p2;
      if (cum1 == need) return error;
    } else {
      const Rat gamma = (need - cum1) / t.p1;
      return error + gamma * t.p2;
    }
  }
  return error;
}

std::vector<std::pair<long, double>> relative_entropy_estimate(const classical::State& s1,
                                                               const classical::State& s2,
                                                               const std::vector<long>& n_list,
                                                               const Rat& type1_bound,
                                                               const TypicalGuard& guard) {
  std::vector<std::pair<long, double>> out;
  for (const long n : n_list) {
    const Rat pn = hypothesis_test_pn(s1, s2, n, type1_bound, guard);
    const double rate = pn > 0 ? -log2_rat(pn) / static_cast<double>(n) : std::numeric_limits<double>::infinity();
    out.emplace_back(n, rate);
  }
  return out;
}

std::vector<int> subspace_of(const classical::Effect& f) {
  std::vector<int> letters;
  for (size_t i = 0; i < f.q.size(); ++i) {
    if (f.q[i] < 0 || f.q[i] > 1) throw ValidationError("subspace_of: effect coefficient outside [0,1]");
    if (f.q[i] == 1) letters.push_back(static_cast<int>(i));
  }
  if (letters.empty()) throw ValidationError("subspace_of: effect is not full (no state yields it with certainty)");
  return letters;
}

int dimension_of(const std::vector<int>& letters) {
  std::vector<int> unique = letters;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (unique.empty()) throw ValidationError("dimension_of: empty state set");
  return static_cast<int>(unique.size());
}

double kl_divergence_bits(const classical::State& s1, const classical::State& s2) {
  double kl = 0;
  for (int i = 0; i < s1.size(); ++i) {
    if (s1.p[i] > 0) {
      if (s2.p[i] == 0) return std::numeric_limits<double>::infinity();
      kl += to_double(s1.p[i]) * std::log2(to_double(s1.p[i] / s2.p[i]));
    }
  }
  return kl;
}

}  // namespace gpt::coding
