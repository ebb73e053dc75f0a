#pragma once

#include <vector>

#include "gpt/distribution.hpp"
#include "gpt/rational.hpp"

namespace gpt::classical {

/// A probability distribution over d letters, held as exact rationals.
struct State {
  std::vector<Rat> p;

  int size() const { return static_cast<int>(p.size()); }

  /// Validates nonnegativity and exact normalization.
  static State validated(std::vector<Rat> p);
  static State uniform(int d);
  static State point_mass(int d, int letter);
};

/// A classical effect: coefficients q_i in [0,1], acting as p -> sum q_i p_i.
struct Effect {
  std::vector<Rat> q;

  static Effect unit(int d);
  static Effect point(int d, int letter);
  Rat evaluate(const State& s) const;
};

Effect operator+(const Effect& a, const Effect& b);

State tensor(const State& a, const State& b);

/// Marginal of a bipartite state over letters (i,j) with i major.  keep = 0
/// keeps the first factor, keep = 1 the second.
State marginal(const State& ab, int da, int db, int keep);

/// Conditions a bipartite state on observing `letter` for factor `part`,
/// returning the distribution of the other factor.  Throws on probability-0
/// conditioning.
State condition(const State& ab, int da, int db, int part, int letter);

double shannon(const State& s);

/// Total variation distance; for classical theory this equals the operational
/// distance since the fiducial measurement is optimal.
Rat tv_distance(const State& a, const State& b);

/// Mutual information of a joint distribution over (i,j) pairs, in bits.
double mutual_information_bits(const std::vector<Rat>& joint, int da, int db);

}  // namespace gpt::classical
