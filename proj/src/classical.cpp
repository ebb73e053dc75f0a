#include "gpt/classical.hpp"

#include <cmath>

namespace gpt::classical {

State State::validated(std::vector<Rat> p) {
  if (p.empty()) throw ValidationError("classical state: empty probability vector");
  Rat sum = 0;
  for (const Rat& x : p) {
    if (x < 0) throw ValidationError("classical state: negative entry " + rat_string(x));
    sum += x;
  }
  if (sum != 1) throw ValidationError("classical state: entries sum to " + rat_string(sum));
  State s;
  s.p = std::move(p);
  return s;
}

State State::uniform(int d) {
  if (d < 1) throw ValidationError("classical state: alphabet size must be >= 1");
  return validated(std::vector<Rat>(d, Rat(1, d)));
}

State State::point_mass(int d, int letter) {
  if (letter < 0 || letter >= d) throw ValidationError("classical state: letter out of range");
  std::vector<Rat> p(d, 0);
  p[letter] = 1;
  return validated(std::move(p));
}

Effect Effect::unit(int d) {
  Effect e;
  e.q.assign(d, Rat(1));
  return e;
}

Effect Effect::point(int d, int letter) {
  Effect e;
  e.q.assign(d, Rat(0));
  e.q[letter] = 1;
  return e;
}

Rat Effect::evaluate(const State& s) const {
  if (static_cast<int>(q.size()) != s.size())
    throw TheoryMismatch("classical effect/state dimension mismatch");
  Rat v = 0;
  for (size_t i = 0; i < q.size(); ++i) v += q[i] * s.p[i];
  return v;
}

Effect operator+(const Effect& a, const Effect& b) {
  if (a.q.size() != b.q.size()) throw TheoryMismatch("classical effect addition: dimension mismatch");
  Effect out = a;
  for (size_t i = 0; i < out.q.size(); ++i) out.q[i] += b.q[i];
  return out;
}

State tensor(const State& a, const State& b) {
  std::vector<Rat> p;
  p.reserve(a.p.size() * b.p.size());
  for (const Rat& x : a.p)
    for (const Rat& y : b.p) p.push_back(x * y);
  return State::validated(std::move(p));
}

State marginal(const State& ab, int da, int db, int keep) {
  if (da * db != ab.size()) throw ValidationError("classical marginal: dimension mismatch");
  if (keep != 0 && keep != 1) throw ValidationError("classical marginal: keep must be 0 or 1");
  std::vector<Rat> p(keep == 0 ? da : db, 0);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) p[keep == 0 ? i : j] += ab.p[i * db + j];
  return State::validated(std::move(p));
}

State condition(const State& ab, int da, int db, int part, int letter) {
  if (da * db != ab.size()) throw ValidationError("classical condition: dimension mismatch");
  const State m = marginal(ab, da, db, part);
  if (letter < 0 || letter >= m.size()) throw ValidationError("classical condition: letter out of range");
  const Rat w = m.p[letter];
  if (w == 0) throw ValidationError("classical condition: conditioning on probability-0 outcome");
  std::vector<Rat> p(part == 0 ? db : da, 0);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      if ((part == 0 ? i : j) == letter) p[part == 0 ? j : i] = ab.p[i * db + j] / w;
    }
  return State::validated(std::move(p));
}

double shannon(const State& s) { return shannon_bits(s.p); }

Rat tv_distance(const State& a, const State& b) {
  if (a.size() != b.size()) throw TheoryMismatch("classical distance: dimension mismatch");
  Rat sum = 0;
  for (int i = 0; i < a.size(); ++i) sum += abs(a.p[i] - b.p[i]);
  return sum / 2;
}

double mutual_information_bits(const std::vector<Rat>& joint, int da, int db) {
  if (static_cast<int>(joint.size()) != da * db)
    throw ValidationError("mutual information: dimension mismatch");
  std::vector<Rat> pa(da, 0), pb(db, 0);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      pa[i] += joint[i * db + j];
      pb[j] += joint[i * db + j];
    }
  double mi = 0;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      const Rat& pij = joint[i * db + j];
      if (pij > 0) {
        const double x = to_double(pij);
        mi += x * std::log2(to_double(pij / (pa[i] * pb[j])));
      }
    }
  return mi;
}

}  // namespace gpt::classical
