#include "gpt/boxworld.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gpt/exact_lp.hpp"

namespace gpt::box {

namespace {

// Iterates all tuples t with 0 <= t[i] < radix[i], in lexicographic order.
void for_each_tuple(const std::vector<int>& radix, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(radix.size(), 0);
  for (const int r : radix)
    if (r <= 0) return;
  while (true) {
    fn(t);
    int i = static_cast<int>(t.size()) - 1;
    while (i >= 0) {
      if (++t[i] < radix[i]) break;
      t[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

long mixed_radix_index(const std::vector<int>& radix, const std::vector<int>& tuple) {
  long idx = 0;
  for (size_t i = 0; i < radix.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= radix[i]) throw ValidationError("tuple entry out of range");
    idx = idx * radix[i] + tuple[i];
  }
  return idx;
}

std::vector<int> mixed_radix_tuple(const std::vector<int>& radix, long idx) {
  std::vector<int> t(radix.size(), 0);
  for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % radix[i]);
    idx /= radix[i];
  }
  return t;
}

}  // namespace

void Signature::validate() const {
  if (parts.empty()) throw ValidationError("box signature: no subsystems");
  for (const Part& p : parts) {
    if (p.inputs < 1 || p.outputs < 1)
      throw ValidationError("box signature: input and output counts must be >= 1");
  }
}

long Signature::joint_inputs() const {
  long n = 1;
  for (const Part& p : parts) n *= p.inputs;
  return n;
}

long Signature::joint_outputs() const {
  long n = 1;
  for (const Part& p : parts) n *= p.outputs;
  return n;
}

static std::vector<int> input_radix(const Signature& s) {
  std::vector<int> r;
  for (const Part& p : s.parts) r.push_back(p.inputs);
  return r;
}

static std::vector<int> output_radix(const Signature& s) {
  std::vector<int> r;
  for (const Part& p : s.parts) r.push_back(p.outputs);
  return r;
}

long Signature::input_index(const std::vector<int>& in) const { return mixed_radix_index(input_radix(*this), in); }
long Signature::output_index(const std::vector<int>& out) const { return mixed_radix_index(output_radix(*this), out); }
std::vector<int> Signature::input_tuple(long idx) const { return mixed_radix_tuple(input_radix(*this), idx); }
std::vector<int> Signature::output_tuple(long idx) const { return mixed_radix_tuple(output_radix(*this), idx); }

Signature Signature::subset(const std::vector<int>& keep) const {
  Signature s;
  for (const int k : keep) {
    if (k < 0 || k >= num_parts()) throw ValidationError("signature subset: part index out of range");
    s.parts.push_back(parts[k]);
  }
  s.validate();
  return s;
}

Signature concat(const Signature& a, const Signature& b) {
  Signature s = a;
  s.parts.insert(s.parts.end(), b.parts.begin(), b.parts.end());
  return s;
}

State State::validated(Signature sig, std::vector<Rat> table) {
  sig.validate();
  if (static_cast<long>(table.size()) != sig.table_size())
    throw ValidationError("box state: table has " + std::to_string(table.size()) + " entries, expected " +
                          std::to_string(sig.table_size()));
  for (const Rat& x : table)
    if (x < 0) throw ValidationError("box state: negative entry " + rat_string(x));

  State s;
  s.sig = std::move(sig);
  s.table = std::move(table);

  const long ji = s.sig.joint_inputs();
  const long jo = s.sig.joint_outputs();
  for (long i = 0; i < ji; ++i) {
    Rat sum = 0;
    for (long o = 0; o < jo; ++o) sum += s.at(i, o);
    if (sum != 1) {
      std::ostringstream os;
      os << "box state: outputs for joint input " << i << " sum to " << rat_string(sum);
      throw ValidationError(os.str());
    }
  }

  // Non-signalling: the marginal over part k's outputs must not depend on
  // part k's input, for every context of the other parts.
  const int n = s.sig.num_parts();
  for (int k = 0; k < n; ++k) {
    const Part& pk = s.sig.parts[k];
    if (pk.inputs < 2) continue;
    std::vector<int> rest;
    for (int l = 0; l < n; ++l)
      if (l != k) rest.push_back(l);
    std::vector<int> rest_in_radix, rest_out_radix;
    for (const int l : rest) {
      rest_in_radix.push_back(s.sig.parts[l].inputs);
      rest_out_radix.push_back(s.sig.parts[l].outputs);
    }
    for_each_tuple(rest_in_radix, [&](const std::vector<int>& rin) {
      for_each_tuple(rest_out_radix, [&](const std::vector<int>& rout) {
        std::vector<Rat> sums(pk.inputs, Rat(0));
        for (int j = 0; j < pk.inputs; ++j) {
          std::vector<int> in(n), out(n);
          for (size_t t = 0; t < rest.size(); ++t) {
            in[rest[t]] = rin[t];
            out[rest[t]] = rout[t];
          }
          in[k] = j;
          for (int ok = 0; ok < pk.outputs; ++ok) {
            out[k] = ok;
            sums[j] += s.at(s.sig.input_index(in), s.sig.output_index(out));
          }
        }
        for (int j = 1; j < pk.inputs; ++j) {
          if (sums[j] != sums[0]) {
            std::ostringstream os;
            os << "box state: non-signalling violated for subsystem " << k << " (marginal over its outputs is "
               << rat_string(sums[0]) << " at input 0 vs " << rat_string(sums[j]) << " at input " << j
               << " for a fixed remote context)";
            throw ValidationError(os.str());
          }
        }
      });
    });
  }
  return s;
}

State State::uniform(const Signature& sig) {
  std::vector<Rat> t(sig.table_size(), Rat(1, sig.joint_outputs()));
  return validated(sig, std::move(t));
}

State State::from_classical(const classical::State& s) {
  std::vector<Rat> t = s.p;
  return validated(Signature::classical(s.size()), std::move(t));
}

classical::State State::to_classical() const {
  if (sig.joint_inputs() != 1) throw ValidationError("to_classical: state has nontrivial inputs");
  return classical::State::validated(table);
}

State tensor(const State& a, const State& b) {
  const Signature sig = concat(a.sig, b.sig);
  const long joA = a.sig.joint_outputs(), joB = b.sig.joint_outputs();
  const long jiA = a.sig.joint_inputs(), jiB = b.sig.joint_inputs();
  std::vector<Rat> t(sig.table_size(), Rat(0));
  for (long ia = 0; ia < jiA; ++ia)
    for (long ib = 0; ib < jiB; ++ib)
      for (long oa = 0; oa < joA; ++oa)
        for (long ob = 0; ob < joB; ++ob)
          t[(ia * jiB + ib) * (joA * joB) + (oa * joB + ob)] = a.at(ia, oa) * b.at(ib, ob);
  return State::validated(sig, std::move(t));
}

State marginal(const State& s, const std::vector<int>& keep) {
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw ValidationError("marginal: duplicate part index");
  const Signature sub = s.sig.subset(kept);
  const int n = s.sig.num_parts();
  std::vector<bool> is_kept(n, false);
  for (const int k : kept) is_kept[k] = true;
  std::vector<int> dropped;
  for (int l = 0; l < n; ++l)
    if (!is_kept[l]) dropped.push_back(l);
  std::vector<int> drop_out_radix;
  for (const int l : dropped) drop_out_radix.push_back(s.sig.parts[l].outputs);

  std::vector<Rat> t(sub.table_size(), Rat(0));
  const long ji = sub.joint_inputs(), jo = sub.joint_outputs();
  for (long i = 0; i < ji; ++i) {
    const std::vector<int> kin = sub.input_tuple(i);
    for (long o = 0; o < jo; ++o) {
      const std::vector<int> kout = sub.output_tuple(o);
      Rat sum = 0;
      std::vector<int> in(n, 0), out(n, 0);
      for (size_t idx = 0; idx < kept.size(); ++idx) {
        in[kept[idx]] = kin[idx];
        out[kept[idx]] = kout[idx];
      }
      for_each_tuple(drop_out_radix, [&](const std::vector<int>& dout) {
        for (size_t idx = 0; idx < dropped.size(); ++idx) out[dropped[idx]] = dout[idx];
        sum += s.at(s.sig.input_index(in), s.sig.output_index(out));
      });
      t[i * jo + o] = sum;
    }
  }
  return State::validated(sub, std::move(t));
}

Rat outcome_probability(const State& s, int part, int input, int outcome) {
  const State m = marginal(s, {part});
  if (input < 0 || input >= s.sig.parts[part].inputs) throw ValidationError("outcome_probability: input out of range");
  if (outcome < 0 || outcome >= s.sig.parts[part].outputs)
    throw ValidationError("outcome_probability: outcome out of range");
  return m.at(input, outcome);
}

State condition_many(const State& s, const std::vector<Conditioning>& fixed) {
  const int n = s.sig.num_parts();
  std::vector<bool> is_fixed(n, false);
  for (const Conditioning& c : fixed) {
    if (c.part < 0 || c.part >= n) throw ValidationError("condition: part index out of range");
    if (is_fixed[c.part]) throw ValidationError("condition: part fixed twice");
    is_fixed[c.part] = true;
    if (c.input < 0 || c.input >= s.sig.parts[c.part].inputs)
      throw ValidationError("condition: input out of range");
    if (c.outcome < 0 || c.outcome >= s.sig.parts[c.part].outputs)
      throw ValidationError("condition: outcome out of range");
  }
  std::vector<int> rest;
  for (int l = 0; l < n; ++l)
    if (!is_fixed[l]) rest.push_back(l);
  if (rest.empty()) throw ValidationError("condition: no subsystems left");
  const Signature sub = s.sig.subset(rest);

  std::vector<int> in(n, 0), out(n, 0);
  for (const Conditioning& c : fixed) {
    in[c.part] = c.input;
    out[c.part] = c.outcome;
  }

  // Probability of the fixed results; by non-signalling it does not depend on
  // the inputs of the remaining parts (taken 0 here).
  Rat w = 0;
  {
    std::vector<int> rest_out_radix;
    for (const int l : rest) rest_out_radix.push_back(s.sig.parts[l].outputs);
    std::vector<int> in0 = in, outw = out;
    for (const int l : rest) in0[l] = 0;
    for_each_tuple(rest_out_radix, [&](const std::vector<int>& rout) {
      for (size_t idx = 0; idx < rest.size(); ++idx) outw[rest[idx]] = rout[idx];
      w += s.at(s.sig.input_index(in0), s.sig.output_index(outw));
    });
  }
  if (w == 0) throw ValidationError("condition: conditioning on probability-0 outcome");

  std::vector<Rat> t(sub.table_size(), Rat(0));
  const long ji = sub.joint_inputs(), jo = sub.joint_outputs();
  for (long i = 0; i < ji; ++i) {
    const std::vector<int> rin = sub.input_tuple(i);
    for (size_t idx = 0; idx < rest.size(); ++idx) in[rest[idx]] = rin[idx];
    for (long o = 0; o < jo; ++o) {
      const std::vector<int> rout = sub.output_tuple(o);
      for (size_t idx = 0; idx < rest.size(); ++idx) out[rest[idx]] = rout[idx];
      t[i * jo + o] = s.at(s.sig.input_index(in), s.sig.output_index(out)) / w;
    }
  }
  return State::validated(sub, std::move(t));
}

State condition(const State& s, int part, int input, int outcome) {
  return condition_many(s, {{part, input, outcome}});
}

State pr_box() {
  const Signature sig{{Part{2, 2}, Part{2, 2}}};
  std::vector<Rat> t(sig.table_size(), Rat(0));
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
          if ((o1 ^ o2) == (i1 & i2)) t[(i1 * 2 + i2) * 4 + (o1 * 2 + o2)] = Rat(1, 2);
        }
  return State::validated(sig, std::move(t));
}

State noisy_pr(const Rat& p) {
  if (p < Rat(1, 2) || p > 1) throw ValidationError("noisy_pr: p must lie in [1/2, 1]");
  const Signature sig{{Part{2, 2}, Part{2, 2}}};
  std::vector<Rat> t(sig.table_size(), Rat(0));
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
          const bool win = (o1 ^ o2) == (i1 & i2);
          t[(i1 * 2 + i2) * 4 + (o1 * 2 + o2)] = win ? Rat(p / 2) : Rat((1 - p) / 2);
        }
  return State::validated(sig, std::move(t));
}

double chsh_value(const State& s) {
  if (!(s.sig == Signature{{Part{2, 2}, Part{2, 2}}}))
    throw ValidationError("chsh_value: state is not a bipartite binary box");
  double value = 0;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2) {
      Rat corr = 0;
      for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
          const Rat term = s.at(i1 * 2 + i2, o1 * 2 + o2);
          corr += ((o1 ^ o2) == 0) ? term : -term;
        }
      value += ((i1 & i2) == 0 ? 1.0 : -1.0) * to_double(corr);
    }
  return value;
}

std::vector<State> product_deterministic_states(const Signature& sig) {
  sig.validate();
  // A deterministic single box is a response function input -> output; the
  // spanning set is every product of such functions.
  long count = 1;
  std::vector<long> fn_counts;
  for (const Part& p : sig.parts) {
    long c = 1;
    for (int i = 0; i < p.inputs; ++i) c *= p.outputs;
    fn_counts.push_back(c);
    count *= c;
    if (count > 100000) throw GuardExceeded("product_deterministic_states: too many response functions");
  }
  std::vector<State> out;
  out.reserve(count);
  const long ji = sig.joint_inputs(), jo = sig.joint_outputs();
  for (long f = 0; f < count; ++f) {
    // decode per-part response functions from f
    long rem = f;
    std::vector<std::vector<int>> responses(sig.num_parts());
    for (int k = sig.num_parts() - 1; k >= 0; --k) {
      long fk = rem % fn_counts[k];
      rem /= fn_counts[k];
      const Part& p = sig.parts[k];
      std::vector<int> resp(p.inputs);
      for (int i = p.inputs - 1; i >= 0; --i) {
        resp[i] = static_cast<int>(fk % p.outputs);
        fk /= p.outputs;
      }
      responses[k] = std::move(resp);
    }
    std::vector<Rat> t(sig.table_size(), Rat(0));
    for (long i = 0; i < ji; ++i) {
      const std::vector<int> in = sig.input_tuple(i);
      std::vector<int> outt(sig.num_parts());
      for (int k = 0; k < sig.num_parts(); ++k) outt[k] = responses[k][in[k]];
      t[i * jo + sig.output_index(outt)] = 1;
    }
    out.push_back(State::validated(sig, std::move(t)));
  }
  return out;
}

namespace {

// Equality system whose nonnegative solutions are exactly the NS states:
// per-input normalization rows plus non-signalling difference rows.
void build_equality_system(const Signature& sig, exact::Matrix& A, std::vector<Rat>& b) {
  const long ji = sig.joint_inputs(), jo = sig.joint_outputs();
  const int n = sig.num_parts();
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;

  for (long i = 0; i < ji; ++i) {
    std::vector<Rat> row(sig.table_size(), Rat(0));
    for (long o = 0; o < jo; ++o) row[i * jo + o] = 1;
    rows.push_back(std::move(row));
    rhs.push_back(1);
  }

  for (int k = 0; k < n; ++k) {
    const Part& pk = sig.parts[k];
    if (pk.inputs < 2) continue;
    std::vector<int> rest;
    for (int l = 0; l < n; ++l)
      if (l != k) rest.push_back(l);
    std::vector<int> rest_in_radix, rest_out_radix;
    for (const int l : rest) {
      rest_in_radix.push_back(sig.parts[l].inputs);
      rest_out_radix.push_back(sig.parts[l].outputs);
    }
    for_each_tuple(rest_in_radix, [&](const std::vector<int>& rin) {
      for_each_tuple(rest_out_radix, [&](const std::vector<int>& rout) {
        for (int j = 1; j < pk.inputs; ++j) {
          std::vector<Rat> row(sig.table_size(), Rat(0));
          std::vector<int> in(n), out(n);
          for (size_t t = 0; t < rest.size(); ++t) {
            in[rest[t]] = rin[t];
            out[rest[t]] = rout[t];
          }
          for (int ok = 0; ok < pk.outputs; ++ok) {
            out[k] = ok;
            in[k] = 0;
            row[sig.input_index(in) * jo + sig.output_index(out)] += 1;
            in[k] = j;
            row[sig.input_index(in) * jo + sig.output_index(out)] -= 1;
          }
          rows.push_back(std::move(row));
          rhs.push_back(0);
        }
      });
    });
  }

  A = exact::Matrix(static_cast<int>(rows.size()), static_cast<int>(sig.table_size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (long c = 0; c < sig.table_size(); ++c) A.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  b = std::move(rhs);
}

bool is_product_state(const State& s) {
  State prod = marginal(s, {0});
  for (int k = 1; k < s.sig.num_parts(); ++k) prod = tensor(prod, marginal(s, {k}));
  return prod.table == s.table;
}

}  // namespace

int VertexSet::num_product() const {
  int c = 0;
  for (const bool f : is_product)
    if (f) ++c;
  return c;
}

VertexSet enumerate_pure_states(const Signature& sig, const VertexGuard& guard) {
  sig.validate();
  if (sig.table_size() > guard.max_table)
    throw GuardExceeded("enumerate_pure_states: table size " + std::to_string(sig.table_size()) +
                        " exceeds limit " + std::to_string(guard.max_table));
  exact::Matrix A;
  std::vector<Rat> b;
  build_equality_system(sig, A, b);
  const auto solutions = exact::enumerate_extreme_solutions(A, b, guard.max_nodes);

  VertexSet vs;
  vs.sig = sig;
  for (const auto& sol : solutions) {
    std::vector<Rat> t(sig.table_size(), Rat(0));
    for (size_t i = 0; i < sol.support.size(); ++i) t[sol.support[i]] = sol.weights[i];
    vs.vertices.push_back(State::validated(sig, std::move(t)));
    vs.is_product.push_back(is_product_state(vs.vertices.back()));
  }
  return vs;
}

}  // namespace gpt::box
