#include "gpt/games.hpp"

#include <functional>

#include "gpt/classical.hpp"
#include "gpt/distribution.hpp"

namespace gpt::games {

AffineExpr AffineExpr::constant_value(int c, int modulus) { return AffineExpr{modulus, c, {}}; }

AffineExpr AffineExpr::reg(int r, int modulus) { return AffineExpr{modulus, 0, {{r, 1}}}; }

AffineExpr AffineExpr::parity(const std::vector<int>& regs) {
  AffineExpr e{2, 0, {}};
  for (const int r : regs) e.terms.emplace_back(r, 1);
  return e;
}

int AffineExpr::eval(const std::vector<int>& registers) const {
  if (modulus < 1) throw ValidationError("wiring expression: modulus must be >= 1");
  long v = constant;
  for (const auto& [r, c] : terms) {
    if (r < 0 || r >= static_cast<int>(registers.size()))
      throw ValidationError("wiring expression references a value that is not stored yet");
    v += static_cast<long>(c) * registers[r];
  }
  v %= modulus;
  if (v < 0) v += modulus;
  return static_cast<int>(v);
}

box::State apply_wiring(const box::State& s, const Wiring& w) {
  const int n = s.sig.num_parts();
  std::vector<int> measured_parts;
  std::vector<int> register_range;  // per register
  std::vector<bool> is_measured(n, false);
  for (const auto& instr : w.instructions) {
    if (const auto* m = std::get_if<Wiring::Measure>(&instr)) {
      if (m->part < 0 || m->part >= n) throw ValidationError("wiring: subsystem index out of range");
      if (is_measured[m->part]) throw ValidationError("wiring: subsystem measured twice");
      is_measured[m->part] = true;
      measured_parts.push_back(m->part);
      register_range.push_back(s.sig.parts[m->part].outputs);
    } else {
      const auto& c = std::get<Wiring::Compute>(instr);
      if (c.range < 1) throw ValidationError("wiring: computed value needs range >= 1");
      register_range.push_back(c.range);
    }
  }
  for (const int r : w.emit) {
    if (r < 0 || r >= static_cast<int>(register_range.size()))
      throw ValidationError("wiring: emit references a value that is never stored");
  }
  std::vector<int> untouched;
  for (int p = 0; p < n; ++p)
    if (!is_measured[p]) untouched.push_back(p);

  box::Signature out_sig;
  for (const int r : w.emit) out_sig.parts.push_back(box::Part{1, register_range[r]});
  for (const int p : untouched) out_sig.parts.push_back(s.sig.parts[p]);
  out_sig.validate();

  const long out_ji = out_sig.joint_inputs();
  const long out_jo = out_sig.joint_outputs();
  std::vector<Rat> table(out_sig.table_size(), Rat(0));

  // Walk every assignment of outcomes to the measured subsystems; inputs along
  // the walk are determined by the register contents so far.
  std::vector<int> in_full(n, 0), out_full(n, 0);
  std::vector<int> registers;
  std::function<void(size_t)> walk = [&](size_t instr_idx) {
    if (instr_idx == w.instructions.size()) {
      // Emitted values are fixed by the register; accumulate over the
      // untouched subsystems' inputs and outputs.
      std::vector<int> emitted;
      for (const int r : w.emit) emitted.push_back(registers[r]);
      for (long ui = 0; ui < (untouched.empty() ? 1 : out_ji); ++ui) {
        // decode untouched inputs from the output-signature input index
        const std::vector<int> in_tuple = out_sig.input_tuple(ui);
        for (size_t t = 0; t < untouched.size(); ++t) in_full[untouched[t]] = in_tuple[w.emit.size() + t];
        std::vector<int> rad;
        for (const int p : untouched) rad.push_back(s.sig.parts[p].outputs);
        std::vector<int> u_out(untouched.size(), 0);
        while (true) {
          for (size_t t = 0; t < untouched.size(); ++t) out_full[untouched[t]] = u_out[t];
          std::vector<int> out_tuple(out_sig.num_parts());
          for (size_t t = 0; t < emitted.size(); ++t) out_tuple[t] = emitted[t];
          for (size_t t = 0; t < untouched.size(); ++t) out_tuple[emitted.size() + t] = u_out[t];
          table[ui * out_jo + out_sig.output_index(out_tuple)] +=
              s.at(s.sig.input_index(in_full), s.sig.output_index(out_full));
          int pos = static_cast<int>(u_out.size()) - 1;
          while (pos >= 0) {
            if (++u_out[pos] < rad[pos]) break;
            u_out[pos] = 0;
            --pos;
          }
          if (pos < 0 || u_out.empty()) break;
        }
        if (untouched.empty()) break;
      }
      return;
    }
    const auto& instr = w.instructions[instr_idx];
    if (const auto* m = std::get_if<Wiring::Measure>(&instr)) {
      const int input = m->input.eval(registers);
      if (input >= s.sig.parts[m->part].inputs)
        throw ValidationError("wiring: computed input out of range for subsystem " + std::to_string(m->part));
      in_full[m->part] = input;
      for (int o = 0; o < s.sig.parts[m->part].outputs; ++o) {
        out_full[m->part] = o;
        registers.push_back(o);
        walk(instr_idx + 1);
        registers.pop_back();
      }
    } else {
      const auto& c = std::get<Wiring::Compute>(instr);
      const int v = c.value.eval(registers);
      if (v >= c.range) throw ValidationError("wiring: computed value exceeds its declared range");
      registers.push_back(v);
      walk(instr_idx + 1);
      registers.pop_back();
    }
  };
  walk(0);

  return box::State::validated(out_sig, std::move(table));
}

namespace {

// Parity bit (uniform classical box) next to a shared two-party box.
box::State parity_plus_box(const box::State& shared) {
  const box::State x = box::State::from_classical(classical::State::uniform(2));
  return box::tensor(x, shared);
}

box::State rac_from_box(const box::State& shared) {
  // Parts: 0 = X (parity bit), 1 = Y (Alice's box end), 2 = Z (Bob's end).
  Wiring w;
  w.instructions.push_back(Wiring::Measure{0, AffineExpr::constant_value(0, 1)});  // x
  w.instructions.push_back(Wiring::Measure{1, AffineExpr::reg(0)});                // y_out with y_in = x
  w.instructions.push_back(Wiring::Compute{AffineExpr::reg(1), 2});                // x0 = y_out
  w.instructions.push_back(Wiring::Compute{AffineExpr::parity({0, 1}), 2});        // x1 = x xor y_out
  w.emit = {2, 3};
  return apply_wiring(parity_plus_box(shared), w);
}

box::State ic_from_box(const box::State& shared) {
  // Parts: 0 = A0, 1 = A1 (uniform data bits), 2 = Y, 3 = Z.
  box::State start = box::tensor(box::State::from_classical(classical::State::uniform(2)),
                                 box::tensor(box::State::from_classical(classical::State::uniform(2)), shared));
  Wiring w;
  w.instructions.push_back(Wiring::Measure{0, AffineExpr::constant_value(0, 1)});  // a0
  w.instructions.push_back(Wiring::Measure{1, AffineExpr::constant_value(0, 1)});  // a1
  w.instructions.push_back(Wiring::Measure{2, AffineExpr::parity({0, 1})});        // y_out with y_in = a0 xor a1
  w.instructions.push_back(Wiring::Compute{AffineExpr::parity({2, 0}), 2});        // m = y_out xor a0
  w.emit = {0, 1, 3};
  return apply_wiring(start, w);
}

}  // namespace

box::State build_rac_state() { return rac_from_box(box::pr_box()); }

box::State build_rac_state_noisy(const Rat& p) { return rac_from_box(box::noisy_pr(p)); }

box::State build_ic_state() { return ic_from_box(box::pr_box()); }

box::State build_ic_state_noisy(const Rat& p) { return ic_from_box(box::noisy_pr(p)); }

double ic_inequality_value(const box::State& s) {
  const box::Signature expected{{box::Part{1, 2}, box::Part{1, 2}, box::Part{1, 2}, box::Part{2, 2}}};
  if (!(s.sig == expected))
    throw ValidationError("ic_inequality_value: expected classical A0, A1, M and a binary box Z");
  double total = 0;
  for (int t = 0; t < 2; ++t) {
    // Joint distribution of (a_t, b) with b = z_out xor m at z_in = t.
    std::vector<Rat> joint(4, Rat(0));
    for (int a0 = 0; a0 < 2; ++a0)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int m = 0; m < 2; ++m)
          for (int z = 0; z < 2; ++z) {
            const int at = t == 0 ? a0 : a1;
            const int b = z ^ m;
            joint[at * 2 + b] += s.at(t, ((a0 * 2 + a1) * 2 + m) * 2 + z);
          }
    total += classical::mutual_information_bits(joint, 2, 2);
  }
  return total;
}

}  // namespace gpt::games
