#pragma once

#include <variant>
#include <vector>

#include "gpt/boxworld.hpp"

namespace gpt::games {

/// Affine expression (c + sum coeff*reg) mod modulus over the wiring register.
struct AffineExpr {
  int modulus = 2;
  int constant = 0;
  std::vector<std::pair<int, int>> terms;  // (register index, coefficient)

  static AffineExpr constant_value(int c, int modulus = 2);
  static AffineExpr reg(int r, int modulus = 2);
  static AffineExpr parity(const std::vector<int>& regs);  // xor of registers
  int eval(const std::vector<int>& registers) const;
};

/// A deterministic wiring: measure some subsystems with inputs computed from
/// earlier results, derive new classical values, and emit a subset of the
/// register as classical boxes alongside the untouched subsystems.
struct Wiring {
  struct Measure {
    int part = 0;
    AffineExpr input;
  };
  struct Compute {
    AffineExpr value;
    int range = 2;
  };
  using Instruction = std::variant<Measure, Compute>;

  std::vector<Instruction> instructions;
  std::vector<int> emit;  // register indices, emitted in this order
};

/// Applies the wiring; the result's parts are the emitted classical boxes
/// followed by the untouched subsystems in their original order.  The output
/// is re-validated (including non-signalling).
box::State apply_wiring(const box::State& s, const Wiring& w);

/// The random-access-encoding state: a uniform parity bit measured into one
/// side of a PR box, re-emitted as the two classical bits X0, X1 next to the
/// untouched box Z.  P(x0 x1 z_out | z_in) = 1/4 iff z_out = x_{z_in}.
box::State build_rac_state();
box::State build_rac_state_noisy(const Rat& p);

/// The state after the one-bit-message protocol: classical A0, A1, M and the
/// untouched box Z.  P(a0 a1 m z_out | z_in) = 1/8 iff z_out = a_{z_in} xor m.
box::State build_ic_state();
box::State build_ic_state_noisy(const Rat& p);

/// The information quantity I(a0;b | t=0) + I(a1;b | t=1) with the fixed
/// decoding z_in = t, b = z_out xor m.  Expects parts (A0, A1, M, Z).
double ic_inequality_value(const box::State& s);

}  // namespace gpt::games
