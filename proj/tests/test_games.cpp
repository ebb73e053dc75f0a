#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpt/entropy.hpp"
#include "gpt/games.hpp"
#include "gpt/strategies.hpp"

using namespace gpt;
using box::Part;
using box::Signature;
using box::State;

TEST_CASE("identity wiring returns the input state") {
  const State pr = box::pr_box();
  games::Wiring w;  // no instructions, emit nothing: both subsystems untouched
  const State out = games::apply_wiring(pr, w);
  CHECK(out.sig == pr.sig);
  CHECK(out.table == pr.table);
}

TEST_CASE("RAC wiring reproduces the target table exactly") {
  const State rac = games::build_rac_state();
  const Signature expected{{Part{1, 2}, Part{1, 2}, Part{2, 2}}};
  REQUIRE(rac.sig == expected);
  for (int z_in = 0; z_in < 2; ++z_in)
    for (int x0 = 0; x0 < 2; ++x0)
      for (int x1 = 0; x1 < 2; ++x1)
        for (int z = 0; z < 2; ++z) {
          const int xt = z_in == 0 ? x0 : x1;
          const Rat expected_p = (z == xt) ? Rat(1, 4) : Rat(0);
          CHECK(rac.at(z_in, (x0 * 2 + x1) * 2 + z) == expected_p);
        }
}

TEST_CASE("IC wiring reproduces the target table exactly") {
  const State ic = games::build_ic_state();
  const Signature expected{{Part{1, 2}, Part{1, 2}, Part{1, 2}, Part{2, 2}}};
  REQUIRE(ic.sig == expected);
  for (int z_in = 0; z_in < 2; ++z_in)
    for (int a0 = 0; a0 < 2; ++a0)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int m = 0; m < 2; ++m)
          for (int z = 0; z < 2; ++z) {
            const int at = z_in == 0 ? a0 : a1;
            const Rat expected_p = (z == (at ^ m)) ? Rat(1, 8) : Rat(0);
            CHECK(ic.at(z_in, ((a0 * 2 + a1) * 2 + m) * 2 + z) == expected_p);
          }
}

TEST_CASE("noisy RAC at p=1 equals the noiseless construction") {
  CHECK(games::build_rac_state_noisy(Rat(1)).table == games::build_rac_state().table);
  CHECK(games::build_ic_state_noisy(Rat(1)).table == games::build_ic_state().table);
}

TEST_CASE("RAC correctness: Bob recovers the chosen bit with certainty") {
  const State rac = games::build_rac_state();
  for (int t = 0; t < 2; ++t) {
    // condition on Z measured with input t: outcome z = x_t always
    for (int z = 0; z < 2; ++z) {
      const Rat w = box::outcome_probability(rac, 2, t, z);
      CHECK(w == Rat(1, 2));
      const State pair = box::condition(rac, 2, t, z);
      // the recovered bit x_t equals z with probability 1
      Rat agree = 0;
      for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) {
          if ((t == 0 ? x0 : x1) == z) agree += pair.at(0, x0 * 2 + x1);
        }
      CHECK(agree == Rat(1));
    }
  }
}

TEST_CASE("wiring misuse is rejected") {
  const State pr = box::pr_box();
  SUBCASE("double measurement") {
    games::Wiring w;
    w.instructions.push_back(games::Wiring::Measure{0, games::AffineExpr::constant_value(0)});
    w.instructions.push_back(games::Wiring::Measure{0, games::AffineExpr::constant_value(0)});
    CHECK_THROWS_AS(games::apply_wiring(pr, w), ValidationError);
  }
  SUBCASE("out-of-range input expression") {
    games::Wiring w;
    w.instructions.push_back(games::Wiring::Measure{0, games::AffineExpr::constant_value(5, 7)});
    CHECK_THROWS_AS(games::apply_wiring(pr, w), ValidationError);
  }
  SUBCASE("forward register reference") {
    games::Wiring w;
    w.instructions.push_back(games::Wiring::Measure{0, games::AffineExpr::reg(3)});
    CHECK_THROWS_AS(games::apply_wiring(pr, w), ValidationError);
  }
}

TEST_CASE("wiring outputs re-validate as non-signalling states") {
  for (const Rat& p : {Rat(1), Rat(3, 4), Rat(9, 10), Rat(1, 2)}) {
    CHECK_NOTHROW(games::build_rac_state_noisy(p));
    CHECK_NOTHROW(games::build_ic_state_noisy(p));
  }
}

TEST_CASE("information-causality inequality values") {
  SUBCASE("perfect state achieves 2") {
    CHECK(games::ic_inequality_value(games::build_ic_state()) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("uncorrelated Z and random message give 0") {
    // replace the PR box with uniform noise: b = z xor m is independent of a_t
    CHECK(games::ic_inequality_value(games::build_ic_state_noisy(Rat(1, 2))) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("noisy value follows the binary-symmetric-channel oracle 2(1 - h(p))") {
    for (const Rat& p : {Rat(3, 4), Rat(9, 10), Rat(17, 20)}) {
      const double expected = 2.0 * (1.0 - binary_entropy_bits(to_double(p)));
      CHECK(games::ic_inequality_value(games::build_ic_state_noisy(p)) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("wrong shape is rejected") {
    CHECK_THROWS_AS(games::ic_inequality_value(box::pr_box()), ValidationError);
  }
}

TEST_CASE("IC-state entropic quantities") {
  const State ic = games::build_ic_state();  // parts A0, A1, M, Z
  const State a1mz = box::marginal(ic, {1, 2, 3});
  const State a0mz = box::marginal(ic, {0, 2, 3});
  const State mz = box::marginal(ic, {2, 3});

  CHECK(entropy::hhat(ic).value_bits == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(entropy::hhat(a1mz).value_bits == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy::hhat(mz).value_bits == doctest::Approx(2.0).epsilon(1e-12));

  // I(A0; A1 M Z) = 0 but I(A0; M Z) = 1: discarding A1 raises the mutual information
  CHECK(entropy::mutual(ic, {0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entropy::mutual(a0mz, {0}) == doctest::Approx(1.0).epsilon(1e-12));

  // the pair gains exactly the one transmitted bit
  CHECK(entropy::mutual(ic, {0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy::mutual_plus(ic, {0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
}
