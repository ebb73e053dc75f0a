#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpt/classical.hpp"
#include "gpt/entropy.hpp"
#include "gpt/quantum.hpp"

using namespace gpt;
using quantum::Density;
using quantum::Mat;

TEST_CASE("von Neumann entropy") {
  CHECK(quantum::von_neumann_entropy_bits(Density::maximally_mixed(2)) == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::VectorXcd zero(2);
  zero << 1, 0;
  CHECK(quantum::von_neumann_entropy_bits(Density::pure(zero)) == doctest::Approx(0.0).epsilon(1e-12));

  // oracle: direct -sum lambda log lambda on diag(3/4, 1/4)
  const double expected = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(quantum::von_neumann_entropy_bits(Density::diagonal({Rat(3, 4), Rat(1, 4)})) ==
        doctest::Approx(expected).epsilon(1e-12));

  Mat not_psd(2, 2);
  not_psd << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(Density::validated(not_psd), ValidationError);
}

TEST_CASE("POVM output entropies") {
  SUBCASE("any 2-outcome rank-1 projective POVM on the maximally mixed qubit gives 1 bit") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      const auto povm = quantum::sample_random_rank1_povm(2, 2, seed);
      CHECK(quantum::povm_output_entropy(Density::maximally_mixed(2), povm) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("eigenbasis POVM reproduces the spectrum entropy") {
    const Density rho = Density::diagonal({Rat(3, 4), Rat(1, 4)});
    const double expected = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
    CHECK(quantum::povm_output_entropy(rho, quantum::eigenbasis_povm(rho)) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("random rank-1 POVMs never beat the eigenbasis") {
    for (const int d : {2, 3}) {
      for (uint64_t seed = 0; seed < 100; ++seed) {
        const Density rho = quantum::random_density(d, 1000 + seed);
        const double s = quantum::von_neumann_entropy_bits(rho);
        const auto povm = quantum::sample_random_rank1_povm(d, d + static_cast<int>(seed % 3), 2000 + seed);
        CHECK(quantum::povm_output_entropy(rho, povm) >= s - 1e-9);
      }
    }
  }
  SUBCASE("sampler output is a valid rank-1 POVM and deterministic per seed") {
    const auto p1 = quantum::sample_random_rank1_povm(3, 5, 42);
    const auto p2 = quantum::sample_random_rank1_povm(3, 5, 42);
    CHECK(p1.fine_grained());
    REQUIRE(p1.elements.size() == 5);
    for (size_t i = 0; i < p1.elements.size(); ++i)
      CHECK((p1.elements[i] - p2.elements[i]).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(quantum::sample_random_rank1_povm(3, 2, 1), ValidationError);
  }
}

TEST_CASE("partial trace and conditional entropy") {
  SUBCASE("product state: conditional equals the first factor's entropy") {
    const Density a = Density::diagonal({Rat(3, 4), Rat(1, 4)});
    const Density b = Density::maximally_mixed(2);
    Mat ab = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) ab(i * 2 + k, j * 2 + l) = a.rho(i, j) * b.rho(k, l);
    const Density rho_ab = Density::validated(ab);
    CHECK(quantum::conditional_vn_bits(rho_ab, 2, 2) ==
          doctest::Approx(quantum::von_neumann_entropy_bits(a)).epsilon(1e-9));
    CHECK((quantum::partial_trace(rho_ab, 2, 2, 0).rho - a.rho).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("maximally entangled pair has conditional entropy -1") {
    Eigen::VectorXcd psi(4);
    psi << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    const Density bell = Density::pure(psi);
    CHECK(quantum::conditional_vn_bits(bell, 2, 2) == doctest::Approx(-1.0).epsilon(1e-9));
  }
  SUBCASE("classical-classical diagonal state matches the classical conditional entropy") {
    const std::vector<Rat> joint = {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)};
    Mat m = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) m(i, i) = to_double(joint[i]);
    const Density cc = Density::validated(m);
    const auto ab = classical::State::validated(joint);
    const double classical_cond =
        classical::shannon(ab) - classical::shannon(classical::marginal(ab, 2, 2, 1));
    CHECK(quantum::conditional_vn_bits(cc, 2, 2) == doctest::Approx(classical_cond).epsilon(1e-9));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(quantum::partial_trace(Density::maximally_mixed(3), 2, 2, 0), ValidationError);
  }
}

TEST_CASE("trace distance") {
  const Density a = Density::diagonal({Rat(1), Rat(0)});
  const Density b = Density::diagonal({Rat(0), Rat(1)});
  CHECK(quantum::trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(quantum::trace_distance(a, a) == doctest::Approx(0.0));

  SUBCASE("measuring in the eigenbasis of the difference attains the trace distance") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const Density r1 = quantum::random_density(2, 300 + seed);
      const Density r2 = quantum::random_density(2, 400 + seed);
      const double td = quantum::trace_distance(r1, r2);
      Eigen::SelfAdjointEigenSolver<Mat> es(r1.rho - r2.rho);
      double tv = 0;
      for (int i = 0; i < 2; ++i) {
        const Eigen::VectorXcd v = es.eigenvectors().col(i);
        const Mat proj = v * v.adjoint();
        tv += std::abs(((r1.rho - r2.rho) * proj).trace().real());
      }
      CHECK(tv / 2 == doctest::Approx(td).epsilon(1e-9));
      // any projective sweep stays below the trace distance
      for (uint64_t s2 = 0; s2 < 5; ++s2) {
        const auto povm = quantum::sample_random_rank1_povm(2, 2, 77 * seed + s2);
        const auto d1 = quantum::apply_povm(r1, povm);
        const auto d2 = quantum::apply_povm(r2, povm);
        double sweep = 0;
        for (size_t i = 0; i < d1.probs.size(); ++i) sweep += std::abs(d1.probs[i] - d2.probs[i]);
        CHECK(sweep / 2 <= td + 1e-9);
      }
    }
  }
}

TEST_CASE("quantum hhat is the von Neumann entropy; Renyi path is flagged") {
  const Density rho = quantum::random_density(3, 99);
  const auto rep = entropy::hhat(rho);
  CHECK(rep.value_bits == doctest::Approx(quantum::von_neumann_entropy_bits(rho)).epsilon(1e-12));
  CHECK(rep.exact);

  const auto renyi = entropy::hhat_alpha(rho, 2.0, 5, 50);
  CHECK(renyi.upper_bound_only);
  CHECK_FALSE(renyi.exact);
  // the eigenbasis is an upper bound by construction
  const auto eigvals = quantum::eigenvalues_clamped(rho);
  CHECK(renyi.value_bits <= renyi_bits(eigvals, 2.0) + 1e-12);
}
