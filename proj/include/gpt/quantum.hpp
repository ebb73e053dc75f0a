#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "gpt/distribution.hpp"
#include "gpt/rational.hpp"

namespace gpt::quantum {

using Mat = Eigen::MatrixXcd;

constexpr double kHermTol = 1e-10;
constexpr double kEigTol = 1e-10;

/// A density operator: Hermitian, positive semidefinite (eigenvalues allowed
/// down to -1e-10 and clamped at 0), trace within 1e-10 of 1.
struct Density {
  Mat rho;

  int dim() const { return static_cast<int>(rho.rows()); }

  static Density validated(Mat m);
  static Density maximally_mixed(int d);
  static Density pure(const Eigen::VectorXcd& psi);
  static Density diagonal(const std::vector<Rat>& p);
};

/// A positive-operator-valued measure; fine-grained iff every element has
/// rank 1.
struct Povm {
  std::vector<Mat> elements;

  static Povm validated(std::vector<Mat> elements);
  bool fine_grained(double tol = 1e-8) const;
  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
};

/// Eigenvalues sorted descending, with values in [-1e-10, 0] clamped to 0.
std::vector<double> eigenvalues_clamped(const Density& rho);

double von_neumann_entropy_bits(const Density& rho);

OutcomeDistribution apply_povm(const Density& rho, const Povm& m);
double povm_output_entropy(const Density& rho, const Povm& m);

/// The projective measurement onto an eigenbasis of rho.
Povm eigenbasis_povm(const Density& rho);

/// Deterministic per seed: a Haar-style random rank-1 POVM with n_outcomes >= d
/// elements, built from random frame vectors renormalized so they sum to the
/// identity.
Povm sample_random_rank1_povm(int d, int n_outcomes, uint64_t seed);

/// Random mixed state (Ginibre construction), deterministic per seed.
Density random_density(int d, uint64_t seed);

/// Partial trace of a bipartite state with dims (da, db); keep = 0 returns the
/// first factor.
Density partial_trace(const Density& rho_ab, int da, int db, int keep);

/// S(AB) - S(B); can be negative.
double conditional_vn_bits(const Density& rho_ab, int da, int db);

/// Trace distance (1/2)||rho - sigma||_1; this is the closed form of the
/// operational distance in quantum theory.
double trace_distance(const Density& a, const Density& b);

}  // namespace gpt::quantum
