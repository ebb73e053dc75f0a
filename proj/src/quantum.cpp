#include "gpt/quantum.hpp"

#include <cmath>
#include <random>

namespace gpt::quantum {

namespace {

void require_hermitian(const Mat& m, const char* what) {
  if (m.rows() != m.cols()) throw ValidationError(std::string(what) + ": matrix not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw ValidationError(std::string(what) + ": matrix not Hermitian");
}

Mat hermitize(const Mat& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

Density Density::validated(Mat m) {
  require_hermitian(m, "density matrix");
  Density d;
  d.rho = hermitize(m);
  if (std::abs(d.rho.trace().real() - 1.0) > kEigTol || std::abs(d.rho.trace().imag()) > kEigTol)
    throw ValidationError("density matrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(d.rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigTol)
    throw ValidationError("density matrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  return d;
}

Density Density::maximally_mixed(int d) {
  if (d < 1) throw ValidationError("density matrix: dimension must be >= 1");
  return validated(Mat::Identity(d, d) / static_cast<double>(d));
}

Density Density::pure(const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (n <= 0) throw ValidationError("pure state: zero vector");
  const Eigen::VectorXcd v = psi / n;
  return validated(v * v.adjoint());
}

Density Density::diagonal(const std::vector<Rat>& p) {
  Mat m = Mat::Zero(p.size(), p.size());
  for (size_t i = 0; i < p.size(); ++i) m(i, i) = to_double(p[i]);
  return validated(m);
}

Povm Povm::validated(std::vector<Mat> elements) {
  if (elements.empty()) throw ValidationError("POVM: no elements");
  const int d = static_cast<int>(elements[0].rows());
  Mat sum = Mat::Zero(d, d);
  for (const Mat& e : elements) {
    require_hermitian(e, "POVM element");
    if (e.rows() != d) throw ValidationError("POVM: mixed dimensions");
    Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigTol) throw ValidationError("POVM element not positive semidefinite");
    sum += e;
  }
  if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw ValidationError("POVM elements do not sum to the identity");
  Povm p;
  p.elements = std::move(elements);
  return p;
}

bool Povm::fine_grained(double tol) const {
  for (const Mat& e : elements) {
    Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
    int rank = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > tol) ++rank;
    if (rank > 1) return false;
  }
  return true;
}

std::vector<double> eigenvalues_clamped(const Density& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.rho, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  for (double& x : v) {
    if (x < 0) {
      if (x < -kEigTol) throw ValidationError("eigenvalues_clamped: matrix not positive semidefinite");
      x = 0;
    }
  }
  std::sort(v.rbegin(), v.rend());
  return v;
}

double von_neumann_entropy_bits(const Density& rho) { return shannon_bits(eigenvalues_clamped(rho)); }

OutcomeDistribution apply_povm(const Density& rho, const Povm& m) {
  if (m.dim() != rho.dim()) throw TheoryMismatch("apply_povm: dimension mismatch");
  std::vector<std::string> labels;
  std::vector<double> probs;
  for (size_t r = 0; r < m.elements.size(); ++r) {
    labels.push_back(std::to_string(r));
    probs.push_back(std::max(0.0, (rho.rho * m.elements[r]).trace().real()));
  }
  auto d = OutcomeDistribution::from_doubles(std::move(labels), std::move(probs));
  d.validate(1e-8);
  return d;
}

double povm_output_entropy(const Density& rho, const Povm& m) { return shannon_bits(apply_povm(rho, m)); }

Povm eigenbasis_povm(const Density& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.rho);
  std::vector<Mat> elems;
  for (int i = 0; i < rho.dim(); ++i) {
    const Eigen::VectorXcd v = es.eigenvectors().col(i);
    elems.push_back(v * v.adjoint());
  }
  return Povm::validated(std::move(elems));
}

Povm sample_random_rank1_povm(int d, int n_outcomes, uint64_t seed) {
  if (n_outcomes < d) throw ValidationError("sample_random_rank1_povm: needs n_outcomes >= d");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXcd> vecs;
  Mat s = Mat::Zero(d, d);
  for (int r = 0; r < n_outcomes; ++r) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
    vecs.push_back(v);
    s += v * v.adjoint();
  }
  // Renormalize the frame so the elements sum to the identity exactly.
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  Mat inv_sqrt = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev <= 1e-12) throw ValidationError("sample_random_rank1_povm: degenerate frame");
    inv_sqrt += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint() / std::sqrt(ev);
  }
  std::vector<Mat> elems;
  for (const auto& v : vecs) {
    const Eigen::VectorXcd w = inv_sqrt * v;
    elems.push_back(w * w.adjoint());
  }
  return Povm::validated(std::move(elems));
}

Density random_density(int d, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Mat m = g * g.adjoint();
  return Density::validated(m / m.trace().real());
}

Density partial_trace(const Density& rho_ab, int da, int db, int keep) {
  if (da * db != rho_ab.dim()) throw ValidationError("partial_trace: dimension mismatch");
  if (keep != 0 && keep != 1) throw ValidationError("partial_trace: keep must be 0 or 1");
  const int dk = keep == 0 ? da : db;
  Mat out = Mat::Zero(dk, dk);
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap)
      for (int b = 0; b < db; ++b)
        for (int bp = 0; bp < db; ++bp) {
          if (keep == 0 && b == bp) out(a, ap) += rho_ab.rho(a * db + b, ap * db + bp);
          if (keep == 1 && a == ap) out(b, bp) += rho_ab.rho(a * db + b, ap * db + bp);
        }
  return Density::validated(out);
}

double conditional_vn_bits(const Density& rho_ab, int da, int db) {
  return von_neumann_entropy_bits(rho_ab) - von_neumann_entropy_bits(partial_trace(rho_ab, da, db, 1));
}

double trace_distance(const Density& a, const Density& b) {
  if (a.dim() != b.dim()) throw TheoryMismatch("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(a.rho - b.rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum() / 2.0;
}

}  // namespace gpt::quantum
