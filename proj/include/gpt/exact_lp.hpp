#pragma once

#include <vector>

#include "gpt/rational.hpp"

namespace gpt::exact {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;  // row major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}
  Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

/// A basic (extreme) nonnegative solution of A x = b: the support columns are
/// linearly independent and the weights on them are strictly positive.
struct ExtremeSolution {
  std::vector<int> support;
  std::vector<Rat> weights;  // parallel to support
};

/// Enumerates every extreme point of {x >= 0 : A x = b}, exactly.  The search
/// walks independent column subsets in lexicographic order and prunes a branch
/// as soon as b enters the span of the selected columns, so each extreme point
/// is reported once, at its own support.  Throws GuardExceeded past max_nodes.
std::vector<ExtremeSolution> enumerate_extreme_solutions(const Matrix& A, const std::vector<Rat>& b,
                                                         long max_nodes = 20000000);

/// Solves A[:, support] x = b for independent support columns; returns true
/// and fills x when the system is consistent (x then unique).
bool solve_on_support(const Matrix& A, const std::vector<Rat>& b, const std::vector<int>& support,
                      std::vector<Rat>& x);

}  // namespace gpt::exact
