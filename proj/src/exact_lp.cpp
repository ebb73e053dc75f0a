#include "gpt/exact_lp.hpp"

namespace gpt::exact {

namespace {

struct Pivot {
  int row;                  // pivot row of this column after elimination
  std::vector<Rat> column;  // reduced column
};

// Reduces `col` against the pivots accumulated so far.
void reduce(std::vector<Rat>& col, const std::vector<Pivot>& pivots) {
  for (const Pivot& p : pivots) {
    const Rat coef = col[p.row] / p.column[p.row];
    if (coef != 0) {
      for (size_t r = 0; r < col.size(); ++r) col[r] -= coef * p.column[r];
    }
  }
}

int first_nonzero(const std::vector<Rat>& v) {
  for (size_t r = 0; r < v.size(); ++r)
    if (v[r] != 0) return static_cast<int>(r);
  return -1;
}

struct Search {
  const Matrix& A;
  const std::vector<Rat>& b;
  long budget;
  std::vector<Pivot> pivots;
  std::vector<int> selected;
  std::vector<ExtremeSolution> out;

  std::vector<Rat> column_of(int j) const {
    std::vector<Rat> c(A.rows);
    for (int r = 0; r < A.rows; ++r) c[r] = A.at(r, j);
    return c;
  }

  void run(int next_col, std::vector<Rat> residual) {
    if (--budget < 0) throw GuardExceeded("extreme-solution enumeration exceeded node limit");
    if (first_nonzero(residual) < 0) {
      // b is in the span of the selected columns: the solution on this
      // support is unique, and any extension only pads it with zeros.
      std::vector<Rat> x;
      if (solve_on_support(A, b, selected, x)) {
        bool strictly_positive = true;
        for (const Rat& w : x)
          if (w <= 0) strictly_positive = false;
        if (strictly_positive) out.push_back({selected, x});
      }
      return;
    }
    for (int j = next_col; j < A.cols; ++j) {
      std::vector<Rat> col = column_of(j);
      reduce(col, pivots);
      const int pr = first_nonzero(col);
      if (pr < 0) continue;  // dependent on current selection
      std::vector<Rat> res = residual;
      const Rat coef = res[pr] / col[pr];
      if (coef != 0) {
        for (size_t r = 0; r < res.size(); ++r) res[r] -= coef * col[r];
      }
      pivots.push_back({pr, std::move(col)});
      selected.push_back(j);
      run(j + 1, std::move(res));
      selected.pop_back();
      pivots.pop_back();
    }
  }
};

}  // namespace

bool solve_on_support(const Matrix& A, const std::vector<Rat>& b, const std::vector<int>& support,
                      std::vector<Rat>& x) {
  const int k = static_cast<int>(support.size());
  // Augmented system [A_S | b], Gaussian elimination with exact pivots.
  Matrix m(A.rows, k + 1);
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < k; ++c) m.at(r, c) = A.at(r, support[c]);
    m.at(r, k) = b[r];
  }
  std::vector<int> pivot_row_of(k, -1);
  int row = 0;
  for (int c = 0; c < k && row < m.rows; ++c) {
    int pr = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, c) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) return false;  // support columns not independent
    for (int cc = 0; cc <= k; ++cc) std::swap(m.at(pr, cc), m.at(row, cc));
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, c) == 0) continue;
      const Rat f = m.at(r, c) / m.at(row, c);
      for (int cc = c; cc <= k; ++cc) m.at(r, cc) -= f * m.at(row, cc);
    }
    pivot_row_of[c] = row;
    ++row;
  }
  // Consistency: rows below the pivots must have zero RHS.
  for (int r = row; r < m.rows; ++r)
    if (m.at(r, k) != 0) return false;
  x.assign(k, Rat(0));
  for (int c = 0; c < k; ++c) x[c] = m.at(pivot_row_of[c], k) / m.at(pivot_row_of[c], c);
  return true;
}

std::vector<ExtremeSolution> enumerate_extreme_solutions(const Matrix& A, const std::vector<Rat>& b,
                                                         long max_nodes) {
  if (static_cast<int>(b.size()) != A.rows)
    throw ValidationError("extreme-solution enumeration: rhs size mismatch");
  Search s{A, b, max_nodes, {}, {}, {}};
  s.run(0, b);
  return s.out;
}

}  // namespace gpt::exact
