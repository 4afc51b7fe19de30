#include "hcpack/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace hcpack {

namespace {

struct Tableau {
  int m, n;  // rows, structural + artificial columns
  std::vector<double> t;  // (m+1) x (n+1), last column is rhs, last row is objective
  std::vector<int> basis;
  double& at(int r, int c) { return t[static_cast<std::size_t>(r) * (n + 1) + c]; }

  void pivot(int r, int c) {
    double p = at(r, c);
    for (int j = 0; j <= n; ++j) at(r, j) /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      double f = at(i, c);
      if (f == 0) continue;
      for (int j = 0; j <= n; ++j) at(i, j) -= f * at(r, j);
    }
    basis[r] = c;
  }

  // minimise the objective row (reduced costs stored in row m); allowed columns < limit
  LPResult::Status run(int limit, double tol, int& pivots, int max_pivots) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (at(m, j) < -tol) {
          enter = j;
          break;
        }
      if (enter < 0) return LPResult::Optimal;
      int leave = -1;
      double best = 0;
      for (int i = 0; i < m; ++i) {
        double a = at(i, enter);
        if (a > tol) {
          double ratio = at(i, n) / a;
          if (leave < 0 || ratio < best - tol || (std::abs(ratio - best) <= tol && basis[i] < basis[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return LPResult::Unbounded;
      pivot(leave, enter);
      if (++pivots > max_pivots) return LPResult::IterationLimit;
    }
  }
};

}  // namespace

LPResult solve_lp(std::vector<std::vector<double>> A, std::vector<double> b, const std::vector<double>& c, double tol,
                  int max_pivots) {
  const int m = static_cast<int>(A.size());
  const int nv = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("solve_lp: row/rhs mismatch");
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != nv) throw std::invalid_argument("solve_lp: ragged matrix");
    if (b[i] < 0) {
      b[i] = -b[i];
      for (double& a : A[i]) a = -a;
    }
  }
  Tableau T{m, nv + m, {}, std::vector<int>(m)};
  T.t.assign(static_cast<std::size_t>(m + 1) * (T.n + 1), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nv; ++j) T.at(i, j) = A[i][j];
    T.at(i, nv + i) = 1.0;
    T.at(i, T.n) = b[i];
    T.basis[i] = nv + i;
  }
  // phase one: minimise the sum of artificials
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= T.n; ++j)
      if (j < nv || j == T.n) T.at(m, j) -= T.at(i, j);
  LPResult res;
  auto st = T.run(T.n, tol, res.pivots, max_pivots);
  if (st == LPResult::IterationLimit) {
    res.status = st;
    return res;
  }
  if (-T.at(m, T.n) > 1e-7 * std::max(1.0, static_cast<double>(m))) {
    res.status = LPResult::Infeasible;
    return res;
  }
  // drive remaining artificials out of the basis
  for (int i = 0; i < m; ++i) {
    if (T.basis[i] < nv) continue;
    for (int j = 0; j < nv; ++j)
      if (std::abs(T.at(i, j)) > tol) {
        T.pivot(i, j);
        break;
      }
  }
  // phase two objective: minimise -c.x
  for (int j = 0; j <= T.n; ++j) T.at(m, j) = 0;
  for (int j = 0; j < nv; ++j) T.at(m, j) = -c[j];
  for (int i = 0; i < m; ++i) {
    int bj = T.basis[i];
    if (bj < nv && c[bj] != 0) {
      double f = T.at(m, bj);
      for (int j = 0; j <= T.n; ++j) T.at(m, j) -= f * T.at(i, j);
    }
  }
  // artificials stuck in the basis sit at zero on redundant rows; forbid them from entering
  st = T.run(nv, tol, res.pivots, max_pivots);
  res.status = st;
  res.x.assign(nv, 0.0);
  for (int i = 0; i < m; ++i)
    if (T.basis[i] < nv) res.x[T.basis[i]] = std::max(0.0, T.at(i, T.n));
  res.objective = 0;
  for (int j = 0; j < nv; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace hcpack
