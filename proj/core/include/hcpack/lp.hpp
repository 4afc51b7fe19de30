#pragma once

#include <vector>

namespace hcpack {

// Dense two-phase simplex with Bland's rule.
// Solves  max c.x  s.t.  A x = b,  x >= 0.
struct LPResult {
  enum Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Infeasible;
  std::vector<double> x;
  double objective = 0;
  int pivots = 0;
};

LPResult solve_lp(std::vector<std::vector<double>> A, std::vector<double> b, const std::vector<double>& c,
                  double tol = 1e-9, int max_pivots = 200000);

}  // namespace hcpack
