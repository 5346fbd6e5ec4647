#pragma once

#include <vector>

#include "h2grid/lp.hpp"

namespace h2grid::lp::detail {

// Dense copy of a problem's constraint matrix together with power-of-two
// row/column equilibration factors. Built once and shared by every LP solve
// of a branch-and-bound tree; only the variable bounds differ per node.
struct PreparedProblem {
  const LinearProblem* source = nullptr;
  int m = 0;
  int n = 0;
  std::vector<double> a;          // original coefficients, row-major m x n
  std::vector<double> row_scale;  // scaled row i = row_scale[i] * row i
  std::vector<double> col_scale;  // x_j = col_scale[j] * x'_j
  double obj_scale = 1.0;

  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

PreparedProblem prepare(const LinearProblem& problem, bool scale);

// Bounded-variable two-phase primal simplex on a dense tableau. The result
// is reported in the original (unscaled) units.
Solution simplex(const PreparedProblem& prep, const std::vector<double>& lower, const std::vector<double>& upper,
                 const Options& options);

}  // namespace h2grid::lp::detail
