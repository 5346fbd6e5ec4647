#include <algorithm>
#include <cmath>
#include <string>

#include "h2grid/lp.hpp"

namespace h2grid::lp {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "Optimal";
    case Status::Infeasible:
      return "Infeasible";
    case Status::Unbounded:
      return "Unbounded";
  }
  return "?";
}

int LinearProblem::add_variable(double cost_coef, double lo, double hi, std::string name) {
  cost.push_back(cost_coef);
  lower.push_back(lo);
  upper.push_back(hi);
  var_names.push_back(std::move(name));
  return num_vars() - 1;
}

int LinearProblem::add_integer(double cost_coef, double lo, double hi, std::string name) {
  const int j = add_variable(cost_coef, lo, hi, std::move(name));
  integer_vars.push_back(j);
  return j;
}

int LinearProblem::add_row(const std::vector<std::pair<int, double>>& terms, Sense sense, double rhs_value,
                           std::string name) {
  const int row = num_rows();
  for (const auto& [col, value] : terms) {
    if (value != 0.0) entries.push_back({row, col, value});
  }
  senses.push_back(sense);
  rhs.push_back(rhs_value);
  row_names.push_back(std::move(name));
  return row;
}

void LinearProblem::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidProblem, what); };
  const std::size_t n = cost.size();
  if (lower.size() != n || upper.size() != n) fail("bound vectors do not match the cost vector");
  if (senses.size() != rhs.size()) fail("sense and rhs vectors differ in length");
  if (!var_names.empty() && var_names.size() != n) fail("var_names length mismatch");
  if (!row_names.empty() && row_names.size() != rhs.size()) fail("row_names length mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(cost[j])) fail("non-finite cost at column " + std::to_string(j));
    if (std::isnan(lower[j]) || std::isnan(upper[j])) fail("NaN bound at column " + std::to_string(j));
    if (lower[j] > upper[j]) fail("lower > upper at column " + std::to_string(j));
    if (lower[j] == kInf || upper[j] == -kInf) fail("empty bound interval at column " + std::to_string(j));
  }
  for (const double b : rhs) {
    if (!std::isfinite(b)) fail("non-finite right-hand side");
  }
  const int m = num_rows();
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= m || t.col < 0 || t.col >= static_cast<int>(n)) fail("triplet index out of range");
    if (!std::isfinite(t.value)) fail("non-finite matrix entry");
  }
  for (const int j : integer_vars) {
    if (j < 0 || j >= static_cast<int>(n)) fail("integer index out of range");
    const double lo = lower[j];
    const double hi = upper[j];
    if ((std::isfinite(lo) && lo != std::floor(lo)) || (std::isfinite(hi) && hi != std::floor(hi))) {
      fail("integer variable " + std::to_string(j) + " has fractional bounds");
    }
  }
}

double primal_residual(const LinearProblem& problem, const std::vector<double>& x) {
  double worst = 0.0;
  std::vector<double> activity(problem.rhs.size(), 0.0);
  for (const auto& t : problem.entries) activity[t.row] += t.value * x[t.col];
  for (std::size_t i = 0; i < activity.size(); ++i) {
    const double diff = activity[i] - problem.rhs[i];
    switch (problem.senses[i]) {
      case Sense::LessEqual:
        worst = std::max(worst, diff);
        break;
      case Sense::GreaterEqual:
        worst = std::max(worst, -diff);
        break;
      case Sense::Equal:
        worst = std::max(worst, std::abs(diff));
        break;
    }
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, problem.lower[j] - x[j]);
    worst = std::max(worst, x[j] - problem.upper[j]);
  }
  return worst;
}

double dual_objective(const LinearProblem& problem, const Solution& solution) {
  double value = 0.0;
  for (std::size_t i = 0; i < problem.rhs.size(); ++i) value += problem.rhs[i] * solution.duals[i];
  for (std::size_t j = 0; j < problem.cost.size(); ++j) {
    const double d = solution.reduced_costs[j];
    if (d > 0.0 && std::isfinite(problem.lower[j])) value += d * problem.lower[j];
    if (d < 0.0 && std::isfinite(problem.upper[j])) value += d * problem.upper[j];
  }
  return value;
}

}  // namespace h2grid::lp
