#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "h2grid/error.hpp"

namespace h2grid::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Triplet {
  int row;
  int col;
  double value;
};

// Minimisation problem
//   min  c'x
//   s.t. a_i'x (<=, =, >=) b_i
//        lower <= x <= upper,  x_j integral for j in integer_vars.
// Binaries are integer variables with bounds [0, 1].
struct LinearProblem {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Triplet> entries;
  std::vector<Sense> senses;
  std::vector<double> rhs;
  std::vector<int> integer_vars;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int add_variable(double cost_coef, double lo, double hi, std::string name = {});
  int add_integer(double cost_coef, double lo, double hi, std::string name = {});
  int add_binary(double cost_coef, std::string name = {}) { return add_integer(cost_coef, 0.0, 1.0, std::move(name)); }
  int add_row(const std::vector<std::pair<int, double>>& terms, Sense sense, double rhs_value,
              std::string name = {});

  bool is_mip() const { return !integer_vars.empty(); }

  // Throws Error{InvalidProblem} on NaN, inconsistent dimensions, crossed
  // bounds or non-integral integer bounds.
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status s);

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> primal;
  double objective = 0.0;
  // Row duals d(objective)/d(rhs); pure LPs only.
  std::vector<double> duals;
  // Reduced costs c - A'y, i.e. the multipliers of the active variable bounds.
  std::vector<double> reduced_costs;
  int iterations = 0;

  // Branch-and-bound bookkeeping (MILP only).
  std::int64_t nodes = 0;
  double best_bound = -kInf;
  std::vector<double> incumbent_history;

  bool optimal() const { return status == Status::Optimal; }
};

struct Options {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-6;
  double integrality_tol = 1e-6;
  double pricing_tol = 1e-9;
  double pivot_tol = 1e-9;
  int bland_threshold = 50;  // consecutive degenerate pivots before Bland's rule
  int max_iterations = 200000;
  std::int64_t max_nodes = 200000;
  int resort_interval = 64;
  bool scale = true;
};

class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& message, std::optional<Solution> incumbent, double bound)
      : Error(ErrorCode::ResourceLimit, message), incumbent_(std::move(incumbent)), bound_(bound) {}

  const std::optional<Solution>& incumbent() const noexcept { return incumbent_; }
  double bound() const noexcept { return bound_; }

 private:
  std::optional<Solution> incumbent_;
  double bound_;
};

Solution solve_lp(const LinearProblem& problem, const Options& options = {});

Solution solve_milp(const LinearProblem& problem, const Options& options = {});

// Primal residual max_i violation of rows and bounds for a candidate point.
double primal_residual(const LinearProblem& problem, const std::vector<double>& x);

// b'y + sum of bound terms from the reduced costs; equals the primal objective
// at an optimal pair.
double dual_objective(const LinearProblem& problem, const Solution& solution);

// Plain-text dump for external cross-checking. Format:
//   vars <n>
//   var <j> <name> <cost> <lower> <upper> <C|I>
//   rows <m>
//   row <i> <name> <L|E|G> <rhs>
//   nz <row> <col> <value>          (one line per constraint triple)
// Infinite bounds print as "inf"/"-inf"; values use %.17g.
void dump(const LinearProblem& problem, std::ostream& out);
LinearProblem parse_dump(std::istream& in);

}  // namespace h2grid::lp
