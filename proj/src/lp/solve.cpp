#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "dense_simplex.hpp"
#include "h2grid/lp.hpp"

namespace h2grid::lp {

Solution solve_lp(const LinearProblem& problem, const Options& options) {
  problem.validate();
  const detail::PreparedProblem prep = detail::prepare(problem, options.scale);
  return detail::simplex(prep, problem.lower, problem.upper, options);
}

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound;  // parent relaxation value
  std::int64_t id;
};

// Most fractional integer variable; lowest index on ties. -1 if integral.
int branching_variable(const std::vector<int>& integer_vars, const std::vector<double>& x, double tol) {
  int best = -1;
  double best_score = tol;
  for (const int j : integer_vars) {
    const double frac = x[j] - std::floor(x[j]);
    const double score = std::min(frac, 1.0 - frac);
    if (score > best_score || (score == best_score && best >= 0 && j < best)) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

}  // namespace

Solution solve_milp(const LinearProblem& problem, const Options& options) {
  problem.validate();
  if (!problem.is_mip()) return solve_lp(problem, options);

  std::vector<int> ints = problem.integer_vars;
  std::sort(ints.begin(), ints.end());
  ints.erase(std::unique(ints.begin(), ints.end()), ints.end());

  const detail::PreparedProblem prep = detail::prepare(problem, options.scale);

  std::optional<Solution> incumbent;
  std::vector<double> history;
  const auto prune_tol = [&](double inc) { return std::max(1e-7, 1e-12 * std::abs(inc)); };

  std::vector<Node> open;
  open.push_back({problem.lower, problem.upper, -kInf, 0});
  std::int64_t next_id = 1;
  std::int64_t expanded = 0;
  int total_iterations = 0;
  bool root = true;

  while (!open.empty()) {
    if (expanded >= options.max_nodes) {
      double bound = incumbent ? incumbent->objective : kInf;
      for (const auto& node : open) bound = std::min(bound, node.bound);
      throw ResourceLimitError("branch-and-bound node limit reached", incumbent, bound);
    }
    if (options.resort_interval > 0 && expanded > 0 && expanded % options.resort_interval == 0) {
      // Best bound to the back (explored next); older nodes first among ties.
      std::stable_sort(open.begin(), open.end(), [](const Node& a, const Node& b) {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id > b.id;
      });
    }
    Node node = std::move(open.back());
    open.pop_back();
    if (incumbent && node.bound >= incumbent->objective - prune_tol(incumbent->objective)) continue;
    ++expanded;

    Solution relax = detail::simplex(prep, node.lower, node.upper, options);
    total_iterations += relax.iterations;
    if (root) {
      root = false;
      if (relax.status == Status::Unbounded) {
        relax.nodes = expanded;
        return relax;
      }
    }
    if (relax.status != Status::Optimal) continue;
    if (incumbent && relax.objective >= incumbent->objective - prune_tol(incumbent->objective)) continue;

    const int j = branching_variable(ints, relax.primal, options.integrality_tol);
    if (j < 0) {
      for (const int k : ints) relax.primal[k] = std::round(relax.primal[k]);
      double obj = 0.0;
      for (int k = 0; k < problem.num_vars(); ++k) obj += problem.cost[k] * relax.primal[k];
      relax.objective = obj;
      if (!incumbent || relax.objective < incumbent->objective) {
        history.push_back(relax.objective);
        incumbent = std::move(relax);
      }
      continue;
    }

    const double v = relax.primal[j];
    Node down{node.lower, node.upper, relax.objective, next_id++};
    down.upper[j] = std::floor(v);
    Node up{std::move(node.lower), std::move(node.upper), relax.objective, next_id++};
    up.lower[j] = std::ceil(v);
    // The child on the rounding side of v is explored first (pushed last).
    const bool up_first = v - std::floor(v) >= 0.5;
    if (up_first) {
      open.push_back(std::move(down));
      open.push_back(std::move(up));
    } else {
      open.push_back(std::move(up));
      open.push_back(std::move(down));
    }
  }

  if (!incumbent) {
    Solution infeasible;
    infeasible.status = Status::Infeasible;
    infeasible.nodes = expanded;
    infeasible.iterations = total_iterations;
    return infeasible;
  }
  Solution result = std::move(*incumbent);
  result.duals.clear();
  result.nodes = expanded;
  result.iterations = total_iterations;
  result.best_bound = result.objective;
  result.incumbent_history = std::move(history);
  return result;
}

}  // namespace h2grid::lp
