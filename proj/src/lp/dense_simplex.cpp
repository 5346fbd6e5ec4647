#include "dense_simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace h2grid::lp::detail {

namespace {

double pow2_scale(double max_abs) {
  if (max_abs <= 0.0 || !std::isfinite(max_abs)) return 1.0;
  return std::exp2(-std::round(std::log2(max_abs)));
}

enum class VarState : unsigned char { Basic, AtLower, AtUpper, FreeZero };

class Tableau {
 public:
  Tableau(const PreparedProblem& prep, const std::vector<double>& lower, const std::vector<double>& upper,
          const Options& options)
      : prep_(prep), opt_(options), node_lo_(lower), node_hi_(upper), m_(prep.m), n_(prep.n) {
    const LinearProblem& p = *prep.source;
    // Column layout: structurals, one slack per inequality row, one artificial per row.
    slack_of_row_.assign(m_, -1);
    int ncols = n_;
    for (int i = 0; i < m_; ++i) {
      if (p.senses[i] != Sense::Equal) slack_of_row_[i] = ncols++;
    }
    art_begin_ = ncols;
    ncols += m_;
    cols_ = ncols;

    lo_.assign(cols_, 0.0);
    hi_.assign(cols_, 0.0);
    x_.assign(cols_, 0.0);
    state_.assign(cols_, VarState::AtLower);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lower[j] / prep.col_scale[j];
      hi_[j] = upper[j] / prep.col_scale[j];
    }
    for (int i = 0; i < m_; ++i) {
      const int s = slack_of_row_[i];
      if (s < 0) continue;
      if (p.senses[i] == Sense::LessEqual) {
        lo_[s] = 0.0;
        hi_[s] = kInf;
      } else {
        lo_[s] = -kInf;
        hi_[s] = 0.0;
      }
    }
    for (int j = 0; j < art_begin_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        state_[j] = VarState::AtLower;
      } else if (std::isfinite(hi_[j])) {
        x_[j] = hi_[j];
        state_[j] = VarState::AtUpper;
      } else {
        x_[j] = 0.0;
        state_[j] = VarState::FreeZero;
      }
    }

    t_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    basis_.assign(m_, -1);
    art_sign_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      const double rs = prep.row_scale[i];
      double residual = rs * p.rhs[i];
      for (int j = 0; j < n_; ++j) {
        const double v = rs * prep.at(i, j) * prep.col_scale[j];
        t_[idx(i, j)] = v;
        residual -= v * x_[j];
      }
      if (slack_of_row_[i] >= 0) {
        t_[idx(i, slack_of_row_[i])] = 1.0;
        residual -= x_[slack_of_row_[i]];
      }
      const double sign = residual >= 0.0 ? 1.0 : -1.0;
      art_sign_[i] = sign;
      if (sign < 0.0) {
        for (int j = 0; j < art_begin_; ++j) t_[idx(i, j)] = -t_[idx(i, j)];
      }
      const int a = art_begin_ + i;
      t_[idx(i, a)] = 1.0;
      lo_[a] = 0.0;
      hi_[a] = kInf;
      x_[a] = std::abs(residual);
      state_[a] = VarState::Basic;
      basis_[i] = a;
    }
    cost_.assign(cols_, 0.0);
    d_.assign(cols_, 0.0);
  }

  Solution run() {
    Solution sol;
    // Phase 1: minimise the sum of artificials.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int i = 0; i < m_; ++i) cost_[art_begin_ + i] = 1.0;
    recompute_reduced_costs();
    if (iterate() == Outcome::Unbounded) {
      // Cannot happen for a bounded-below phase-1 objective.
      throw Error(ErrorCode::InvalidProblem, "phase 1 reported unbounded");
    }
    double infeasibility = 0.0;
    double rhs_norm = 0.0;
    const LinearProblem& p = *prep_.source;
    for (int i = 0; i < m_; ++i) {
      infeasibility += x_[art_begin_ + i];
      rhs_norm = std::max(rhs_norm, std::abs(prep_.row_scale[i] * p.rhs[i]));
    }
    if (infeasibility > opt_.feasibility_tol * (1.0 + rhs_norm)) {
      sol.status = Status::Infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    for (int i = 0; i < m_; ++i) {
      const int a = art_begin_ + i;
      hi_[a] = 0.0;
      if (state_[a] != VarState::Basic) x_[a] = 0.0;
    }
    drive_out_artificials();

    // Phase 2.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = prep_.obj_scale * prep_.col_scale[j] * p.cost[j];
    recompute_reduced_costs();
    const Outcome outcome = iterate();
    sol.iterations = iterations_;
    if (outcome == Outcome::Unbounded) {
      sol.status = Status::Unbounded;
      return sol;
    }
    sol.status = Status::Optimal;
    extract(sol);
    return sol;
  }

 private:
  enum class Outcome { Optimal, Unbounded };

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  void recompute_reduced_costs() {
    for (int j = 0; j < cols_; ++j) d_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[idx(i, 0)];
      for (int j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
    }
    for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  bool fixed(int j) const { return lo_[j] == hi_[j]; }

  // Returns the entering column and its direction (+1 increase, -1 decrease),
  // or -1 when the current basis is optimal for the phase objective.
  int price(bool bland, double& dir) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < cols_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::Basic || fixed(j)) continue;
      const double dj = d_[j];
      double score = 0.0;
      double dj_dir = 0.0;
      if (s == VarState::AtLower && dj < -opt_.pricing_tol) {
        score = -dj;
        dj_dir = 1.0;
      } else if (s == VarState::AtUpper && dj > opt_.pricing_tol) {
        score = dj;
        dj_dir = -1.0;
      } else if (s == VarState::FreeZero && std::abs(dj) > opt_.pricing_tol) {
        score = std::abs(dj);
        dj_dir = dj < 0.0 ? 1.0 : -1.0;
      } else {
        continue;
      }
      if (bland) {
        dir = dj_dir;
        return j;
      }
      if (score > best_score) {
        best_score = score;
        best = j;
        dir = dj_dir;
      }
    }
    return best;
  }

  Outcome iterate() {
    int degenerate_run = 0;
    for (;;) {
      if (iterations_ >= opt_.max_iterations) {
        throw ResourceLimitError("simplex iteration limit reached", std::nullopt, -kInf);
      }
      const bool bland = degenerate_run >= opt_.bland_threshold;
      double dir = 0.0;
      const int q = price(bland, dir);
      if (q < 0) return Outcome::Optimal;

      // Ratio test. Basic variable in row i moves by -theta * alpha_i.
      int leave = -1;
      double theta = kInf;
      double leave_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = dir * t_[idx(i, q)];
        const int b = basis_[i];
        double limit;
        if (alpha > opt_.pivot_tol) {
          if (!std::isfinite(lo_[b])) continue;
          limit = (x_[b] - lo_[b]) / alpha;
        } else if (alpha < -opt_.pivot_tol) {
          if (!std::isfinite(hi_[b])) continue;
          limit = (hi_[b] - x_[b]) / (-alpha);
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        const double tie = 1e-12 * (1.0 + std::abs(theta));
        bool take = false;
        if (leave < 0 || limit < theta - tie) {
          take = true;
        } else if (limit <= theta + tie) {
          if (bland) {
            take = b < basis_[leave];
          } else {
            const double a_abs = std::abs(alpha);
            const double l_abs = std::abs(leave_alpha);
            take = a_abs > l_abs || (a_abs == l_abs && b < basis_[leave]);
          }
        }
        if (take) {
          leave = i;
          theta = std::min(theta, limit);
          leave_alpha = alpha;
        }
      }
      const double span = hi_[q] - lo_[q];
      ++iterations_;
      if (std::isfinite(span) && (leave < 0 || span <= theta)) {
        // Bound flip: entering variable travels to its opposite bound.
        for (int i = 0; i < m_; ++i) {
          const double alpha = dir * t_[idx(i, q)];
          if (alpha != 0.0) x_[basis_[i]] -= span * alpha;
        }
        if (dir > 0.0) {
          x_[q] = hi_[q];
          state_[q] = VarState::AtUpper;
        } else {
          x_[q] = lo_[q];
          state_[q] = VarState::AtLower;
        }
        degenerate_run = span > 1e-12 ? 0 : degenerate_run + 1;
        continue;
      }
      if (leave < 0) return Outcome::Unbounded;

      for (int i = 0; i < m_; ++i) {
        const double alpha = dir * t_[idx(i, q)];
        if (alpha != 0.0) x_[basis_[i]] -= theta * alpha;
      }
      x_[q] += dir * theta;
      const int b = basis_[leave];
      if (leave_alpha > 0.0) {
        x_[b] = lo_[b];
        state_[b] = VarState::AtLower;
      } else {
        x_[b] = hi_[b];
        state_[b] = VarState::AtUpper;
      }
      if (fixed(b)) state_[b] = VarState::AtLower;
      pivot(leave, q);
      degenerate_run = theta > 1e-12 ? 0 : degenerate_run + 1;
    }
  }

  void pivot(int r, int q) {
    double* prow = &t_[idx(r, 0)];
    const double inv = 1.0 / prow[q];
    for (int j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[idx(i, 0)];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double dq = d_[q];
    if (dq != 0.0) {
      for (int j = 0; j < cols_; ++j) d_[j] -= dq * prow[j];
      d_[q] = 0.0;
    }
    basis_[r] = q;
    state_[q] = VarState::Basic;
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[r];
      if (b < art_begin_) continue;
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < art_begin_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        const double v = std::abs(t_[idx(r, j)]);
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; the artificial stays basic at zero
      x_[b] = 0.0;
      state_[b] = VarState::AtLower;
      pivot(r, best);
    }
  }

  void extract(Solution& sol) const {
    const LinearProblem& p = *prep_.source;
    const int n = n_;
    sol.primal.assign(n, 0.0);
    sol.duals.assign(m_, 0.0);
    sol.reduced_costs.assign(n, 0.0);

    // Nonbasic structurals sit exactly on their original bounds.
    std::vector<double> xs(n, 0.0);
    for (int j = 0; j < n; ++j) {
      switch (state_[j]) {
        case VarState::AtLower:
          xs[j] = node_lo_[j];
          break;
        case VarState::AtUpper:
          xs[j] = node_hi_[j];
          break;
        case VarState::FreeZero:
          xs[j] = 0.0;
          break;
        case VarState::Basic:
          xs[j] = x_[j] * prep_.col_scale[j];
          break;
      }
    }

    // Refactor the final basis in original units and recompute basic values
    // and duals; this removes tableau drift.
    bool polished = false;
    if (m_ > 0) {
      Eigen::MatrixXd basis(m_, m_);
      basis.setZero();
      Eigen::VectorXd rhs(m_);
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) {
        double r = p.rhs[i];
        for (int j = 0; j < n; ++j) {
          if (state_[j] != VarState::Basic) r -= prep_.at(i, j) * xs[j];
        }
        rhs(i) = r;
      }
      for (int k = 0; k < m_; ++k) {
        const int col = basis_[k];
        if (col < n) {
          for (int i = 0; i < m_; ++i) basis(i, k) = prep_.at(i, col);
          cb(k) = p.cost[col];
        } else if (col < art_begin_) {
          const int row = row_of_slack(col);
          basis(row, k) = 1.0;
          cb(k) = 0.0;
        } else {
          const int row = col - art_begin_;
          basis(row, k) = art_sign_[row];
          cb(k) = 0.0;
        }
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
      if (lu.rcond() > 1e-14) {
        const Eigen::VectorXd xb = lu.solve(rhs);
        const Eigen::VectorXd y = lu.transpose().solve(cb);
        bool finite = xb.allFinite() && y.allFinite();
        if (finite) {
          std::vector<double> candidate = xs;
          for (int k = 0; k < m_; ++k) {
            if (basis_[k] < n) candidate[basis_[k]] = xb(k);
          }
          const double res_new = residual(candidate);
          const double res_old = residual(xs);
          if (res_new <= std::max(res_old, 1e-9)) {
            xs = std::move(candidate);
            for (int i = 0; i < m_; ++i) sol.duals[i] = y(i);
            polished = true;
          }
        }
      }
    }
    if (!polished) {
      for (int i = 0; i < m_; ++i) {
        const int a = art_begin_ + i;
        sol.duals[i] = -art_sign_[i] * d_[a] * prep_.row_scale[i] / prep_.obj_scale;
      }
    }
    // Snap tiny bound violations caused by rounding.
    for (int j = 0; j < n; ++j) xs[j] = std::clamp(xs[j], node_lo_[j], node_hi_[j]);
    for (int j = 0; j < n; ++j) sol.reduced_costs[j] = p.cost[j];
    for (const auto& t : p.entries) sol.reduced_costs[t.col] -= t.value * sol.duals[t.row];
    sol.primal = std::move(xs);
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += p.cost[j] * sol.primal[j];
    sol.objective = obj;
  }

  // Row and bound violation against this solve's bounds.
  double residual(const std::vector<double>& x) const {
    LinearProblem const& p = *prep_.source;
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      double act = 0.0;
      for (int j = 0; j < n_; ++j) act += prep_.at(i, j) * x[j];
      const double diff = act - p.rhs[i];
      if (p.senses[i] == Sense::LessEqual) worst = std::max(worst, diff);
      else if (p.senses[i] == Sense::GreaterEqual) worst = std::max(worst, -diff);
      else worst = std::max(worst, std::abs(diff));
    }
    for (int j = 0; j < n_; ++j) {
      worst = std::max(worst, node_lo_[j] - x[j]);
      worst = std::max(worst, x[j] - node_hi_[j]);
    }
    return worst;
  }

  int row_of_slack(int col) const {
    for (int i = 0; i < m_; ++i) {
      if (slack_of_row_[i] == col) return i;
    }
    return -1;
  }

  const PreparedProblem& prep_;
  const Options& opt_;
  const std::vector<double>& node_lo_;
  const std::vector<double>& node_hi_;
  int m_;
  int n_;
  int cols_ = 0;
  int art_begin_ = 0;
  std::vector<int> slack_of_row_;
  std::vector<double> lo_, hi_, x_, cost_, d_, art_sign_;
  std::vector<VarState> state_;
  std::vector<double> t_;
  std::vector<int> basis_;
  int iterations_ = 0;
};

}  // namespace

PreparedProblem prepare(const LinearProblem& problem, bool scale) {
  PreparedProblem prep;
  prep.source = &problem;
  prep.m = problem.num_rows();
  prep.n = problem.num_vars();
  prep.a.assign(static_cast<std::size_t>(prep.m) * prep.n, 0.0);
  for (const auto& t : problem.entries) prep.a[static_cast<std::size_t>(t.row) * prep.n + t.col] += t.value;
  prep.row_scale.assign(prep.m, 1.0);
  prep.col_scale.assign(prep.n, 1.0);
  if (!scale) return prep;

  for (int i = 0; i < prep.m; ++i) {
    double mx = 0.0;
    for (int j = 0; j < prep.n; ++j) mx = std::max(mx, std::abs(prep.at(i, j)));
    prep.row_scale[i] = pow2_scale(mx);
  }
  for (int j = 0; j < prep.n; ++j) {
    double mx = 0.0;
    for (int i = 0; i < prep.m; ++i) mx = std::max(mx, std::abs(prep.row_scale[i] * prep.at(i, j)));
    prep.col_scale[j] = pow2_scale(mx);
  }
  double cmax = 0.0;
  for (int j = 0; j < prep.n; ++j) cmax = std::max(cmax, std::abs(problem.cost[j] * prep.col_scale[j]));
  prep.obj_scale = pow2_scale(cmax);
  return prep;
}

Solution simplex(const PreparedProblem& prep, const std::vector<double>& lower, const std::vector<double>& upper,
                 const Options& options) {
  Tableau tableau(prep, lower, upper, options);
  return tableau.run();
}

}  // namespace h2grid::lp::detail
