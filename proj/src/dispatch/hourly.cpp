#include <algorithm>
#include <cmath>
#include <string>

#include "h2grid/dispatch.hpp"

namespace h2grid::dispatch {

namespace {

double total_capacity(const grid::PowerSystem& system, int hour) {
  double s = 0.0;
  for (const auto& g : system.generators()) s += g.capacity(hour);
  return s;
}

void check_hour(const grid::PowerSystem& system, int hour) {
  if (hour < 0 || hour >= system.hours()) {
    throw Error(ErrorCode::InvalidInput, "hour " + std::to_string(hour) + " outside the study horizon");
  }
}

std::vector<double> clamp_outputs(const grid::PowerSystem& system, int hour, const std::vector<double>& q) {
  std::vector<double> out(q.size());
  for (std::size_t g = 0; g < q.size(); ++g) out[g] = std::clamp(q[g], 0.0, system.generators()[g].capacity(hour));
  return out;
}

double dispatch_cost(const grid::PowerSystem& system, const std::vector<double>& q) {
  double c = 0.0;
  for (std::size_t g = 0; g < q.size(); ++g) c += system.generators()[g].marginal_cost * q[g];
  return c;
}

}  // namespace

std::vector<double> line_flows(const grid::PowerSystem& system, int hour, const std::vector<double>& output_mw) {
  std::vector<double> inj(static_cast<std::size_t>(system.num_nodes()), 0.0);
  const auto d = system.demand().hour(hour);
  for (int n = 0; n < system.num_nodes(); ++n) inj[n] = -d[n];
  for (std::size_t g = 0; g < output_mw.size(); ++g) inj[system.generators()[g].node] += output_mw[g];
  return system.ptdf().flows(inj);
}

HourDispatch uniform_dispatch(const grid::PowerSystem& system, int hour, const lp::Options& options) {
  check_hour(system, hour);
  const double demand = system.demand().hour_total(hour);
  lp::LinearProblem p;
  std::vector<std::pair<int, double>> balance;
  for (const auto& g : system.generators()) {
    balance.emplace_back(p.add_variable(g.marginal_cost, 0.0, g.capacity(hour)), 1.0);
  }
  p.add_row(balance, lp::Sense::Equal, demand, "balance");
  const lp::Solution s = lp::solve_lp(p, options);
  if (s.status != lp::Status::Optimal) {
    const double deficit = std::max(0.0, demand - total_capacity(system, hour));
    throw InfeasibleHourError(hour, deficit,
                              "hour " + std::to_string(hour) + ": demand exceeds available capacity by " +
                                  std::to_string(deficit) + " MW");
  }
  HourDispatch r;
  r.hour = hour;
  r.output_mw = clamp_outputs(system, hour, s.primal);
  r.uniform_price = s.duals.at(0);
  r.served_mw = demand;
  r.cost_eur = dispatch_cost(system, r.output_mw);
  return r;
}

RedispatchAdjustment redispatch(const grid::PowerSystem& system, int hour, const HourDispatch& market,
                                const lp::Options& options) {
  check_hour(system, hour);
  const auto& gens = system.generators();
  if (market.output_mw.size() != gens.size()) throw Error(ErrorCode::InvalidInput, "market result does not match fleet");
  const auto& h = system.ptdf();
  const auto& lines = system.lines();
  const std::vector<double> f0 = line_flows(system, hour, market.output_mw);

  lp::LinearProblem p;
  std::vector<std::pair<int, double>> zero_sum;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const double q = market.output_mw[g];
    const int j = p.add_variable(gens[g].marginal_cost, -q, gens[g].capacity(hour) - q);
    zero_sum.emplace_back(j, 1.0);
  }
  p.add_row(zero_sum, lp::Sense::Equal, 0.0, "zero_sum");
  for (int l = 0; l < h.lines(); ++l) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const double coef = h.at(l, gens[g].node);
      if (coef != 0.0) terms.emplace_back(static_cast<int>(g), coef);
    }
    const double cap = lines[l].capacity_mw;
    p.add_row(terms, lp::Sense::LessEqual, cap - f0[l]);
    p.add_row(terms, lp::Sense::GreaterEqual, -cap - f0[l]);
  }
  const lp::Solution s = lp::solve_lp(p, options);
  if (s.status != lp::Status::Optimal) {
    throw Error(ErrorCode::InfeasibleRedispatch,
                "hour " + std::to_string(hour) + ": no redispatch restores the line limits");
  }
  RedispatchAdjustment r;
  r.hour = hour;
  r.delta_mw = s.primal;
  r.cost_eur = s.objective;
  std::vector<double> after(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) after[g] = market.output_mw[g] + r.delta_mw[g];
  r.flows_mw = line_flows(system, hour, after);
  return r;
}

HourDispatch nodal_dispatch(const grid::PowerSystem& system, int hour, const lp::Options& options) {
  check_hour(system, hour);
  const auto& gens = system.generators();
  const auto& h = system.ptdf();
  const int nodes = system.num_nodes();
  const auto d = system.demand().hour(hour);

  lp::LinearProblem p;
  std::vector<std::vector<std::pair<int, double>>> at_node(static_cast<std::size_t>(nodes));
  for (const auto& g : gens) {
    at_node[g.node].emplace_back(p.add_variable(g.marginal_cost, 0.0, g.capacity(hour)), 1.0);
  }
  std::vector<int> inj(static_cast<std::size_t>(nodes));
  for (int n = 0; n < nodes; ++n) inj[n] = p.add_variable(0.0, -lp::kInf, lp::kInf);
  // Rows 0..nodes-1: generation at n minus net export of n equals demand at n.
  for (int n = 0; n < nodes; ++n) {
    auto terms = at_node[n];
    terms.emplace_back(inj[n], -1.0);
    p.add_row(terms, lp::Sense::Equal, d[n], "node" + std::to_string(n));
  }
  std::vector<std::pair<int, double>> sum;
  for (int n = 0; n < nodes; ++n) sum.emplace_back(inj[n], 1.0);
  p.add_row(sum, lp::Sense::Equal, 0.0, "net_zero");
  for (int l = 0; l < h.lines(); ++l) {
    std::vector<std::pair<int, double>> terms;
    for (int n = 0; n < nodes; ++n) {
      if (h.at(l, n) != 0.0) terms.emplace_back(inj[n], h.at(l, n));
    }
    const double cap = system.lines()[l].capacity_mw;
    p.add_row(terms, lp::Sense::LessEqual, cap);
    p.add_row(terms, lp::Sense::GreaterEqual, -cap);
  }
  const lp::Solution s = lp::solve_lp(p, options);
  const double demand = system.demand().hour_total(hour);
  if (s.status != lp::Status::Optimal) {
    const double deficit = std::max(0.0, demand - total_capacity(system, hour));
    throw InfeasibleHourError(hour, deficit,
                              "hour " + std::to_string(hour) + ": demand cannot be served within line limits");
  }
  HourDispatch r;
  r.hour = hour;
  r.output_mw = clamp_outputs(system, hour, std::vector<double>(s.primal.begin(), s.primal.begin() + gens.size()));
  r.nodal_prices.assign(s.duals.begin(), s.duals.begin() + nodes);
  r.uniform_price = 0.0;
  for (const double v : r.nodal_prices) r.uniform_price += v;
  r.uniform_price /= nodes;
  r.served_mw = demand;
  r.cost_eur = dispatch_cost(system, r.output_mw);
  return r;
}

}  // namespace h2grid::dispatch
