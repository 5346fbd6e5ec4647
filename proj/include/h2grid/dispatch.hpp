#pragma once

#include <vector>

#include "h2grid/grid.hpp"
#include "h2grid/lp.hpp"

namespace h2grid::dispatch {

struct HourDispatch {
  int hour = 0;
  std::vector<double> output_mw;    // per generator
  double uniform_price = 0.0;       // EUR/MWh; nodal model: mean over nodes
  std::vector<double> nodal_prices; // EUR/MWh per node, nodal model only
  double served_mw = 0.0;
  double cost_eur = 0.0;            // sum of marginal cost * output
};

struct RedispatchAdjustment {
  int hour = 0;
  std::vector<double> delta_mw;     // per generator
  std::vector<double> flows_mw;     // per line, after adjustment
  double cost_eur = 0.0;            // signed optimal objective
};

// Merit-order dispatch ignoring the network. The price is the dual of the
// system balance row. Throws InfeasibleHourError on a capacity shortfall.
HourDispatch uniform_dispatch(const grid::PowerSystem& system, int hour, const lp::Options& options = {});

// Cost-minimal adjustment of `market` that restores all line limits while
// keeping the system balanced. Throws InfeasibleRedispatch.
RedispatchAdjustment redispatch(const grid::PowerSystem& system, int hour, const HourDispatch& market,
                                const lp::Options& options = {});

// DC-OPF with per-node balance rows; nodal prices are their duals.
HourDispatch nodal_dispatch(const grid::PowerSystem& system, int hour, const lp::Options& options = {});

// Line flows induced by a dispatch at the given hour.
std::vector<double> line_flows(const grid::PowerSystem& system, int hour, const std::vector<double>& output_mw);

enum class Mode { UniformRedispatch, Nodal };

struct AnnualDispatchSummary {
  Mode mode = Mode::UniformRedispatch;
  int hours = 0;
  std::vector<HourDispatch> market;              // one per hour, in hour order
  std::vector<RedispatchAdjustment> adjustments; // uniform mode only
  std::vector<double> mean_nodal_prices;         // nodal mode only
  double mean_price = 0.0;                       // uniform: mean uniform price; nodal: mean over hours and nodes
  double congestion_cost_eur = 0.0;              // uniform mode: sum of hourly redispatch costs
  double demand_mwh = 0.0;
  double generation_cost_eur = 0.0;

  std::vector<double> uniform_price_series() const;
  // Price series of one node (nodal mode) or the uniform series (uniform mode).
  std::vector<double> price_series(int node) const;
};

struct RunOptions {
  lp::Options lp;
  bool parallel = true;
};

// Solves hours [0, hours) independently. Hours are distributed over an
// OpenMP team when `parallel` is set; results are identical either way.
// The infeasibility with the lowest hour index is rethrown.
AnnualDispatchSummary run_year(const grid::PowerSystem& system, int hours, Mode mode, const RunOptions& options = {});

}  // namespace h2grid::dispatch
