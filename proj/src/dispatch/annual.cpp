#include <exception>
#include <optional>
#include <string>

#include "h2grid/dispatch.hpp"

namespace h2grid::dispatch {

std::vector<double> AnnualDispatchSummary::uniform_price_series() const {
  std::vector<double> p;
  p.reserve(market.size());
  for (const auto& h : market) p.push_back(h.uniform_price);
  return p;
}

std::vector<double> AnnualDispatchSummary::price_series(int node) const {
  if (mode == Mode::UniformRedispatch) return uniform_price_series();
  std::vector<double> p;
  p.reserve(market.size());
  for (const auto& h : market) p.push_back(h.nodal_prices.at(static_cast<std::size_t>(node)));
  return p;
}

namespace {

struct HourResult {
  HourDispatch market;
  std::optional<RedispatchAdjustment> adjustment;
};

HourResult solve_hour(const grid::PowerSystem& system, int hour, Mode mode, const lp::Options& options) {
  HourResult r;
  if (mode == Mode::Nodal) {
    r.market = nodal_dispatch(system, hour, options);
  } else {
    r.market = uniform_dispatch(system, hour, options);
    r.adjustment = redispatch(system, hour, r.market, options);
  }
  return r;
}

}  // namespace

AnnualDispatchSummary run_year(const grid::PowerSystem& system, int hours, Mode mode, const RunOptions& options) {
  if (hours < 0 || hours > system.hours()) {
    throw Error(ErrorCode::InvalidInput,
                "requested " + std::to_string(hours) + " hours but series cover " + std::to_string(system.hours()));
  }
  std::vector<std::optional<HourResult>> results(static_cast<std::size_t>(hours));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(hours));
  const auto work = [&](int t) {
    try {
      results[t] = solve_hour(system, t, mode, options.lp);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < hours; ++t) work(t);
  } else {
    for (int t = 0; t < hours; ++t) work(t);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Aggregation runs in hour order so sums do not depend on scheduling.
  AnnualDispatchSummary s;
  s.mode = mode;
  s.hours = hours;
  s.market.reserve(static_cast<std::size_t>(hours));
  const int nodes = system.num_nodes();
  if (mode == Mode::Nodal) s.mean_nodal_prices.assign(static_cast<std::size_t>(nodes), 0.0);
  double price_sum = 0.0;
  for (int t = 0; t < hours; ++t) {
    HourResult& r = *results[t];
    s.demand_mwh += r.market.served_mw;
    s.generation_cost_eur += r.market.cost_eur;
    if (mode == Mode::Nodal) {
      for (int n = 0; n < nodes; ++n) s.mean_nodal_prices[n] += r.market.nodal_prices[n];
    } else {
      s.congestion_cost_eur += r.adjustment->cost_eur;
      s.adjustments.push_back(std::move(*r.adjustment));
    }
    price_sum += r.market.uniform_price;
    s.market.push_back(std::move(r.market));
  }
  if (hours > 0) {
    s.mean_price = price_sum / hours;
    for (double& v : s.mean_nodal_prices) v /= hours;
  }
  return s;
}

}  // namespace h2grid::dispatch
