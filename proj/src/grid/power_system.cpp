#include <cmath>
#include <string>

#include "h2grid/grid.hpp"

namespace h2grid::grid {

PowerSystem::PowerSystem(std::vector<Node> nodes, std::vector<Line> lines, std::vector<Generator> generators,
                         DemandSeries demand, int slack)
    : nodes_(std::move(nodes)),
      lines_(merge_parallel_lines(lines)),
      generators_(std::move(generators)),
      demand_(std::move(demand)),
      slack_(slack) {
  ptdf_ = compute_ptdf(nodes_, lines_, slack_);
  validate_series();
}

void PowerSystem::validate_series() const {
  const int n = num_nodes();
  if (demand_.nodes() != n) throw Error(ErrorCode::InvalidInput, "demand series node count does not match network");
  for (int h = 0; h < demand_.hours(); ++h) {
    for (const double v : demand_.hour(h)) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidInput, "demand must be finite and nonnegative (hour " + std::to_string(h) + ")");
      }
    }
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Generator& g = generators_[i];
    const std::string tag = "generator " + std::to_string(g.id);
    if (g.id != static_cast<int>(i)) throw Error(ErrorCode::InvalidInput, "generator ids must be dense from 0 in order");
    if (g.node < 0 || g.node >= n) throw Error(ErrorCode::InvalidInput, tag + ": unknown node");
    if (!std::isfinite(g.marginal_cost)) throw Error(ErrorCode::InvalidInput, tag + ": marginal cost not finite");
    if (g.renewable()) {
      if (static_cast<int>(g.series_mw.size()) != demand_.hours()) {
        throw Error(ErrorCode::InvalidInput, tag + ": series length differs from study horizon");
      }
      for (const double v : g.series_mw) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidInput, tag + ": negative or non-finite capacity");
      }
    } else if (!(g.capacity_mw >= 0.0) || !std::isfinite(g.capacity_mw)) {
      throw Error(ErrorCode::InvalidInput, tag + ": negative or non-finite capacity");
    }
  }
}

PowerSystem PowerSystem::with_generators(std::vector<Generator> generators) const {
  PowerSystem copy = *this;
  copy.generators_ = std::move(generators);
  copy.validate_series();
  return copy;
}

PowerSystem PowerSystem::with_demand(DemandSeries demand) const {
  PowerSystem copy = *this;
  copy.demand_ = std::move(demand);
  copy.validate_series();
  return copy;
}

double PowerSystem::renewable_energy_mwh() const {
  double s = 0.0;
  for (const auto& g : generators_) {
    if (!g.renewable()) continue;
    for (const double v : g.series_mw) s += v;
  }
  return s;
}

}  // namespace h2grid::grid
