#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "h2grid/error.hpp"

namespace h2grid::grid {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;

  Point location() const { return {x, y}; }
};

enum class VoltageClass { kV220, kV380 };

std::string_view to_string(VoltageClass v);
VoltageClass parse_voltage_class(std::string_view text);
double default_capacity_mw(VoltageClass v);

struct Line {
  int id = 0;
  int from = 0;
  int to = 0;
  double capacity_mw = 0.0;
  double reactance_pu = 0.0;
  VoltageClass voltage_class = VoltageClass::kV380;
};

enum class GeneratorKind { Dispatchable, Solar, Wind };

std::string_view to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(std::string_view text);

struct Generator {
  int id = 0;
  int node = 0;
  GeneratorKind kind = GeneratorKind::Dispatchable;
  double marginal_cost = 0.0;
  double capacity_mw = 0.0;          // dispatchable units
  std::vector<double> series_mw;     // renewables: available MW per hour

  bool renewable() const { return kind != GeneratorKind::Dispatchable; }
  double capacity(int hour) const { return renewable() ? series_mw[static_cast<std::size_t>(hour)] : capacity_mw; }
};

// Hourly nodal demand, row-major [hour][node].
class DemandSeries {
 public:
  DemandSeries() = default;
  DemandSeries(int hours, int nodes) : hours_(hours), nodes_(nodes), mw_(static_cast<std::size_t>(hours) * nodes, 0.0) {}

  int hours() const { return hours_; }
  int nodes() const { return nodes_; }
  double& at(int hour, int node) { return mw_[index(hour, node)]; }
  double at(int hour, int node) const { return mw_[index(hour, node)]; }
  std::span<const double> hour(int h) const {
    return {mw_.data() + static_cast<std::size_t>(h) * nodes_, static_cast<std::size_t>(nodes_)};
  }
  double hour_total(int h) const;
  double total() const;

 private:
  std::size_t index(int hour, int node) const { return static_cast<std::size_t>(hour) * nodes_ + node; }
  int hours_ = 0;
  int nodes_ = 0;
  std::vector<double> mw_;
};

// Rows = lines, columns = nodes. Column `slack` is identically zero.
class PTDFMatrix {
 public:
  PTDFMatrix() = default;
  PTDFMatrix(int lines, int nodes, int slack)
      : lines_(lines), nodes_(nodes), slack_(slack), h_(static_cast<std::size_t>(lines) * nodes, 0.0) {}

  int lines() const { return lines_; }
  int nodes() const { return nodes_; }
  int slack() const { return slack_; }
  double& at(int line, int node) { return h_[static_cast<std::size_t>(line) * nodes_ + node]; }
  double at(int line, int node) const { return h_[static_cast<std::size_t>(line) * nodes_ + node]; }

  // Line flows H * injections.
  std::vector<double> flows(std::span<const double> injections) const;

 private:
  int lines_ = 0;
  int nodes_ = 0;
  int slack_ = 0;
  std::vector<double> h_;
};

// Validates ids, lines and connectivity. Throws InvalidLine / NetworkDisconnected / EmptyNetwork.
void validate_network(std::span<const Node> nodes, std::span<const Line> lines);

// Parallel circuits between the same node pair become one line: capacities
// add, reactances combine in parallel. The merged line keeps the lowest id
// and the orientation of that line.
std::vector<Line> merge_parallel_lines(std::span<const Line> lines);

// DC power-flow sensitivities from line reactances. Serial reference.
PTDFMatrix compute_ptdf(std::span<const Node> nodes, std::span<const Line> lines, int slack);
// Same result, line rows filled by an OpenMP worksharing loop.
PTDFMatrix compute_ptdf_parallel(std::span<const Node> nodes, std::span<const Line> lines, int slack);

// Id of the node nearest to `point`; ties go to the lowest id.
int assign_to_nearest_node(Point point, std::span<const Node> nodes);

// Immutable network + generation + demand data for the study horizon.
// Lines are stored merged; the PTDF is computed once at construction.
class PowerSystem {
 public:
  PowerSystem() = default;
  PowerSystem(std::vector<Node> nodes, std::vector<Line> lines, std::vector<Generator> generators,
              DemandSeries demand, int slack = 0);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const DemandSeries& demand() const { return demand_; }
  const PTDFMatrix& ptdf() const { return ptdf_; }
  int slack() const { return slack_; }
  int hours() const { return demand_.hours(); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  // Copies with modified generation or demand; the network and PTDF are shared as values.
  PowerSystem with_generators(std::vector<Generator> generators) const;
  PowerSystem with_demand(DemandSeries demand) const;

  double renewable_energy_mwh() const;

 private:
  void validate_series() const;

  std::vector<Node> nodes_;
  std::vector<Line> lines_;
  std::vector<Generator> generators_;
  DemandSeries demand_;
  PTDFMatrix ptdf_;
  int slack_ = 0;
};

}  // namespace h2grid::grid
