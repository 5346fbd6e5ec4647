#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include <Eigen/Dense>

#include "h2grid/grid.hpp"

namespace h2grid::grid {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string_view to_string(VoltageClass v) { return v == VoltageClass::kV220 ? "kV220" : "kV380"; }

VoltageClass parse_voltage_class(std::string_view text) {
  if (text == "kV220" || text == "220") return VoltageClass::kV220;
  if (text == "kV380" || text == "380") return VoltageClass::kV380;
  throw Error(ErrorCode::InvalidLine, "unknown voltage class '" + std::string(text) + "'");
}

double default_capacity_mw(VoltageClass v) { return v == VoltageClass::kV220 ? 490.0 : 1700.0; }

std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Dispatchable:
      return "dispatchable";
    case GeneratorKind::Solar:
      return "solar";
    case GeneratorKind::Wind:
      return "wind";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "dispatchable") return GeneratorKind::Dispatchable;
  if (text == "solar") return GeneratorKind::Solar;
  if (text == "wind") return GeneratorKind::Wind;
  throw Error(ErrorCode::InvalidInput, "unknown generator kind '" + std::string(text) + "'");
}

double DemandSeries::hour_total(int h) const {
  double s = 0.0;
  for (const double v : hour(h)) s += v;
  return s;
}

double DemandSeries::total() const {
  double s = 0.0;
  for (int h = 0; h < hours_; ++h) s += hour_total(h);
  return s;
}

std::vector<double> PTDFMatrix::flows(std::span<const double> injections) const {
  if (static_cast<int>(injections.size()) != nodes_) {
    throw Error(ErrorCode::InvalidInput, "injection vector length does not match node count");
  }
  std::vector<double> f(static_cast<std::size_t>(lines_), 0.0);
  for (int l = 0; l < lines_; ++l) {
    double s = 0.0;
    for (int n = 0; n < nodes_; ++n) s += at(l, n) * injections[static_cast<std::size_t>(n)];
    f[static_cast<std::size_t>(l)] = s;
  }
  return f;
}

void validate_network(std::span<const Node> nodes, std::span<const Line> lines) {
  if (nodes.empty()) throw Error(ErrorCode::EmptyNetwork, "network has no nodes");
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    if (nodes[i].id != i) throw Error(ErrorCode::InvalidInput, "node ids must be dense from 0 in order");
    if (!std::isfinite(nodes[i].x) || !std::isfinite(nodes[i].y)) {
      throw Error(ErrorCode::InvalidInput, "node " + std::to_string(i) + " has non-finite coordinates");
    }
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& l : lines) {
    const std::string tag = "line " + std::to_string(l.id);
    if (l.from < 0 || l.from >= n || l.to < 0 || l.to >= n) throw Error(ErrorCode::InvalidLine, tag + ": unknown node");
    if (l.from == l.to) throw Error(ErrorCode::InvalidLine, tag + ": from == to");
    if (!(l.reactance_pu > 0.0) || !std::isfinite(l.reactance_pu)) {
      throw Error(ErrorCode::InvalidLine, tag + ": reactance must be positive");
    }
    if (!(l.capacity_mw > 0.0) || !std::isfinite(l.capacity_mw)) {
      throw Error(ErrorCode::InvalidLine, tag + ": capacity must be positive");
    }
    adj[l.from].push_back(l.to);
    adj[l.to].push_back(l.from);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        q.push(v);
      }
    }
  }
  if (reached != n) {
    throw Error(ErrorCode::NetworkDisconnected,
                "network is disconnected: " + std::to_string(n - reached) + " node(s) unreachable from node 0");
  }
}

std::vector<Line> merge_parallel_lines(std::span<const Line> lines) {
  std::map<std::pair<int, int>, std::size_t> index;
  std::vector<Line> merged;
  // Admittances accumulate separately to keep the parallel combination exact.
  std::vector<double> admittance;
  std::vector<const Line*> sorted;
  for (const auto& l : lines) sorted.push_back(&l);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Line* a, const Line* b) { return a->id < b->id; });
  for (const Line* l : sorted) {
    const auto key = std::minmax(l->from, l->to);
    const auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, merged.size());
      merged.push_back(*l);
      admittance.push_back(1.0 / l->reactance_pu);
    } else {
      Line& m = merged[it->second];
      m.capacity_mw += l->capacity_mw;
      admittance[it->second] += 1.0 / l->reactance_pu;
      m.reactance_pu = 1.0 / admittance[it->second];
      if (l->voltage_class == VoltageClass::kV380) m.voltage_class = VoltageClass::kV380;
    }
  }
  return merged;
}

namespace {

// Inverse of the susceptance matrix with the slack row/column removed,
// embedded back into an n x n matrix with a zero slack row/column.
Eigen::MatrixXd reduced_inverse(std::span<const Node> nodes, std::span<const Line> lines, int slack) {
  validate_network(nodes, lines);
  const int n = static_cast<int>(nodes.size());
  if (slack < 0 || slack >= n) throw Error(ErrorCode::InvalidInput, "slack node out of range");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (const auto& l : lines) {
    const double y = 1.0 / l.reactance_pu;
    b(l.from, l.from) += y;
    b(l.to, l.to) += y;
    b(l.from, l.to) -= y;
    b(l.to, l.from) -= y;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    if (i != slack) keep.push_back(i);
  }
  const int r = n - 1;
  Eigen::MatrixXd br(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) br(i, j) = b(keep[i], keep[j]);
  }
  Eigen::MatrixXd inv_r = r > 0 ? Eigen::MatrixXd(br.ldlt().solve(Eigen::MatrixXd::Identity(r, r))) : Eigen::MatrixXd();
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) inv(keep[i], keep[j]) = inv_r(i, j);
  }
  return inv;
}

void fill_row(PTDFMatrix& h, const Eigen::MatrixXd& inv, const Line& line, int row) {
  const double y = 1.0 / line.reactance_pu;
  for (int k = 0; k < h.nodes(); ++k) h.at(row, k) = y * (inv(line.from, k) - inv(line.to, k));
  h.at(row, h.slack()) = 0.0;
}

}  // namespace

PTDFMatrix compute_ptdf(std::span<const Node> nodes, std::span<const Line> lines, int slack) {
  const Eigen::MatrixXd inv = reduced_inverse(nodes, lines, slack);
  PTDFMatrix h(static_cast<int>(lines.size()), static_cast<int>(nodes.size()), slack);
  for (int l = 0; l < h.lines(); ++l) fill_row(h, inv, lines[l], l);
  return h;
}

PTDFMatrix compute_ptdf_parallel(std::span<const Node> nodes, std::span<const Line> lines, int slack) {
  const Eigen::MatrixXd inv = reduced_inverse(nodes, lines, slack);
  PTDFMatrix h(static_cast<int>(lines.size()), static_cast<int>(nodes.size()), slack);
  const int count = h.lines();
#pragma omp parallel for schedule(static)
  for (int l = 0; l < count; ++l) fill_row(h, inv, lines[l], l);
  return h;
}

int assign_to_nearest_node(Point point, std::span<const Node> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::EmptyNetwork, "cannot assign to an empty node set");
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& node : nodes) {
    const double dx = point.x - node.x;
    const double dy = point.y - node.y;
    const double d = dx * dx + dy * dy;
    if (d < best_d || (d == best_d && node.id < best)) {
      best_d = d;
      best = node.id;
    }
  }
  return best;
}

}  // namespace h2grid::grid
