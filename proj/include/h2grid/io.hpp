#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "h2grid/chain.hpp"
#include "h2grid/demand.hpp"
#include "h2grid/dispatch.hpp"
#include "h2grid/grid.hpp"
#include "h2grid/scenario.hpp"

namespace h2grid::io {

namespace fs = std::filesystem;

// Comma-separated table with a mandatory header row. Fields are trimmed;
// surrounding double quotes are removed. Blank lines are skipped.
class CsvTable {
 public:
  static CsvTable read(const fs::path& path);  // throws IoError / InvalidInput
  static CsvTable parse(const std::string& text, const std::string& source = "<string>");

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  bool has(const std::string& column) const { return index_.count(column) > 0; }

  const std::string& text(std::size_t row, const std::string& column) const;
  double number(std::size_t row, const std::string& column) const;
  // Empty cells give `fallback`.
  double number_or(std::size_t row, const std::string& column, double fallback) const;
  long long integer(std::size_t row, const std::string& column) const;
  void require(std::initializer_list<const char*> columns) const;

 private:
  [[noreturn]] void fail(std::size_t row, const std::string& column, const std::string& what) const;

  std::string source_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

// Fixed-format numbers: %.6g for reports; integral values print without exponent up to 1e15.
std::string format_number(double v, int digits = 6);

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path, int digits = 6);
  CsvWriter& header(std::initializer_list<const char*> columns);
  CsvWriter& cell(const std::string& v);
  CsvWriter& cell(const char* v) { return cell(std::string(v)); }
  CsvWriter& cell(double v);
  CsvWriter& cell(int v);
  CsvWriter& cell(long long v);
  void end_row();
  void close();

 private:
  fs::path path_;
  int digits_;
  std::string buffer_;
  bool row_started_ = false;
};

struct SystemPaths {
  fs::path nodes;
  fs::path lines;
  fs::path generators;
  fs::path demand;
};

std::vector<grid::Node> load_nodes(const fs::path& path);
std::vector<grid::Line> load_lines(const fs::path& path);
// Renewable rows reference a profile as "<file>:<column>" relative to the
// generators file; the profile file has an `hour` column.
std::vector<grid::Generator> load_generators(const fs::path& path, int hours);
// Long format hour,node,mw; hours must be 0..H-1 and cover every node.
grid::DemandSeries load_demand(const fs::path& path, int num_nodes);
grid::PowerSystem load_power_system(const SystemPaths& paths, int slack = 0);

// Writes nodes.csv, lines.csv, generators.csv, renewables.csv and demand.csv.
void write_power_system(const grid::PowerSystem& system, const fs::path& dir);

// Keeps hours [0, hours).
grid::PowerSystem truncate_horizon(const grid::PowerSystem& system, int hours);

std::vector<demand::IndustrialSite> load_industrial_sites(const fs::path& path);
std::vector<demand::StationCandidate> load_station_candidates(const fs::path& path);

void write_consumption(const std::vector<demand::ConsumptionLocation>& locations, const fs::path& path);
void write_dispatch(const dispatch::AnnualDispatchSummary& uniform, const dispatch::AnnualDispatchSummary& nodal,
                    const grid::PowerSystem& system, const fs::path& dir);
void write_chain(const chain::ChainDesign& design, const std::vector<demand::ConsumptionLocation>& sinks,
                 const fs::path& dir, const std::string& suffix = "");

// report.csv plus siting_<id>.csv and breakdown_<id>.csv per scenario.
void write_report(const scenario::StudyReport& report, const fs::path& dir);

void ensure_directory(const fs::path& dir);

}  // namespace h2grid::io
