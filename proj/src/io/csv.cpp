#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "h2grid/io.hpp"

namespace h2grid::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  s = s.substr(b, e - b);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '"') quoted = !quoted;
    if (i == line.size() || (line[i] == ',' && !quoted)) {
      out.push_back(trim(std::string_view(line).substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

CsvTable CsvTable::read(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.string());
}

CsvTable CsvTable::parse(const std::string& text, const std::string& source) {
  CsvTable t;
  t.source_ = source;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (t.header_.empty()) {
      t.header_ = std::move(fields);
      for (std::size_t i = 0; i < t.header_.size(); ++i) {
        if (!t.index_.emplace(t.header_[i], i).second) {
          throw Error(ErrorCode::InvalidInput, source + ": duplicate column '" + t.header_[i] + "'");
        }
      }
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw Error(ErrorCode::InvalidInput, source + ":" + std::to_string(lineno) + ": expected " +
                                               std::to_string(t.header_.size()) + " fields, found " +
                                               std::to_string(fields.size()));
    }
    t.rows_.push_back(std::move(fields));
    t.lines_.push_back(lineno);
  }
  if (t.header_.empty()) throw Error(ErrorCode::InvalidInput, source + ": missing header row");
  return t;
}

void CsvTable::fail(std::size_t row, const std::string& column, const std::string& what) const {
  throw Error(ErrorCode::InvalidInput,
              source_ + ":" + std::to_string(lines_[row]) + ": column '" + column + "': " + what);
}

void CsvTable::require(std::initializer_list<const char*> columns) const {
  for (const char* c : columns) {
    if (!has(c)) throw Error(ErrorCode::InvalidInput, source_ + ": missing column '" + std::string(c) + "'");
  }
}

const std::string& CsvTable::text(std::size_t row, const std::string& column) const {
  const auto it = index_.find(column);
  if (it == index_.end()) throw Error(ErrorCode::InvalidInput, source_ + ": missing column '" + column + "'");
  return rows_[row][it->second];
}

double CsvTable::number(std::size_t row, const std::string& column) const {
  const std::string& s = text(row, column);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) fail(row, column, "not a number: '" + s + "'");
  return v;
}

double CsvTable::number_or(std::size_t row, const std::string& column, double fallback) const {
  if (!has(column) || text(row, column).empty()) return fallback;
  return number(row, column);
}

long long CsvTable::integer(std::size_t row, const std::string& column) const {
  const std::string& s = text(row, column);
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) fail(row, column, "not an integer: '" + s + "'");
  return v;
}

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

CsvWriter::CsvWriter(const fs::path& path, int digits) : path_(path), digits_(digits) {}

CsvWriter& CsvWriter::header(std::initializer_list<const char*> columns) {
  for (const char* c : columns) cell(std::string(c));
  end_row();
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (row_started_) buffer_ += ',';
  const bool quote = v.find_first_of(",\"") != std::string::npos;
  buffer_ += quote ? "\"" + v + "\"" : v;
  row_started_ = true;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v, digits_)); }
CsvWriter& CsvWriter::cell(int v) { return cell(std::to_string(v)); }
CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
  buffer_ += '\n';
  row_started_ = false;
}

void CsvWriter::close() {
  std::ofstream f(path_, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path_.string());
  f << buffer_;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path_.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());
}

}  // namespace h2grid::io
