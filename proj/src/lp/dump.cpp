#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "h2grid/lp.hpp"

namespace h2grid::lp {

namespace {

std::string fmt(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_value(const std::string& token) {
  if (token == "inf") return kInf;
  if (token == "-inf") return -kInf;
  std::size_t used = 0;
  const double v = std::stod(token, &used);
  if (used != token.size()) throw Error(ErrorCode::InvalidProblem, "bad number '" + token + "' in dump");
  return v;
}

std::string name_or_dash(const std::vector<std::string>& names, std::size_t i) {
  if (i >= names.size() || names[i].empty()) return "-";
  return names[i];
}

char sense_char(Sense s) {
  switch (s) {
    case Sense::LessEqual:
      return 'L';
    case Sense::Equal:
      return 'E';
    case Sense::GreaterEqual:
      return 'G';
  }
  return '?';
}

}  // namespace

void dump(const LinearProblem& problem, std::ostream& out) {
  std::vector<bool> is_int(problem.cost.size(), false);
  for (const int j : problem.integer_vars) is_int[j] = true;
  out << "vars " << problem.num_vars() << '\n';
  for (int j = 0; j < problem.num_vars(); ++j) {
    out << "var " << j << ' ' << name_or_dash(problem.var_names, j) << ' ' << fmt(problem.cost[j]) << ' '
        << fmt(problem.lower[j]) << ' ' << fmt(problem.upper[j]) << ' ' << (is_int[j] ? 'I' : 'C') << '\n';
  }
  out << "rows " << problem.num_rows() << '\n';
  for (int i = 0; i < problem.num_rows(); ++i) {
    out << "row " << i << ' ' << name_or_dash(problem.row_names, i) << ' ' << sense_char(problem.senses[i]) << ' '
        << fmt(problem.rhs[i]) << '\n';
  }
  for (const auto& t : problem.entries) out << "nz " << t.row << ' ' << t.col << ' ' << fmt(t.value) << '\n';
}

LinearProblem parse_dump(std::istream& in) {
  LinearProblem p;
  std::string line;
  const auto bad = [](const std::string& l) { throw Error(ErrorCode::InvalidProblem, "malformed dump line: " + l); };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "vars" || tag == "rows") continue;
    if (tag == "var") {
      int j;
      std::string name, c, lo, hi, kind;
      if (!(ls >> j >> name >> c >> lo >> hi >> kind) || j != p.num_vars()) bad(line);
      const std::string nm = name == "-" ? std::string{} : name;
      if (kind == "I") {
        p.add_integer(parse_value(c), parse_value(lo), parse_value(hi), nm);
      } else {
        p.add_variable(parse_value(c), parse_value(lo), parse_value(hi), nm);
      }
    } else if (tag == "row") {
      int i;
      std::string name, sense, rhs;
      if (!(ls >> i >> name >> sense >> rhs) || i != p.num_rows()) bad(line);
      Sense s = Sense::Equal;
      if (sense == "L") s = Sense::LessEqual;
      else if (sense == "G") s = Sense::GreaterEqual;
      else if (sense != "E") bad(line);
      p.add_row({}, s, parse_value(rhs), name == "-" ? std::string{} : name);
    } else if (tag == "nz") {
      int r, c;
      std::string v;
      if (!(ls >> r >> c >> v)) bad(line);
      p.entries.push_back({r, c, parse_value(v)});
    } else {
      bad(line);
    }
  }
  p.validate();
  return p;
}

}  // namespace h2grid::lp
