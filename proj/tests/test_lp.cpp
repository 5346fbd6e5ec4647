#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "h2grid/lp.hpp"
#include "invariants.hpp"
#include "lp_oracles.hpp"

using namespace h2grid;
using namespace h2grid::lp;

namespace {

using checks::random_lp;
using checks::unit;

void check_lp_certificates(const LinearProblem& p, const Solution& s) {
  REQUIRE(s.optimal());
  const auto v = checks::lp_certificate_violations(p, s);
  CHECK_MESSAGE(v.empty(), checks::join(v));
}

}  // namespace

TEST_CASE("single active bound") {
  LinearProblem p;
  const int x = p.add_variable(1.0, -kInf, kInf);
  p.add_row({{x, 1.0}}, Sense::GreaterEqual, 3.0);
  p.add_row({{x, 1.0}}, Sense::LessEqual, 10.0);
  const auto s = solve_lp(p);
  REQUIRE(s.optimal());
  CHECK(s.primal[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.duals[0] == doctest::Approx(1.0));
  check_lp_certificates(p, s);
}

TEST_CASE("two-generator balance: dual equals marginal unit cost") {
  // Basic solutions of {a + b = 120, 0<=a,b<=100}: (100,20) cost 2000 and
  // (20,100) cost 5200; the first is optimal with b marginal.
  LinearProblem p;
  const int a = p.add_variable(10.0, 0.0, 100.0);
  const int b = p.add_variable(50.0, 0.0, 100.0);
  p.add_row({{a, 1.0}, {b, 1.0}}, Sense::Equal, 120.0);
  const auto s = solve_lp(p);
  REQUIRE(s.optimal());
  CHECK(s.primal[a] == doctest::Approx(100.0));
  CHECK(s.primal[b] == doctest::Approx(20.0));
  CHECK(s.objective == doctest::Approx(2000.0));
  CHECK(s.duals[0] == doctest::Approx(50.0));
  CHECK(s.reduced_costs[a] == doctest::Approx(-40.0));
  check_lp_certificates(p, s);
}

TEST_CASE("random LPs match vertex enumeration") {
  std::mt19937_64 rng(20240611);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProblem p = random_lp(rng, 5, 4);
    const auto expected = oracle::vertex_enumeration(p);
    const auto s = solve_lp(p);
    if (!expected) {
      CHECK(s.status == Status::Infeasible);
      continue;
    }
    REQUIRE(s.optimal());
    CHECK(std::abs(s.objective - *expected) < 1e-6);
    check_lp_certificates(p, s);
    ++solved;
  }
  CHECK(solved > 150);
}

TEST_CASE("infeasible and unbounded statuses") {
  LinearProblem inf;
  const int x = inf.add_variable(1.0, 0.0, 5.0);
  inf.add_row({{x, 1.0}}, Sense::GreaterEqual, 6.0);
  CHECK(solve_lp(inf).status == Status::Infeasible);

  LinearProblem unb;
  const int y = unb.add_variable(-1.0, 0.0, kInf);
  const int z = unb.add_variable(0.0, 0.0, kInf);
  unb.add_row({{y, 1.0}, {z, -1.0}}, Sense::LessEqual, 1.0);
  CHECK(solve_lp(unb).status == Status::Unbounded);
}

TEST_CASE("NaN input is rejected") {
  LinearProblem p;
  p.add_variable(std::nan(""), 0.0, 1.0);
  try {
    solve_lp(p);
    FAIL("expected InvalidProblem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidProblem);
  }
  LinearProblem q;
  const int x = q.add_variable(1.0, 0.0, 1.0);
  q.add_row({{x, 1.0}}, Sense::LessEqual, std::nan(""));
  CHECK_THROWS_AS(solve_lp(q), Error);
}

TEST_CASE("free variables and degenerate rows") {
  // min x + y with x - y = 0 twice (redundant), x >= -2 via row, y free.
  LinearProblem p;
  const int x = p.add_variable(1.0, -kInf, kInf);
  const int y = p.add_variable(1.0, -kInf, kInf);
  p.add_row({{x, 1.0}, {y, -1.0}}, Sense::Equal, 0.0);
  p.add_row({{x, 2.0}, {y, -2.0}}, Sense::Equal, 0.0);
  p.add_row({{x, 1.0}}, Sense::GreaterEqual, -2.0);
  const auto s = solve_lp(p);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(-4.0));
  CHECK(primal_residual(p, s.primal) < 1e-9);
}

TEST_CASE("knapsack matches binary enumeration") {
  LinearProblem p;
  const int x1 = p.add_binary(-4.0);
  const int x2 = p.add_binary(-5.0);
  const int x3 = p.add_binary(-3.0);
  p.add_row({{x1, 2.0}, {x2, 3.0}, {x3, 1.0}}, Sense::LessEqual, 4.0);
  const auto expected = oracle::binary_enumeration(p);
  REQUIRE(expected);
  // Enumeration: (0,1,1) weight 4 value 8 is the best of the 8 vectors.
  CHECK(expected->first == doctest::Approx(-8.0));
  const auto s = solve_milp(p);
  REQUIRE(s.optimal());
  CHECK(s.objective == doctest::Approx(expected->first));
  for (int j = 0; j < 3; ++j) CHECK(s.primal[j] == expected->second[j]);
}

TEST_CASE("integral relaxation is returned unchanged") {
  LinearProblem p;
  const int a = p.add_integer(10.0, 0.0, 100.0);
  const int b = p.add_integer(50.0, 0.0, 100.0);
  p.add_row({{a, 1.0}, {b, 1.0}}, Sense::Equal, 120.0);
  const auto lp = solve_lp(p);
  const auto mip = solve_milp(p);
  REQUIRE(mip.optimal());
  CHECK(mip.nodes == 1);
  CHECK(mip.objective == lp.objective);
  CHECK(mip.primal == lp.primal);
}

namespace {

struct FacilityToy {
  std::vector<double> fixed, capacity, demand;
  std::vector<std::vector<double>> unit_cost;  // [site][sink]
};

LinearProblem facility_milp(const FacilityToy& f, const std::vector<int>* forced_open) {
  LinearProblem p;
  const int ns = static_cast<int>(f.fixed.size());
  const int nc = static_cast<int>(f.demand.size());
  std::vector<int> open(ns);
  for (int i = 0; i < ns; ++i) {
    if (forced_open) {
      const double v = (*forced_open)[i];
      open[i] = p.add_variable(f.fixed[i], v, v);
    } else {
      open[i] = p.add_binary(f.fixed[i]);
    }
  }
  std::vector<std::vector<int>> flow(ns, std::vector<int>(nc));
  for (int i = 0; i < ns; ++i) {
    for (int c = 0; c < nc; ++c) flow[i][c] = p.add_variable(f.unit_cost[i][c], 0.0, kInf);
  }
  for (int c = 0; c < nc; ++c) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < ns; ++i) terms.emplace_back(flow[i][c], 1.0);
    p.add_row(terms, Sense::GreaterEqual, f.demand[c]);
  }
  for (int i = 0; i < ns; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int c = 0; c < nc; ++c) terms.emplace_back(flow[i][c], 1.0);
    terms.emplace_back(open[i], -f.capacity[i]);
    p.add_row(terms, Sense::LessEqual, 0.0);
  }
  return p;
}

}  // namespace

TEST_CASE("facility toy matches exhaustive subset enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    FacilityToy f;
    for (int i = 0; i < 4; ++i) {
      f.fixed.push_back(std::round(100.0 + 900.0 * unit(rng)));
      f.capacity.push_back(std::round(20.0 + 60.0 * unit(rng)));
    }
    for (int c = 0; c < 3; ++c) f.demand.push_back(std::round(10.0 + 30.0 * unit(rng)));
    f.unit_cost.assign(4, std::vector<double>(3));
    for (auto& row : f.unit_cost) {
      for (auto& v : row) v = std::round(1.0 + 30.0 * unit(rng));
    }
    std::optional<double> best;
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<int> open(4);
      for (int i = 0; i < 4; ++i) open[i] = (mask >> i) & 1;
      const auto inner = solve_lp(facility_milp(f, &open));
      if (!inner.optimal()) continue;
      if (!best || inner.objective < *best) best = inner.objective;
    }
    const LinearProblem milp = facility_milp(f, nullptr);
    const auto s = solve_milp(milp);
    if (!best) {
      CHECK(s.status == Status::Infeasible);
      continue;
    }
    REQUIRE(s.optimal());
    CHECK(std::abs(s.objective - *best) < 1e-6);
    CHECK(primal_residual(milp, s.primal) < 1e-7);
    for (int j : milp.integer_vars) CHECK((s.primal[j] == 0.0 || s.primal[j] == 1.0));
    for (std::size_t k = 1; k < s.incumbent_history.size(); ++k) {
      CHECK(s.incumbent_history[k] <= s.incumbent_history[k - 1]);
    }
  }
}

TEST_CASE("solves are deterministic") {
  std::mt19937_64 rng(99);
  const LinearProblem p = random_lp(rng, 5, 4);
  const auto a = solve_lp(p);
  const auto b = solve_lp(p);
  CHECK(a.primal == b.primal);
  CHECK(a.duals == b.duals);
  CHECK(a.objective == b.objective);
}

TEST_CASE("node limit surfaces incumbent and bound") {
  LinearProblem p;
  std::vector<std::pair<int, double>> terms;
  for (int j = 0; j < 12; ++j) terms.emplace_back(p.add_binary(-(3.0 + j % 5)), 2.0 + (j * 7) % 5);
  p.add_row(terms, Sense::LessEqual, 17.5);
  Options opt;
  opt.max_nodes = 3;
  try {
    solve_milp(p, opt);
    FAIL("expected ResourceLimit");
  } catch (const ResourceLimitError& e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
    if (e.incumbent()) CHECK(e.bound() <= e.incumbent()->objective + 1e-9);
  }
}

TEST_CASE("dump round-trips through the text format") {
  std::mt19937_64 rng(5);
  LinearProblem p = random_lp(rng, 5, 4);
  p.integer_vars.push_back(0);
  p.upper[0] = 1.0;
  std::ostringstream out;
  dump(p, out);
  std::istringstream in(out.str());
  const LinearProblem q = parse_dump(in);
  CHECK(q.cost == p.cost);
  CHECK(q.lower == p.lower);
  CHECK(q.upper == p.upper);
  CHECK(q.rhs == p.rhs);
  CHECK(q.integer_vars == p.integer_vars);
  CHECK(q.entries.size() == p.entries.size());
  CHECK(solve_milp(q).objective == solve_milp(p).objective);
}
