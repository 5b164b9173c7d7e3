#include <map>

#include "doctest.h"
#include "flexride/assignment.hpp"
#include "flexride/errors.hpp"
#include "flexride/model.hpp"
#include "flexride/solve.hpp"
#include "helpers.hpp"

using namespace flexride;
using namespace flexride::testutil;

namespace {

// Hand-assembled models keep the search code testable away from the
// ridesharing encoding.
struct Maker {
  ModelInstance model;

  int binary(const std::string& name, std::int64_t objective = 0) {
    VarInfo v{VarKind::Drives, name};
    v.objective = objective;
    return push(std::move(v));
  }

  int integer(const std::string& name, std::int64_t lo, std::int64_t hi,
              std::int64_t objective = 0) {
    VarInfo v{VarKind::Occupancy, name};
    v.lo = lo;
    v.hi = hi;
    v.is_binary = false;
    v.objective = objective;
    return push(std::move(v));
  }

  void row(const std::string& name, std::vector<LinearTerm> terms,
           RowSense sense, std::int64_t rhs) {
    model.rows.push_back({name, "0", "", std::move(terms), sense, rhs});
  }

 private:
  int push(VarInfo v) {
    int id = static_cast<int>(model.vars.size());
    model.var_by_name.emplace(v.name, id);
    model.vars.push_back(std::move(v));
    return id;
  }
};

ModelConfig weighted(std::int64_t factor) {
  ModelConfig cfg;
  cfg.objective = ObjectiveMode::weight(Rational(factor));
  return cfg;
}

} // namespace

TEST_CASE("pair fixture optima across objective modes") {
  PairFixture fx;

  // carrying the rider costs 40 against a direct-time payoff of 20
  ModelInstance plain = build_model(fx.net, fx.parts, fx.sets, {});
  SolverOutcome out = solve_exact(plain);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(0));
  Assignment idle = decode_solution(plain, fx.net, out.values);
  CHECK(idle.matched.empty());
  CHECK(idle.driving.empty());

  // doubling the payoff exactly breaks even; the idle plan is kept
  ModelInstance twice = build_model(fx.net, fx.parts, fx.sets, weighted(2));
  out = solve_exact(twice);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(0));
  CHECK(decode_solution(twice, fx.net, out.values).matched.empty());

  // tripling it makes the match worth 60 - 40 = 20
  ModelInstance triple = build_model(fx.net, fx.parts, fx.sets, weighted(3));
  out = solve_exact(triple);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(20));
  Assignment asg = decode_solution(triple, fx.net, out.values);
  CHECK(asg.matched == std::set<std::string>{"r1"});
  CHECK(asg.driving == std::set<std::string>{"d1"});
  REQUIRE(asg.rider_itineraries.count("r1") == 1);
  REQUIRE(asg.rider_itineraries.at("r1").legs.size() == 1);
  const RiderLeg& leg = asg.rider_itineraries.at("r1").legs[0];
  CHECK(leg.driver == "d1");
  CHECK(leg.board == 1);
  CHECK(leg.alight == 3);
  CHECK(validate_solution(fx.net, fx.parts, triple.config, asg).empty());
}

TEST_CASE("transfer fixture rides two cars") {
  TransferFixture fx;

  ModelInstance plain = build_model(fx.net, fx.parts, fx.sets, {});
  SolverOutcome out = solve_exact(plain);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(0));

  ModelInstance triple = build_model(fx.net, fx.parts, fx.sets, weighted(3));
  out = solve_exact(triple);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(20));
  Assignment asg = decode_solution(triple, fx.net, out.values);
  CHECK(asg.matched == std::set<std::string>{"r1"});
  CHECK(asg.driving == std::set<std::string>{"dA", "dB"});
  REQUIRE(asg.rider_itineraries.at("r1").legs.size() == 2);
  const RiderItinerary& itin = asg.rider_itineraries.at("r1");
  CHECK(itin.legs[0].driver == "dA");
  CHECK(itin.legs[0].board == 1);
  CHECK(itin.legs[0].alight == 2);
  CHECK(itin.legs[1].driver == "dB");
  CHECK(itin.legs[1].board == 2);
  CHECK(itin.legs[1].alight == 3);
  CHECK(itin.legs[0].alight_time <= itin.legs[1].board_time);
  CHECK(validate_solution(fx.net, fx.parts, triple.config, asg).empty());
}

TEST_CASE("solver finds knapsack optima on hand-built models") {
  Maker mk;
  const int a = mk.binary("a", 5);
  const int b = mk.binary("b", 4);
  const int c = mk.binary("c", 3);
  mk.row("cap", {{a, 2}, {b, 3}, {c, 4}}, RowSense::LE, 6);
  SolverOutcome out = solve_exact(mk.model);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(9));
  CHECK(out.values.at("a") == 1);
  CHECK(out.values.at("b") == 1);
  CHECK(out.values.at("c") == 0);
}

TEST_CASE("solver keeps the first optimum it completes") {
  Maker mk;
  const int a = mk.binary("a", 1);
  const int b = mk.binary("b", 1);
  mk.row("one", {{a, 1}, {b, 1}}, RowSense::LE, 1);
  SolverOutcome out = solve_exact(mk.model);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(1));
  // zero branches are explored first, so a = 0, b = 1 completes first
  CHECK(out.values.at("a") == 0);
  CHECK(out.values.at("b") == 1);
}

TEST_CASE("solver reports infeasibility") {
  Maker mk;
  int a = mk.binary("a", 1);
  mk.row("up", {{a, 1}}, RowSense::LE, 0);
  mk.row("lo", {{a, 1}}, RowSense::GE, 1);
  SolverOutcome out = solve_exact(mk.model);
  CHECK(out.status == SolveStatus::Infeasible);
  CHECK(out.stats.has_incumbent == false);
}

TEST_CASE("solver settles equality-linked integers") {
  Maker mk;
  const int a = mk.binary("a", 1);
  const int s = mk.integer("s", 0, 50);
  const int t = mk.integer("t", 0, 50);
  mk.row("gap", {{t, 1}, {s, -1}}, RowSense::GE, 7); // t >= s + 7
  mk.row("floor", {{s, 1}}, RowSense::GE, 3);
  mk.row("tie", {{a, 1}}, RowSense::GE, 1);
  SolverOutcome out = solve_exact(mk.model);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.values.at("s") >= 3);
  CHECK(out.values.at("t") >= out.values.at("s") + 7);
}

TEST_CASE("solver detects an unsatisfiable difference cycle") {
  Maker mk;
  int s = mk.integer("s", 0, 50);
  int t = mk.integer("t", 0, 50);
  mk.row("fwd", {{t, 1}, {s, -1}}, RowSense::GE, 5);  // t >= s + 5
  mk.row("bwd", {{s, 1}, {t, -1}}, RowSense::GE, -3); // t <= s + 3
  SolverOutcome out = solve_exact(mk.model);
  CHECK(out.status == SolveStatus::Infeasible);
}

TEST_CASE("objective on a non-binary variable is rejected") {
  Maker mk;
  mk.integer("s", 0, 50, 2);
  CHECK_THROWS_AS(solve_exact(mk.model), ModelError);
}

TEST_CASE("empty model solves to zero") {
  ModelInstance empty;
  SolverOutcome out = solve_exact(empty);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == Rational(0));
  CHECK(out.values.empty());
}

TEST_CASE("node limit halts the search") {
  PairFixture fx;
  ModelInstance m = build_model(fx.net, fx.parts, fx.sets, weighted(3));
  SolveLimits limits;
  limits.max_nodes = 1;
  SolverOutcome out = solve_exact(m, limits);
  CHECK(out.status == SolveStatus::LimitReached);
  CHECK(out.stats.nodes_explored >= 1);
}

TEST_CASE("repeat solves are bit-identical") {
  TransferFixture fx;
  ModelInstance m = build_model(fx.net, fx.parts, fx.sets, weighted(3));
  SolverOutcome a = solve_exact(m);
  SolverOutcome b = solve_exact(m);
  CHECK(a.values == b.values);
  CHECK(a.objective == b.objective);
  CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
}
