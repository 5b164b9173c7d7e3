#include "doctest.h"
#include "flexride/errors.hpp"
#include "flexride/instance_gen.hpp"
#include "flexride/model.hpp"
#include "flexride/oracle.hpp"
#include "flexride/rng.hpp"
#include "flexride/solve.hpp"
#include "helpers.hpp"

using namespace flexride;
using namespace flexride::testutil;

namespace {

OracleLimits wide_open(const RoadNetwork& net,
                       const std::vector<EnrichedParticipant>& parts) {
  OracleLimits lim;
  lim.max_nodes = net.node_count();
  lim.max_participants = parts.size();
  lim.max_route_length = net.node_count() - 1;
  std::size_t owners = 0;
  for (const EnrichedParticipant& p : parts) owners += p.base.is_car_owner();
  lim.max_legs_per_rider = owners > 0 ? owners : 1;
  return lim;
}

ModelConfig weighted(std::int64_t factor) {
  ModelConfig cfg;
  cfg.objective = ObjectiveMode::weight(Rational(factor));
  return cfg;
}

} // namespace

TEST_CASE("oracle agrees with the frozen pair values") {
  PairFixture fx;
  OracleLimits lim = wide_open(fx.net, fx.parts);

  OracleResult plain = oracle_optimum(fx.net, fx.parts, {}, lim);
  CHECK(plain.objective == Rational(0));
  CHECK(plain.best.matched.empty());

  OracleResult twice = oracle_optimum(fx.net, fx.parts, weighted(2), lim);
  CHECK(twice.objective == Rational(0));
  CHECK(twice.best.matched.empty()); // break-even keeps the idle plan

  OracleResult triple = oracle_optimum(fx.net, fx.parts, weighted(3), lim);
  CHECK(triple.objective == Rational(20));
  CHECK(triple.best.matched == std::set<std::string>{"r1"});
  CHECK(triple.best.driving == std::set<std::string>{"d1"});
  CHECK(triple.assignments_checked > 0);
}

TEST_CASE("oracle finds the transfer itinerary") {
  TransferFixture fx;
  OracleLimits lim = wide_open(fx.net, fx.parts);
  OracleResult got = oracle_optimum(fx.net, fx.parts, weighted(3), lim);
  CHECK(got.objective == Rational(20));
  REQUIRE(got.best.rider_itineraries.count("r1") == 1);
  const RiderItinerary& itin = got.best.rider_itineraries.at("r1");
  REQUIRE(itin.legs.size() == 2);
  CHECK(itin.legs[0].driver == "dA");
  CHECK(itin.legs[1].driver == "dB");
  CHECK(itin.legs[0].alight == 2);
  CHECK(itin.legs[1].board == 2);
  CHECK(itin.legs[0].alight_time <= itin.legs[1].board_time);
}

TEST_CASE("oracle results validate as physical plans") {
  Rng rng(909);
  int validated = 0;
  for (int t = 0; t < 120 && validated < 12; ++t) {
    TinyInstance inst = generate_instance(rng);
    std::vector<EnrichedParticipant> parts = enrich_all(inst.net, inst.parts);
    OracleResult got =
        oracle_optimum(inst.net, parts, inst.config, wide_open(inst.net, parts));
    if (got.best.matched.empty()) continue;
    ++validated;
    CHECK(validate_solution(inst.net, parts, inst.config, got.best).empty());
  }
  CHECK(validated > 0);
}

TEST_CASE("oracle enforces its size guards") {
  PairFixture fx;
  OracleLimits lim = wide_open(fx.net, fx.parts);
  lim.max_nodes = 2;
  CHECK_THROWS_AS(oracle_optimum(fx.net, fx.parts, {}, lim), ModelError);
  lim = wide_open(fx.net, fx.parts);
  lim.max_participants = 1;
  CHECK_THROWS_AS(oracle_optimum(fx.net, fx.parts, {}, lim), ModelError);
}

TEST_CASE("oracle rejects a non-positive weight factor") {
  PairFixture fx;
  ModelConfig bad;
  bad.objective = ObjectiveMode::weight(Rational(0));
  CHECK_THROWS_AS(
      oracle_optimum(fx.net, fx.parts, bad, wide_open(fx.net, fx.parts)),
      ModelError);
}

TEST_CASE("oracle and solver agree on random instances") {
  Rng rng(61);
  for (int t = 0; t < 80; ++t) {
    TinyInstance inst = generate_instance(rng);
    std::vector<EnrichedParticipant> parts = enrich_all(inst.net, inst.parts);
    AccessSets sets = build_access_sets(inst.net, parts, {});
    ModelInstance m = build_model(inst.net, parts, sets, inst.config);
    SolverOutcome out = solve_exact(m);
    REQUIRE(out.status == SolveStatus::Optimal);
    OracleResult truth =
        oracle_optimum(inst.net, parts, inst.config, wide_open(inst.net, parts));
    CHECK(out.objective == truth.objective);
  }
}

TEST_CASE("role flexibility lets an owner ride") {
  // two owners travelling together; under flexible roles one of them
  // leaves the car at home
  RoadNetwork net = line_network(3);
  std::vector<Participant> raw{owner("dA", 1, 3, 0, 100),
                               owner("dB", 1, 3, 0, 100)};
  std::vector<EnrichedParticipant> parts = enrich_all(net, raw);
  OracleLimits lim = wide_open(net, parts);

  OracleResult flex = oracle_optimum(net, parts, weighted(3), lim);
  CHECK(flex.objective == Rational(20));
  CHECK(flex.best.matched.size() == 1);
  CHECK(flex.best.driving.size() == 1);

  ModelConfig rigid = weighted(3);
  rigid.flex_roles = false;
  OracleResult fixed = oracle_optimum(net, parts, rigid, lim);
  CHECK(fixed.objective == Rational(0));
  CHECK(fixed.best.matched.empty());
}
