#include <set>
#include <sstream>

#include "doctest.h"
#include "flexride/errors.hpp"
#include "flexride/horizon.hpp"
#include "flexride/instance_gen.hpp"
#include "flexride/rng.hpp"
#include "helpers.hpp"

using namespace flexride;
using namespace flexride::testutil;

namespace {

Participant submitted(Participant p, Seconds at) {
  p.submission = at;
  return p;
}

HorizonConfig quick_config(Seconds period, Seconds start, Seconds end) {
  HorizonConfig hc;
  hc.period = period;
  hc.start = start;
  hc.end = end;
  hc.model.objective = ObjectiveMode::weight(Rational(3));
  return hc;
}

} // namespace

TEST_CASE("horizon constructor rejects degenerate clocks") {
  RoadNetwork net = line_network(3);
  CHECK_THROWS_AS(HorizonSimulator(net, {}, quick_config(0, 0, 100)),
                  ModelError);
  CHECK_THROWS_AS(HorizonSimulator(net, {}, quick_config(300, 500, 100)),
                  ModelError);
}

TEST_CASE("participants flow pool to committed") {
  RoadNetwork net = line_network(3);
  std::vector<Participant> backlog{
      submitted(owner("d1", 1, 3, 100, 1000), 0),
      submitted(rider("r1", 1, 3, 100, 1000), 250)};
  HorizonSimulator sim(net, backlog, quick_config(300, 0, 1200));

  PeriodReport first = sim.step(0);
  CHECK(first.ingested == 1); // only the owner has been submitted
  CHECK(first.matches == 0);
  CHECK(sim.pending_ids() == std::vector<std::string>{"d1"});

  PeriodReport second = sim.step(300);
  CHECK(second.ingested == 1);
  CHECK(second.matches == 1);
  CHECK(second.drivers == 1);
  CHECK(second.objective == Rational(20));
  CHECK(sim.pending_ids().empty());
  CHECK(sim.total_committed() == 2);
  REQUIRE(sim.committed_routes().size() == 1);
  CHECK(sim.committed_routes()[0].driver == "d1");
  REQUIRE(sim.committed_riders().size() == 1);
  CHECK(sim.committed_riders()[0].id == "r1");

  // nothing left to do; the commitments stay put
  PeriodReport third = sim.step(600);
  CHECK(third.matches == 0);
  CHECK(sim.committed_routes().size() == 1);
  CHECK(sim.total_committed() == 2);
}

TEST_CASE("departure windows are clamped to the decision clock") {
  RoadNetwork net = line_network(3);
  std::vector<Participant> backlog{
      submitted(owner("d1", 1, 3, 0, 1000), 250),
      submitted(rider("r1", 1, 3, 0, 1000), 250)};
  HorizonSimulator sim(net, backlog, quick_config(300, 0, 600));
  sim.step(0);
  PeriodReport rep = sim.step(300);
  CHECK(rep.matches == 1);
  REQUIRE(sim.committed_routes().size() == 1);
  // both windows opened at 0, but the match happened at clock 300
  CHECK(sim.committed_routes()[0].route.times[0] >= 300);
}

TEST_CASE("stale requests expire") {
  RoadNetwork net = line_network(3);
  std::vector<Participant> backlog{
      // no partner ever shows up, deadline passes after 300s in the pool
      [&] {
        Participant p = rider("tired", 1, 3, 0, 5000);
        p.deadline = 300;
        return p;
      }(),
      // window closes before the second period can start a trip
      [&] {
        Participant p = rider("narrow", 1, 3, 0, 310);
        return p;
      }(),
      // cannot reach the destination at all
      [&] {
        Participant p = rider("lost", 3, 1, 0, 5000);
        return p;
      }()};
  HorizonSimulator sim(net, backlog, quick_config(300, 0, 1200));

  PeriodReport first = sim.step(0);
  CHECK(first.ingested == 3);
  CHECK(first.expired == 1); // "lost" goes immediately
  CHECK(sim.pending_ids() == std::vector<std::string>{"narrow", "tired"});

  PeriodReport second = sim.step(300);
  // "narrow": departing at 300 would land at 330 > 320
  CHECK(second.expired == 1);
  CHECK(sim.pending_ids() == std::vector<std::string>{"tired"});

  PeriodReport third = sim.step(600);
  CHECK(third.expired == 1); // 600 > submission 0 + deadline 300
  CHECK(sim.pending_ids().empty());
  CHECK(sim.total_expired() == 3);
  CHECK(sim.total_ingested() == 3);
  CHECK(sim.total_committed() == 0);
}

TEST_CASE("a failed solve leaves the pool untouched") {
  RoadNetwork net = line_network(3);
  std::vector<Participant> backlog{submitted(owner("d1", 1, 3, 0, 1000), 0),
                                   submitted(rider("r1", 1, 3, 0, 1000), 0)};
  HorizonConfig hc = quick_config(300, 0, 600);
  hc.limits.max_nodes = 1; // guarantees the solver gives up
  HorizonSimulator sim(net, backlog, hc);
  PeriodReport rep = sim.step(0);
  CHECK_FALSE(rep.error.empty());
  CHECK(rep.matches == 0);
  CHECK(sim.total_ingested() == 0); // ingestion rolled back with the pool
  CHECK(sim.pending_ids().empty());
  CHECK(sim.committed_routes().empty());
  CHECK(sim.total_committed() == 0);
}

TEST_CASE("conservation holds across random simulations") {
  Rng rng(7117);
  for (int t = 0; t < 40; ++t) {
    GenOptions go;
    go.max_participants = 6;
    go.max_owners = 3;
    TinyInstance inst = generate_instance(rng, go);
    HorizonConfig hc;
    hc.period = 300;
    hc.start = 0;
    hc.end = 2400;
    hc.model = inst.config;
    HorizonSimulator sim(inst.net, inst.parts, hc);
    for (Seconds now = hc.start; now <= hc.end; now += hc.period) {
      PeriodReport rep = sim.step(now);
      CHECK(rep.error.empty());
      CHECK(sim.total_ingested() ==
            static_cast<int>(sim.pending_ids().size()) +
                sim.total_committed() + sim.total_expired());
    }
    std::set<std::string> ids;
    for (const CommittedRider& r : sim.committed_riders()) {
      CHECK(ids.insert(r.id).second);
    }
    for (const CommittedRoute& r : sim.committed_routes()) {
      CHECK(ids.insert(r.driver).second);
    }
    for (const std::string& id : sim.pending_ids()) {
      CHECK(ids.count(id) == 0);
    }
  }
}

TEST_CASE("run aggregates period metrics") {
  RoadNetwork net = line_network(3);
  // one car owner hands the keys to nobody: the owner drives, carrying a
  // second owner and a rider, so matches outnumber the ingested riders
  std::vector<Participant> backlog{
      submitted(owner("dA", 1, 3, 0, 1000, 2), 0),
      submitted(owner("dB", 1, 3, 0, 1000), 0),
      submitted(rider("r1", 1, 3, 0, 1000), 0)};
  HorizonSimulator sim(net, backlog, quick_config(300, 0, 1200));
  RunMetrics metrics = sim.run();
  REQUIRE(metrics.periods.size() == 4); // the end clock is exclusive
  CHECK(metrics.ingested_owners == 2);
  CHECK(metrics.ingested_riders == 1);
  CHECK(metrics.total_matches == 2);
  CHECK(metrics.total_shifts == 1);
  CHECK(metrics.total_drivers == 1);
  CHECK(metrics.match_pct == doctest::Approx(200.0));
  CHECK(metrics.shift_pct == doctest::Approx(50.0));
  // one productive period out of four
  CHECK(metrics.mean_objective == metrics.periods[0].objective / Rational(4));
  CHECK(metrics.final_pool == 0);
}

TEST_CASE("metric reports serialize deterministically") {
  RoadNetwork net = line_network(3);
  std::vector<Participant> backlog{
      submitted(owner("dA", 1, 3, 0, 1000, 2), 0),
      submitted(owner("dB", 1, 3, 0, 1000), 0),
      submitted(rider("r1", 1, 3, 0, 1000), 0)};
  auto run_once = [&](std::string& csv, std::string& json, std::string& geo) {
    HorizonSimulator sim(net, backlog, quick_config(300, 0, 1200));
    RunMetrics metrics = sim.run();
    std::ostringstream c, j, g;
    write_metrics_csv(metrics, c);
    write_summary_json(metrics, j);
    write_routes_geojson(net, sim.committed_routes(), g);
    csv = c.str();
    json = j.str();
    geo = g.str();
  };
  std::string csv1, json1, geo1, csv2, json2, geo2;
  run_once(csv1, json1, geo1);
  run_once(csv2, json2, geo2);
  CHECK(csv1 == csv2);
  CHECK(json1 == json2);
  CHECK(geo1 == geo2);

  CHECK(csv1.starts_with("period,objective,matches,shifts,pool_size,expired\n"));
  CHECK(json1.find("\"match_pct\": \"200.00\"") != std::string::npos);
  CHECK(json1.find("\"shift_pct\": \"50.00\"") != std::string::npos);
  CHECK(geo1.find("\"FeatureCollection\"") != std::string::npos);
  CHECK(geo1.find("\"occupancy\":[3,3]") != std::string::npos);
  CHECK(geo1.find("\"driver\":\"d") != std::string::npos);
}
