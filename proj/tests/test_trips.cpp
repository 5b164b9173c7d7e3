#include <sstream>

#include "doctest.h"
#include "flexride/errors.hpp"
#include "flexride/rng.hpp"
#include "flexride/trips.hpp"
#include "helpers.hpp"

using namespace flexride;
using namespace flexride::testutil;

namespace {

const char* kHeader =
    "id,ownership,capacity,deadline_s,submission_s,origin,destination,ed_s,la_s";

std::vector<Participant> parse(const std::string& rows) {
  std::istringstream in(std::string(kHeader) + "\n" + rows);
  return load_trips(in, "t");
}

} // namespace

TEST_CASE("trips load both roles") {
  std::vector<Participant> parts = parse(
      "d1,owner,3,1800,100,1,5,200,900\n"
      "r1,rider,,1800,50,2,4,300,800\n");
  REQUIRE(parts.size() == 2);
  // sorted by submission time
  CHECK(parts[0].id == "r1");
  CHECK_FALSE(parts[0].is_car_owner());
  CHECK_FALSE(parts[0].capacity.has_value());
  CHECK(parts[1].id == "d1");
  CHECK(parts[1].is_car_owner());
  CHECK(parts[1].capacity == 3);
  CHECK(parts[1].deadline == 1800);
  CHECK(parts[1].submission == 100);
  CHECK(parts[1].origin == 1);
  CHECK(parts[1].destination == 5);
  CHECK(parts[1].earliest_departure == 200);
  CHECK(parts[1].latest_arrival == 900);
}

TEST_CASE("trips load rejects inconsistent rows") {
  CHECK_THROWS_AS(parse("d1,owner,3,1800,100,1,5,200,900\n"
                        "d1,owner,2,1800,100,1,5,200,900\n"),
                  ParseError); // duplicate id
  CHECK_THROWS_AS(parse("x,driver,3,1800,100,1,5,200,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,owner,,1800,100,1,5,200,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,owner,0,1800,100,1,5,200,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,rider,2,1800,100,1,5,200,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,rider,,0,100,1,5,200,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,rider,,1800,100,5,5,200,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,rider,,1800,100,1,5,900,900\n"), ParseError);
  CHECK_THROWS_AS(parse("x,rider,,1800,300,1,5,200,900\n"), ParseError);
}

TEST_CASE("trips write then load round trips") {
  std::vector<Participant> parts = parse(
      "d1,owner,3,1800,100,1,5,200,900\n"
      "r1,rider,,1800,50,2,4,300,800\n");
  std::ostringstream out;
  write_trips(parts, out);
  std::istringstream back(out.str());
  std::vector<Participant> again = load_trips(back, "t");
  REQUIRE(again.size() == parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    CHECK(again[i].id == parts[i].id);
    CHECK(again[i].ownership == parts[i].ownership);
    CHECK(again[i].capacity == parts[i].capacity);
    CHECK(again[i].deadline == parts[i].deadline);
    CHECK(again[i].submission == parts[i].submission);
    CHECK(again[i].origin == parts[i].origin);
    CHECK(again[i].destination == parts[i].destination);
    CHECK(again[i].earliest_departure == parts[i].earliest_departure);
    CHECK(again[i].latest_arrival == parts[i].latest_arrival);
  }
}

TEST_CASE("window synthesis brackets the requested times") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto [ed, la] = synthesize_windows(600, 900, rng);
    CHECK(ed <= 600);
    CHECK(ed >= 300);
    CHECK(la >= 900);
    CHECK(la <= 1200);
  }
}

TEST_CASE("enrichment computes direct times and feasibility") {
  RoadNetwork net = line_network(4, 10); // 1 -> 2 -> 3 -> 4
  EnrichedParticipant ok = enrich(net, rider("a", 1, 4, 0, 30));
  CHECK(ok.direct_time == 30);
  CHECK(ok.feasible); // 30s window fits exactly

  EnrichedParticipant tight = enrich(net, rider("b", 1, 4, 0, 29));
  CHECK_FALSE(tight.feasible);

  EnrichedParticipant lost = enrich(net, rider("c", 4, 1, 0, 500));
  CHECK_FALSE(lost.direct_time.has_value());
  CHECK_FALSE(lost.feasible);

  std::vector<Participant> all{rider("a", 1, 4, 0, 30), rider("c", 4, 1, 0, 500)};
  std::vector<EnrichedParticipant> enriched = enrich_all(net, all);
  REQUIRE(enriched.size() == 2);
  CHECK(enriched[0].feasible);
  CHECK_FALSE(enriched[1].feasible);
}
