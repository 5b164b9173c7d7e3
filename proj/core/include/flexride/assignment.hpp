#ifndef FLEXRIDE_ASSIGNMENT_HPP
#define FLEXRIDE_ASSIGNMENT_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/rational.hpp"
#include "flexride/trips.hpp"
#include "flexride/types.hpp"

namespace flexride {

/// One stretch of a rider's trip inside a single car.
struct RiderLeg {
  std::string driver;
  NodeId board = -1;
  NodeId alight = -1;
  Seconds board_time = 0;
  Seconds alight_time = 0;
};

struct RiderItinerary {
  std::vector<RiderLeg> legs;
};

struct DriverRoute {
  std::vector<NodeId> nodes;
  std::vector<Seconds> times; // departure/arrival clock per node
};

/// The physical reading of a solved model: who drives which route, who
/// rides with whom, and when.
struct Assignment {
  std::map<std::string, DriverRoute> driver_routes;
  std::map<std::string, RiderItinerary> rider_itineraries;
  std::set<std::string> matched;
  std::set<std::string> driving;
  Rational objective;
};

/// Turns a variable assignment into routes and itineraries. Rounds and
/// re-checks every row first, then chains arcs into simple paths. Clocks
/// are departure times per node; a rider alights when the car arrives,
/// i.e. at the previous node's clock plus the edge time. Throws
/// VerifyError on any inconsistency, including a reported objective that
/// disagrees with the recomputed one beyond 1e-6.
Assignment decode_solution(
    const ModelInstance& model, const RoadNetwork& net,
    const std::map<std::string, double>& values,
    const std::optional<double>& reported_objective = std::nullopt);

/// Checks an assignment against the ground facts only: the road network,
/// the participants and the solve options. No model is consulted, so
/// independently produced assignments can be validated too. Returns all
/// violations found, empty when the assignment is sound.
std::vector<std::string> validate_solution(
    const RoadNetwork& net, const std::vector<EnrichedParticipant>& parts,
    const ModelConfig& config, const Assignment& assignment);

/// Deterministic JSON round-trip for assignments.
void write_assignment_json(const Assignment& assignment, std::ostream& out);
Assignment read_assignment_json(std::istream& in);

} // namespace flexride

#endif
