#ifndef FLEXRIDE_TRIPS_HPP
#define FLEXRIDE_TRIPS_HPP

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "flexride/network.hpp"
#include "flexride/rng.hpp"
#include "flexride/types.hpp"

namespace flexride {

enum class Ownership { CarOwner, NonCarOwner };

/// One announced trip request. Invariants enforced at load time:
/// earliest_departure < latest_arrival, submission <= earliest_departure,
/// origin != destination, deadline > 0, capacity present iff car owner
/// (and then >= 1).
struct Participant {
  std::string id;
  Ownership ownership = Ownership::NonCarOwner;
  std::optional<int> capacity;  // seats for riders, car owners only
  Seconds deadline = 0;         // patience window after submission
  Seconds submission = 0;       // announcement time s_p
  NodeId origin = 0;
  NodeId destination = 0;
  Seconds earliest_departure = 0;
  Seconds latest_arrival = 0;

  bool is_car_owner() const { return ownership == Ownership::CarOwner; }
};

/// Participant plus derived facts. `direct_time` is the shortest
/// origin-to-destination travel time (nullopt when unreachable); the trip
/// is feasible when that time exists and fits the time window.
struct EnrichedParticipant {
  Participant base;
  std::optional<Seconds> direct_time;
  bool feasible = false;
};

/// Parses `id,ownership,capacity,deadline_s,submission_s,origin,destination,
/// ed_s,la_s`. Rejects rows violating the Participant invariants and
/// duplicate ids, naming the offending column and 1-based line. The result
/// is ordered by submission time (stable for equal times).
std::vector<Participant> load_trips(std::istream& in,
                                    const std::string& source_name = "trips");

/// Writes the same table format load_trips reads.
void write_trips(const std::vector<Participant>& parts, std::ostream& out);

/// Derives a time window around observed pickup/dropoff instants by
/// relaxing each end with an independent uniform draw from [0, 300]
/// whole seconds. Deterministic for a given Rng state.
std::pair<Seconds, Seconds> synthesize_windows(Seconds pickup, Seconds dropoff,
                                               Rng& rng);

/// Attaches the shortest direct travel time and the feasibility verdict.
EnrichedParticipant enrich(const RoadNetwork& net, const Participant& p);

std::vector<EnrichedParticipant> enrich_all(const RoadNetwork& net,
                                            const std::vector<Participant>& ps);

} // namespace flexride

#endif
