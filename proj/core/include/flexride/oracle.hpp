#ifndef FLEXRIDE_ORACLE_HPP
#define FLEXRIDE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "flexride/assignment.hpp"
#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/rational.hpp"
#include "flexride/trips.hpp"

namespace flexride {

/// Hard caps that keep the enumeration honest about its intended scale.
/// Exceeding max_nodes or max_participants throws instead of grinding.
struct OracleLimits {
  std::size_t max_nodes = 8;
  std::size_t max_participants = 4;
  std::size_t max_route_length = 6;  // arcs per driver route
  std::size_t max_legs_per_rider = 3;
};

struct OracleResult {
  Rational objective;
  Assignment best;
  std::uint64_t assignments_checked = 0;
};

/// Ground-truth optimum by direct enumeration over the semantic space:
/// every subset of feasible owners as the driving set, every simple
/// window-fitting route per driver, every chained rider itinerary over
/// those routes with pairwise-distinct drivers, pruned by seat capacity,
/// filtered by HOV minimums and joint schedule feasibility. Shares no
/// machinery with the integer program; it reads only the road network,
/// the participants and the options.
OracleResult oracle_optimum(const RoadNetwork& net,
                            const std::vector<EnrichedParticipant>& parts,
                            const ModelConfig& config,
                            const OracleLimits& limits = {});

} // namespace flexride

#endif
