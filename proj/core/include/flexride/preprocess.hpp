#ifndef FLEXRIDE_PREPROCESS_HPP
#define FLEXRIDE_PREPROCESS_HPP

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flexride/network.hpp"
#include "flexride/trips.hpp"
#include "flexride/types.hpp"

namespace flexride {

struct PairKey {
  std::string rider;  // p, the carried participant
  std::string driver; // d, always a car owner
  auto operator<=>(const PairKey&) const = default;
};

struct EdgeKey {
  NodeId tail = 0;
  NodeId head = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

/// How accessible node sets are computed. Exact keeps every node i with
/// T(o,i) + T(i,e) inside the participant's window; the k-shortest-paths
/// variant keeps only nodes on the first k shortest origin-destination
/// paths (intersected with the exact set, so it is always a subset).
struct AccessMethod {
  std::optional<int> yen_k; // nullopt = Exact

  static AccessMethod exact() { return {}; }
  static AccessMethod yen(int k) { return {k}; }
};

struct PreprocessOptions {
  AccessMethod method = AccessMethod::exact();
  /// Drop pair edges whose best-case board time plus remaining travel
  /// already overshoots a window. Sound (never removes an edge any
  /// feasible solution uses); the switch exists for A/B comparison.
  bool edge_time_filter = true;
};

/// Accessibility data for one instance. Self pairs (d,d) are always
/// materialized for car owners; an_pair[(d,d)] equals an[d].
struct AccessSets {
  std::map<std::string, std::set<NodeId>> an;       // per participant
  std::map<PairKey, std::set<NodeId>> an_pair;      // AN_p intersect AN_d
  std::map<PairKey, std::set<EdgeKey>> ae_pair;     // induced, time-filtered
  std::set<PairKey> rd;                             // viable rider-driver pairs
};

/// Nodes the participant can visit without leaving its time window.
/// Always contains origin and destination of a feasible participant.
std::set<NodeId> accessible_nodes(const RoadNetwork& net,
                                  const EnrichedParticipant& p,
                                  const AccessMethod& method);

/// (AN_pd, AE_pd) for one rider-driver pair. Self pairs pass p == d.
std::pair<std::set<NodeId>, std::set<EdgeKey>> pair_sets(
    const RoadNetwork& net, const EnrichedParticipant& p,
    const EnrichedParticipant& d, const PreprocessOptions& options = {});

/// Pairs worth modeling: shared edges exist and the windows are not
/// back-to-back disjoint (LA_d <= ED_p or LA_p <= ED_d).
std::set<PairKey> viable_matches(const std::vector<EnrichedParticipant>& parts,
                                 const AccessSets& sets);

/// Full preprocessing pass. Infeasible participants are skipped entirely.
AccessSets build_access_sets(const RoadNetwork& net,
                             const std::vector<EnrichedParticipant>& parts,
                             const PreprocessOptions& options = {});

/// Debug dump: participant id -> sorted accessible node array, as JSON.
void write_access_sets_json(const AccessSets& sets, std::ostream& out);

} // namespace flexride

#endif
