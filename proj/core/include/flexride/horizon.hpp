#ifndef FLEXRIDE_HORIZON_HPP
#define FLEXRIDE_HORIZON_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flexride/assignment.hpp"
#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/preprocess.hpp"
#include "flexride/rational.hpp"
#include "flexride/solve.hpp"
#include "flexride/trips.hpp"
#include "flexride/types.hpp"

namespace flexride {

struct HorizonConfig {
  Seconds period = 300;
  Seconds start = 32400;
  Seconds end = 68400;
  ModelConfig model;
  PreprocessOptions preprocess;
  SolveLimits limits;
};

struct CommittedRoute {
  std::string driver;
  Seconds period_start = 0;
  DriverRoute route;
  std::vector<int> occupancy; // per arc, riders plus the counted driver
};

struct CommittedRider {
  std::string id;
  Seconds period_start = 0;
  RiderItinerary itinerary;
};

struct PeriodReport {
  Seconds now = 0;
  Rational objective;
  int ingested = 0;
  int ingested_owners = 0;
  int ingested_riders = 0;
  int expired = 0;
  int matches = 0; // riders committed this period, owner-riders included
  int shifts = 0;  // owner-riders among the matches
  int drivers = 0; // drivers committed this period
  int pool_size = 0;
  std::string error; // empty when the period solved cleanly
};

struct RunMetrics {
  std::vector<PeriodReport> periods;
  int ingested_owners = 0;
  int ingested_riders = 0;
  int total_matches = 0;
  int total_shifts = 0;
  int total_drivers = 0;
  int total_expired = 0;
  int final_pool = 0;
  Rational mean_objective; // over every period, failed ones as zero
  double match_pct = 0.0;  // 100 * matches / ingested non-owners
  double shift_pct = 0.0;  // 100 * shifts / ingested owners
};

/// Rolling-horizon loop: each period ingests announcements whose
/// submission time has passed, expires requests that can no longer be
/// served, solves the assignment program over the pending pool with
/// departure windows clamped to the clock, and irrevocably commits the
/// matched riders and activated drivers. A failed solve restores the
/// period's snapshot, so the pool and the ingestion cursor are untouched
/// and the participants retry next period.
class HorizonSimulator {
 public:
  HorizonSimulator(const RoadNetwork& net, std::vector<Participant> backlog,
                   HorizonConfig config);
  // the network is referenced, not copied; it must outlive the simulator
  HorizonSimulator(RoadNetwork&&, std::vector<Participant>, HorizonConfig) =
      delete;

  PeriodReport step(Seconds now);
  RunMetrics run();

  const std::vector<CommittedRoute>& committed_routes() const {
    return committed_routes_;
  }
  const std::vector<CommittedRider>& committed_riders() const {
    return committed_riders_;
  }
  std::vector<std::string> pending_ids() const;
  int total_ingested() const { return total_ingested_; }
  int total_committed() const { return total_committed_; }
  int total_expired() const { return total_expired_; }

 private:
  struct Pending {
    Participant part;
    std::optional<Seconds> direct;
  };

  const RoadNetwork& net_;
  std::vector<Participant> backlog_; // sorted by submission time
  HorizonConfig config_;
  std::size_t cursor_ = 0;
  std::vector<Pending> pool_;
  std::vector<CommittedRoute> committed_routes_;
  std::vector<CommittedRider> committed_riders_;
  int total_ingested_ = 0;
  int total_committed_ = 0;
  int total_expired_ = 0;
};

void write_metrics_csv(const RunMetrics& metrics, std::ostream& out);
void write_summary_json(const RunMetrics& metrics, std::ostream& out);
void write_routes_geojson(const RoadNetwork& net,
                          const std::vector<CommittedRoute>& routes,
                          std::ostream& out);

} // namespace flexride

#endif
