#ifndef FLEXRIDE_MODEL_HPP
#define FLEXRIDE_MODEL_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "flexride/preprocess.hpp"
#include "flexride/rational.hpp"
#include "flexride/trips.hpp"
#include "flexride/types.hpp"

namespace flexride {

/// How matches are rewarded. `as_printed` keeps the raw direct travel time
/// as the per-match gain, which also pays the driver's own edges, so
/// serving a rider is usually a wash or a loss; `weighted` multiplies the
/// gain by a rational factor (2 by default) to make service profitable.
struct ObjectiveMode {
  bool weighted = false;
  Rational factor{2, 1};

  static ObjectiveMode as_printed() { return {}; }
  static ObjectiveMode weight(Rational f) { return {true, f}; }
};

struct ModelConfig {
  bool flex_roles = true;   // car owners may ride instead of drive
  bool hov_enabled = true;  // enforce minimum occupancy on HOV edges
  int min_occupancy = 2;    // n_H, people per vehicle on HOV edges
  bool count_driver = true; // the driver counts toward occupancy
  ObjectiveMode objective = ObjectiveMode::as_printed();
  bool driver_edges_in_objective = true; // own-movement edges cost too
};

enum class VarKind : std::uint8_t {
  RideArc,    // x: driver d carries p over (i,j); p==d is d's own movement
  Pickup,     // y: d picks p up at node i
  Dropoff,    // z: d drops p off at node i
  Matched,    // mu: p travels as a rider
  Drives,     // delta: d drives its own car
  Occupancy,  // kappa: people in d's car when leaving node i
  VisitOrder, // u: position of node i along d's route
  DriverTime, // time d visits node i
  RiderTime   // time p visits node i as a rider
};

struct VarInfo {
  VarKind kind;
  std::string name;      // LP identifier, unique
  std::string p, d;      // participant / driver ids where applicable
  NodeId i = -1, j = -1; // node ids where applicable
  std::int64_t lo = 0, hi = 1;
  bool is_binary = true;
  std::int64_t objective = 0; // numerator over ModelInstance::objective_den
};

struct LinearTerm {
  int var = -1;
  std::int64_t coef = 0;
};

enum class RowSense : std::uint8_t { LE, GE, EQ };

struct ConstraintRow {
  std::string name; // c<tag>_<index parts>
  std::string tag;  // constraint family: "2".."23" or "SYNC"
  std::string note; // correction metadata, empty for most rows
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::LE;
  std::int64_t rhs = 0;
};

/// A fully indexed integer program. Variables and rows sit in deterministic
/// creation order; exporting the same model twice yields identical bytes.
struct ModelInstance {
  ModelConfig config;
  std::vector<VarInfo> vars;
  std::vector<ConstraintRow> rows;
  std::int64_t objective_den = 1;
  std::map<std::string, int> var_by_name;

  std::size_t binary_count() const;
  Rational objective_value(std::span<const std::int64_t> values) const;
};

/// Builds the assignment program over the preprocessed index space:
/// flow rows for drivers and riders, capacity, pickup/dropoff detection,
/// visit-order and occupancy recursions, HOV minimums, time-window
/// activation and rider-driver synchronization. Every participant must be
/// feasible and covered by `sets`.
ModelInstance build_model(const RoadNetwork& net,
                          const std::vector<EnrichedParticipant>& parts,
                          const AccessSets& sets, const ModelConfig& config);

/// Writes CPLEX-dialect LP text. Deterministic: same model, same bytes.
void export_lp(const ModelInstance& model, std::ostream& out);

/// Rounds `values` to integers (tolerance 1e-6), fills absent variables
/// with zero, then checks bounds and every row in exact arithmetic.
/// Throws VerifyError naming the first problem; the result is indexed by
/// variable id.
std::vector<std::int64_t> round_and_verify(
    const ModelInstance& model, const std::map<std::string, double>& values);

} // namespace flexride

#endif
