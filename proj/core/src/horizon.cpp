#include "flexride/horizon.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "flexride/errors.hpp"
#include "json.hpp"

namespace flexride {

namespace {

std::string two_decimals(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string six_decimals(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string json_string(const std::string& s) {
  return nlohmann::json(s).dump();
}

} // namespace

HorizonSimulator::HorizonSimulator(const RoadNetwork& net,
                                   std::vector<Participant> backlog,
                                   HorizonConfig config)
    : net_(net), backlog_(std::move(backlog)), config_(std::move(config)) {
  if (config_.period <= 0) throw ModelError("horizon period must be positive");
  if (config_.end < config_.start) {
    throw ModelError("horizon end precedes its start");
  }
  std::stable_sort(backlog_.begin(), backlog_.end(),
                   [](const Participant& a, const Participant& b) {
                     return a.submission < b.submission;
                   });
}

PeriodReport HorizonSimulator::step(Seconds now) {
  PeriodReport rep;
  rep.now = now;

  std::size_t cursor_before = cursor_;
  std::vector<Pending> pool_before = pool_;
  std::size_t routes_before = committed_routes_.size();
  std::size_t riders_before = committed_riders_.size();
  int committed_before = total_committed_;

  while (cursor_ < backlog_.size() && backlog_[cursor_].submission <= now) {
    Pending pending;
    pending.part = backlog_[cursor_];
    pending.direct = net_.shortest_travel_time(pending.part.origin,
                                               pending.part.destination);
    ++rep.ingested;
    if (pending.part.is_car_owner()) ++rep.ingested_owners;
    else ++rep.ingested_riders;
    pool_.push_back(std::move(pending));
    ++cursor_;
  }

  std::vector<Pending> kept;
  for (Pending& p : pool_) {
    bool dead = now > p.part.submission + p.part.deadline;
    if (!dead) {
      Seconds ed = std::max(p.part.earliest_departure, now);
      dead = !p.direct || ed + *p.direct > p.part.latest_arrival;
    }
    if (dead) ++rep.expired;
    else kept.push_back(std::move(p));
  }
  pool_ = std::move(kept);

  if (!pool_.empty()) {
    try {
      std::vector<EnrichedParticipant> parts;
      for (const Pending& p : pool_) {
        Participant clamped = p.part;
        clamped.earliest_departure =
            std::max(clamped.earliest_departure, now);
        parts.push_back(enrich(net_, clamped));
      }
      AccessSets sets = build_access_sets(net_, parts, config_.preprocess);
      ModelInstance model = build_model(net_, parts, sets, config_.model);
      SolverOutcome outcome = solve_exact(model, config_.limits);
      if (outcome.status != SolveStatus::Optimal) {
        throw SolveError(outcome.status == SolveStatus::LimitReached
                             ? "solver hit its limits"
                             : "solver reported infeasible");
      }
      Assignment asg = decode_solution(model, net_, outcome.values);
      rep.objective = outcome.objective;

      std::map<std::string, std::vector<int>> aboard;
      for (const auto& [did, route] : asg.driver_routes) {
        aboard[did].assign(route.nodes.size() - 1, 0);
      }
      for (const auto& [pid, itin] : asg.rider_itineraries) {
        for (const RiderLeg& leg : itin.legs) {
          const DriverRoute& route = asg.driver_routes.at(leg.driver);
          std::size_t bp = 0, ap = 0;
          for (std::size_t q = 0; q < route.nodes.size(); ++q) {
            if (route.nodes[q] == leg.board) bp = q;
            if (route.nodes[q] == leg.alight) ap = q;
          }
          for (std::size_t q = bp; q < ap; ++q) ++aboard[leg.driver][q];
        }
      }
      for (const auto& [did, route] : asg.driver_routes) {
        CommittedRoute cr;
        cr.driver = did;
        cr.period_start = now;
        cr.route = route;
        for (int riders : aboard[did]) {
          cr.occupancy.push_back(riders +
                                 (config_.model.count_driver ? 1 : 0));
        }
        committed_routes_.push_back(std::move(cr));
        ++rep.drivers;
      }
      for (const auto& [pid, itin] : asg.rider_itineraries) {
        CommittedRider cp;
        cp.id = pid;
        cp.period_start = now;
        cp.itinerary = itin;
        committed_riders_.push_back(std::move(cp));
        ++rep.matches;
      }
      std::vector<Pending> still;
      for (Pending& p : pool_) {
        bool drives = asg.driving.count(p.part.id) > 0;
        bool rides = asg.matched.count(p.part.id) > 0;
        if (rides && p.part.is_car_owner()) ++rep.shifts;
        if (drives || rides) ++total_committed_;
        else still.push_back(std::move(p));
      }
      pool_ = std::move(still);
    } catch (const std::exception& e) {
      rep = PeriodReport{};
      rep.now = now;
      rep.error = e.what();
      cursor_ = cursor_before;
      pool_ = std::move(pool_before);
      committed_routes_.resize(routes_before);
      committed_riders_.resize(riders_before);
      total_committed_ = committed_before;
      rep.pool_size = static_cast<int>(pool_.size());
      return rep;
    }
  }

  total_ingested_ += rep.ingested;
  total_expired_ += rep.expired;
  rep.pool_size = static_cast<int>(pool_.size());
  return rep;
}

RunMetrics HorizonSimulator::run() {
  RunMetrics m;
  Rational sum(0);
  for (Seconds now = config_.start; now < config_.end; now += config_.period) {
    PeriodReport rep = step(now);
    sum = sum + rep.objective;
    m.ingested_owners += rep.ingested_owners;
    m.ingested_riders += rep.ingested_riders;
    m.total_matches += rep.matches;
    m.total_shifts += rep.shifts;
    m.total_drivers += rep.drivers;
    m.total_expired += rep.expired;
    m.final_pool = rep.pool_size;
    m.periods.push_back(std::move(rep));
  }
  if (!m.periods.empty()) {
    m.mean_objective = sum / Rational(static_cast<std::int64_t>(m.periods.size()));
  }
  if (m.ingested_riders > 0) {
    m.match_pct = 100.0 * m.total_matches / m.ingested_riders;
  }
  if (m.ingested_owners > 0) {
    m.shift_pct = 100.0 * m.total_shifts / m.ingested_owners;
  }
  return m;
}

std::vector<std::string> HorizonSimulator::pending_ids() const {
  std::vector<std::string> ids;
  for (const Pending& p : pool_) ids.push_back(p.part.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void write_metrics_csv(const RunMetrics& metrics, std::ostream& out) {
  out << "period,objective,matches,shifts,pool_size,expired\n";
  for (const PeriodReport& rep : metrics.periods) {
    out << rep.now << "," << rep.objective.str() << "," << rep.matches << ","
        << rep.shifts << "," << rep.pool_size << "," << rep.expired << "\n";
  }
}

void write_summary_json(const RunMetrics& metrics, std::ostream& out) {
  nlohmann::ordered_json j;
  j["periods"] = metrics.periods.size();
  j["ingested"] = {{"owners", metrics.ingested_owners},
                   {"riders", metrics.ingested_riders}};
  j["committed"] = {{"drivers", metrics.total_drivers},
                    {"riders", metrics.total_matches},
                    {"shifts", metrics.total_shifts}};
  j["expired"] = metrics.total_expired;
  j["final_pool"] = metrics.final_pool;
  j["mean_objective"] = metrics.mean_objective.str();
  j["match_pct"] = two_decimals(metrics.match_pct);
  j["shift_pct"] = two_decimals(metrics.shift_pct);
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const PeriodReport& rep : metrics.periods) {
    if (!rep.error.empty()) {
      errors.push_back("period " + std::to_string(rep.now) + ": " + rep.error);
    }
  }
  j["errors"] = std::move(errors);
  out << j.dump(2) << "\n";
}

void write_routes_geojson(const RoadNetwork& net,
                          const std::vector<CommittedRoute>& routes,
                          std::ostream& out) {
  out << "{\"type\":\"FeatureCollection\",\"features\":[";
  bool first = true;
  for (const CommittedRoute& cr : routes) {
    if (!first) out << ",";
    first = false;
    out << "\n{\"type\":\"Feature\",\"geometry\":{\"type\":\"LineString\","
        << "\"coordinates\":[";
    for (std::size_t q = 0; q < cr.route.nodes.size(); ++q) {
      const NodeInfo& node = net.node(cr.route.nodes[q]);
      if (q > 0) out << ",";
      out << "[" << six_decimals(node.lon) << "," << six_decimals(node.lat)
          << "]";
    }
    out << "]},\"properties\":{\"driver\":" << json_string(cr.driver)
        << ",\"period\":" << cr.period_start << ",\"occupancy\":[";
    for (std::size_t q = 0; q < cr.occupancy.size(); ++q) {
      if (q > 0) out << ",";
      out << cr.occupancy[q];
    }
    out << "]}}";
  }
  out << "\n]}\n";
}

} // namespace flexride
