#include "flexride/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flexride/errors.hpp"

namespace flexride {

namespace {

// One itinerary leg by position: ride driver `di` from route position
// `bp` to position `ap`.
struct Hop {
  int di;
  std::size_t bp, ap;
};

struct ActiveDriver {
  const EnrichedParticipant* part;
  std::vector<NodeId> route;
  std::map<NodeId, std::size_t> pos;
  std::vector<Seconds> arc_time; // per route arc
};

class Enumerator {
 public:
  Enumerator(const RoadNetwork& net,
             const std::vector<EnrichedParticipant>& parts,
             const ModelConfig& cfg, const OracleLimits& limits)
      : net_(net), parts_(parts), cfg_(cfg), limits_(limits) {
    fnum_ = cfg.objective.weighted ? cfg.objective.factor.num() : 1;
    den_ = cfg.objective.weighted ? cfg.objective.factor.den() : 1;
  }

  OracleResult run() {
    for (const EnrichedParticipant& p : parts_) {
      if (p.feasible && p.base.is_car_owner()) owners_.push_back(&p);
    }
    // The all-idle assignment is always available; the empty driver
    // subset below revisits and counts it.
    best_num_ = 0;
    best_ = Assignment{};
    best_.objective = Rational(0);
    checked_ = 0;

    std::size_t n = owners_.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      drivers_.clear();
      bool routable = true;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) {
          ActiveDriver d;
          d.part = owners_[i];
          drivers_.push_back(std::move(d));
        }
      }
      riders_.clear();
      for (const EnrichedParticipant& p : parts_) {
        if (!p.feasible) continue;
        bool driving = false;
        for (const ActiveDriver& d : drivers_) {
          if (d.part == &p) driving = true;
        }
        if (driving) continue;
        if (p.base.is_car_owner() && !cfg_.flex_roles) continue;
        riders_.push_back(&p);
      }
      route_sets_.clear();
      for (const ActiveDriver& d : drivers_) {
        route_sets_.push_back(enum_routes(*d.part));
        if (route_sets_.back().empty()) {
          routable = false;
          break;
        }
      }
      if (!routable) continue;
      pick_route(0);
    }

    OracleResult out;
    out.objective = Rational(best_num_, den_);
    out.best = std::move(best_);
    out.best.objective = Rational(best_num_, den_);
    out.assignments_checked = checked_;
    return out;
  }

 private:
  // Simple origin->destination paths that fit the driver's window and the
  // arc cap. Arc order follows the network's sorted adjacency, so the
  // result order is reproducible.
  std::vector<std::vector<NodeId>> enum_routes(const EnrichedParticipant& d) {
    std::vector<std::vector<NodeId>> out;
    TravelTimeField rest = net_.times_to(d.base.destination);
    Seconds budget = d.base.latest_arrival - d.base.earliest_departure;
    std::vector<NodeId> path{d.base.origin};
    std::set<NodeId> visited{d.base.origin};
    route_dfs(d, rest, budget, 0, path, visited, out);
    return out;
  }

  void route_dfs(const EnrichedParticipant& d, const TravelTimeField& rest,
                 Seconds budget, Seconds spent, std::vector<NodeId>& path,
                 std::set<NodeId>& visited,
                 std::vector<std::vector<NodeId>>& out) {
    NodeId cur = path.back();
    if (cur == d.base.destination) {
      out.push_back(path);
      return; // a simple path cannot leave and revisit the destination
    }
    if (path.size() - 1 >= limits_.max_route_length) return;
    for (const auto& [head, travel] : net_.out_arcs(cur)) {
      if (visited.count(head) > 0) continue;
      std::optional<Seconds> tail = rest.at(head);
      if (!tail) continue;
      if (spent + travel + *tail > budget) continue;
      path.push_back(head);
      visited.insert(head);
      route_dfs(d, rest, budget, spent + travel, path, visited, out);
      visited.erase(head);
      path.pop_back();
    }
  }

  void pick_route(std::size_t k) {
    if (k == drivers_.size()) {
      for (ActiveDriver& d : drivers_) {
        d.pos.clear();
        d.arc_time.clear();
        for (std::size_t q = 0; q < d.route.size(); ++q) {
          d.pos[d.route[q]] = q;
        }
        for (std::size_t q = 0; q + 1 < d.route.size(); ++q) {
          d.arc_time.push_back(
              net_.edge(d.route[q], d.route[q + 1]).travel_time);
        }
      }
      options_.assign(riders_.size(), {});
      for (std::size_t r = 0; r < riders_.size(); ++r) {
        options_[r] = enum_itineraries(*riders_[r]);
      }
      chosen_.assign(riders_.size(), -1);
      aboard_.clear();
      for (const ActiveDriver& d : drivers_) {
        aboard_.emplace_back(d.route.size() - 1, 0);
      }
      pick_rider(0);
      return;
    }
    for (const std::vector<NodeId>& route : route_sets_[k]) {
      drivers_[k].route = route;
      pick_route(k + 1);
    }
  }

  // All chained itineraries for one rider over the currently fixed routes:
  // legs ride forward along distinct drivers, transfer where the previous
  // leg ended, and the concatenated node walk stays simple.
  std::vector<std::vector<Hop>> enum_itineraries(const EnrichedParticipant& p) {
    std::vector<std::vector<Hop>> out;
    std::vector<Hop> legs;
    std::set<NodeId> visited{p.base.origin};
    std::uint64_t used = 0;
    itin_dfs(p, p.base.origin, used, legs, visited, out);
    return out;
  }

  void itin_dfs(const EnrichedParticipant& p, NodeId cur, std::uint64_t used,
                std::vector<Hop>& legs, std::set<NodeId>& visited,
                std::vector<std::vector<Hop>>& out) {
    if (cur == p.base.destination && !legs.empty()) {
      out.push_back(legs);
      return; // simple walks cannot pass through the destination and return
    }
    if (legs.size() >= limits_.max_legs_per_rider) return;
    for (std::size_t di = 0; di < drivers_.size(); ++di) {
      if ((used >> di) & 1) continue;
      const ActiveDriver& d = drivers_[di];
      auto pit = d.pos.find(cur);
      if (pit == d.pos.end()) continue;
      std::size_t bp = pit->second;
      std::vector<NodeId> added;
      for (std::size_t ap = bp + 1; ap < d.route.size(); ++ap) {
        NodeId next = d.route[ap];
        if (visited.count(next) > 0) break; // longer hops only repeat it
        visited.insert(next);
        added.push_back(next);
        legs.push_back({static_cast<int>(di), bp, ap});
        itin_dfs(p, next, used | (std::uint64_t(1) << di), legs, visited, out);
        legs.pop_back();
      }
      for (NodeId n : added) visited.erase(n);
    }
  }

  void pick_rider(std::size_t r) {
    if (r == riders_.size()) {
      finish_leaf();
      return;
    }
    chosen_[r] = -1; // unmatched
    pick_rider(r + 1);
    const std::vector<std::vector<Hop>>& opts = options_[r];
    for (std::size_t o = 0; o < opts.size(); ++o) {
      bool fits = true;
      for (const Hop& leg : opts[o]) {
        int cap = *drivers_[leg.di].part->base.capacity;
        for (std::size_t q = leg.bp; q < leg.ap && fits; ++q) {
          if (aboard_[leg.di][q] + 1 > cap) fits = false;
        }
        if (!fits) break;
      }
      if (!fits) continue;
      for (const Hop& leg : opts[o]) {
        for (std::size_t q = leg.bp; q < leg.ap; ++q) ++aboard_[leg.di][q];
      }
      chosen_[r] = static_cast<int>(o);
      pick_rider(r + 1);
      for (const Hop& leg : opts[o]) {
        for (std::size_t q = leg.bp; q < leg.ap; ++q) --aboard_[leg.di][q];
      }
    }
    chosen_[r] = -1;
  }

  void finish_leaf() {
    ++checked_;
    if (cfg_.hov_enabled) {
      for (std::size_t di = 0; di < drivers_.size(); ++di) {
        const ActiveDriver& d = drivers_[di];
        for (std::size_t q = 0; q + 1 < d.route.size(); ++q) {
          if (!net_.edge(d.route[q], d.route[q + 1]).hov) continue;
          int occupancy = aboard_[di][q] + (cfg_.count_driver ? 1 : 0);
          if (occupancy < cfg_.min_occupancy) return;
        }
      }
    }

    // Objective first: skip the schedule solve when it cannot win. Ties
    // keep the earlier leaf, which makes the result order-deterministic.
    std::int64_t num = 0;
    for (std::size_t di = 0; di < drivers_.size(); ++di) {
      if (cfg_.driver_edges_in_objective) {
        for (Seconds t : drivers_[di].arc_time) num -= t * den_;
      }
    }
    for (std::size_t r = 0; r < riders_.size(); ++r) {
      if (chosen_[r] < 0) continue;
      num += *riders_[r]->direct_time * fnum_;
      for (const Hop& leg : options_[r][chosen_[r]]) {
        for (std::size_t q = leg.bp; q < leg.ap; ++q) {
          num -= drivers_[leg.di].arc_time[q] * den_;
        }
      }
    }
    if (num <= best_num_) return;

    std::vector<std::vector<Seconds>> clocks;
    if (!settle_clocks(clocks)) return;

    best_num_ = num;
    best_ = Assignment{};
    best_.objective = Rational(num, den_);
    for (std::size_t di = 0; di < drivers_.size(); ++di) {
      const ActiveDriver& d = drivers_[di];
      best_.driving.insert(d.part->base.id);
      DriverRoute route;
      route.nodes = d.route;
      route.times = clocks[di];
      best_.driver_routes.emplace(d.part->base.id, std::move(route));
    }
    for (std::size_t r = 0; r < riders_.size(); ++r) {
      if (chosen_[r] < 0) continue;
      const std::string& pid = riders_[r]->base.id;
      best_.matched.insert(pid);
      RiderItinerary itin;
      for (const Hop& leg : options_[r][chosen_[r]]) {
        const ActiveDriver& d = drivers_[leg.di];
        RiderLeg out;
        out.driver = d.part->base.id;
        out.board = d.route[leg.bp];
        out.alight = d.route[leg.ap];
        out.board_time = clocks[leg.di][leg.bp];
        out.alight_time = clocks[leg.di][leg.ap - 1] + d.arc_time[leg.ap - 1];
        itin.legs.push_back(std::move(out));
      }
      best_.rider_itineraries.emplace(pid, std::move(itin));
    }
  }

  // Earliest joint schedule for the fixed routes and itineraries, or
  // false when none exists. Clocks are departure times per route node; a
  // transfer waits for the previous car's arrival.
  bool settle_clocks(std::vector<std::vector<Seconds>>& clocks) {
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (const ActiveDriver& d : drivers_) {
      offset.push_back(total);
      total += d.route.size();
    }
    std::vector<Seconds> value(total), cap(total);
    struct Edge {
      std::size_t from, to;
      Seconds weight;
    };
    std::vector<Edge> edges;
    for (std::size_t di = 0; di < drivers_.size(); ++di) {
      const ActiveDriver& d = drivers_[di];
      for (std::size_t q = 0; q < d.route.size(); ++q) {
        value[offset[di] + q] = d.part->base.earliest_departure;
        cap[offset[di] + q] = d.part->base.latest_arrival;
      }
      for (std::size_t q = 0; q + 1 < d.route.size(); ++q) {
        edges.push_back({offset[di] + q, offset[di] + q + 1, d.arc_time[q]});
      }
    }
    for (std::size_t r = 0; r < riders_.size(); ++r) {
      if (chosen_[r] < 0) continue;
      const EnrichedParticipant& p = *riders_[r];
      const std::vector<Hop>& legs = options_[r][chosen_[r]];
      for (std::size_t k = 0; k < legs.size(); ++k) {
        const Hop& leg = legs[k];
        std::size_t board = offset[leg.di] + leg.bp;
        std::size_t last_tail = offset[leg.di] + leg.ap - 1;
        Seconds t_last = drivers_[leg.di].arc_time[leg.ap - 1];
        if (value[board] < p.base.earliest_departure) {
          value[board] = p.base.earliest_departure;
        }
        cap[last_tail] =
            std::min(cap[last_tail], p.base.latest_arrival - t_last);
        if (k + 1 < legs.size()) {
          const Hop& next = legs[k + 1];
          edges.push_back(
              {last_tail, offset[next.di] + next.bp, t_last});
        }
      }
    }
    bool changed = true;
    for (std::size_t pass = 0; changed && pass <= total + 1; ++pass) {
      changed = false;
      for (const Edge& e : edges) {
        if (value[e.from] + e.weight > value[e.to]) {
          value[e.to] = value[e.from] + e.weight;
          if (value[e.to] > cap[e.to]) return false;
          changed = true;
        }
      }
    }
    if (changed) return false; // positive cycle
    for (std::size_t v = 0; v < total; ++v) {
      if (value[v] > cap[v]) return false;
    }
    clocks.clear();
    for (std::size_t di = 0; di < drivers_.size(); ++di) {
      const ActiveDriver& d = drivers_[di];
      clocks.emplace_back(value.begin() + offset[di],
                          value.begin() + offset[di] + d.route.size());
    }
    return true;
  }

  const RoadNetwork& net_;
  const std::vector<EnrichedParticipant>& parts_;
  const ModelConfig& cfg_;
  const OracleLimits& limits_;
  std::int64_t fnum_ = 1, den_ = 1;

  std::vector<const EnrichedParticipant*> owners_;
  std::vector<ActiveDriver> drivers_;
  std::vector<const EnrichedParticipant*> riders_;
  std::vector<std::vector<std::vector<NodeId>>> route_sets_;
  std::vector<std::vector<std::vector<Hop>>> options_;
  std::vector<int> chosen_;
  std::vector<std::vector<int>> aboard_;

  std::int64_t best_num_ = 0;
  Assignment best_;
  std::uint64_t checked_ = 0;
};

} // namespace

OracleResult oracle_optimum(const RoadNetwork& net,
                            const std::vector<EnrichedParticipant>& parts,
                            const ModelConfig& config,
                            const OracleLimits& limits) {
  if (net.node_count() > limits.max_nodes) {
    throw ModelError("oracle: network exceeds max_nodes");
  }
  if (parts.size() > limits.max_participants) {
    throw ModelError("oracle: too many participants for enumeration");
  }
  if (config.objective.weighted && config.objective.factor <= Rational(0)) {
    throw ModelError("objective weight factor must be positive");
  }
  return Enumerator(net, parts, config, limits).run();
}

} // namespace flexride
