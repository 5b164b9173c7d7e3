#include "flexride/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "flexride/errors.hpp"
#include "json.hpp"

namespace flexride {

namespace {

using Json = nlohmann::ordered_json;

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + text + "'");
  }
}

// Chains arcs into one simple path. `arcs` maps tail to head; the start is
// the unique tail that is nobody's head. Throws VerifyError mentioning
// `who` when the arcs do not form exactly one simple path.
std::vector<NodeId> chain_path(const std::map<NodeId, NodeId>& arcs,
                               const std::string& who) {
  std::set<NodeId> heads;
  for (const auto& [tail, head] : arcs) heads.insert(head);
  std::vector<NodeId> starts;
  for (const auto& [tail, head] : arcs) {
    if (heads.count(tail) == 0) starts.push_back(tail);
  }
  if (starts.size() != 1) {
    throw VerifyError("arcs of " + who +
                      " do not chain into a single path from one origin");
  }
  std::vector<NodeId> path{starts[0]};
  std::set<NodeId> seen{starts[0]};
  NodeId cur = starts[0];
  while (true) {
    auto it = arcs.find(cur);
    if (it == arcs.end()) break;
    cur = it->second;
    if (!seen.insert(cur).second) {
      throw VerifyError("arcs of " + who + " revisit node " +
                        std::to_string(cur));
    }
    path.push_back(cur);
  }
  if (path.size() != arcs.size() + 1) {
    throw VerifyError("arcs of " + who + " leave a disconnected cycle");
  }
  return path;
}

} // namespace

Assignment decode_solution(const ModelInstance& model, const RoadNetwork& net,
                           const std::map<std::string, double>& values,
                           const std::optional<double>& reported_objective) {
  std::vector<std::int64_t> ints = round_and_verify(model, values);

  Assignment out;
  out.objective = model.objective_value(ints);
  if (reported_objective &&
      std::abs(out.objective.to_double() - *reported_objective) > 1e-6) {
    std::ostringstream msg;
    msg << "reported objective " << *reported_objective
        << " disagrees with recomputed " << out.objective.str();
    throw VerifyError(msg.str());
  }

  std::map<std::pair<std::string, NodeId>, Seconds> driver_time, rider_time;
  std::map<std::string, std::map<NodeId, NodeId>> self_arcs;
  std::map<std::string, std::map<NodeId, std::pair<NodeId, std::string>>>
      rider_arcs;
  for (std::size_t id = 0; id < model.vars.size(); ++id) {
    const VarInfo& v = model.vars[id];
    switch (v.kind) {
      case VarKind::Matched:
        if (ints[id] == 1) out.matched.insert(v.p);
        break;
      case VarKind::Drives:
        if (ints[id] == 1) out.driving.insert(v.d);
        break;
      case VarKind::DriverTime:
        driver_time[{v.d, v.i}] = ints[id];
        break;
      case VarKind::RiderTime:
        rider_time[{v.p, v.i}] = ints[id];
        break;
      case VarKind::RideArc:
        if (ints[id] == 1) {
          if (v.p == v.d) {
            if (!self_arcs[v.d].emplace(v.i, v.j).second) {
              throw VerifyError("route of " + v.d + " branches at node " +
                                std::to_string(v.i));
            }
          } else {
            if (!rider_arcs[v.p].emplace(v.i, std::make_pair(v.j, v.d))
                     .second) {
              throw VerifyError("itinerary of " + v.p + " branches at node " +
                                std::to_string(v.i));
            }
          }
        }
        break;
      default:
        break;
    }
  }

  for (const auto& [did, arcs] : self_arcs) {
    if (out.driving.count(did) == 0) {
      throw VerifyError("participant " + did + " moves a car without driving");
    }
  }
  for (const std::string& did : out.driving) {
    auto it = self_arcs.find(did);
    if (it == self_arcs.end()) {
      throw VerifyError("driver " + did + " drives but traverses no edges");
    }
    DriverRoute route;
    route.nodes = chain_path(it->second, "driver " + did);
    for (NodeId n : route.nodes) route.times.push_back(driver_time.at({did, n}));
    out.driver_routes.emplace(did, std::move(route));
  }

  for (const auto& [pid, arcs] : rider_arcs) {
    if (out.matched.count(pid) == 0) {
      throw VerifyError("participant " + pid + " is carried without a match");
    }
  }
  for (const std::string& pid : out.matched) {
    auto it = rider_arcs.find(pid);
    if (it == rider_arcs.end()) {
      throw VerifyError("rider " + pid + " is matched but travels nowhere");
    }
    std::map<NodeId, NodeId> plain;
    for (const auto& [tail, hop] : it->second) plain.emplace(tail, hop.first);
    std::vector<NodeId> path = chain_path(plain, "rider " + pid);
    RiderItinerary itin;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const std::string& drv = it->second.at(path[k]).second;
      if (itin.legs.empty() || itin.legs.back().driver != drv) {
        RiderLeg leg;
        leg.driver = drv;
        leg.board = path[k];
        leg.board_time = rider_time.at({pid, path[k]});
        itin.legs.push_back(leg);
      }
      itin.legs.back().alight = path[k + 1];
      itin.legs.back().alight_time =
          rider_time.at({pid, path[k]}) +
          net.edge(path[k], path[k + 1]).travel_time;
    }
    out.rider_itineraries.emplace(pid, std::move(itin));
  }
  return out;
}

std::vector<std::string> validate_solution(
    const RoadNetwork& net, const std::vector<EnrichedParticipant>& parts,
    const ModelConfig& config, const Assignment& assignment) {
  std::vector<std::string> bad;
  auto complain = [&bad](const std::string& msg) { bad.push_back(msg); };

  std::map<std::string, const Participant*> by_id;
  for (const EnrichedParticipant& p : parts) by_id[p.base.id] = &p.base;
  auto known = [&](const std::string& id, const char* role) -> const
      Participant* {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      complain(std::string(role) + " " + id + " is not a participant");
      return nullptr;
    }
    return it->second;
  };

  for (const std::string& id : assignment.driving) {
    const Participant* d = known(id, "driver");
    if (!d) continue;
    if (!d->is_car_owner()) complain("driver " + id + " owns no car");
    if (assignment.matched.count(id) > 0) {
      complain("participant " + id + " both drives and rides");
    }
    if (assignment.driver_routes.count(id) == 0) {
      complain("driver " + id + " has no route");
    }
  }
  for (const std::string& id : assignment.matched) {
    const Participant* p = known(id, "rider");
    if (!p) continue;
    if (p->is_car_owner() && !config.flex_roles) {
      complain("car owner " + id + " rides although roles are fixed");
    }
    if (assignment.rider_itineraries.count(id) == 0) {
      complain("rider " + id + " has no itinerary");
    }
  }
  for (const auto& [id, route] : assignment.driver_routes) {
    if (assignment.driving.count(id) == 0) {
      complain("route present for " + id + " who is not driving");
    }
    (void)route;
  }
  for (const auto& [id, itin] : assignment.rider_itineraries) {
    if (assignment.matched.count(id) == 0) {
      complain("itinerary present for " + id + " who is not matched");
    }
    (void)itin;
  }

  // Route shape and clock checks; position index feeds occupancy later.
  std::map<std::string, std::map<NodeId, std::size_t>> position;
  for (const auto& [id, route] : assignment.driver_routes) {
    const Participant* d = known(id, "driver");
    if (!d) continue;
    if (route.nodes.size() < 2) {
      complain("route of " + id + " has fewer than two nodes");
      continue;
    }
    if (route.times.size() != route.nodes.size()) {
      complain("route of " + id + " has mismatched clock entries");
      continue;
    }
    std::map<NodeId, std::size_t>& pos = position[id];
    bool simple = true;
    for (std::size_t k = 0; k < route.nodes.size(); ++k) {
      if (!pos.emplace(route.nodes[k], k).second) simple = false;
    }
    if (!simple) complain("route of " + id + " revisits a node");
    if (route.nodes.front() != d->origin) {
      complain("route of " + id + " does not start at its origin");
    }
    if (route.nodes.back() != d->destination) {
      complain("route of " + id + " does not end at its destination");
    }
    for (std::size_t k = 0; k + 1 < route.nodes.size(); ++k) {
      NodeId a = route.nodes[k], b = route.nodes[k + 1];
      if (!net.has_edge(a, b)) {
        complain("route of " + id + " uses missing edge " + std::to_string(a) +
                 "->" + std::to_string(b));
        continue;
      }
      if (route.times[k + 1] - route.times[k] <
          net.edge(a, b).travel_time) {
        complain("route of " + id + " travels edge " + std::to_string(a) +
                 "->" + std::to_string(b) + " faster than possible");
      }
    }
    for (Seconds t : route.times) {
      if (t < d->earliest_departure || t > d->latest_arrival) {
        complain("route of " + id + " leaves its time window");
        break;
      }
    }
  }

  // Legs: anchor to the carrying route, keep the chain tight, respect the
  // rider's window at every ridden node.
  std::map<std::string, std::map<std::size_t, int>> aboard; // driver -> arc -> count
  for (const auto& [id, itin] : assignment.rider_itineraries) {
    const Participant* p = known(id, "rider");
    if (!p) continue;
    if (itin.legs.empty()) {
      complain("itinerary of " + id + " has no legs");
      continue;
    }
    std::set<std::string> drivers_used;
    std::vector<NodeId> full_path;
    bool anchored = true;
    for (const RiderLeg& leg : itin.legs) {
      if (!drivers_used.insert(leg.driver).second) {
        complain("itinerary of " + id + " reuses driver " + leg.driver);
      }
      auto rit = assignment.driver_routes.find(leg.driver);
      auto pit = position.find(leg.driver);
      if (rit == assignment.driver_routes.end() || pit == position.end()) {
        complain("leg of " + id + " names " + leg.driver +
                 " who drives no route");
        anchored = false;
        continue;
      }
      const DriverRoute& route = rit->second;
      auto bp = pit->second.find(leg.board);
      auto ap = pit->second.find(leg.alight);
      if (bp == pit->second.end() || ap == pit->second.end() ||
          bp->second >= ap->second) {
        complain("leg of " + id + " does not ride forward along " +
                 leg.driver + "'s route");
        anchored = false;
        continue;
      }
      if (route.times[bp->second] != leg.board_time) {
        complain("rider " + id + " boards " + leg.driver +
                 " at a different clock than the car");
      }
      NodeId last_tail = route.nodes[ap->second - 1];
      if (net.has_edge(last_tail, leg.alight)) {
        Seconds arrival = route.times[ap->second - 1] +
                          net.edge(last_tail, leg.alight).travel_time;
        if (arrival != leg.alight_time) {
          complain("rider " + id + " alights " + leg.driver +
                   " at a different clock than the car arrives");
        }
        if (arrival > p->latest_arrival) {
          complain("rider " + id + " arrives at node " +
                   std::to_string(leg.alight) + " after its window closes");
        }
      }
      // Departures while aboard must sit inside the rider's window; the
      // final arrival was checked above.
      for (std::size_t q = bp->second; q < ap->second; ++q) {
        if (route.times[q] < p->earliest_departure ||
            route.times[q] > p->latest_arrival) {
          complain("rider " + id + " is outside its window at node " +
                   std::to_string(route.nodes[q]));
        }
      }
      for (std::size_t q = bp->second; q <= ap->second; ++q) {
        if (q > bp->second || full_path.empty()) {
          full_path.push_back(route.nodes[q]);
        } else if (full_path.back() != route.nodes[q]) {
          full_path.push_back(route.nodes[q]);
        }
      }
      for (std::size_t q = bp->second; q < ap->second; ++q) {
        aboard[leg.driver][q] += 1;
      }
    }
    for (std::size_t k = 0; k + 1 < itin.legs.size(); ++k) {
      if (itin.legs[k].alight != itin.legs[k + 1].board) {
        complain("itinerary of " + id + " alights at " +
                 std::to_string(itin.legs[k].alight) + " but boards at " +
                 std::to_string(itin.legs[k + 1].board));
      }
      if (itin.legs[k + 1].board_time < itin.legs[k].alight_time) {
        complain("itinerary of " + id + " boards leg " + std::to_string(k + 2) +
                 " before alighting leg " + std::to_string(k + 1));
      }
    }
    if (itin.legs.front().board != p->origin) {
      complain("itinerary of " + id + " does not start at its origin");
    }
    if (itin.legs.back().alight != p->destination) {
      complain("itinerary of " + id + " does not end at its destination");
    }
    if (anchored) {
      std::set<NodeId> seen;
      for (NodeId n : full_path) {
        if (!seen.insert(n).second) {
          complain("itinerary of " + id + " revisits node " +
                   std::to_string(n));
          break;
        }
      }
    }
  }

  // Seats and HOV minimums, arc by arc.
  for (const auto& [id, route] : assignment.driver_routes) {
    const Participant* d = known(id, "driver");
    if (!d || !d->capacity) continue;
    const std::map<std::size_t, int>* counts = nullptr;
    auto ait = aboard.find(id);
    if (ait != aboard.end()) counts = &ait->second;
    for (std::size_t k = 0; k + 1 < route.nodes.size(); ++k) {
      int riders = 0;
      if (counts) {
        auto cit = counts->find(k);
        if (cit != counts->end()) riders = cit->second;
      }
      if (riders > *d->capacity) {
        complain("car of " + id + " is over capacity on edge " +
                 std::to_string(route.nodes[k]) + "->" +
                 std::to_string(route.nodes[k + 1]));
      }
      if (config.hov_enabled && net.has_edge(route.nodes[k], route.nodes[k + 1]) &&
          net.edge(route.nodes[k], route.nodes[k + 1]).hov) {
        int occupancy = riders + (config.count_driver ? 1 : 0);
        if (occupancy < config.min_occupancy) {
          complain("car of " + id + " is under the HOV minimum on edge " +
                   std::to_string(route.nodes[k]) + "->" +
                   std::to_string(route.nodes[k + 1]));
        }
      }
    }
  }
  return bad;
}

void write_assignment_json(const Assignment& assignment, std::ostream& out) {
  Json j;
  j["objective"] = assignment.objective.str();
  j["matched"] = Json::array();
  for (const std::string& id : assignment.matched) j["matched"].push_back(id);
  j["driving"] = Json::array();
  for (const std::string& id : assignment.driving) j["driving"].push_back(id);
  j["drivers"] = Json::object();
  for (const auto& [id, route] : assignment.driver_routes) {
    Json r;
    r["nodes"] = route.nodes;
    r["times"] = route.times;
    j["drivers"][id] = std::move(r);
  }
  j["riders"] = Json::object();
  for (const auto& [id, itin] : assignment.rider_itineraries) {
    Json legs = Json::array();
    for (const RiderLeg& leg : itin.legs) {
      Json l;
      l["driver"] = leg.driver;
      l["board"] = leg.board;
      l["alight"] = leg.alight;
      l["board_time"] = leg.board_time;
      l["alight_time"] = leg.alight_time;
      legs.push_back(std::move(l));
    }
    j["riders"][id] = Json{{"legs", std::move(legs)}};
  }
  out << j.dump(2) << "\n";
}

Assignment read_assignment_json(std::istream& in) {
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("assignment JSON: ") + e.what());
  }
  try {
    Assignment a;
    a.objective = parse_rational(j.at("objective").get<std::string>());
    for (const auto& id : j.at("matched")) {
      a.matched.insert(id.get<std::string>());
    }
    for (const auto& id : j.at("driving")) {
      a.driving.insert(id.get<std::string>());
    }
    for (const auto& [id, r] : j.at("drivers").items()) {
      DriverRoute route;
      route.nodes = r.at("nodes").get<std::vector<NodeId>>();
      route.times = r.at("times").get<std::vector<Seconds>>();
      a.driver_routes.emplace(id, std::move(route));
    }
    for (const auto& [id, r] : j.at("riders").items()) {
      RiderItinerary itin;
      for (const auto& l : r.at("legs")) {
        RiderLeg leg;
        leg.driver = l.at("driver").get<std::string>();
        leg.board = l.at("board").get<NodeId>();
        leg.alight = l.at("alight").get<NodeId>();
        leg.board_time = l.at("board_time").get<Seconds>();
        leg.alight_time = l.at("alight_time").get<Seconds>();
        itin.legs.push_back(std::move(leg));
      }
      a.rider_itineraries.emplace(id, std::move(itin));
    }
    return a;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("assignment JSON: ") + e.what());
  }
}

} // namespace flexride
