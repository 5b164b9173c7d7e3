#include "flexride/instance_gen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace flexride {

namespace {

// Nodes spread over a small synthetic grid; coordinates only matter for
// GeoJSON output, so a fixed function of the id is enough.
NodeInfo make_node(NodeId id) {
  return {id, 45.0 + 0.01 * static_cast<double>(id),
          7.0 + 0.01 * static_cast<double>(id)};
}

} // namespace

TinyInstance generate_instance(Rng& rng, const GenOptions& options) {
  int n = static_cast<int>(rng.uniform(options.min_nodes, options.max_nodes));
  std::vector<NodeId> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(i);

  // A random spanning line keeps the network connected along one
  // direction; extra arcs add shortcuts, back-edges and HOV variety.
  std::vector<NodeId> order = ids;
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform(0, i)]);
  }
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<NetworkEdge> edges;
  auto add_edge = [&](NodeId a, NodeId b) {
    if (a == b || !used.emplace(a, b).second) return;
    NetworkEdge e;
    e.tail = a;
    e.head = b;
    e.travel_time = rng.uniform(5, 50);
    e.hov = rng.chance(35, 100);
    edges.push_back(e);
  };
  for (int i = 0; i + 1 < n; ++i) add_edge(order[i], order[i + 1]);
  int extra = static_cast<int>(rng.uniform(1, n));
  for (int i = 0; i < extra; ++i) {
    add_edge(ids[rng.uniform(0, n - 1)], ids[rng.uniform(0, n - 1)]);
  }

  std::vector<NodeInfo> nodes;
  for (NodeId id : ids) nodes.push_back(make_node(id));
  RoadNetwork net = RoadNetwork::build(nodes, edges);

  int n_parts = static_cast<int>(rng.uniform(2, options.max_participants));
  int n_owners = static_cast<int>(
      rng.uniform(1, std::min<std::int64_t>(options.max_owners, n_parts)));

  std::vector<Participant> parts;
  for (int i = 0; i < n_parts; ++i) {
    bool owner = i < n_owners;
    Participant p;
    p.id = (owner ? "c" : "r") + std::to_string(owner ? i + 1 : i + 1 - n_owners);
    p.ownership = owner ? Ownership::CarOwner : Ownership::NonCarOwner;
    if (owner) p.capacity = static_cast<int>(rng.uniform(1, 3));

    std::optional<Seconds> direct;
    for (int attempt = 0; attempt < 20 && !direct; ++attempt) {
      p.origin = ids[rng.uniform(0, n - 1)];
      p.destination = ids[rng.uniform(0, n - 1)];
      if (p.origin == p.destination) continue;
      direct = net.shortest_travel_time(p.origin, p.destination);
    }
    if (!direct) {
      // The spanning line always connects consecutive order entries.
      int at = static_cast<int>(rng.uniform(0, n - 2));
      p.origin = order[at];
      p.destination = order[at + 1];
      direct = net.shortest_travel_time(p.origin, p.destination);
    }
    Seconds pickup = rng.uniform(300, 900);
    Seconds dropoff = pickup + *direct + rng.uniform(0, 300);
    auto [ed, la] = synthesize_windows(pickup, dropoff, rng);
    p.earliest_departure = ed;
    p.latest_arrival = la;
    p.submission = std::max<Seconds>(0, ed - rng.uniform(0, 300));
    p.deadline = rng.uniform(300, 1200);
    parts.push_back(std::move(p));
  }

  ModelConfig config;
  config.flex_roles = rng.chance(1, 2);
  config.hov_enabled = rng.chance(1, 2);
  switch (rng.uniform(0, 2)) {
    case 0: config.objective = ObjectiveMode::as_printed(); break;
    case 1: config.objective = ObjectiveMode::weight(Rational(2)); break;
    default: config.objective = ObjectiveMode::weight(Rational(3)); break;
  }

  TinyInstance out;
  out.net = std::move(net);
  out.parts = std::move(parts);
  out.config = config;
  return out;
}

std::string TinyInstance::describe() const {
  std::ostringstream s;
  s << "nodes=" << net.node_count() << " edges=" << net.edge_count()
    << " hov=" << net.hov_edge_count() << " parts=" << parts.size();
  int owners = 0;
  for (const Participant& p : parts) owners += p.is_car_owner() ? 1 : 0;
  s << " owners=" << owners << " flex=" << (config.flex_roles ? 1 : 0)
    << " hovcfg=" << (config.hov_enabled ? 1 : 0) << " obj=";
  if (!config.objective.weighted) s << "direct";
  else s << "w" << config.objective.factor.str();
  return s.str();
}

} // namespace flexride
