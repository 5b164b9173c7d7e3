#include "flexride/preprocess.hpp"

#include <algorithm>

#include "flexride/errors.hpp"

#include <nlohmann/json.hpp>

namespace flexride {

namespace {

struct ParticipantFields {
  TravelTimeField from_origin;
  TravelTimeField to_destination;
  std::set<NodeId> an;
};

std::set<NodeId> exact_nodes(const RoadNetwork& net,
                             const EnrichedParticipant& p,
                             const TravelTimeField& from_origin,
                             const TravelTimeField& to_destination) {
  std::set<NodeId> result;
  Seconds window = p.base.latest_arrival - p.base.earliest_departure;
  for (const NodeInfo& n : net.nodes()) {
    auto fwd = from_origin.at(n.id);
    auto back = to_destination.at(n.id);
    if (fwd && back && *fwd + *back <= window) result.insert(n.id);
  }
  return result;
}

std::set<NodeId> compute_an(const RoadNetwork& net,
                            const EnrichedParticipant& p,
                            const AccessMethod& method,
                            const TravelTimeField& from_origin,
                            const TravelTimeField& to_destination) {
  std::set<NodeId> exact =
      exact_nodes(net, p, from_origin, to_destination);
  if (!method.yen_k) return exact;
  std::set<NodeId> on_paths;
  for (const PathResult& path : net.k_shortest_paths(
           p.base.origin, p.base.destination, *method.yen_k)) {
    on_paths.insert(path.nodes.begin(), path.nodes.end());
  }
  std::set<NodeId> result;
  std::set_intersection(on_paths.begin(), on_paths.end(), exact.begin(),
                        exact.end(), std::inserter(result, result.begin()));
  // Origin and destination always survive: they sit on the first path and
  // in the exact set of any feasible participant.
  result.insert(p.base.origin);
  result.insert(p.base.destination);
  return result;
}

std::pair<std::set<NodeId>, std::set<EdgeKey>> pair_sets_impl(
    const RoadNetwork& net, const EnrichedParticipant& p,
    const EnrichedParticipant& d, const ParticipantFields& pf,
    const ParticipantFields& df, bool edge_time_filter) {
  std::set<NodeId> an_pd;
  std::set_intersection(pf.an.begin(), pf.an.end(), df.an.begin(),
                        df.an.end(),
                        std::inserter(an_pd, an_pd.begin()));
  std::set<EdgeKey> ae_pd;
  for (const NetworkEdge& e : net.edges()) {
    if (an_pd.count(e.tail) == 0 || an_pd.count(e.head) == 0) continue;
    if (edge_time_filter) {
      auto p_reach = pf.from_origin.at(e.tail);
      auto d_reach = df.from_origin.at(e.tail);
      auto p_rest = pf.to_destination.at(e.head);
      auto d_rest = df.to_destination.at(e.head);
      if (!p_reach || !d_reach || !p_rest || !d_rest) continue;
      // Neither party can be at the tail before its own earliest arrival
      // there, and both still have to finish their trips after the hop.
      Seconds board = std::max(p.base.earliest_departure + *p_reach,
                               d.base.earliest_departure + *d_reach);
      if (board + e.travel_time + *p_rest > p.base.latest_arrival) continue;
      if (board + e.travel_time + *d_rest > d.base.latest_arrival) continue;
    }
    ae_pd.insert({e.tail, e.head});
  }
  return {std::move(an_pd), std::move(ae_pd)};
}

ParticipantFields make_fields(const RoadNetwork& net,
                              const EnrichedParticipant& p,
                              const AccessMethod& method) {
  ParticipantFields f{net.times_from(p.base.origin),
                      net.times_to(p.base.destination),
                      {}};
  f.an = compute_an(net, p, method, f.from_origin, f.to_destination);
  return f;
}

} // namespace

std::set<NodeId> accessible_nodes(const RoadNetwork& net,
                                  const EnrichedParticipant& p,
                                  const AccessMethod& method) {
  TravelTimeField from_origin = net.times_from(p.base.origin);
  TravelTimeField to_destination = net.times_to(p.base.destination);
  return compute_an(net, p, method, from_origin, to_destination);
}

std::pair<std::set<NodeId>, std::set<EdgeKey>> pair_sets(
    const RoadNetwork& net, const EnrichedParticipant& p,
    const EnrichedParticipant& d, const PreprocessOptions& options) {
  ParticipantFields pf = make_fields(net, p, options.method);
  if (p.base.id == d.base.id) {
    return pair_sets_impl(net, p, d, pf, pf, options.edge_time_filter);
  }
  ParticipantFields df = make_fields(net, d, options.method);
  return pair_sets_impl(net, p, d, pf, df, options.edge_time_filter);
}

std::set<PairKey> viable_matches(const std::vector<EnrichedParticipant>& parts,
                                 const AccessSets& sets) {
  std::map<std::string, const EnrichedParticipant*> by_id;
  for (const EnrichedParticipant& p : parts) by_id[p.base.id] = &p;
  std::set<PairKey> rd;
  for (const auto& [key, edges] : sets.ae_pair) {
    if (key.rider == key.driver) continue;
    if (edges.empty()) continue;
    const EnrichedParticipant* p = by_id.at(key.rider);
    const EnrichedParticipant* d = by_id.at(key.driver);
    if (d->base.latest_arrival <= p->base.earliest_departure) continue;
    if (p->base.latest_arrival <= d->base.earliest_departure) continue;
    rd.insert(key);
  }
  return rd;
}

AccessSets build_access_sets(const RoadNetwork& net,
                             const std::vector<EnrichedParticipant>& parts,
                             const PreprocessOptions& options) {
  AccessSets sets;
  std::map<std::string, ParticipantFields> fields;
  std::vector<const EnrichedParticipant*> usable;
  for (const EnrichedParticipant& p : parts) {
    if (!p.feasible) continue;
    usable.push_back(&p);
    fields.emplace(p.base.id, make_fields(net, p, options.method));
    sets.an[p.base.id] = fields.at(p.base.id).an;
  }
  for (const EnrichedParticipant* d : usable) {
    if (!d->base.is_car_owner()) continue;
    const ParticipantFields& df = fields.at(d->base.id);
    for (const EnrichedParticipant* p : usable) {
      auto [an_pd, ae_pd] =
          pair_sets_impl(net, *p, *d, fields.at(p->base.id), df,
                         options.edge_time_filter);
      PairKey key{p->base.id, d->base.id};
      sets.an_pair[key] = std::move(an_pd);
      sets.ae_pair[key] = std::move(ae_pd);
    }
  }
  std::vector<EnrichedParticipant> usable_copy;
  for (const EnrichedParticipant* p : usable) usable_copy.push_back(*p);
  sets.rd = viable_matches(usable_copy, sets);
  return sets;
}

void write_access_sets_json(const AccessSets& sets, std::ostream& out) {
  nlohmann::json doc;
  for (const auto& [id, nodes] : sets.an) {
    doc[id] = std::vector<NodeId>(nodes.begin(), nodes.end());
  }
  out << doc.dump(2) << "\n";
}

} // namespace flexride
