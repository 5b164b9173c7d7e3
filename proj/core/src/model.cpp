#include "flexride/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "flexride/errors.hpp"

namespace flexride {

namespace {

std::string sanitize(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

std::string node_tag(NodeId n) { return sanitize(std::to_string(n)); }

struct Builder {
  const RoadNetwork& net;
  const std::vector<EnrichedParticipant>& parts;
  const AccessSets& sets;
  ModelInstance model;

  std::map<std::string, const EnrichedParticipant*> by_id;
  std::vector<const EnrichedParticipant*> owners; // in parts order

  // Structured variable lookups, keyed the way rows consume them.
  std::map<std::tuple<std::string, std::string, NodeId, NodeId>, int> x_;
  std::map<std::tuple<std::string, std::string, NodeId>, int> y_, z_;
  std::map<std::string, int> mu_, delta_;
  std::map<std::pair<std::string, NodeId>, int> kap_, u_, taud_, taup_;

  int add_var(VarInfo v) {
    int id = static_cast<int>(model.vars.size());
    if (!model.var_by_name.emplace(v.name, id).second) {
      throw ModelError("variable name collision after sanitizing: " + v.name);
    }
    model.vars.push_back(std::move(v));
    return id;
  }

  void add_row(const std::string& name, const std::string& tag,
               std::vector<LinearTerm> terms, RowSense sense, std::int64_t rhs,
               const std::string& note = "") {
    std::sort(terms.begin(), terms.end(),
              [](const LinearTerm& a, const LinearTerm& b) {
                return a.var < b.var;
              });
    std::vector<LinearTerm> merged;
    for (const LinearTerm& t : terms) {
      if (!merged.empty() && merged.back().var == t.var) {
        merged.back().coef += t.coef;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const LinearTerm& t) { return t.coef == 0; });
    model.rows.push_back({name, tag, note, std::move(merged), sense, rhs});
  }

  const std::set<NodeId>& an_of(const std::string& id) const {
    return sets.an.at(id);
  }
  const std::set<NodeId>& an_pair(const std::string& p,
                                  const std::string& d) const {
    return sets.an_pair.at({p, d});
  }
  const std::set<EdgeKey>& ae_pair(const std::string& p,
                                   const std::string& d) const {
    return sets.ae_pair.at({p, d});
  }

  // Rider partners of driver d, in parts order.
  std::vector<const EnrichedParticipant*> partners(const std::string& d) const {
    std::vector<const EnrichedParticipant*> result;
    for (const EnrichedParticipant& p : parts) {
      if (p.base.id != d && sets.rd.count({p.base.id, d}) > 0) {
        result.push_back(&p);
      }
    }
    return result;
  }

  void build(const ModelConfig& config);
  void make_variables();
  void make_rows();
};

void Builder::make_variables() {
  const ModelConfig& cfg = model.config;
  const bool weighted = cfg.objective.weighted;
  const std::int64_t fnum = weighted ? cfg.objective.factor.num() : 1;
  model.objective_den = weighted ? cfg.objective.factor.den() : 1;

  for (const EnrichedParticipant* d : owners) {
    VarInfo v{VarKind::Drives, "delta_" + sanitize(d->base.id)};
    v.d = d->base.id;
    delta_[d->base.id] = add_var(std::move(v));
  }
  for (const EnrichedParticipant& p : parts) {
    VarInfo v{VarKind::Matched, "mu_" + sanitize(p.base.id)};
    v.p = p.base.id;
    if (!cfg.flex_roles && p.base.is_car_owner()) v.hi = 0;
    v.objective = *p.direct_time * fnum;
    mu_[p.base.id] = add_var(std::move(v));
  }
  auto add_arc = [&](const std::string& p, const std::string& d,
                     const EdgeKey& e) {
    VarInfo v{VarKind::RideArc, "x_" + sanitize(p) + "_" + sanitize(d) + "_" +
                                    node_tag(e.tail) + "_" + node_tag(e.head)};
    v.p = p;
    v.d = d;
    v.i = e.tail;
    v.j = e.head;
    if (p != d || cfg.driver_edges_in_objective) {
      v.objective = -net.edge(e.tail, e.head).travel_time * model.objective_den;
    }
    x_[{p, d, e.tail, e.head}] = add_var(std::move(v));
  };
  for (const EnrichedParticipant* d : owners) {
    for (const EdgeKey& e : ae_pair(d->base.id, d->base.id)) {
      add_arc(d->base.id, d->base.id, e);
    }
  }
  for (const EnrichedParticipant* d : owners) {
    for (const EnrichedParticipant* p : partners(d->base.id)) {
      for (const EdgeKey& e : ae_pair(p->base.id, d->base.id)) {
        add_arc(p->base.id, d->base.id, e);
      }
    }
  }
  for (const EnrichedParticipant* d : owners) {
    for (const EnrichedParticipant* p : partners(d->base.id)) {
      for (NodeId i : an_pair(p->base.id, d->base.id)) {
        VarInfo v{VarKind::Pickup, "y_" + sanitize(p->base.id) + "_" +
                                       sanitize(d->base.id) + "_" +
                                       node_tag(i)};
        v.p = p->base.id;
        v.d = d->base.id;
        v.i = i;
        y_[{p->base.id, d->base.id, i}] = add_var(std::move(v));
      }
      for (NodeId i : an_pair(p->base.id, d->base.id)) {
        VarInfo v{VarKind::Dropoff, "z_" + sanitize(p->base.id) + "_" +
                                        sanitize(d->base.id) + "_" +
                                        node_tag(i)};
        v.p = p->base.id;
        v.d = d->base.id;
        v.i = i;
        z_[{p->base.id, d->base.id, i}] = add_var(std::move(v));
      }
    }
  }
  for (const EnrichedParticipant* d : owners) {
    const std::set<NodeId>& an_d = an_of(d->base.id);
    std::int64_t kap_hi = *d->base.capacity + (cfg.count_driver ? 1 : 0);
    for (NodeId i : an_d) {
      VarInfo v{VarKind::Occupancy,
                "kap_" + sanitize(d->base.id) + "_" + node_tag(i)};
      v.d = d->base.id;
      v.i = i;
      v.is_binary = false;
      v.lo = 0;
      v.hi = kap_hi;
      kap_[{d->base.id, i}] = add_var(std::move(v));
    }
    for (NodeId i : an_d) {
      VarInfo v{VarKind::VisitOrder,
                "u_" + sanitize(d->base.id) + "_" + node_tag(i)};
      v.d = d->base.id;
      v.i = i;
      v.is_binary = false;
      v.lo = 0;
      v.hi = static_cast<std::int64_t>(an_d.size());
      u_[{d->base.id, i}] = add_var(std::move(v));
    }
    for (NodeId i : an_d) {
      VarInfo v{VarKind::DriverTime,
                "taud_" + sanitize(d->base.id) + "_" + node_tag(i)};
      v.d = d->base.id;
      v.i = i;
      v.is_binary = false;
      v.lo = 0;
      v.hi = d->base.latest_arrival;
      taud_[{d->base.id, i}] = add_var(std::move(v));
    }
  }
  for (const EnrichedParticipant& p : parts) {
    for (NodeId i : an_of(p.base.id)) {
      VarInfo v{VarKind::RiderTime,
                "tau_" + sanitize(p.base.id) + "_" + node_tag(i)};
      v.p = p.base.id;
      v.i = i;
      v.is_binary = false;
      v.lo = 0;
      v.hi = p.base.latest_arrival;
      taup_[{p.base.id, i}] = add_var(std::move(v));
    }
  }
}

void Builder::make_rows() {
  const ModelConfig& cfg = model.config;

  // Driver flow: leave the origin and enter the destination exactly when
  // driving, balance everywhere else.
  for (const EnrichedParticipant* d : owners) {
    const std::string& id = d->base.id;
    const std::string sid = sanitize(id);
    const std::set<EdgeKey>& ae = ae_pair(id, id);
    std::vector<LinearTerm> out_terms, in_terms;
    for (const EdgeKey& e : ae) {
      if (e.tail == d->base.origin)
        out_terms.push_back({x_.at({id, id, e.tail, e.head}), 1});
      if (e.head == d->base.destination)
        in_terms.push_back({x_.at({id, id, e.tail, e.head}), 1});
    }
    out_terms.push_back({delta_.at(id), -1});
    in_terms.push_back({delta_.at(id), -1});
    add_row("c2_" + sid, "2", std::move(out_terms), RowSense::EQ, 0);
    add_row("c3_" + sid, "3", std::move(in_terms), RowSense::EQ, 0);
    for (NodeId jn : an_of(id)) {
      if (jn == d->base.origin || jn == d->base.destination) continue;
      std::vector<LinearTerm> terms;
      for (const EdgeKey& e : ae) {
        if (e.head == jn) terms.push_back({x_.at({id, id, e.tail, e.head}), 1});
        if (e.tail == jn)
          terms.push_back({x_.at({id, id, e.tail, e.head}), -1});
      }
      add_row("c4_" + sid + "_" + node_tag(jn), "4", std::move(terms),
              RowSense::EQ, 0);
    }
  }

  // Rider flow over the union of all carrying drivers.
  for (const EnrichedParticipant& p : parts) {
    const std::string& pid = p.base.id;
    const std::string spid = sanitize(pid);
    std::vector<const EnrichedParticipant*> drivers;
    for (const EnrichedParticipant* d : owners) {
      if (d->base.id != pid && sets.rd.count({pid, d->base.id}) > 0)
        drivers.push_back(d);
    }
    std::vector<LinearTerm> out_terms, in_terms;
    std::set<NodeId> interior;
    for (const EnrichedParticipant* d : drivers) {
      for (const EdgeKey& e : ae_pair(pid, d->base.id)) {
        if (e.tail == p.base.origin)
          out_terms.push_back({x_.at({pid, d->base.id, e.tail, e.head}), 1});
        if (e.head == p.base.destination)
          in_terms.push_back({x_.at({pid, d->base.id, e.tail, e.head}), 1});
      }
      for (NodeId n : an_pair(pid, d->base.id)) interior.insert(n);
    }
    out_terms.push_back({mu_.at(pid), -1});
    in_terms.push_back({mu_.at(pid), -1});
    add_row("c5_" + spid, "5", std::move(out_terms), RowSense::EQ, 0);
    add_row("c6_" + spid, "6", std::move(in_terms), RowSense::EQ, 0,
            "destination read as the rider's, not the driver's");
    for (NodeId jn : interior) {
      if (jn == p.base.origin || jn == p.base.destination) continue;
      std::vector<LinearTerm> terms;
      for (const EnrichedParticipant* d : drivers) {
        for (const EdgeKey& e : ae_pair(pid, d->base.id)) {
          if (e.head == jn)
            terms.push_back({x_.at({pid, d->base.id, e.tail, e.head}), 1});
          if (e.tail == jn)
            terms.push_back({x_.at({pid, d->base.id, e.tail, e.head}), -1});
        }
      }
      add_row("c7_" + spid + "_" + node_tag(jn), "7", std::move(terms),
              RowSense::EQ, 0);
    }
  }

  // Capacity: riders on an edge fit the car and require the driver there.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    const std::string sdid = sanitize(did);
    for (const EdgeKey& e : ae_pair(did, did)) {
      std::vector<LinearTerm> terms;
      for (const EnrichedParticipant* p : partners(did)) {
        auto it = x_.find({p->base.id, did, e.tail, e.head});
        if (it != x_.end()) terms.push_back({it->second, 1});
      }
      terms.push_back({x_.at({did, did, e.tail, e.head}), -*d->base.capacity});
      add_row("c8_" + sdid + "_" + node_tag(e.tail) + "_" + node_tag(e.head),
              "8", std::move(terms), RowSense::LE, 0);
    }
  }

  // At most one driver carries a rider over any edge.
  for (const EnrichedParticipant& p : parts) {
    const std::string& pid = p.base.id;
    std::map<EdgeKey, std::vector<LinearTerm>> per_edge;
    for (const EnrichedParticipant* d : owners) {
      if (d->base.id == pid || sets.rd.count({pid, d->base.id}) == 0) continue;
      for (const EdgeKey& e : ae_pair(pid, d->base.id)) {
        per_edge[e].push_back({x_.at({pid, d->base.id, e.tail, e.head}), 1});
      }
    }
    for (auto& [e, terms] : per_edge) {
      add_row("c9_" + sanitize(pid) + "_" + node_tag(e.tail) + "_" +
                  node_tag(e.head),
              "9", std::move(terms), RowSense::LE, 1);
    }
  }

  // Carrying requires an active driver; roles are exclusive.
  for (const auto& [key, var] : x_) {
    const auto& [pid, did, i, jn] = key;
    add_row("c10_" + sanitize(pid) + "_" + sanitize(did) + "_" + node_tag(i) +
                "_" + node_tag(jn),
            "10", {{var, 1}, {delta_.at(did), -1}}, RowSense::LE, 0);
  }
  for (const EnrichedParticipant* d : owners) {
    add_row("c11_" + sanitize(d->base.id), "11",
            {{delta_.at(d->base.id), 1}, {mu_.at(d->base.id), 1}},
            RowSense::LE, 1);
  }

  // Pickup/dropoff detection from the rider's local flow imbalance.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    for (const EnrichedParticipant* p : partners(did)) {
      const std::string& pid = p->base.id;
      const std::string stem = sanitize(pid) + "_" + sanitize(did);
      const std::set<EdgeKey>& ae = ae_pair(pid, did);
      for (NodeId i : an_pair(pid, did)) {
        std::vector<LinearTerm> flow;
        for (const EdgeKey& e : ae) {
          if (e.tail == i) flow.push_back({x_.at({pid, did, e.tail, e.head}), 1});
          if (e.head == i)
            flow.push_back({x_.at({pid, did, e.tail, e.head}), -1});
        }
        int y = y_.at({pid, did, i});
        int z = z_.at({pid, did, i});
        {
          // boarding here means leaving here in this car
          std::vector<LinearTerm> t{{y, 1}};
          for (const LinearTerm& f : flow) if (f.coef > 0) t.push_back({f.var, -1});
          add_row("c12_" + stem + "_" + node_tag(i), "12", std::move(t),
                  RowSense::LE, 0);
        }
        {
          std::vector<LinearTerm> t = flow;
          t.push_back({y, -2});
          add_row("c13_lo_" + stem + "_" + node_tag(i), "13", std::move(t),
                  RowSense::GE, -1);
        }
        {
          std::vector<LinearTerm> t = flow;
          t.push_back({y, -1});
          add_row("c13_up_" + stem + "_" + node_tag(i), "13", std::move(t),
                  RowSense::LE, 0);
        }
        {
          std::vector<LinearTerm> t;
          for (const LinearTerm& f : flow) t.push_back({f.var, -f.coef});
          t.push_back({z, -2});
          add_row("c14_lo_" + stem + "_" + node_tag(i), "14", std::move(t),
                  RowSense::GE, -1);
        }
        {
          std::vector<LinearTerm> t;
          for (const LinearTerm& f : flow) t.push_back({f.var, -f.coef});
          t.push_back({z, -1});
          add_row("c14_up_" + stem + "_" + node_tag(i), "14", std::move(t),
                  RowSense::LE, 0);
        }
      }
      std::vector<LinearTerm> pairing;
      for (NodeId i : an_pair(pid, did)) {
        pairing.push_back({y_.at({pid, did, i}), 1});
        pairing.push_back({z_.at({pid, did, i}), -1});
      }
      add_row("c15_" + stem, "15", std::move(pairing), RowSense::EQ, 0);
    }
  }

  // Visit order along the driver's own route, then dropoff after pickup.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    const std::string sdid = sanitize(did);
    const std::int64_t big = static_cast<std::int64_t>(an_of(did).size());
    for (const EdgeKey& e : ae_pair(did, did)) {
      add_row("c16_" + sdid + "_" + node_tag(e.tail) + "_" + node_tag(e.head),
              "16",
              {{u_.at({did, e.head}), 1},
               {u_.at({did, e.tail}), -1},
               {x_.at({did, did, e.tail, e.head}), -big}},
              RowSense::GE, 1 - big,
              "successor counter on the left, big-M over nodes not edges");
    }
    for (const EnrichedParticipant* p : partners(did)) {
      const std::string& pid = p->base.id;
      const std::string stem = sanitize(pid) + "_" + sanitize(did);
      const std::set<NodeId>& an = an_pair(pid, did);
      for (NodeId i : an) {
        for (NodeId jn : an) {
          add_row("c17_" + stem + "_" + node_tag(i) + "_" + node_tag(jn), "17",
                  {{u_.at({did, jn}), 1},
                   {u_.at({did, i}), -1},
                   {z_.at({pid, did, jn}), -big},
                   {y_.at({pid, did, i}), -big}},
                  RowSense::GE, 1 - 2 * big);
        }
      }
    }
  }

  // Occupancy: seeded at the origin, stepped by pickups and dropoffs at
  // the head of every traversed edge.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    const std::string sdid = sanitize(did);
    const std::int64_t m1 =
        *d->base.capacity + static_cast<std::int64_t>(parts.size());
    auto boarding_terms = [&](NodeId at, std::int64_t y_sign) {
      std::vector<LinearTerm> t;
      for (const EnrichedParticipant* p : partners(did)) {
        auto yit = y_.find({p->base.id, did, at});
        if (yit != y_.end()) t.push_back({yit->second, y_sign});
        auto zit = z_.find({p->base.id, did, at});
        if (zit != z_.end()) t.push_back({zit->second, -y_sign});
      }
      return t;
    };
    for (const EdgeKey& e : ae_pair(did, did)) {
      int x = x_.at({did, did, e.tail, e.head});
      {
        std::vector<LinearTerm> t = boarding_terms(e.head, -1);
        t.push_back({kap_.at({did, e.head}), 1});
        t.push_back({kap_.at({did, e.tail}), -1});
        t.push_back({x, m1});
        add_row("c18_" + sdid + "_" + node_tag(e.tail) + "_" +
                    node_tag(e.head),
                "18", std::move(t), RowSense::LE, m1);
      }
      {
        std::vector<LinearTerm> t = boarding_terms(e.head, -1);
        t.push_back({kap_.at({did, e.head}), 1});
        t.push_back({kap_.at({did, e.tail}), -1});
        t.push_back({x, -m1});
        add_row("c19_" + sdid + "_" + node_tag(e.tail) + "_" +
                    node_tag(e.head),
                "19", std::move(t), RowSense::GE, -m1);
      }
    }
    {
      std::vector<LinearTerm> t;
      for (const EnrichedParticipant* p : partners(did)) {
        auto yit = y_.find({p->base.id, did, d->base.origin});
        if (yit != y_.end()) t.push_back({yit->second, -1});
      }
      t.push_back({kap_.at({did, d->base.origin}), 1});
      if (cfg.count_driver) t.push_back({delta_.at(did), -1});
      add_row("c18_anchor_" + sdid, "18", std::move(t), RowSense::EQ, 0,
              "origin occupancy anchor; the driver occupies one seat");
    }
  }

  // HOV minimum occupancy on restricted edges the driver traverses.
  if (cfg.hov_enabled) {
    for (const EnrichedParticipant* d : owners) {
      const std::string& did = d->base.id;
      const std::int64_t m2 =
          std::max<std::int64_t>(*d->base.capacity + 1, cfg.min_occupancy);
      for (const EdgeKey& e : ae_pair(did, did)) {
        if (!net.edge(e.tail, e.head).hov) continue;
        add_row("c20_" + sanitize(did) + "_" + node_tag(e.tail) + "_" +
                    node_tag(e.head),
                "20",
                {{kap_.at({did, e.tail}), 1},
                 {x_.at({did, did, e.tail, e.head}), -m2}},
                RowSense::GE, cfg.min_occupancy - m2,
                "big-M covers the driver-counted occupancy range");
      }
    }
  }

  // Travel-time propagation along the driver's route.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    const Seconds window = d->base.latest_arrival - d->base.earliest_departure;
    for (const EdgeKey& e : ae_pair(did, did)) {
      Seconds t = net.edge(e.tail, e.head).travel_time;
      std::int64_t m = window + t;
      add_row("c21_" + sanitize(did) + "_" + node_tag(e.tail) + "_" +
                  node_tag(e.head),
              "21",
              {{taud_.at({did, e.tail}), 1},
               {taud_.at({did, e.head}), -1},
               {x_.at({did, did, e.tail, e.head}), m}},
              RowSense::LE, m - t);
    }
  }

  // Window activation: zero when idle, inside the window when active.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    const std::string sdid = sanitize(did);
    for (NodeId i : an_of(did)) {
      add_row("c22_lo_" + sdid + "_" + node_tag(i), "22",
              {{taud_.at({did, i}), 1},
               {delta_.at(did), -d->base.earliest_departure},
               {mu_.at(did), -d->base.earliest_departure}},
              RowSense::GE, 0);
      add_row("c22_up_" + sdid + "_" + node_tag(i), "22",
              {{taud_.at({did, i}), 1},
               {delta_.at(did), -d->base.latest_arrival},
               {mu_.at(did), -d->base.latest_arrival}},
              RowSense::LE, 0);
    }
  }
  for (const EnrichedParticipant& p : parts) {
    const std::string& pid = p.base.id;
    const std::string spid = sanitize(pid);
    for (NodeId i : an_of(pid)) {
      add_row("c23_lo_" + spid + "_" + node_tag(i), "23",
              {{taup_.at({pid, i}), 1},
               {mu_.at(pid), -p.base.earliest_departure}},
              RowSense::GE, 0);
      add_row("c23_up_" + spid + "_" + node_tag(i), "23",
              {{taup_.at({pid, i}), 1}, {mu_.at(pid), -p.base.latest_arrival}},
              RowSense::LE, 0);
    }
  }

  // Synchronization: a carried rider shares the driver's clock at the tail
  // of every ridden edge and advances by at least the edge time.
  for (const EnrichedParticipant* d : owners) {
    const std::string& did = d->base.id;
    for (const EnrichedParticipant* p : partners(did)) {
      const std::string& pid = p->base.id;
      const std::string stem = sanitize(pid) + "_" + sanitize(did);
      std::int64_t m_eq =
          std::max(p->base.latest_arrival, d->base.latest_arrival);
      Seconds window = p->base.latest_arrival - p->base.earliest_departure;
      for (const EdgeKey& e : ae_pair(pid, did)) {
        Seconds t = net.edge(e.tail, e.head).travel_time;
        int x = x_.at({pid, did, e.tail, e.head});
        const std::string suffix =
            stem + "_" + node_tag(e.tail) + "_" + node_tag(e.head);
        add_row("cSYNC_eqlo_" + suffix, "SYNC",
                {{taup_.at({pid, e.tail}), 1},
                 {taud_.at({did, e.tail}), -1},
                 {x, m_eq}},
                RowSense::LE, m_eq,
                "equality M spans both latest arrivals");
        add_row("cSYNC_equp_" + suffix, "SYNC",
                {{taud_.at({did, e.tail}), 1},
                 {taup_.at({pid, e.tail}), -1},
                 {x, m_eq}},
                RowSense::LE, m_eq,
                "equality M spans both latest arrivals");
        std::int64_t m_rp = window + t;
        add_row("cSYNC_prop_" + suffix, "SYNC",
                {{taup_.at({pid, e.tail}), 1},
                 {taup_.at({pid, e.head}), -1},
                 {x, m_rp}},
                RowSense::LE, m_rp - t);
      }
    }
  }
}

void Builder::build(const ModelConfig& config) {
  model.config = config;
  for (const EnrichedParticipant& p : parts) {
    if (!p.feasible) {
      throw ModelError("participant '" + p.base.id +
                       "' is infeasible; filter before building");
    }
    if (!by_id.emplace(p.base.id, &p).second) {
      throw ModelError("duplicate participant id '" + p.base.id + "'");
    }
    if (sets.an.count(p.base.id) == 0) {
      throw ModelError("participant '" + p.base.id +
                       "' missing from access sets");
    }
    if (p.base.is_car_owner()) owners.push_back(&p);
  }
  make_variables();
  make_rows();
}

} // namespace

std::size_t ModelInstance::binary_count() const {
  std::size_t n = 0;
  for (const VarInfo& v : vars) n += v.is_binary ? 1 : 0;
  return n;
}

Rational ModelInstance::objective_value(
    std::span<const std::int64_t> values) const {
  std::int64_t num = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    num += vars[i].objective * values[i];
  }
  return Rational(num, objective_den);
}

std::vector<std::int64_t> round_and_verify(
    const ModelInstance& model, const std::map<std::string, double>& values) {
  for (const auto& [name, value] : values) {
    if (model.var_by_name.count(name) == 0) {
      throw VerifyError("value for unknown variable '" + name + "'");
    }
    (void)value;
  }
  std::vector<std::int64_t> ints(model.vars.size(), 0);
  for (std::size_t id = 0; id < model.vars.size(); ++id) {
    const VarInfo& v = model.vars[id];
    auto it = values.find(v.name);
    double raw = it == values.end() ? 0.0 : it->second;
    double rounded = std::llround(raw);
    if (std::abs(raw - rounded) > 1e-6) {
      throw VerifyError("variable " + v.name + " is not integral: " +
                        std::to_string(raw));
    }
    std::int64_t value = static_cast<std::int64_t>(rounded);
    if (value < v.lo || value > v.hi) {
      throw VerifyError("variable " + v.name + " = " + std::to_string(value) +
                        " violates bounds [" + std::to_string(v.lo) + ", " +
                        std::to_string(v.hi) + "]");
    }
    ints[id] = value;
  }
  for (const ConstraintRow& row : model.rows) {
    std::int64_t lhs = 0;
    for (const LinearTerm& t : row.terms) lhs += t.coef * ints[t.var];
    bool ok = row.sense == RowSense::LE   ? lhs <= row.rhs
              : row.sense == RowSense::GE ? lhs >= row.rhs
                                          : lhs == row.rhs;
    if (!ok) {
      throw VerifyError("row " + row.name + " violated: lhs " +
                        std::to_string(lhs) + " vs rhs " +
                        std::to_string(row.rhs));
    }
  }
  return ints;
}

ModelInstance build_model(const RoadNetwork& net,
                          const std::vector<EnrichedParticipant>& parts,
                          const AccessSets& sets, const ModelConfig& config) {
  if (config.objective.weighted && config.objective.factor <= Rational(0)) {
    throw ModelError("objective weight factor must be positive");
  }
  Builder b{net, parts, sets, {}};
  b.build(config);
  return std::move(b.model);
}

} // namespace flexride
