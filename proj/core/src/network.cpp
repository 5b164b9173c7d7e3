#include "flexride/network.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_set>

#include "flexride/csv.hpp"
#include "flexride/errors.hpp"

namespace flexride {

namespace {

constexpr Seconds kUnreachable = -1;

} // namespace

std::optional<Seconds> TravelTimeField::at(NodeId node) const {
  std::size_t idx = net_->index_of(node);
  Seconds d = dist_[idx];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

RoadNetwork RoadNetwork::build(std::vector<NodeInfo> nodes,
                               std::vector<NetworkEdge> edges) {
  RoadNetwork net;
  net.nodes_ = std::move(nodes);
  std::sort(net.nodes_.begin(), net.nodes_.end(),
            [](const NodeInfo& a, const NodeInfo& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < net.nodes_.size(); ++i) {
    if (!net.node_index_.emplace(net.nodes_[i].id, i).second) {
      throw ParseError("duplicate node id " + std::to_string(net.nodes_[i].id));
    }
  }

  std::sort(edges.begin(), edges.end(),
            [](const NetworkEdge& a, const NetworkEdge& b) {
              return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
            });
  net.out_.resize(net.nodes_.size());
  net.in_.resize(net.nodes_.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const NetworkEdge& edge = edges[e];
    if (edge.tail == edge.head) {
      throw ParseError("edge " + std::to_string(edge.tail) + "->" +
                       std::to_string(edge.head) + " is a self loop");
    }
    if (edge.travel_time <= 0) {
      throw ParseError("edge " + std::to_string(edge.tail) + "->" +
                       std::to_string(edge.head) +
                       " has non-positive travel time");
    }
    auto tail_it = net.node_index_.find(edge.tail);
    if (tail_it == net.node_index_.end()) {
      throw ParseError("edge references unknown node " +
                       std::to_string(edge.tail));
    }
    auto head_it = net.node_index_.find(edge.head);
    if (head_it == net.node_index_.end()) {
      throw ParseError("edge references unknown node " +
                       std::to_string(edge.head));
    }
    if (e > 0 && edges[e - 1].tail == edge.tail &&
        edges[e - 1].head == edge.head) {
      throw ParseError("duplicate edge " + std::to_string(edge.tail) + "->" +
                       std::to_string(edge.head));
    }
    net.out_[tail_it->second].push_back(e);
    net.in_[head_it->second].push_back(e);
  }
  net.edges_ = std::move(edges);

  // out_ lists are already ascending by head because edges_ is sorted by
  // (tail, head); in_ lists need their own ordering by tail.
  for (auto& list : net.in_) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return net.edges_[a].tail < net.edges_[b].tail;
    });
  }
  return net;
}

RoadNetwork RoadNetwork::load(std::istream& nodes_csv, std::istream& edges_csv,
                              std::istream* hov_nodes, std::ostream* warnings,
                              const std::string& nodes_name,
                              const std::string& edges_name) {
  std::vector<NodeInfo> nodes;
  {
    CsvReader reader(nodes_csv, "node_id,lat,lon", nodes_name);
    std::vector<std::string> f;
    std::size_t line = 0;
    while (reader.next(f, line)) {
      if (f.size() != 3) {
        throw ParseError(nodes_name + ":" + std::to_string(line) +
                         ": expected 3 columns, got " +
                         std::to_string(f.size()));
      }
      NodeInfo n;
      n.id = parse_int_field(f[0], nodes_name, line, "node_id");
      n.lat = parse_double_field(f[1], nodes_name, line, "lat");
      n.lon = parse_double_field(f[2], nodes_name, line, "lon");
      nodes.push_back(n);
    }
  }

  std::vector<NetworkEdge> edges;
  bool any_flag = false;
  {
    CsvReader reader(edges_csv, "tail,head,travel_time_s,hov", edges_name);
    std::vector<std::string> f;
    std::size_t line = 0;
    while (reader.next(f, line)) {
      if (f.size() != 4) {
        throw ParseError(edges_name + ":" + std::to_string(line) +
                         ": expected 4 columns, got " +
                         std::to_string(f.size()));
      }
      NetworkEdge e;
      e.tail = parse_int_field(f[0], edges_name, line, "tail");
      e.head = parse_int_field(f[1], edges_name, line, "head");
      e.travel_time = parse_int_field(f[2], edges_name, line, "travel_time_s");
      std::int64_t hov = parse_int_field(f[3], edges_name, line, "hov");
      if (hov != 0 && hov != 1) {
        throw ParseError(edges_name + ":" + std::to_string(line) +
                         ": hov flag must be 0 or 1");
      }
      e.hov = hov == 1;
      any_flag = any_flag || e.hov;
      edges.push_back(e);
    }
  }

  if (hov_nodes != nullptr) {
    std::unordered_set<NodeId> listed;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(*hov_nodes, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      listed.insert(parse_int_field(line.substr(start), "hov_nodes", line_no,
                                    "node_id"));
    }
    if (any_flag) {
      if (warnings != nullptr) {
        *warnings << "warning: both per-edge hov flags and an hov node list "
                     "were given; the per-edge flags win\n";
      }
    } else {
      for (NetworkEdge& e : edges) {
        e.hov = listed.count(e.tail) > 0 && listed.count(e.head) > 0;
      }
    }
  }

  return build(std::move(nodes), std::move(edges));
}

std::size_t RoadNetwork::hov_edge_count() const {
  std::size_t n = 0;
  for (const NetworkEdge& e : edges_) n += e.hov ? 1 : 0;
  return n;
}

bool RoadNetwork::has_node(NodeId id) const {
  return node_index_.count(id) > 0;
}

std::size_t RoadNetwork::index_of(NodeId id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) {
    throw ParseError("unknown node id " + std::to_string(id));
  }
  return it->second;
}

const NodeInfo& RoadNetwork::node(NodeId id) const {
  return nodes_[index_of(id)];
}

bool RoadNetwork::has_edge(NodeId tail, NodeId head) const {
  auto it = node_index_.find(tail);
  if (it == node_index_.end() || node_index_.count(head) == 0) return false;
  for (std::size_t e : out_[it->second]) {
    if (edges_[e].head == head) return true;
  }
  return false;
}

const NetworkEdge& RoadNetwork::edge(NodeId tail, NodeId head) const {
  for (std::size_t e : out_[index_of(tail)]) {
    if (edges_[e].head == head) return edges_[e];
  }
  throw ParseError("no edge " + std::to_string(tail) + "->" +
                   std::to_string(head));
}

std::vector<std::pair<NodeId, Seconds>> RoadNetwork::out_arcs(
    NodeId tail) const {
  std::vector<std::pair<NodeId, Seconds>> result;
  for (std::size_t e : out_[index_of(tail)]) {
    result.emplace_back(edges_[e].head, edges_[e].travel_time);
  }
  return result;
}

std::vector<Seconds> RoadNetwork::tree(std::size_t source, bool forward) const {
  std::vector<Seconds> dist(nodes_.size(), kUnreachable);
  using Item = std::pair<Seconds, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[source] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d != dist[u]) continue;
    const auto& arcs = forward ? out_[u] : in_[u];
    for (std::size_t e : arcs) {
      const NetworkEdge& edge = edges_[e];
      std::size_t v = forward ? node_index_.at(edge.head)
                              : node_index_.at(edge.tail);
      Seconds nd = d + edge.travel_time;
      if (dist[v] == kUnreachable || nd < dist[v]) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }
  return dist;
}

std::optional<Seconds> RoadNetwork::shortest_travel_time(NodeId from,
                                                         NodeId to) const {
  std::size_t s = index_of(from), t = index_of(to);
  if (s == t) return Seconds{0};
  std::vector<Seconds> dist = tree(s, true);
  if (dist[t] == kUnreachable) return std::nullopt;
  return dist[t];
}

TravelTimeField RoadNetwork::times_from(NodeId source) const {
  TravelTimeField f;
  f.net_ = this;
  f.dist_ = tree(index_of(source), true);
  return f;
}

TravelTimeField RoadNetwork::times_to(NodeId sink) const {
  TravelTimeField f;
  f.net_ = this;
  f.dist_ = tree(index_of(sink), false);
  return f;
}

std::optional<PathResult> RoadNetwork::lex_min_path(
    std::size_t from, std::size_t to, const std::vector<char>& allowed,
    const std::set<std::pair<std::size_t, std::size_t>>& banned) const {
  // Reverse Dijkstra over the filtered graph gives remaining distance to
  // `to`; the greedy forward walk below then always has a way to finish.
  std::vector<Seconds> rest(nodes_.size(), kUnreachable);
  using Item = std::pair<Seconds, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  rest[to] = 0;
  queue.emplace(0, to);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != rest[v]) continue;
    for (std::size_t e : in_[v]) {
      std::size_t u = node_index_.at(edges_[e].tail);
      if (!allowed[u] || banned.count({u, v}) > 0) continue;
      Seconds nd = d + edges_[e].travel_time;
      if (rest[u] == kUnreachable || nd < rest[u]) {
        rest[u] = nd;
        queue.emplace(nd, u);
      }
    }
  }
  if (rest[from] == kUnreachable) return std::nullopt;

  // Positive edge times make every shortest path simple, and picking the
  // smallest head id that still lies on some shortest path yields the
  // lexicographically smallest node sequence.
  PathResult path;
  path.total_time = rest[from];
  std::size_t cur = from;
  path.nodes.push_back(nodes_[cur].id);
  while (cur != to) {
    bool stepped = false;
    for (std::size_t e : out_[cur]) { // ascending head id
      std::size_t v = node_index_.at(edges_[e].head);
      if (!allowed[v] || banned.count({cur, v}) > 0) continue;
      if (rest[v] != kUnreachable &&
          edges_[e].travel_time + rest[v] == rest[cur]) {
        path.nodes.push_back(nodes_[v].id);
        cur = v;
        stepped = true;
        break;
      }
    }
    if (!stepped) throw ModelError("shortest path walk lost its target");
  }
  return path;
}

std::vector<PathResult> RoadNetwork::k_shortest_paths(NodeId from, NodeId to,
                                                      int k) const {
  if (k < 1) throw std::invalid_argument("k_shortest_paths: k must be >= 1");
  if (from == to)
    throw std::invalid_argument("k_shortest_paths: endpoints must differ");
  std::size_t s = index_of(from), t = index_of(to);

  auto order = [](const PathResult& a, const PathResult& b) {
    if (a.total_time != b.total_time) return a.total_time < b.total_time;
    return a.nodes < b.nodes;
  };

  std::vector<char> all(nodes_.size(), 1);
  std::set<std::pair<std::size_t, std::size_t>> no_bans;
  std::optional<PathResult> first = lex_min_path(s, t, all, no_bans);
  if (!first) return {};

  std::set<PathResult, decltype(order)> candidates(order);
  candidates.insert(*first);
  std::vector<PathResult> accepted;

  while (static_cast<int>(accepted.size()) < k && !candidates.empty()) {
    PathResult p = *candidates.begin();
    candidates.erase(candidates.begin());
    accepted.push_back(p);

    // Spur from every prefix of the newly accepted path. Banning the next
    // edge of each accepted path that shares the prefix keeps previously
    // produced paths out; removing prefix nodes keeps spurs loopless.
    for (std::size_t spur = 0; spur + 1 < p.nodes.size(); ++spur) {
      std::vector<char> allowed(nodes_.size(), 1);
      std::set<std::pair<std::size_t, std::size_t>> banned;
      Seconds prefix_time = 0;
      for (std::size_t i = 0; i < spur; ++i) {
        allowed[index_of(p.nodes[i])] = 0;
        prefix_time += edge(p.nodes[i], p.nodes[i + 1]).travel_time;
      }
      for (const PathResult& q : accepted) {
        if (q.nodes.size() <= spur + 1) continue;
        bool same_prefix = true;
        for (std::size_t i = 0; i <= spur; ++i) {
          if (q.nodes[i] != p.nodes[i]) { same_prefix = false; break; }
        }
        if (same_prefix) {
          banned.insert({index_of(q.nodes[spur]), index_of(q.nodes[spur + 1])});
        }
      }
      std::optional<PathResult> tail =
          lex_min_path(index_of(p.nodes[spur]), t, allowed, banned);
      if (!tail) continue;
      PathResult candidate;
      candidate.nodes.assign(p.nodes.begin(), p.nodes.begin() + spur);
      candidate.nodes.insert(candidate.nodes.end(), tail->nodes.begin(),
                             tail->nodes.end());
      candidate.total_time = prefix_time + tail->total_time;
      candidates.insert(std::move(candidate));
    }
  }
  return accepted;
}

} // namespace flexride
