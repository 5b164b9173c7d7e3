#ifndef FLEXRIDE_NETWORK_HPP
#define FLEXRIDE_NETWORK_HPP

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "flexride/types.hpp"

namespace flexride {

struct NodeInfo {
  NodeId id = 0;
  double lat = 0.0;
  double lon = 0.0;
};

struct NetworkEdge {
  NodeId tail = 0;
  NodeId head = 0;
  Seconds travel_time = 0; // strictly positive
  bool hov = false;
};

/// One loopless path with its total travel time.
struct PathResult {
  std::vector<NodeId> nodes;
  Seconds total_time = 0;
};

/// Travel times from (or to) one anchor node, produced by a single
/// shortest-path tree. Unreachable nodes report nullopt.
class TravelTimeField {
 public:
  std::optional<Seconds> at(NodeId node) const;

 private:
  friend class RoadNetwork;
  const class RoadNetwork* net_ = nullptr;
  std::vector<Seconds> dist_; // -1 marks unreachable
};

/// Directed road graph with integer-second travel times and a subset of
/// HOV-restricted edges. Node ids are arbitrary 64-bit integers; lookups
/// go through a dense internal index. Immutable after construction, so
/// concurrent read-only queries are safe.
class RoadNetwork {
 public:
  /// Parses `node_id,lat,lon` and `tail,head,travel_time_s,hov` tables.
  /// `hov_nodes`, when present, lists node ids (one per line, # comments);
  /// edges with both endpoints listed become HOV edges. If the edge table
  /// also carries hov=1 flags, the flags win and a warning goes to
  /// `warnings` (nullptr suppresses it).
  static RoadNetwork load(std::istream& nodes_csv, std::istream& edges_csv,
                          std::istream* hov_nodes = nullptr,
                          std::ostream* warnings = nullptr,
                          const std::string& nodes_name = "nodes",
                          const std::string& edges_name = "edges");

  /// Programmatic construction with the same validation as load().
  static RoadNetwork build(std::vector<NodeInfo> nodes,
                           std::vector<NetworkEdge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t hov_edge_count() const;

  const std::vector<NodeInfo>& nodes() const { return nodes_; }
  const std::vector<NetworkEdge>& edges() const { return edges_; }

  bool has_node(NodeId id) const;
  const NodeInfo& node(NodeId id) const;
  bool has_edge(NodeId tail, NodeId head) const;
  const NetworkEdge& edge(NodeId tail, NodeId head) const;

  /// Heads (with times) of edges leaving `tail`, ascending by head id.
  std::vector<std::pair<NodeId, Seconds>> out_arcs(NodeId tail) const;

  /// Shortest travel time, nullopt when no path exists. T(i,i) = 0.
  std::optional<Seconds> shortest_travel_time(NodeId from, NodeId to) const;

  /// Full forward tree from `source` / reverse tree into `sink`.
  TravelTimeField times_from(NodeId source) const;
  TravelTimeField times_to(NodeId sink) const;

  /// First k shortest loopless paths from `from` to `to`, ordered by
  /// (total_time, node sequence). Ties always break toward the
  /// lexicographically smaller node sequence, so the output is a prefix
  /// of the fully sorted list of all simple paths. Fewer than k paths may
  /// exist. Requires from != to and k >= 1.
  std::vector<PathResult> k_shortest_paths(NodeId from, NodeId to, int k) const;

 private:
  friend class TravelTimeField;

  std::size_t index_of(NodeId id) const; // throws on unknown id

  // Dijkstra over the dense index; forward=false walks edges backwards.
  std::vector<Seconds> tree(std::size_t source, bool forward) const;

  // Lexicographically smallest shortest path in the subgraph that keeps
  // only `allowed` nodes and drops `banned` edges. Nullopt if disconnected.
  std::optional<PathResult> lex_min_path(
      std::size_t from, std::size_t to, const std::vector<char>& allowed,
      const std::set<std::pair<std::size_t, std::size_t>>& banned) const;

  std::vector<NodeInfo> nodes_;
  std::vector<NetworkEdge> edges_;           // sorted by (tail, head)
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::vector<std::vector<std::size_t>> out_; // edge ids, ascending head id
  std::vector<std::vector<std::size_t>> in_;  // edge ids, ascending tail id
};

} // namespace flexride

#endif
