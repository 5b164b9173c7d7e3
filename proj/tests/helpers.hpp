// Shared fixture builders for the test suites. Small networks and
// participant sets are assembled programmatically so each test reads as
// one self-contained scenario.
#ifndef FLEXRIDE_TESTS_HELPERS_HPP
#define FLEXRIDE_TESTS_HELPERS_HPP

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/preprocess.hpp"
#include "flexride/trips.hpp"

namespace flexride::testutil {

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("flexride_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(path_ / name, std::ios::binary);
    out << content;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path_ / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  std::filesystem::path path_;
};

inline NodeInfo node(NodeId id) {
  NodeInfo n;
  n.id = id;
  n.lat = 45.0 + 0.01 * static_cast<double>(id);
  n.lon = 7.0 + 0.01 * static_cast<double>(id);
  return n;
}

inline NetworkEdge edge(NodeId tail, NodeId head, Seconds t, bool hov = false) {
  NetworkEdge e;
  e.tail = tail;
  e.head = head;
  e.travel_time = t;
  e.hov = hov;
  return e;
}

/// Chain 1 -> 2 -> ... -> n with uniform edge times.
inline RoadNetwork line_network(int n, Seconds t = 10) {
  std::vector<NodeInfo> nodes;
  std::vector<NetworkEdge> edges;
  for (int i = 1; i <= n; ++i) nodes.push_back(node(i));
  for (int i = 1; i < n; ++i) edges.push_back(edge(i, i + 1, t));
  return RoadNetwork::build(std::move(nodes), std::move(edges));
}

inline Participant owner(std::string id, NodeId o, NodeId e, Seconds ed,
                         Seconds la, int capacity = 2) {
  Participant p;
  p.id = std::move(id);
  p.ownership = Ownership::CarOwner;
  p.capacity = capacity;
  p.deadline = 1800;
  p.submission = 0;
  p.origin = o;
  p.destination = e;
  p.earliest_departure = ed;
  p.latest_arrival = la;
  return p;
}

inline Participant rider(std::string id, NodeId o, NodeId e, Seconds ed,
                         Seconds la) {
  Participant p;
  p.id = std::move(id);
  p.ownership = Ownership::NonCarOwner;
  p.deadline = 1800;
  p.submission = 0;
  p.origin = o;
  p.destination = e;
  p.earliest_departure = ed;
  p.latest_arrival = la;
  return p;
}

/// Two participants sharing the whole 1 -> 2 -> 3 chain: an owner and a
/// rider both travelling 1 -> 3. Whether the match pays off hinges on
/// the objective weights alone.
struct PairFixture {
  RoadNetwork net = line_network(3);
  std::vector<EnrichedParticipant> parts;
  AccessSets sets;

  explicit PairFixture(int capacity = 1) {
    std::vector<Participant> raw;
    raw.push_back(owner("d1", 1, 3, 0, 100, capacity));
    raw.push_back(rider("r1", 1, 3, 0, 100));
    parts = enrich_all(net, raw);
    sets = build_access_sets(net, parts, {});
  }
};

/// A rider crossing two driver territories: drivers cover 1 -> 2 and
/// 2 -> 3, the rider wants 1 -> 3 and can only get there by changing
/// cars at node 2.
struct TransferFixture {
  RoadNetwork net = line_network(3);
  std::vector<EnrichedParticipant> parts;
  AccessSets sets;

  TransferFixture() {
    std::vector<Participant> raw;
    raw.push_back(owner("dA", 1, 2, 0, 100));
    raw.push_back(owner("dB", 2, 3, 0, 100));
    raw.push_back(rider("r1", 1, 3, 0, 100));
    parts = enrich_all(net, raw);
    sets = build_access_sets(net, parts, {});
  }
};

} // namespace flexride::testutil

#endif
