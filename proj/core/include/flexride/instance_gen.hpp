#ifndef FLEXRIDE_INSTANCE_GEN_HPP
#define FLEXRIDE_INSTANCE_GEN_HPP

#include <string>
#include <vector>

#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/rng.hpp"
#include "flexride/trips.hpp"

namespace flexride {

struct GenOptions {
  int min_nodes = 4;
  int max_nodes = 8;
  int max_participants = 4;
  int max_owners = 2;
};

/// A randomly drawn but always well-formed scenario: a connected network
/// with a sprinkle of HOV edges, a handful of participants whose windows
/// are wide enough to matter, and a solver configuration drawn from the
/// supported modes.
struct TinyInstance {
  RoadNetwork net;
  std::vector<Participant> parts;
  ModelConfig config;

  std::string describe() const;
};

TinyInstance generate_instance(Rng& rng, const GenOptions& options = {});

} // namespace flexride

#endif
