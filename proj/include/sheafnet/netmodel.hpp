#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "sheafnet/complex.hpp"

namespace sheafnet {

using TimeStep = int;

/// Per-node planar position and coverage radius for the disk convenience
/// model.
struct DiskGeometry {
  std::map<NodeId, std::array<double, 2>> position;
  std::map<NodeId, double> radius;
};

/// Input network model: the node set, directed signal levels s_i(n_j, t)
/// (absent entry means the receiver is outside i's coverage), and the
/// global decode threshold. Timed entries override static entries at their
/// timestep; static entries apply at every time.
struct NetworkDescription {
  std::vector<NodeId> nodes;
  double threshold = 0.0;
  std::map<std::pair<NodeId, NodeId>, double> static_signal;
  std::map<std::tuple<NodeId, NodeId, TimeStep>, double> timed_signal;
  std::optional<DiskGeometry> geometry;

  std::optional<double> signal_level(NodeId i, NodeId j,
                                     std::optional<TimeStep> t) const;
  bool has_timed_signals() const { return !timed_signal.empty(); }
  void validate() const;
};

/// Vertices are all nodes; an edge joins n_i and n_j exactly when both
/// directed signal levels strictly exceed the threshold.
Graph link_graph(const NetworkDescription& net,
                 std::optional<TimeStep> t = std::nullopt);

/// Clique complex of the link graph.
SimplicialComplex link_complex(const NetworkDescription& net,
                               std::optional<TimeStep> t = std::nullopt);

/// Disk model: s_i(n_j) = threshold + 1 whenever dist(i, j) <= radius_i,
/// absent otherwise, constant over time.
NetworkDescription disk_signals(
    const std::map<NodeId, std::array<double, 2>>& positions,
    const std::map<NodeId, double>& radii, double threshold = 0.0);

/// Seeded random disk network with node count in [min_nodes, max_nodes].
NetworkDescription random_disk_network(std::uint64_t seed, int min_nodes = 2,
                                       int max_nodes = 8);

}  // namespace sheafnet
