#include "sheafnet/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sheafnet {

std::optional<double> NetworkDescription::signal_level(
    NodeId i, NodeId j, std::optional<TimeStep> t) const {
  if (t.has_value()) {
    auto it = timed_signal.find({i, j, *t});
    if (it != timed_signal.end()) return it->second;
  }
  auto it = static_signal.find({i, j});
  if (it != static_signal.end()) return it->second;
  return std::nullopt;
}

void NetworkDescription::validate() const {
  if (!std::isfinite(threshold)) throw InputError("threshold must be finite");
  std::vector<NodeId> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("duplicate node id");
  }
  auto known = [&](NodeId n) {
    return std::binary_search(sorted.begin(), sorted.end(), n);
  };
  for (const auto& [key, level] : static_signal) {
    if (!known(key.first) || !known(key.second)) {
      throw InputError("signal entry references an unknown node");
    }
    if (!std::isfinite(level)) throw InputError("signal level must be finite");
  }
  for (const auto& [key, level] : timed_signal) {
    if (!known(std::get<0>(key)) || !known(std::get<1>(key))) {
      throw InputError("signal entry references an unknown node");
    }
    if (!std::isfinite(level)) throw InputError("signal level must be finite");
  }
}

Graph link_graph(const NetworkDescription& net, std::optional<TimeStep> t) {
  net.validate();
  Graph g;
  for (NodeId n : net.nodes) g.add_vertex(n);
  for (std::size_t a = 0; a < net.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < net.nodes.size(); ++b) {
      const NodeId i = net.nodes[a], j = net.nodes[b];
      auto sij = net.signal_level(i, j, t);
      auto sji = net.signal_level(j, i, t);
      // Strictly above threshold in both directions, nothing weaker.
      if (sij && sji && *sij > net.threshold && *sji > net.threshold) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

SimplicialComplex link_complex(const NetworkDescription& net,
                               std::optional<TimeStep> t) {
  return SimplicialComplex::clique_complex(link_graph(net, t));
}

NetworkDescription disk_signals(
    const std::map<NodeId, std::array<double, 2>>& positions,
    const std::map<NodeId, double>& radii, double threshold) {
  NetworkDescription net;
  net.threshold = threshold;
  DiskGeometry geo;
  geo.position = positions;
  geo.radius = radii;
  for (const auto& [n, pos] : positions) {
    (void)pos;
    net.nodes.push_back(n);
    auto it = radii.find(n);
    if (it == radii.end()) throw InputError("missing radius for a node");
    if (!(it->second > 0)) throw InputError("radius must be positive");
  }
  for (const auto& [i, pi] : positions) {
    for (const auto& [j, pj] : positions) {
      if (i == j) continue;
      const double dx = pi[0] - pj[0], dy = pi[1] - pj[1];
      if (std::sqrt(dx * dx + dy * dy) <= radii.at(i)) {
        net.static_signal[{i, j}] = threshold + 1.0;
      }
    }
  }
  net.geometry = std::move(geo);
  return net;
}

NetworkDescription random_disk_network(std::uint64_t seed, int min_nodes,
                                       int max_nodes) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(min_nodes, max_nodes);
  std::uniform_real_distribution<double> coord(0.0, 4.0);
  std::uniform_real_distribution<double> rad(0.9, 2.4);
  const int k = count(rng);
  std::map<NodeId, std::array<double, 2>> positions;
  std::map<NodeId, double> radii;
  for (int n = 1; n <= k; ++n) {
    positions[n] = {coord(rng), coord(rng)};
    radii[n] = rad(rng);
  }
  return disk_signals(positions, radii, 0.0);
}

}  // namespace sheafnet
