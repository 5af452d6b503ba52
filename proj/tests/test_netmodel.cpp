#include <doctest.h>

#include <limits>

#include "oracles.hpp"
#include "sheafnet/netmodel.hpp"

using namespace sheafnet;
namespace oracle = sheafnet::testing;

TEST_CASE("link graph needs strict mutual signal above threshold") {
  const NetworkDescription net = oracle::path3_network();
  const Graph g = link_graph(net);
  CHECK(g.vertices == std::vector<VertexId>{1, 2, 3});
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 3));
  CHECK_FALSE(g.has_edge(1, 3));

  NetworkDescription weak = net;
  for (auto& [key, level] : weak.static_signal) level = 0.5;  // equal, not above
  CHECK(link_graph(weak).edges.empty());

  NetworkDescription oneway = net;
  oneway.static_signal.erase({2, 1});
  CHECK_FALSE(link_graph(oneway).has_edge(1, 2));
  CHECK(link_graph(oneway).has_edge(2, 3));
}

TEST_CASE("link complex of the line and triangle networks") {
  const SimplicialComplex X = link_complex(oracle::path3_network());
  CHECK(X.num_cells() == 5);
  CHECK(X.dim() == 1);

  const SimplicialComplex T = link_complex(oracle::triangle_network());
  CHECK(T.contains(Cell({1, 2, 3})));
}

TEST_CASE("timed signals give one complex per timeslice") {
  const NetworkDescription net = oracle::timevary_network();
  const SimplicialComplex at0 = link_complex(net, 0);
  const SimplicialComplex at1 = link_complex(net, 1);
  const SimplicialComplex at2 = link_complex(net, 2);
  CHECK(at0.contains(Cell({1, 2})));
  CHECK_FALSE(at0.contains(Cell({2, 3})));
  CHECK(at1.contains(Cell({1, 2})));
  CHECK(at1.contains(Cell({2, 3})));
  CHECK_FALSE(at2.contains(Cell({1, 2})));
  CHECK(at2.contains(Cell({2, 3})));
}

TEST_CASE("disk model") {
  std::map<NodeId, std::array<double, 2>> pos = {
      {1, {0.0, 0.0}}, {2, {1.0, 0.0}}, {3, {2.0, 0.0}}};
  std::map<NodeId, double> r1 = {{1, 1.0}, {2, 1.0}, {3, 1.0}};
  const Graph path = link_graph(disk_signals(pos, r1));
  CHECK(path.has_edge(1, 2));
  CHECK(path.has_edge(2, 3));
  CHECK_FALSE(path.has_edge(1, 3));

  std::map<NodeId, std::array<double, 2>> same = {
      {1, {0.0, 0.0}}, {2, {0.0, 0.0}}, {3, {0.0, 0.0}}};
  const Graph complete = link_graph(disk_signals(same, r1));
  CHECK(complete.edges.size() == 3);

  std::map<NodeId, double> tiny = {{1, 0.5}, {2, 0.5}, {3, 0.5}};
  CHECK(link_graph(disk_signals(pos, tiny)).edges.empty());

  std::map<NodeId, double> zero = {{1, 0.0}, {2, 1.0}, {3, 1.0}};
  CHECK_THROWS_AS(disk_signals(pos, zero), InputError);
}

TEST_CASE("asymmetric radii break links one way") {
  std::map<NodeId, std::array<double, 2>> pos = {{1, {0.0, 0.0}},
                                                 {2, {1.0, 0.0}}};
  std::map<NodeId, double> radii = {{1, 2.0}, {2, 0.5}};
  const NetworkDescription net = disk_signals(pos, radii);
  CHECK(net.signal_level(1, 2, std::nullopt).has_value());
  CHECK_FALSE(net.signal_level(2, 1, std::nullopt).has_value());
  CHECK(link_graph(net).edges.empty());
}

TEST_CASE("facets of a link complex are maximal pairwise-communicating sets") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const NetworkDescription net = random_disk_network(seed, 2, 7);
    const Graph g = link_graph(net);
    const SimplicialComplex X = link_complex(net);
    std::set<std::vector<NodeId>> got;
    for (CellId c : facets(X)) got.insert(X.cell(c).vertices());
    CHECK(got == oracle::brute_force_maximal_cliques(g));
  }
}

TEST_CASE("network validation") {
  NetworkDescription net = oracle::path3_network();
  net.threshold = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(net.validate(), InputError);

  NetworkDescription dup = oracle::path3_network();
  dup.nodes.push_back(2);
  CHECK_THROWS_AS(dup.validate(), InputError);

  NetworkDescription stray = oracle::path3_network();
  stray.static_signal[{1, 9}] = 1.0;
  CHECK_THROWS_AS(stray.validate(), InputError);
}
