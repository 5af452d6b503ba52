#include <doctest.h>

#include <memory>
#include <set>

#include "oracles.hpp"
#include "sheafnet/temporal.hpp"

using namespace sheafnet;
namespace oracle = sheafnet::testing;

TEST_CASE("static line network over two timesteps") {
  const TimeComplex tc =
      time_dependent_link_complex(oracle::path3_network(), {0, 1});
  const SimplicialComplex& X = tc.complex();
  CHECK(X.cells_of_dim(0).size() == 6);
  CHECK(X.cells_of_dim(1).size() == 7);  // four link edges, three temporal
  CHECK(X.num_cells() == 13);

  int temporal = 0;
  for (CellId c = 0; c < X.num_cells(); ++c) {
    if (tc.is_temporal_edge(c)) ++temporal;
  }
  CHECK(temporal == 3);

  // Both timeslices equal the static link complex after relabeling.
  const SimplicialComplex static_complex = link_complex(oracle::path3_network());
  for (TimeStep t : {0, 1}) {
    const SimplicialComplex slice = timeslice(tc, t);
    CHECK(slice.num_cells() == static_complex.num_cells());
    for (CellId c = 0; c < slice.num_cells(); ++c) {
      CHECK(static_complex.contains(slice.cell(c)));
      CHECK_FALSE(tc.is_temporal_edge(tc.slice_cell_to_global(t, c)));
    }
  }
  CHECK_THROWS_AS(timeslice(tc, 2), OutOfWindowError);
  CHECK_THROWS_AS(tc.vertex_id(1, 5), OutOfWindowError);
}

TEST_CASE("mixed-time cells are exactly the per-node temporal edges") {
  const TimeComplex tc =
      time_dependent_link_complex(oracle::timevary_network(), {0, 2});
  const SimplicialComplex& X = tc.complex();
  for (CellId c = 0; c < X.num_cells(); ++c) {
    std::set<TimeStep> times;
    std::set<NodeId> nodes;
    for (VertexId v : X.cell(c).vertices()) {
      const auto [node, t] = tc.vertex_label(v);
      times.insert(t);
      nodes.insert(node);
    }
    if (times.size() > 1) {
      CHECK(tc.is_temporal_edge(c));
      CHECK(X.cell_dim(c) == 1);
      CHECK(nodes.size() == 1);
      CHECK(times.size() == 2);
    } else {
      CHECK(*tc.slice_of(c) == *times.begin());
    }
  }
}

TEST_CASE("slices of a changing network differ and stay clique-closed") {
  const NetworkDescription net = oracle::timevary_network();
  const TimeComplex tc = time_dependent_link_complex(net, {0, 2});
  CHECK(tc.slice(0).contains(Cell({1, 2})));
  CHECK_FALSE(tc.slice(0).contains(Cell({2, 3})));
  CHECK(tc.slice(1).contains(Cell({1, 2})));
  CHECK(tc.slice(1).contains(Cell({2, 3})));
  CHECK_FALSE(tc.slice(2).contains(Cell({1, 2})));

  for (TimeStep t : {0, 1, 2}) {
    const SimplicialComplex slice = tc.slice(t);
    const Graph g = link_graph(net, t);
    std::set<std::vector<VertexId>> got;
    for (CellId c : facets(slice)) got.insert(slice.cell(c).vertices());
    CHECK(got == oracle::brute_force_maximal_cliques(g));
  }
}

TEST_CASE("window of length one has no temporal edges") {
  const TimeComplex tc =
      time_dependent_link_complex(oracle::path3_network(), {3, 3});
  for (CellId c = 0; c < tc.complex().num_cells(); ++c) {
    CHECK_FALSE(tc.is_temporal_edge(c));
  }
  CHECK(tc.complex().num_cells() == 5);
  CHECK_THROWS_AS(
      time_dependent_link_complex(oracle::path3_network(), {1, 0}),
      InputError);
}

TEST_CASE("grouping sheaf shapes and counts") {
  CHECK(grouping_section_count(grouping_sheaf(1, 2, 3)) == 8);
  CHECK(grouping_section_count(grouping_sheaf(3, 2, 2)) == 16);
  CHECK(grouping_section_count(grouping_sheaf(4, 3, 1)) == 81);  // |A|^n at m=1
  CHECK_THROWS_AS(grouping_sheaf(0, 2, 2), InputError);
}

TEST_CASE("grouping sections are sliding windows") {
  const GroupingSheaf gs = grouping_sheaf(3, 4, 2);
  // Sequence (u0,u1,u2,u3) = (c,b,a,z), encoded 0..3, reproduces the
  // two-vertex section v0 = (a,b,c), v1 = (z,a,b) sharing window (a,b).
  const int c = 0, b = 1, a = 2, z = 3;
  const std::vector<int> seq = {c, b, a, z};
  CHECK(grouping_vertex_value(gs, seq, 0) == std::vector<int>{a, b, c});
  CHECK(grouping_vertex_value(gs, seq, 1) == std::vector<int>{z, a, b});

  const auto sections = enumerate_grouping_sections(gs);
  CHECK(sections.size() == 4 * 4 * 4 * 4);
  // Consecutive vertex tuples always agree on the shared window.
  for (const auto& s : sections) {
    const auto v0 = grouping_vertex_value(gs, s, 0);
    const auto v1 = grouping_vertex_value(gs, s, 1);
    CHECK(std::vector<int>(v0.begin(), v0.end() - 1) ==
          std::vector<int>(v1.begin() + 1, v1.end()));
  }
}

TEST_CASE("grouping counts match the brute-force enumerator") {
  for (int alphabet = 1; alphabet <= 3; ++alphabet) {
    for (int depth = 1; depth <= 3; ++depth) {
      for (int m = 1; m <= 3; ++m) {
        CHECK(grouping_section_count(grouping_sheaf(depth, alphabet, m)) ==
              mpz_class(static_cast<long>(
                  oracle::grouping_count_brute(depth, alphabet, m))));
      }
    }
  }
}

TEST_CASE("vector grouping sheaf has the sliding-window dimension") {
  for (int depth : {1, 2, 3}) {
    for (int m : {1, 2, 4}) {
      for (int dim : {1, 2}) {
        const VectorSheaf sheaf = grouping_vector_sheaf(depth, dim, m);
        const auto h = cohomology_dims(sheaf);
        CHECK(h[0] == dim * (m + depth - 1));
      }
    }
  }
}
