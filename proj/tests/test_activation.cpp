#include <doctest.h>

#include <memory>
#include <set>

#include "oracles.hpp"
#include "sheafnet/activation.hpp"
#include "sheafnet/netmodel.hpp"

using namespace sheafnet;
namespace oracle = sheafnet::testing;

namespace {

ComplexPtr path3_complex() {
  return std::make_shared<SimplicialComplex>(
      link_complex(oracle::path3_network()));
}

std::set<Cell> cell_set(const SimplicialComplex& X, const CellSet& ids) {
  std::set<Cell> out;
  for (CellId id : ids) out.insert(X.cell(id));
  return out;
}

ActSection section_for(const SetSheaf& sheaf,
                       const std::vector<NodeId>& transmitters) {
  auto result = expand_transmitter_set(sheaf, transmitters);
  REQUIRE(result.section.has_value());
  return *result.section;
}

}  // namespace

TEST_CASE("activation stalks collect nodes sharing a coface") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);
  CHECK(sheaf.stalk(X->id_of(Cell({2}))) == std::vector<NodeId>{1, 2, 3});
  CHECK(sheaf.stalk(X->id_of(Cell({1, 2}))) == std::vector<NodeId>{1, 2});
  CHECK(sheaf.stalk(X->id_of(Cell({1}))) == std::vector<NodeId>{1, 2});

  auto lone = std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_maximal_cells({Cell({1})}));
  const SetSheaf single = activation_sheaf(lone);
  CHECK(single.stalk(0) == std::vector<NodeId>{1});
}

TEST_CASE("restriction keeps surviving nodes and bottoms out the rest") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);
  const CellId v2 = X->id_of(Cell({2}));
  const CellId e12 = X->id_of(Cell({1, 2}));
  CHECK(sheaf.restrict_value(v2, e12, ActValue(1)) == ActValue(1));
  CHECK(sheaf.restrict_value(v2, e12, ActValue(3)) == ActValue());
  CHECK(sheaf.restrict_value(v2, e12, ActValue()) == ActValue());
}

TEST_CASE("restrictions compose functorially") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    const Graph g = oracle::random_graph(seed);
    auto X = std::make_shared<SimplicialComplex>(
        SimplicialComplex::clique_complex(g));
    if (X->empty()) continue;
    const SetSheaf sheaf = activation_sheaf(X);
    for (const auto& [c, d] : X->all_incidences()) {
      for (CellId e = 0; e < X->num_cells(); ++e) {
        if (X->cell_dim(e) <= X->cell_dim(d)) continue;
        if (!X->cell(d).is_face_of(X->cell(e))) continue;
        for (NodeId n : sheaf.stalk(c)) {
          const ActValue direct = sheaf.restrict_value(c, e, ActValue(n));
          const ActValue composed = sheaf.restrict_value(
              d, e, sheaf.restrict_value(c, d, ActValue(n)));
          CHECK(direct == composed);
        }
      }
    }
  }
}

TEST_CASE("the line network's sections by hand") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);

  ActSection node1(X->num_cells());
  node1.set(X->id_of(Cell({1})), ActValue(1));
  node1.set(X->id_of(Cell({2})), ActValue(1));
  node1.set(X->id_of(Cell({3})), ActValue());
  node1.set(X->id_of(Cell({1, 2})), ActValue(1));
  node1.set(X->id_of(Cell({2, 3})), ActValue());
  CHECK(is_global_section(sheaf, node1));

  ActSection idle(X->num_cells());
  for (CellId c = 0; c < X->num_cells(); ++c) idle.set(c, ActValue());
  CHECK(is_global_section(sheaf, idle));

  // Nodes 1 and 3 both transmitting: no value at the middle vertex works.
  for (const ActValue& mid :
       {ActValue(), ActValue(1), ActValue(2), ActValue(3)}) {
    ActSection bad(X->num_cells());
    bad.set(X->id_of(Cell({1})), ActValue(1));
    bad.set(X->id_of(Cell({3})), ActValue(3));
    bad.set(X->id_of(Cell({2})), mid);
    bad.set(X->id_of(Cell({1, 2})), ActValue(1));
    bad.set(X->id_of(Cell({2, 3})), ActValue(3));
    CHECK_FALSE(is_global_section(sheaf, bad));
  }

  ActSection outside(X->num_cells());
  for (CellId c = 0; c < X->num_cells(); ++c) outside.set(c, ActValue());
  outside.set(X->id_of(Cell({1, 2})), ActValue(3));
  CHECK_THROWS_AS(is_global_section(sheaf, outside), InvalidValueError);

  ActSection partial(X->num_cells());
  partial.set(0, ActValue());
  CHECK_THROWS_AS(is_global_section(sheaf, partial), InputError);
}

TEST_CASE("enumeration returns transmitter sets in lexicographic order") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);
  const std::vector<ActSection> sections = enumerate_global_sections(sheaf);
  REQUIRE(sections.size() == 4);
  CHECK(sections[0].transmitters(*X) == std::vector<NodeId>{});
  CHECK(sections[1].transmitters(*X) == std::vector<NodeId>{1});
  CHECK(sections[2].transmitters(*X) == std::vector<NodeId>{2});
  CHECK(sections[3].transmitters(*X) == std::vector<NodeId>{3});

  auto lone = std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_maximal_cells({Cell({1})}));
  CHECK(enumerate_global_sections(activation_sheaf(lone)).size() == 2);

  auto pair = std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_maximal_cells({Cell({1}), Cell({2})}));
  CHECK(enumerate_global_sections(activation_sheaf(pair)).size() == 4);
}

TEST_CASE("enumeration agrees with the exhaustive oracle and the serial lane") {
  for (std::uint64_t seed = 40; seed < 70; ++seed) {
    const NetworkDescription net = random_disk_network(seed, 2, 5);
    auto X = std::make_shared<SimplicialComplex>(link_complex(net));
    const SetSheaf sheaf = activation_sheaf(X);

    const std::vector<ActSection> fast = enumerate_global_sections(sheaf);
    const std::vector<ActSection> serial =
        enumerate_global_sections_serial(sheaf);
    CHECK(fast == serial);

    const std::vector<ActSection> brute =
        oracle::exhaustive_global_sections(sheaf);
    CHECK(oracle::transmitter_sets(fast, *X) ==
          oracle::transmitter_sets(brute, *X));
    CHECK(fast.size() == brute.size());
  }
}

TEST_CASE("raw assignment search agrees on the line complex") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);
  const std::vector<ActSection> raw = oracle::raw_global_sections(sheaf);
  CHECK(raw.size() == 4);
  CHECK(oracle::transmitter_sets(raw, *X) ==
        std::set<std::vector<NodeId>>{{}, {1}, {2}, {3}});
}

TEST_CASE("active regions and regions of influence on the line") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);

  const ActSection s1 = section_for(sheaf, {1});
  CHECK(cell_set(*X, active_region(sheaf, s1, 1)) ==
        std::set<Cell>{Cell({1}), Cell({2}), Cell({1, 2})});
  CHECK(active_region(sheaf, s1, 3).empty());
  CHECK(cell_set(*X, region_of_influence_node(sheaf, s1, 1)) ==
        std::set<Cell>{Cell({1}), Cell({2}), Cell({1, 2}), Cell({2, 3})});
  CHECK_THROWS_AS(region_of_influence_node(sheaf, s1, 3),
                  EmptyActiveRegionError);

  const ActSection s2 = section_for(sheaf, {2});
  CHECK(active_region(sheaf, s2, 2).size() == 5);
  CHECK(region_of_influence_node(sheaf, s2, 2).size() == 5);

  CHECK(cell_set(*X, support(sheaf, s1)) ==
        std::set<Cell>{Cell({1}), Cell({2}), Cell({1, 2})});
  const ActSection idle = section_for(sheaf, {});
  CHECK(support(sheaf, idle).empty());

  ActSection not_section(X->num_cells());
  for (CellId c = 0; c < X->num_cells(); ++c) not_section.set(c, ActValue());
  not_section.set(X->id_of(Cell({1})), ActValue(1));
  CHECK_THROWS_AS(active_region(sheaf, not_section, 1), NotASectionError);
}

TEST_CASE("facet regions of influence") {
  ComplexPtr X = path3_complex();
  CHECK(cell_set(*X, region_of_influence_facet(*X, Cell({1, 2}))) ==
        std::set<Cell>{Cell({1}), Cell({2}), Cell({1, 2}), Cell({2, 3})});
  CHECK(cell_set(*X, region_of_influence_facet(*X, Cell({2, 3}))) ==
        std::set<Cell>{Cell({2}), Cell({3}), Cell({1, 2}), Cell({2, 3})});
  CHECK_THROWS_AS(region_of_influence_facet(*X, Cell({2})), NotAFacetError);

  auto lone = std::make_shared<SimplicialComplex>(
      SimplicialComplex::from_maximal_cells({Cell({7})}));
  CHECK(region_of_influence_facet(*lone, Cell({7})) == CellSet{0});
}

TEST_CASE("expanding an interfering transmitter pair names the blank cell") {
  ComplexPtr X = path3_complex();
  const SetSheaf sheaf = activation_sheaf(X);
  const ExpansionResult r = expand_transmitter_set(sheaf, {1, 3});
  CHECK_FALSE(r.section.has_value());
  REQUIRE(r.conflict_cell.has_value());
  CHECK(X->cell(*r.conflict_cell) == Cell({2}));
}

TEST_CASE("active regions are closed, connected, invariant, and star-disjoint") {
  for (std::uint64_t seed = 500; seed < 515; ++seed) {
    const NetworkDescription net = random_disk_network(seed, 2, 6);
    auto X = std::make_shared<SimplicialComplex>(link_complex(net));
    const SetSheaf sheaf = activation_sheaf(X);
    const std::vector<ActSection> sections = enumerate_global_sections(sheaf);
    std::map<NodeId, CellSet> seen_region;
    for (const ActSection& s : sections) {
      const std::vector<NodeId> tx = s.transmitters(*X);
      CellSet all_support;
      for (NodeId n : tx) {
        const CellSet region = active_region(sheaf, s, n);
        CHECK_FALSE(region.empty());
        CHECK(is_closed(*X, region));
        CHECK(oracle::region_connected(*X, region));
        CHECK(std::binary_search(region.begin(), region.end(),
                                 X->id_of(Cell({n}))));
        CHECK(region == closure(*X, star(*X, {X->id_of(Cell({n}))})));

        // Independence of the chosen section.
        auto it = seen_region.find(n);
        if (it == seen_region.end()) {
          seen_region[n] = region;
        } else {
          CHECK(it->second == region);
        }

        // The star must avoid every other active region.
        const CellSet st = star(*X, region);
        for (NodeId m : tx) {
          if (m == n) continue;
          const CellSet other = active_region(sheaf, s, m);
          for (CellId c : st) {
            CHECK_FALSE(std::binary_search(other.begin(), other.end(), c));
          }
        }
        for (CellId c : region) all_support.push_back(c);
      }
      std::sort(all_support.begin(), all_support.end());
      const std::size_t before = all_support.size();
      all_support.erase(std::unique(all_support.begin(), all_support.end()),
                        all_support.end());
      CHECK(before == all_support.size());  // regions are pairwise disjoint
      CHECK(all_support == support(sheaf, s));
    }
  }
}

TEST_CASE("node regions of influence are unions of facet regions") {
  for (std::uint64_t seed = 700; seed < 715; ++seed) {
    const NetworkDescription net = random_disk_network(seed, 2, 6);
    auto X = std::make_shared<SimplicialComplex>(link_complex(net));
    const SetSheaf sheaf = activation_sheaf(X);
    for (NodeId n : X->vertex_set()) {
      const ExpansionResult r = expand_transmitter_set(sheaf, {n});
      REQUIRE(r.section.has_value());
      const CellSet roi = region_of_influence_node(sheaf, *r.section, n);
      std::set<CellId> from_facets;
      for (CellId f : facets(*X)) {
        if (!X->cell(f).contains(n)) continue;
        for (CellId c : region_of_influence_facet(*X, X->cell(f))) {
          from_facets.insert(c);
        }
      }
      CHECK(CellSet(from_facets.begin(), from_facets.end()) == roi);
    }
  }
}

TEST_CASE("complements of facet regions of influence are closed") {
  for (std::uint64_t seed = 800; seed < 815; ++seed) {
    const NetworkDescription net = random_disk_network(seed, 2, 6);
    auto X = std::make_shared<SimplicialComplex>(link_complex(net));
    for (CellId f : facets(*X)) {
      const CellSet roi = region_of_influence_facet(*X, X->cell(f));
      CellSet complement;
      for (CellId c = 0; c < X->num_cells(); ++c) {
        if (!std::binary_search(roi.begin(), roi.end(), c)) {
          complement.push_back(c);
        }
      }
      CHECK(is_closed(*X, complement));
    }
  }
}
