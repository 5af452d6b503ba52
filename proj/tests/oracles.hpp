// Test-only brute-force oracles. These stay independent of the production
// code paths they check: section enumeration by exhaustive assignment
// search, clique facts by subset scan, grouping counts by raw vertex
// assignments, and global-section dimensions by the full incidence
// constraint system under the serial reference rank.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sheafnet/activation.hpp"
#include "sheafnet/netmodel.hpp"
#include "sheafnet/sheaflin.hpp"

namespace sheafnet::testing {

// Every global section is determined by its vertex values, so exhaustive
// search over vertex assignments with forced extension is a complete
// oracle.
inline std::vector<ActSection> exhaustive_global_sections(const SetSheaf& sheaf) {
  const SimplicialComplex& X = sheaf.base();
  const std::vector<CellId>& verts = X.cells_of_dim(0);
  std::vector<std::vector<ActValue>> choices;
  for (CellId v : verts) {
    std::vector<ActValue> vals = {std::nullopt};
    for (NodeId n : sheaf.stalk(v)) vals.emplace_back(n);
    choices.push_back(std::move(vals));
  }
  std::vector<ActSection> out;
  if (verts.empty()) return out;
  std::vector<std::size_t> idx(verts.size(), 0);
  for (;;) {
    ActSection s(X.num_cells());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      s.set(verts[i], choices[i][idx[i]]);
    }
    for (int k = 1; k <= X.dim(); ++k) {
      for (CellId c : X.cells_of_dim(k)) {
        const CellId f = X.faces(c).front();
        s.set(c, sheaf.restrict_value(f, c, s.value(f)));
      }
    }
    if (is_global_section(sheaf, s)) out.push_back(std::move(s));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == idx.size()) break;
  }
  return out;
}

// Raw product over every cell's stalk, for small complexes only.
inline std::vector<ActSection> raw_global_sections(const SetSheaf& sheaf) {
  const SimplicialComplex& X = sheaf.base();
  unsigned long long total = 1;
  std::vector<std::vector<ActValue>> choices;
  for (CellId c = 0; c < X.num_cells(); ++c) {
    std::vector<ActValue> vals = {std::nullopt};
    for (NodeId n : sheaf.stalk(c)) vals.emplace_back(n);
    total *= vals.size();
    if (total > 2'000'000ull) throw InputError("raw oracle would explode");
    choices.push_back(std::move(vals));
  }
  std::vector<ActSection> out;
  std::vector<std::size_t> idx(X.num_cells(), 0);
  if (X.num_cells() == 0) return out;
  for (;;) {
    ActSection s(X.num_cells());
    for (CellId c = 0; c < X.num_cells(); ++c) s.set(c, choices[c][idx[c]]);
    if (is_global_section(sheaf, s)) out.push_back(std::move(s));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == idx.size()) break;
  }
  return out;
}

inline std::set<std::vector<NodeId>> transmitter_sets(
    const std::vector<ActSection>& sections, const SimplicialComplex& X) {
  std::set<std::vector<NodeId>> out;
  for (const ActSection& s : sections) out.insert(s.transmitters(X));
  return out;
}

inline bool subset_is_clique(const Graph& g, const std::vector<VertexId>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (!g.has_edge(vs[i], vs[j])) return false;
    }
  }
  return true;
}

inline std::set<std::vector<VertexId>> brute_force_cliques(const Graph& g) {
  std::set<std::vector<VertexId>> out;
  const std::size_t n = g.vertices.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<VertexId> vs;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) vs.push_back(g.vertices[i]);
    }
    if (subset_is_clique(g, vs)) out.insert(vs);
  }
  return out;
}

inline std::set<std::vector<VertexId>> brute_force_maximal_cliques(const Graph& g) {
  const std::set<std::vector<VertexId>> cliques = brute_force_cliques(g);
  std::set<std::vector<VertexId>> out;
  for (const auto& c : cliques) {
    bool maximal = true;
    for (const auto& other : cliques) {
      if (other.size() > c.size() &&
          std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.insert(c);
  }
  return out;
}

// Counts grouping-sheaf sections by enumerating every vertex assignment
// and keeping the consistent ones. Vertex tuples are encoded base
// `alphabet` with x_1 as the most significant digit, so dropping the last
// slot is division and dropping the first is a modulus.
inline long long grouping_count_brute(int depth, int alphabet, int m) {
  long long per_vertex = 1;
  for (int i = 0; i < depth; ++i) per_vertex *= alphabet;
  const long long div_last = per_vertex / alphabet;
  std::vector<long long> v(m, 0);
  long long count = 0;
  for (;;) {
    bool ok = true;
    for (int t = 0; t + 1 < m && ok; ++t) {
      if (v[t] / alphabet != v[t + 1] % div_last) ok = false;
    }
    if (ok) ++count;
    int i = m - 1;
    while (i >= 0 && v[i] == per_vertex - 1) {
      v[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++v[i];
  }
  return count;
}

// Independent degree-zero oracle: the full incidence constraint system
// over every cell (not just the cochain route), ranked by the serial
// reference elimination.
inline int constraint_nullity(const VectorSheaf& sheaf) {
  const SimplicialComplex& X = sheaf.base();
  std::vector<int> offset(X.num_cells(), 0);
  int vars = 0;
  for (CellId c = 0; c < X.num_cells(); ++c) {
    offset[c] = vars;
    vars += sheaf.dim(c);
  }
  int rows = 0;
  for (CellId d = 0; d < X.num_cells(); ++d) {
    rows += sheaf.dim(d) * static_cast<int>(X.faces(d).size());
  }
  RatMatrix A(rows, vars);
  int at = 0;
  for (CellId d = 0; d < X.num_cells(); ++d) {
    for (CellId c : X.faces(d)) {
      const RatMatrix& R = sheaf.restriction(c, d);
      for (int i = 0; i < R.rows(); ++i) {
        for (int j = 0; j < R.cols(); ++j) {
          if (R.at(i, j) != 0) A.at(at + i, offset[c] + j) = R.at(i, j);
        }
        A.at(at + i, offset[d] + i) -= 1;
      }
      at += sheaf.dim(d);
    }
  }
  return vars - rank_reference(A);
}

// Connectivity of a cell set through shared face incidences.
inline bool region_connected(const SimplicialComplex& X, const CellSet& region) {
  if (region.empty()) return true;
  std::map<CellId, int> comp;
  for (CellId c : region) comp[c] = -1;
  std::vector<CellId> stack = {region[0]};
  comp[region[0]] = 0;
  while (!stack.empty()) {
    const CellId c = stack.back();
    stack.pop_back();
    auto touch = [&](CellId other) {
      auto it = comp.find(other);
      if (it != comp.end() && it->second == -1) {
        it->second = 0;
        stack.push_back(other);
      }
    };
    for (CellId f : X.faces(c)) touch(f);
    for (CellId f : X.cofaces(c)) touch(f);
  }
  for (const auto& [cell, mark] : comp) {
    (void)cell;
    if (mark == -1) return false;
  }
  return true;
}

inline Graph random_graph(std::uint64_t seed, int max_vertices = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, max_vertices);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = count(rng);
  Graph g;
  for (int v = 1; v <= n; ++v) g.add_vertex(v);
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (coin(rng) < 0.45) g.add_edge(a, b);
    }
  }
  return g;
}

// The three-node line network with one shared middle node.
inline NetworkDescription path3_network() {
  NetworkDescription net;
  net.nodes = {1, 2, 3};
  net.threshold = 0.5;
  net.static_signal[{1, 2}] = 1.0;
  net.static_signal[{2, 1}] = 1.0;
  net.static_signal[{2, 3}] = 1.0;
  net.static_signal[{3, 2}] = 1.0;
  return net;
}

inline NetworkDescription triangle_network() {
  NetworkDescription net;
  net.nodes = {1, 2, 3};
  net.threshold = 0.5;
  for (NodeId i : net.nodes) {
    for (NodeId j : net.nodes) {
      if (i != j) net.static_signal[{i, j}] = 1.0;
    }
  }
  return net;
}

inline NetworkDescription two_node_network() {
  NetworkDescription net;
  net.nodes = {0, 1};
  net.threshold = 0.5;
  net.static_signal[{0, 1}] = 1.0;
  net.static_signal[{1, 0}] = 1.0;
  return net;
}

// Links appear and disappear across three timesteps.
inline NetworkDescription timevary_network() {
  NetworkDescription net;
  net.nodes = {1, 2, 3};
  net.threshold = 0.5;
  auto both = [&](NodeId a, NodeId b, TimeStep t) {
    net.timed_signal[{a, b, t}] = 1.0;
    net.timed_signal[{b, a, t}] = 1.0;
  };
  both(1, 2, 0);
  both(1, 2, 1);
  both(2, 3, 1);
  both(2, 3, 2);
  return net;
}

}  // namespace sheafnet::testing
