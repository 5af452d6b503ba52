#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sheafnet/errors.hpp"

namespace sheafnet {

using VertexId = int;
using NodeId = VertexId;
using CellId = int;

/// A cell of an abstract simplicial complex: a nonempty, strictly
/// increasing list of vertex ids. dim() is one less than the vertex count,
/// so vertices are 0-cells and edges are 1-cells.
class Cell {
 public:
  Cell() = default;

  /// Sorts the given vertices; rejects empty lists and duplicates.
  explicit Cell(std::vector<VertexId> vertices);

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  bool contains(VertexId v) const;

  /// Face relation, reflexive: every cell is a face of itself.
  bool is_face_of(const Cell& other) const;

  /// Codimension-1 faces in lexicographic order; empty for vertices.
  std::vector<Cell> boundary() const;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.vertices_ == b.vertices_;
  }
  friend bool operator<(const Cell& a, const Cell& b) {
    return a.vertices_ < b.vertices_;
  }

 private:
  std::vector<VertexId> vertices_;
};

std::string to_string(const Cell& c);
std::ostream& operator<<(std::ostream& os, const Cell& c);

/// Undirected simple graph with normalized edge pairs (a < b).
struct Graph {
  std::vector<VertexId> vertices;  // sorted, unique
  std::set<std::pair<VertexId, VertexId>> edges;

  void add_vertex(VertexId v);
  void add_edge(VertexId a, VertexId b);
  bool has_edge(VertexId a, VertexId b) const;
};

/// An abstract simplicial complex: a finite family of cells closed under
/// taking nonempty subsets. Immutable after construction; cell ids are
/// assigned in canonical order (dimension, then lexicographic vertex list)
/// so that downstream matrices are reproducible.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Smallest complex containing every listed cell.
  static SimplicialComplex from_maximal_cells(const std::vector<Cell>& maximal);

  /// Complex whose cells are exactly the cliques of g.
  static SimplicialComplex clique_complex(const Graph& g);

  int num_cells() const { return static_cast<int>(cells_.size()); }
  bool empty() const { return cells_.empty(); }

  /// Top dimension, or -1 for the empty complex.
  int dim() const;

  const Cell& cell(CellId id) const;
  int cell_dim(CellId id) const { return cell(id).dim(); }
  CellId id_of(const Cell& c) const;  // throws UnknownCellError
  std::optional<CellId> find(const Cell& c) const;
  bool contains(const Cell& c) const { return find(c).has_value(); }

  /// Codimension-1 faces / cofaces, sorted by id.
  const std::vector<CellId>& faces(CellId id) const;
  const std::vector<CellId>& cofaces(CellId id) const;

  const std::vector<CellId>& cells_of_dim(int k) const;
  std::vector<VertexId> vertex_set() const;

  /// Every proper face incidence (c, d) with c a proper face of d,
  /// ordered by (d, c). Built once at construction.
  const std::vector<std::pair<CellId, CellId>>& all_incidences() const {
    return incidences_;
  }

 private:
  static SimplicialComplex from_cells(std::set<Cell> cells);

  std::vector<Cell> cells_;
  std::map<Cell, CellId> index_;
  std::vector<std::vector<CellId>> faces_;
  std::vector<std::vector<CellId>> cofaces_;
  std::vector<std::vector<CellId>> by_dim_;
  std::vector<std::pair<CellId, CellId>> incidences_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Sorted, duplicate-free list of cell ids.
using CellSet = std::vector<CellId>;

/// Smallest subcomplex of X containing Y.
CellSet closure(const SimplicialComplex& X, const CellSet& Y);

/// All cells of X having at least one face (reflexively) in Y.
CellSet star(const SimplicialComplex& X, const CellSet& Y);

/// Cells with no proper coface.
std::vector<CellId> facets(const SimplicialComplex& X);

bool is_closed(const SimplicialComplex& X, const CellSet& Y);

/// Orientation sign (-1)^j where j is the position in b of the vertex
/// missing from a. Requires a to be a codimension-1 face of b.
int incidence_sign(const Cell& a, const Cell& b);
int incidence_sign(const SimplicialComplex& X, CellId a, CellId b);

std::string to_string(const SimplicialComplex& X, const CellSet& Y);

}  // namespace sheafnet
