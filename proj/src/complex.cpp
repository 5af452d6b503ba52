#include "sheafnet/complex.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace sheafnet {

Cell::Cell(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) {
    throw InvalidCellError("cell must contain at least one vertex");
  }
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InvalidCellError("cell contains a duplicate vertex: " + to_string(*this));
  }
}

bool Cell::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Cell::is_face_of(const Cell& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(),
                       vertices_.begin(), vertices_.end());
}

std::vector<Cell> Cell::boundary() const {
  if (dim() == 0) return {};
  std::vector<Cell> out;
  out.reserve(vertices_.size());
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    std::vector<VertexId> face;
    face.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i != skip) face.push_back(vertices_[i]);
    }
    out.emplace_back(std::move(face));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Cell& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cell& c) {
  os << '[';
  for (std::size_t i = 0; i < c.vertices().size(); ++i) {
    if (i) os << ',';
    os << c.vertices()[i];
  }
  return os << ']';
}

void Graph::add_vertex(VertexId v) {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) vertices.insert(it, v);
}

void Graph::add_edge(VertexId a, VertexId b) {
  if (a == b) throw InputError("graph edges must join distinct vertices");
  if (a > b) std::swap(a, b);
  edges.insert({a, b});
}

bool Graph::has_edge(VertexId a, VertexId b) const {
  if (a > b) std::swap(a, b);
  return edges.count({a, b}) > 0;
}

namespace {

bool cell_canonical_less(const Cell& a, const Cell& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a < b;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_cells(std::set<Cell> cells) {
  SimplicialComplex X;
  X.cells_.assign(cells.begin(), cells.end());
  std::sort(X.cells_.begin(), X.cells_.end(), cell_canonical_less);
  for (CellId id = 0; id < static_cast<CellId>(X.cells_.size()); ++id) {
    X.index_.emplace(X.cells_[id], id);
  }
  const int n = X.num_cells();
  X.faces_.resize(n);
  X.cofaces_.resize(n);
  X.by_dim_.resize(X.dim() + 1);
  for (CellId id = 0; id < n; ++id) {
    X.by_dim_[X.cells_[id].dim()].push_back(id);
    for (const Cell& f : X.cells_[id].boundary()) {
      auto it = X.index_.find(f);
      if (it == X.index_.end()) {
        throw InvalidCellError("cell set is not closed under faces near " +
                               to_string(X.cells_[id]));
      }
      X.faces_[id].push_back(it->second);
      X.cofaces_[it->second].push_back(id);
    }
    std::sort(X.faces_[id].begin(), X.faces_[id].end());
  }
  for (auto& cf : X.cofaces_) std::sort(cf.begin(), cf.end());

  // Proper face incidences, enumerated through vertex subsets.
  for (CellId id = 0; id < n; ++id) {
    const auto& verts = X.cells_[id].vertices();
    const std::size_t k = verts.size();
    if (k == 1) continue;
    if (k > 24) throw InputError("cell too large: " + to_string(X.cells_[id]));
    for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
      std::vector<VertexId> sub;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i)) sub.push_back(verts[i]);
      }
      X.incidences_.emplace_back(X.index_.at(Cell(std::move(sub))), id);
    }
  }
  std::sort(X.incidences_.begin(), X.incidences_.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.second, a.first) < std::tie(b.second, b.first);
            });
  return X;
}

SimplicialComplex SimplicialComplex::from_maximal_cells(
    const std::vector<Cell>& maximal) {
  std::set<Cell> cells;
  for (const Cell& c : maximal) {
    const auto& verts = c.vertices();
    const std::size_t k = verts.size();
    if (k > 24) throw InputError("cell too large: " + to_string(c));
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<VertexId> sub;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i)) sub.push_back(verts[i]);
      }
      cells.insert(Cell(std::move(sub)));
    }
  }
  return from_cells(std::move(cells));
}

namespace {

void collect_cliques(const Graph& g, const std::vector<VertexId>& candidates,
                     std::vector<VertexId>& current, std::set<Cell>& out) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const VertexId v = candidates[i];
    current.push_back(v);
    out.insert(Cell(current));
    std::vector<VertexId> next;
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      if (g.has_edge(v, candidates[j])) next.push_back(candidates[j]);
    }
    collect_cliques(g, next, current, out);
    current.pop_back();
  }
}

}  // namespace

SimplicialComplex SimplicialComplex::clique_complex(const Graph& g) {
  for (const auto& [a, b] : g.edges) {
    if (!std::binary_search(g.vertices.begin(), g.vertices.end(), a) ||
        !std::binary_search(g.vertices.begin(), g.vertices.end(), b)) {
      throw InputError("graph edge references an undeclared vertex");
    }
  }
  std::set<Cell> cells;
  std::vector<VertexId> current;
  collect_cliques(g, g.vertices, current, cells);
  return from_cells(std::move(cells));
}

int SimplicialComplex::dim() const {
  return cells_.empty() ? -1 : cells_.back().dim();
}

const Cell& SimplicialComplex::cell(CellId id) const {
  if (id < 0 || id >= num_cells()) {
    throw UnknownCellError("cell id out of range: " + std::to_string(id));
  }
  return cells_[id];
}

CellId SimplicialComplex::id_of(const Cell& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) {
    throw UnknownCellError("cell not in complex: " + to_string(c));
  }
  return it->second;
}

std::optional<CellId> SimplicialComplex::find(const Cell& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<CellId>& SimplicialComplex::faces(CellId id) const {
  cell(id);
  return faces_[id];
}

const std::vector<CellId>& SimplicialComplex::cofaces(CellId id) const {
  cell(id);
  return cofaces_[id];
}

const std::vector<CellId>& SimplicialComplex::cells_of_dim(int k) const {
  static const std::vector<CellId> kEmpty;
  if (k < 0 || k >= static_cast<int>(by_dim_.size())) return kEmpty;
  return by_dim_[k];
}

std::vector<VertexId> SimplicialComplex::vertex_set() const {
  std::vector<VertexId> out;
  for (CellId id : cells_of_dim(0)) out.push_back(cells_[id].vertices()[0]);
  return out;
}

namespace {

CellSet normalize_cell_set(const SimplicialComplex& X, const CellSet& Y) {
  CellSet sorted = Y;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (CellId id : sorted) {
    if (id < 0 || id >= X.num_cells()) {
      throw UnknownCellError("cell id out of range: " + std::to_string(id));
    }
  }
  return sorted;
}

}  // namespace

CellSet closure(const SimplicialComplex& X, const CellSet& Y) {
  CellSet work = normalize_cell_set(X, Y);
  std::vector<char> seen(X.num_cells(), 0);
  std::vector<CellId> stack(work.begin(), work.end());
  for (CellId id : stack) seen[id] = 1;
  while (!stack.empty()) {
    CellId id = stack.back();
    stack.pop_back();
    for (CellId f : X.faces(id)) {
      if (!seen[f]) {
        seen[f] = 1;
        stack.push_back(f);
      }
    }
  }
  CellSet out;
  for (CellId id = 0; id < X.num_cells(); ++id) {
    if (seen[id]) out.push_back(id);
  }
  return out;
}

CellSet star(const SimplicialComplex& X, const CellSet& Y) {
  CellSet work = normalize_cell_set(X, Y);
  std::vector<char> seen(X.num_cells(), 0);
  std::vector<CellId> stack(work.begin(), work.end());
  for (CellId id : stack) seen[id] = 1;
  while (!stack.empty()) {
    CellId id = stack.back();
    stack.pop_back();
    for (CellId cf : X.cofaces(id)) {
      if (!seen[cf]) {
        seen[cf] = 1;
        stack.push_back(cf);
      }
    }
  }
  CellSet out;
  for (CellId id = 0; id < X.num_cells(); ++id) {
    if (seen[id]) out.push_back(id);
  }
  return out;
}

std::vector<CellId> facets(const SimplicialComplex& X) {
  std::vector<CellId> out;
  for (CellId id = 0; id < X.num_cells(); ++id) {
    if (X.cofaces(id).empty()) out.push_back(id);
  }
  return out;
}

bool is_closed(const SimplicialComplex& X, const CellSet& Y) {
  CellSet sorted = normalize_cell_set(X, Y);
  return closure(X, sorted) == sorted;
}

int incidence_sign(const Cell& a, const Cell& b) {
  if (a.dim() + 1 != b.dim() || !a.is_face_of(b)) {
    throw InvalidIncidenceError(to_string(a) + " is not a codimension-1 face of " +
                                to_string(b));
  }
  const auto& av = a.vertices();
  const auto& bv = b.vertices();
  for (std::size_t j = 0; j < bv.size(); ++j) {
    if (j >= av.size() || av[j] != bv[j]) {
      return (j % 2 == 0) ? 1 : -1;
    }
  }
  throw InvalidIncidenceError("no missing vertex between " + to_string(a) +
                              " and " + to_string(b));
}

int incidence_sign(const SimplicialComplex& X, CellId a, CellId b) {
  return incidence_sign(X.cell(a), X.cell(b));
}

std::string to_string(const SimplicialComplex& X, const CellSet& Y) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < Y.size(); ++i) {
    if (i) os << ' ';
    os << X.cell(Y[i]);
  }
  return os.str() + "}";
}

}  // namespace sheafnet
