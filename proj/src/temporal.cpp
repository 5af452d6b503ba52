#include "sheafnet/temporal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sheafnet {

VertexId TimeComplex::vertex_id(NodeId n, TimeStep t) const {
  if (!window_.contains(t)) {
    throw OutOfWindowError("timestep " + std::to_string(t) +
                           " outside the window");
  }
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n);
  if (it == nodes_.end() || *it != n) {
    throw InputError("unknown node " + std::to_string(n));
  }
  const int idx = static_cast<int>(it - nodes_.begin());
  return (t - window_.t0) * static_cast<int>(nodes_.size()) + idx;
}

std::pair<NodeId, TimeStep> TimeComplex::vertex_label(VertexId v) const {
  const int n = static_cast<int>(nodes_.size());
  if (v < 0 || v >= n * window_.length()) {
    throw InputError("vertex id out of range: " + std::to_string(v));
  }
  return {nodes_[v % n], window_.t0 + v / n};
}

std::string TimeComplex::cell_label(CellId c) const {
  std::ostringstream os;
  os << '[';
  const auto& verts = complex_->cell(c).vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i) os << ',';
    auto [node, t] = vertex_label(verts[i]);
    os << node << '@' << t;
  }
  os << ']';
  return os.str();
}

bool TimeComplex::is_temporal_edge(CellId c) const {
  complex_->cell(c);
  return temporal_edge_[c] != 0;
}

std::optional<TimeStep> TimeComplex::slice_of(CellId c) const {
  complex_->cell(c);
  if (cell_slice_[c] < 0) return std::nullopt;
  return window_.t0 + cell_slice_[c];
}

NodeId TimeComplex::node_of(CellId c) const {
  complex_->cell(c);
  if (cell_node_[c] < 0 && complex_->cell_dim(c) > 0) {
    throw InputError("cell spans several nodes: " + cell_label(c));
  }
  return cell_node_[c];
}

const SimplicialComplex& TimeComplex::slice(TimeStep t) const {
  return *slice_ptr(t);
}

ComplexPtr TimeComplex::slice_ptr(TimeStep t) const {
  if (!window_.contains(t)) {
    throw OutOfWindowError("timestep " + std::to_string(t) +
                           " outside the window");
  }
  return slices_[t - window_.t0];
}

CellId TimeComplex::slice_cell_to_global(TimeStep t, CellId slice_cell) const {
  if (!window_.contains(t)) {
    throw OutOfWindowError("timestep " + std::to_string(t) +
                           " outside the window");
  }
  const auto& table = slice_to_global_[t - window_.t0];
  if (slice_cell < 0 || slice_cell >= static_cast<CellId>(table.size())) {
    throw UnknownCellError("slice cell id out of range");
  }
  return table[slice_cell];
}

CellId TimeComplex::global_cell_to_slice(CellId c) const {
  complex_->cell(c);
  if (global_to_slice_[c] < 0) {
    throw InputError("cell has no timeslice: " + cell_label(c));
  }
  return global_to_slice_[c];
}

TimeComplex time_dependent_link_complex(const NetworkDescription& net,
                                        TimeWindow window) {
  if (window.length() < 1) throw InputError("window must be nonempty");
  net.validate();

  TimeComplex tc;
  tc.window_ = window;
  tc.nodes_ = net.nodes;
  std::sort(tc.nodes_.begin(), tc.nodes_.end());
  const int n = static_cast<int>(tc.nodes_.size());

  Graph g;
  for (TimeStep t = window.t0; t <= window.t1; ++t) {
    for (int i = 0; i < n; ++i) {
      g.add_vertex((t - window.t0) * n + i);
    }
  }
  for (TimeStep t = window.t0; t <= window.t1; ++t) {
    Graph slice_graph = link_graph(net, t);
    for (const auto& [a, b] : slice_graph.edges) {
      const int ia = static_cast<int>(
          std::lower_bound(tc.nodes_.begin(), tc.nodes_.end(), a) -
          tc.nodes_.begin());
      const int ib = static_cast<int>(
          std::lower_bound(tc.nodes_.begin(), tc.nodes_.end(), b) -
          tc.nodes_.begin());
      g.add_edge((t - window.t0) * n + ia, (t - window.t0) * n + ib);
    }
    if (t < window.t1) {
      for (int i = 0; i < n; ++i) {
        g.add_edge((t - window.t0) * n + i, (t + 1 - window.t0) * n + i);
      }
    }
  }
  auto complex = std::make_shared<SimplicialComplex>(
      SimplicialComplex::clique_complex(g));
  tc.complex_ = complex;

  const int num_cells = complex->num_cells();
  tc.temporal_edge_.assign(num_cells, 0);
  tc.cell_slice_.assign(num_cells, -1);
  tc.cell_node_.assign(num_cells, -1);
  tc.global_to_slice_.assign(num_cells, -1);

  for (CellId c = 0; c < num_cells; ++c) {
    const auto& verts = complex->cell(c).vertices();
    std::set<TimeStep> times;
    std::set<NodeId> cell_nodes;
    for (VertexId v : verts) {
      auto [node, t] = tc.vertex_label(v);
      times.insert(t);
      cell_nodes.insert(node);
    }
    if (times.size() == 1) {
      tc.cell_slice_[c] = *times.begin() - window.t0;
    } else {
      tc.temporal_edge_[c] = 1;
    }
    if (cell_nodes.size() == 1) tc.cell_node_[c] = *cell_nodes.begin();
  }

  tc.slices_.resize(window.length());
  tc.slice_to_global_.resize(window.length());
  for (int s = 0; s < window.length(); ++s) {
    std::set<Cell> cells;
    for (CellId c = 0; c < num_cells; ++c) {
      if (tc.cell_slice_[c] != s) continue;
      std::vector<NodeId> relabeled;
      for (VertexId v : complex->cell(c).vertices()) {
        relabeled.push_back(tc.vertex_label(v).first);
      }
      cells.insert(Cell(std::move(relabeled)));
    }
    std::vector<Cell> as_list(cells.begin(), cells.end());
    auto slice = std::make_shared<SimplicialComplex>(
        SimplicialComplex::from_maximal_cells(as_list));
    tc.slices_[s] = slice;
    tc.slice_to_global_[s].resize(slice->num_cells());
    for (CellId sc = 0; sc < slice->num_cells(); ++sc) {
      std::vector<VertexId> vids;
      for (NodeId node : slice->cell(sc).vertices()) {
        vids.push_back(tc.vertex_id(node, window.t0 + s));
      }
      const CellId global = complex->id_of(Cell(std::move(vids)));
      tc.slice_to_global_[s][sc] = global;
      tc.global_to_slice_[global] = sc;
    }
  }
  return tc;
}

SimplicialComplex timeslice(const TimeComplex& tc, TimeStep t) {
  return tc.slice(t);
}

GroupingSheaf grouping_sheaf(int depth, int alphabet_size, int window_len,
                             std::vector<std::string> labels) {
  if (depth < 1) throw InputError("grouping depth must be at least 1");
  if (alphabet_size < 1) throw InputError("alphabet must be nonempty");
  if (window_len < 1) throw InputError("window must have at least one vertex");
  if (!labels.empty() && static_cast<int>(labels.size()) != alphabet_size) {
    throw InputError("one label per alphabet element required");
  }
  return GroupingSheaf{depth, alphabet_size, window_len, std::move(labels)};
}

mpz_class grouping_section_count(const GroupingSheaf& gs) {
  mpz_class count;
  mpz_ui_pow_ui(count.get_mpz_t(), gs.alphabet_size,
                gs.window_len + gs.depth - 1);
  return count;
}

std::vector<std::vector<int>> enumerate_grouping_sections(const GroupingSheaf& gs) {
  const int len = gs.window_len + gs.depth - 1;
  mpz_class count = grouping_section_count(gs);
  if (count > 4'000'000) throw InputError("too many sections to enumerate");
  std::vector<std::vector<int>> out;
  std::vector<int> seq(len, 0);
  for (;;) {
    out.push_back(seq);
    int i = len - 1;
    while (i >= 0 && seq[i] == gs.alphabet_size - 1) {
      seq[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

std::vector<int> grouping_vertex_value(const GroupingSheaf& gs,
                                       const std::vector<int>& sequence,
                                       int t) {
  if (t < 0 || t >= gs.window_len) throw OutOfWindowError("vertex out of window");
  // Queue slot i holds the element that entered i - 1 steps before the
  // newest; the newest entry is the front (x_1).
  std::vector<int> value(gs.depth);
  for (int i = 0; i < gs.depth; ++i) {
    value[i] = sequence[t + gs.depth - 1 - i];
  }
  return value;
}

SimplicialComplex path_complex(int window_len) {
  if (window_len < 1) throw InputError("path complex needs a vertex");
  std::vector<Cell> maximal;
  if (window_len == 1) {
    maximal.emplace_back(std::vector<VertexId>{0});
  }
  for (int t = 0; t + 1 < window_len; ++t) {
    maximal.emplace_back(std::vector<VertexId>{t, t + 1});
  }
  return SimplicialComplex::from_maximal_cells(maximal);
}

VectorSheaf grouping_vector_sheaf(int depth, int alphabet_dim, int window_len) {
  if (depth < 1) throw InputError("grouping depth must be at least 1");
  if (alphabet_dim < 1) throw InputError("alphabet dimension must be positive");
  auto base = std::make_shared<SimplicialComplex>(path_complex(window_len));
  std::vector<int> dims(base->num_cells());
  for (CellId c = 0; c < base->num_cells(); ++c) {
    dims[c] = (base->cell_dim(c) == 0 ? depth : depth - 1) * alphabet_dim;
  }
  // Block selectors: drop-last toward the later edge, drop-first toward
  // the earlier edge.
  auto selector = [&](bool drop_first) {
    RatMatrix m((depth - 1) * alphabet_dim, depth * alphabet_dim);
    for (int block = 0; block < depth - 1; ++block) {
      const int src = drop_first ? block + 1 : block;
      for (int i = 0; i < alphabet_dim; ++i) {
        m.at(block * alphabet_dim + i, src * alphabet_dim + i) = 1;
      }
    }
    return m;
  };
  std::map<std::pair<CellId, CellId>, RatMatrix> restrictions;
  for (CellId e = 0; e < base->num_cells(); ++e) {
    if (base->cell_dim(e) != 1) continue;
    const auto& verts = base->cell(e).vertices();
    const CellId left = base->id_of(Cell({verts[0]}));
    const CellId right = base->id_of(Cell({verts[1]}));
    restrictions.emplace(std::make_pair(left, e), selector(false));
    restrictions.emplace(std::make_pair(right, e), selector(true));
  }
  return VectorSheaf(std::move(base), std::move(dims), std::move(restrictions));
}

}  // namespace sheafnet
