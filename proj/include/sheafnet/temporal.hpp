#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sheafnet/complex.hpp"
#include "sheafnet/netmodel.hpp"
#include "sheafnet/sheaflin.hpp"

namespace sheafnet {

struct TimeWindow {
  TimeStep t0 = 0;
  TimeStep t1 = 0;

  int length() const { return t1 - t0 + 1; }
  bool contains(TimeStep t) const { return t >= t0 && t <= t1; }
};

/// Clique complex of the time-dependent link graph over a finite window:
/// one link complex per timeslice, plus one temporal edge per node joining
/// its copies at consecutive timesteps. Temporal edges are the only cells
/// mixing two timesteps; that is forced by the graph, since distinct nodes
/// are never joined across timesteps.
class TimeComplex {
 public:
  TimeComplex() = default;

  const SimplicialComplex& complex() const { return *complex_; }
  ComplexPtr complex_ptr() const { return complex_; }
  TimeWindow window() const { return window_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  VertexId vertex_id(NodeId n, TimeStep t) const;
  std::pair<NodeId, TimeStep> vertex_label(VertexId v) const;
  std::string cell_label(CellId c) const;

  bool is_temporal_edge(CellId c) const;
  /// Timestep of a cell living inside one slice; nullopt for temporal
  /// edges.
  std::optional<TimeStep> slice_of(CellId c) const;
  /// Node of a vertex or temporal edge.
  NodeId node_of(CellId c) const;

  /// The timeslice as a complex over node ids.
  const SimplicialComplex& slice(TimeStep t) const;
  ComplexPtr slice_ptr(TimeStep t) const;
  CellId slice_cell_to_global(TimeStep t, CellId slice_cell) const;
  CellId global_cell_to_slice(CellId c) const;

  friend TimeComplex time_dependent_link_complex(const NetworkDescription& net,
                                                 TimeWindow window);

 private:
  TimeWindow window_;
  std::vector<NodeId> nodes_;
  ComplexPtr complex_;
  std::vector<ComplexPtr> slices_;
  std::vector<char> temporal_edge_;
  std::vector<int> cell_slice_;             // -1 for temporal edges
  std::vector<NodeId> cell_node_;           // for vertices and temporal edges
  std::vector<std::vector<CellId>> slice_to_global_;
  std::vector<CellId> global_to_slice_;
};

TimeComplex time_dependent_link_complex(const NetworkDescription& net,
                                        TimeWindow window);

/// Maximal subcomplex over the nodes at timestep t, relabeled to node ids.
SimplicialComplex timeslice(const TimeComplex& tc, TimeStep t);

/// An n-term grouping sheaf over the path complex with window_len
/// vertices: vertex stalks are n-tuples over the alphabet, edge stalks are
/// (n-1)-tuples, the left restriction drops the first component and the
/// right restriction drops the last. Sections are sliding windows of a
/// sequence of length window_len + depth - 1.
struct GroupingSheaf {
  int depth = 1;          // n
  int alphabet_size = 0;  // finite alphabet case
  int window_len = 1;     // m
  std::vector<std::string> labels;
};

GroupingSheaf grouping_sheaf(int depth, int alphabet_size, int window_len,
                             std::vector<std::string> labels = {});

mpz_class grouping_section_count(const GroupingSheaf& gs);

/// All sections, one per alphabet sequence of length m + n - 1, values in
/// 0..alphabet_size-1.
std::vector<std::vector<int>> enumerate_grouping_sections(const GroupingSheaf& gs);

/// Vertex tuple at position t of the section encoded by a sequence. Index
/// i of the result is x_{i+1} of the queue, so the entry shared with the
/// earlier timestep sits at the back.
std::vector<int> grouping_vertex_value(const GroupingSheaf& gs,
                                       const std::vector<int>& sequence,
                                       int t);

/// Path complex 0 -- 1 -- ... -- (window_len - 1).
SimplicialComplex path_complex(int window_len);

/// Grouping sheaf valued in a vector space of dimension alphabet_dim,
/// realized as a vector sheaf over the path complex.
VectorSheaf grouping_vector_sheaf(int depth, int alphabet_dim, int window_len);

}  // namespace sheafnet
