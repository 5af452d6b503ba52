#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sheafnet/complex.hpp"
#include "sheafnet/exec.hpp"

namespace sheafnet {

/// Stalk value of a set sheaf: a node id, or idle. An empty optional is
/// the distinguished bottom value.
using ActValue = std::optional<NodeId>;

std::string to_string(const ActValue& v);

/// Sheaf of finite node-id sets over a simplicial complex. Each stalk is a
/// set of node ids plus the implicit bottom value; the restriction along
/// c within d keeps a node that still belongs to the stalk at d and sends
/// everything else to bottom. Bottom always maps to bottom.
class SetSheaf {
 public:
  SetSheaf(ComplexPtr base, std::vector<std::vector<NodeId>> stalks);

  const SimplicialComplex& base() const { return *base_; }
  ComplexPtr base_ptr() const { return base_; }

  /// Node part of the stalk at a cell, sorted. Bottom is implicit.
  const std::vector<NodeId>& stalk(CellId c) const;

  bool in_stalk(CellId c, const ActValue& v) const;

  /// Restriction along the incidence c within d (c a face of d, possibly
  /// c == d).
  ActValue restrict_value(CellId c, CellId d, const ActValue& v) const;

 private:
  ComplexPtr base_;
  std::vector<std::vector<NodeId>> stalks_;
};

/// The activation sheaf over X: the stalk at c is every node that shares a
/// coface with c (including the vertices of c itself), plus bottom.
SetSheaf activation_sheaf(ComplexPtr X);

/// Total or partial assignment of stalk values to cells.
class ActSection {
 public:
  ActSection() = default;
  explicit ActSection(int num_cells);

  int num_cells() const { return static_cast<int>(values_.size()); }
  bool assigned(CellId c) const;
  const ActValue& value(CellId c) const;
  void set(CellId c, ActValue v);
  bool total() const;

  /// Nodes n with s([n]) == n, sorted.
  std::vector<NodeId> transmitters(const SimplicialComplex& X) const;

  friend bool operator==(const ActSection& a, const ActSection& b) {
    return a.values_ == b.values_ && a.assigned_ == b.assigned_;
  }

 private:
  std::vector<ActValue> values_;
  std::vector<char> assigned_;
};

/// True when the total section s satisfies every restriction of the sheaf.
/// Throws InvalidValueError when a value lies outside its stalk and
/// InputError when s is not total.
bool is_global_section(const SetSheaf& sheaf, const ActSection& s);

/// Human-readable description of the first violated incidence, or empty.
std::optional<std::string> section_violation(const SetSheaf& sheaf,
                                             const ActSection& s);

/// Result of expanding a transmitter set into a candidate section: either
/// the section, or the first cell on which two transmitters collide (the
/// cell that cannot be filled consistently).
struct ExpansionResult {
  std::optional<ActSection> section;
  std::optional<CellId> conflict_cell;
};

/// Assigns n on closure(star([n])) for every n in the set and bottom
/// elsewhere. Returns the section when this is a global section.
ExpansionResult expand_transmitter_set(const SetSheaf& sheaf,
                                       const std::vector<NodeId>& transmitters);

/// All global sections, ordered lexicographically by transmitter set.
/// Candidate transmitter sets are validated independently, OpenMP over
/// candidates in the parallel path; the output order is deterministic
/// either way.
std::vector<ActSection> enumerate_global_sections(const SetSheaf& sheaf,
                                                  Exec exec = Exec::parallel);

/// Serial reference enumeration, kept for tests and the benchmark.
std::vector<ActSection> enumerate_global_sections_serial(const SetSheaf& sheaf);

/// Cells currently assigned to node n: {a : s(a) = n}. Requires a global
/// section.
CellSet active_region(const SetSheaf& sheaf, const ActSection& s, NodeId n);

/// Star over the active region; requires the region to be nonempty.
CellSet region_of_influence_node(const SetSheaf& sheaf, const ActSection& s,
                                 NodeId n);

/// Star over the closure of a facet.
CellSet region_of_influence_facet(const SimplicialComplex& X, const Cell& f);

/// Cells where s is not bottom. Requires a global section.
CellSet support(const SetSheaf& sheaf, const ActSection& s);

}  // namespace sheafnet
