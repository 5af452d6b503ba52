#include "sheafnet/activation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sheafnet {

std::string to_string(const ActValue& v) {
  return v ? std::to_string(*v) : std::string("-");
}

SetSheaf::SetSheaf(ComplexPtr base, std::vector<std::vector<NodeId>> stalks)
    : base_(std::move(base)), stalks_(std::move(stalks)) {
  if (!base_) throw InputError("set sheaf needs a base complex");
  if (static_cast<int>(stalks_.size()) != base_->num_cells()) {
    throw InputError("one stalk per cell required");
  }
  for (auto& s : stalks_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

const std::vector<NodeId>& SetSheaf::stalk(CellId c) const {
  base_->cell(c);
  return stalks_[c];
}

bool SetSheaf::in_stalk(CellId c, const ActValue& v) const {
  if (!v) return true;
  const auto& s = stalk(c);
  return std::binary_search(s.begin(), s.end(), *v);
}

ActValue SetSheaf::restrict_value(CellId c, CellId d, const ActValue& v) const {
  if (c != d && !base_->cell(c).is_face_of(base_->cell(d))) {
    throw InvalidIncidenceError(to_string(base_->cell(c)) + " is not a face of " +
                                to_string(base_->cell(d)));
  }
  if (!v) return std::nullopt;
  return in_stalk(d, v) ? v : std::nullopt;
}

SetSheaf activation_sheaf(ComplexPtr X) {
  if (!X || X->empty()) throw InputError("activation sheaf needs a nonempty complex");
  std::vector<std::vector<NodeId>> stalks(X->num_cells());
  for (CellId c = 0; c < X->num_cells(); ++c) {
    std::set<NodeId> nodes;
    for (CellId d : star(*X, {c})) {
      for (VertexId v : X->cell(d).vertices()) nodes.insert(v);
    }
    stalks[c].assign(nodes.begin(), nodes.end());
  }
  return SetSheaf(std::move(X), std::move(stalks));
}

ActSection::ActSection(int num_cells)
    : values_(num_cells), assigned_(num_cells, 0) {}

bool ActSection::assigned(CellId c) const {
  return c >= 0 && c < num_cells() && assigned_[c];
}

const ActValue& ActSection::value(CellId c) const {
  if (!assigned(c)) {
    throw InputError("section has no value on cell id " + std::to_string(c));
  }
  return values_[c];
}

void ActSection::set(CellId c, ActValue v) {
  if (c < 0 || c >= num_cells()) {
    throw UnknownCellError("cell id out of range: " + std::to_string(c));
  }
  values_[c] = std::move(v);
  assigned_[c] = 1;
}

bool ActSection::total() const {
  return std::all_of(assigned_.begin(), assigned_.end(),
                     [](char a) { return a != 0; });
}

std::vector<NodeId> ActSection::transmitters(const SimplicialComplex& X) const {
  std::vector<NodeId> out;
  for (CellId c : X.cells_of_dim(0)) {
    if (!assigned(c)) continue;
    const VertexId n = X.cell(c).vertices()[0];
    if (values_[c] && *values_[c] == n) out.push_back(n);
  }
  return out;
}

std::optional<std::string> section_violation(const SetSheaf& sheaf,
                                             const ActSection& s) {
  const SimplicialComplex& X = sheaf.base();
  if (s.num_cells() != X.num_cells() || !s.total()) {
    throw InputError("section must be total on all cells");
  }
  for (CellId c = 0; c < X.num_cells(); ++c) {
    if (!sheaf.in_stalk(c, s.value(c))) {
      throw InvalidValueError("value " + to_string(s.value(c)) +
                              " is outside the stalk at " + to_string(X.cell(c)));
    }
  }
  for (const auto& [c, d] : X.all_incidences()) {
    if (sheaf.restrict_value(c, d, s.value(c)) != s.value(d)) {
      std::ostringstream os;
      os << "restriction " << X.cell(c) << " within " << X.cell(d)
         << " sends " << to_string(s.value(c)) << " to "
         << to_string(sheaf.restrict_value(c, d, s.value(c)))
         << " but the section assigns " << to_string(s.value(d));
      return os.str();
    }
  }
  return std::nullopt;
}

bool is_global_section(const SetSheaf& sheaf, const ActSection& s) {
  return !section_violation(sheaf, s).has_value();
}

namespace {

std::vector<CellSet> node_regions(const SetSheaf& sheaf,
                                  std::vector<NodeId>* nodes_out) {
  const SimplicialComplex& X = sheaf.base();
  std::vector<NodeId> nodes = X.vertex_set();
  std::vector<CellSet> regions;
  regions.reserve(nodes.size());
  for (NodeId n : nodes) {
    const CellId vc = X.id_of(Cell({n}));
    regions.push_back(closure(X, star(X, {vc})));
  }
  if (nodes_out) *nodes_out = std::move(nodes);
  return regions;
}

ExpansionResult expand_with_regions(const SetSheaf& sheaf,
                                    const std::vector<NodeId>& nodes,
                                    const std::vector<CellSet>& regions,
                                    const std::vector<std::size_t>& chosen) {
  const SimplicialComplex& X = sheaf.base();
  ActSection s(X.num_cells());
  std::vector<int> owner(X.num_cells(), -1);
  std::optional<CellId> conflict;
  for (std::size_t idx : chosen) {
    for (CellId c : regions[idx]) {
      if (owner[c] >= 0 && owner[c] != static_cast<int>(idx)) {
        if (!conflict || c < *conflict) conflict = c;
        continue;
      }
      owner[c] = static_cast<int>(idx);
    }
  }
  if (conflict) return {std::nullopt, conflict};
  for (CellId c = 0; c < X.num_cells(); ++c) {
    s.set(c, owner[c] >= 0 ? ActValue(nodes[owner[c]]) : std::nullopt);
  }
  if (section_violation(sheaf, s).has_value()) {
    return {std::nullopt, std::nullopt};
  }
  return {std::move(s), std::nullopt};
}

std::vector<std::size_t> mask_to_indices(unsigned long long mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1ull) out.push_back(i);
  }
  return out;
}

std::vector<ActSection> enumerate_impl(const SetSheaf& sheaf, bool parallel) {
  std::vector<NodeId> nodes;
  const std::vector<CellSet> regions = node_regions(sheaf, &nodes);
  const std::size_t k = nodes.size();
  if (k > 24) throw InputError("too many nodes for exhaustive enumeration");
  const unsigned long long total = 1ull << k;

  std::vector<unsigned char> valid(total, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
  for (long long mask = 0; mask < static_cast<long long>(total); ++mask) {
    auto result = expand_with_regions(sheaf, nodes, regions,
                                      mask_to_indices(mask));
    valid[mask] = result.section.has_value() ? 1 : 0;
  }
#ifndef _OPENMP
  (void)parallel;
#endif

  // Lexicographic order on transmitter lists (node ids ascending inside
  // each list).
  std::vector<unsigned long long> order;
  order.reserve(total);
  for (unsigned long long mask = 0; mask < total; ++mask) {
    if (valid[mask]) order.push_back(mask);
  }
  std::sort(order.begin(), order.end(),
            [&](unsigned long long a, unsigned long long b) {
              return mask_to_indices(a) < mask_to_indices(b);
            });

  std::vector<ActSection> out;
  out.reserve(order.size());
  for (unsigned long long mask : order) {
    auto result =
        expand_with_regions(sheaf, nodes, regions, mask_to_indices(mask));
    out.push_back(std::move(*result.section));
  }
  return out;
}

}  // namespace

ExpansionResult expand_transmitter_set(const SetSheaf& sheaf,
                                       const std::vector<NodeId>& transmitters) {
  std::vector<NodeId> nodes;
  const std::vector<CellSet> regions = node_regions(sheaf, &nodes);
  std::vector<std::size_t> chosen;
  for (NodeId n : transmitters) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), n);
    if (it == nodes.end() || *it != n) {
      throw InputError("transmitter " + std::to_string(n) +
                       " is not a node of the complex");
    }
    chosen.push_back(static_cast<std::size_t>(it - nodes.begin()));
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  return expand_with_regions(sheaf, nodes, regions, chosen);
}

std::vector<ActSection> enumerate_global_sections(const SetSheaf& sheaf,
                                                  Exec exec) {
  return enumerate_impl(sheaf, exec == Exec::parallel);
}

std::vector<ActSection> enumerate_global_sections_serial(const SetSheaf& sheaf) {
  return enumerate_impl(sheaf, false);
}

CellSet active_region(const SetSheaf& sheaf, const ActSection& s, NodeId n) {
  if (auto why = section_violation(sheaf, s)) {
    throw NotASectionError("not a global section: " + *why);
  }
  CellSet out;
  for (CellId c = 0; c < sheaf.base().num_cells(); ++c) {
    if (s.value(c) && *s.value(c) == n) out.push_back(c);
  }
  return out;
}

CellSet region_of_influence_node(const SetSheaf& sheaf, const ActSection& s,
                                 NodeId n) {
  CellSet region = active_region(sheaf, s, n);
  if (region.empty()) {
    throw EmptyActiveRegionError("node " + std::to_string(n) +
                                 " has an empty active region");
  }
  return star(sheaf.base(), region);
}

CellSet region_of_influence_facet(const SimplicialComplex& X, const Cell& f) {
  const CellId id = X.id_of(f);
  if (!X.cofaces(id).empty()) {
    throw NotAFacetError(to_string(f) + " has a proper coface");
  }
  return star(X, closure(X, {id}));
}

CellSet support(const SetSheaf& sheaf, const ActSection& s) {
  if (auto why = section_violation(sheaf, s)) {
    throw NotASectionError("not a global section: " + *why);
  }
  CellSet out;
  for (CellId c = 0; c < sheaf.base().num_cells(); ++c) {
    if (s.value(c).has_value()) out.push_back(c);
  }
  return out;
}

}  // namespace sheafnet
