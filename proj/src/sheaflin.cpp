#include "sheafnet/sheaflin.hpp"

#include <algorithm>

#include "sheafnet/activation.hpp"

namespace sheafnet {

VectorSheaf::VectorSheaf(ComplexPtr base, std::vector<int> dims,
                         std::map<std::pair<CellId, CellId>, RatMatrix> restrictions,
                         std::vector<std::vector<NodeId>> basis_labels)
    : base_(std::move(base)),
      dims_(std::move(dims)),
      restrictions_(std::move(restrictions)),
      basis_labels_(std::move(basis_labels)) {
  if (!base_) throw InputError("vector sheaf needs a base complex");
  if (static_cast<int>(dims_.size()) != base_->num_cells()) {
    throw InputError("one stalk dimension per cell required");
  }
  for (int d : dims_) {
    if (d < 0) throw InputError("stalk dimensions must be nonnegative");
  }
  if (!basis_labels_.empty() &&
      static_cast<int>(basis_labels_.size()) != base_->num_cells()) {
    throw InputError("basis labels must cover every cell");
  }
  for (CellId d = 0; d < base_->num_cells(); ++d) {
    for (CellId c : base_->faces(d)) {
      auto it = restrictions_.find({c, d});
      if (it == restrictions_.end()) {
        throw InputError("missing restriction matrix for " +
                         to_string(base_->cell(c)) + " within " +
                         to_string(base_->cell(d)));
      }
      if (it->second.rows() != dims_[d] || it->second.cols() != dims_[c]) {
        throw InputError("restriction matrix shape mismatch at " +
                         to_string(base_->cell(d)));
      }
    }
  }
}

int VectorSheaf::dim(CellId c) const {
  base_->cell(c);
  return dims_[c];
}

const RatMatrix& VectorSheaf::restriction(CellId c, CellId d) const {
  auto it = restrictions_.find({c, d});
  if (it == restrictions_.end()) {
    throw InvalidIncidenceError("no stored restriction for " +
                                to_string(base_->cell(c)) + " within " +
                                to_string(base_->cell(d)));
  }
  return it->second;
}

RatMatrix VectorSheaf::restriction_any(CellId c, CellId d) const {
  if (c == d) return RatMatrix::identity(dims_[c]);
  if (base_->cell_dim(c) + 1 == base_->cell_dim(d)) return restriction(c, d);
  const Cell& target = base_->cell(d);
  for (CellId mid : base_->cofaces(c)) {
    if (base_->cell(mid).is_face_of(target)) {
      return restriction_any(mid, d) * restriction(c, mid);
    }
  }
  throw InvalidIncidenceError(to_string(base_->cell(c)) + " is not a face of " +
                              to_string(target));
}

const std::vector<NodeId>& VectorSheaf::basis_labels(CellId c) const {
  static const std::vector<NodeId> kEmpty;
  base_->cell(c);
  if (basis_labels_.empty()) return kEmpty;
  return basis_labels_[c];
}

VectorSheaf constant_sheaf(ComplexPtr X, int dim) {
  if (!X) throw InputError("constant sheaf needs a base complex");
  std::vector<int> dims(X->num_cells(), dim);
  std::map<std::pair<CellId, CellId>, RatMatrix> restrictions;
  for (CellId d = 0; d < X->num_cells(); ++d) {
    for (CellId c : X->faces(d)) {
      restrictions.emplace(std::make_pair(c, d), RatMatrix::identity(dim));
    }
  }
  return VectorSheaf(std::move(X), std::move(dims), std::move(restrictions));
}

VectorSheaf vector_activation_sheaf(ComplexPtr X) {
  SetSheaf act = activation_sheaf(X);
  const SimplicialComplex& base = act.base();
  std::vector<int> dims(base.num_cells());
  std::vector<std::vector<NodeId>> labels(base.num_cells());
  for (CellId c = 0; c < base.num_cells(); ++c) {
    labels[c] = act.stalk(c);
    dims[c] = static_cast<int>(labels[c].size());
  }
  std::map<std::pair<CellId, CellId>, RatMatrix> restrictions;
  for (CellId d = 0; d < base.num_cells(); ++d) {
    for (CellId c : base.faces(d)) {
      RatMatrix p(dims[d], dims[c]);
      for (int r = 0; r < dims[d]; ++r) {
        for (int k = 0; k < dims[c]; ++k) {
          if (labels[d][r] == labels[c][k]) p.at(r, k) = 1;
        }
      }
      restrictions.emplace(std::make_pair(c, d), std::move(p));
    }
  }
  return VectorSheaf(act.base_ptr(), std::move(dims), std::move(restrictions),
                     std::move(labels));
}

std::vector<std::pair<CellId, int>> cochain_coordinates(const VectorSheaf& sheaf,
                                                        int k) {
  std::vector<std::pair<CellId, int>> out;
  for (CellId c : sheaf.base().cells_of_dim(k)) {
    for (int i = 0; i < sheaf.dim(c); ++i) out.emplace_back(c, i);
  }
  return out;
}

namespace {

std::vector<int> stalk_offsets(const VectorSheaf& sheaf, int k, int* total) {
  const auto& cells = sheaf.base().cells_of_dim(k);
  std::vector<int> offsets(sheaf.base().num_cells(), -1);
  int at = 0;
  for (CellId c : cells) {
    offsets[c] = at;
    at += sheaf.dim(c);
  }
  if (total) *total = at;
  return offsets;
}

}  // namespace

RatMatrix coboundary(const VectorSheaf& sheaf, int k) {
  if (k < 0) throw InputError("coboundary degree must be nonnegative");
  int rows = 0, cols = 0;
  std::vector<int> row_off = stalk_offsets(sheaf, k + 1, &rows);
  std::vector<int> col_off = stalk_offsets(sheaf, k, &cols);
  RatMatrix delta(rows, cols);
  for (CellId d : sheaf.base().cells_of_dim(k + 1)) {
    for (CellId c : sheaf.base().faces(d)) {
      const int sign = incidence_sign(sheaf.base(), c, d);
      const RatMatrix& r = sheaf.restriction(c, d);
      for (int i = 0; i < r.rows(); ++i) {
        for (int j = 0; j < r.cols(); ++j) {
          if (r.at(i, j) != 0) {
            delta.at(row_off[d] + i, col_off[c] + j) = sign * r.at(i, j);
          }
        }
      }
    }
  }
  return delta;
}

CochainComplex cochain_complex(const VectorSheaf& sheaf) {
  CochainComplex cc;
  const int top = sheaf.base().dim();
  for (int k = 0; k <= top; ++k) {
    int total = 0;
    stalk_offsets(sheaf, k, &total);
    cc.space_dims.push_back(total);
    cc.deltas.push_back(coboundary(sheaf, k));
  }
  return cc;
}

std::vector<int> cohomology_dims(const VectorSheaf& sheaf, Exec exec) {
  const int top = sheaf.base().dim();
  if (top < 0) return {};
  CochainComplex cc = cochain_complex(sheaf);
  std::vector<int> ranks(top + 1, 0);
  for (int k = 0; k <= top; ++k) ranks[k] = rank(cc.deltas[k], exec);
  std::vector<int> h(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    const int kernel = cc.space_dims[k] - ranks[k];
    const int image_below = (k == 0) ? 0 : ranks[k - 1];
    h[k] = kernel - image_below;
  }
  return h;
}

std::vector<std::vector<Rat>> global_section_space(const VectorSheaf& sheaf) {
  if (sheaf.base().dim() < 0) return {};
  return kernel_basis(coboundary(sheaf, 0));
}

}  // namespace sheafnet
