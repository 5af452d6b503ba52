#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sheafnet/complex.hpp"
#include "sheafnet/rational.hpp"

namespace sheafnet {

/// Sheaf of finite-dimensional rational vector spaces over a simplicial
/// complex: a stalk dimension per cell and one exact restriction matrix per
/// codimension-1 incidence. Restrictions across larger codimension are
/// composites; functoriality makes them path independent.
class VectorSheaf {
 public:
  VectorSheaf(ComplexPtr base, std::vector<int> dims,
              std::map<std::pair<CellId, CellId>, RatMatrix> restrictions,
              std::vector<std::vector<NodeId>> basis_labels = {});

  const SimplicialComplex& base() const { return *base_; }
  ComplexPtr base_ptr() const { return base_; }

  int dim(CellId c) const;

  /// Stored codimension-1 restriction matrix for c within d.
  const RatMatrix& restriction(CellId c, CellId d) const;

  /// Restriction for an arbitrary incidence, composed along a face path.
  RatMatrix restriction_any(CellId c, CellId d) const;

  /// Node labels of the stalk basis, when the sheaf carries them.
  const std::vector<NodeId>& basis_labels(CellId c) const;
  bool has_basis_labels() const { return !basis_labels_.empty(); }

 private:
  ComplexPtr base_;
  std::vector<int> dims_;
  std::map<std::pair<CellId, CellId>, RatMatrix> restrictions_;
  std::vector<std::vector<NodeId>> basis_labels_;
};

/// Constant sheaf: every stalk has the given dimension, every restriction
/// is the identity.
VectorSheaf constant_sheaf(ComplexPtr X, int dim);

/// Linearized activation sheaf: the stalk at c is the rational vector
/// space whose basis is the activation stalk minus bottom, and each
/// restriction is the 0/1 basis projection onto the labels that survive.
VectorSheaf vector_activation_sheaf(ComplexPtr X);

/// Coordinate labels of the degree-k cochain space: (cell, basis index)
/// per coordinate, cells in canonical order.
std::vector<std::pair<CellId, int>> cochain_coordinates(const VectorSheaf& sheaf,
                                                        int k);

/// Signed block coboundary from degree k to k+1. Block (d, c) is
/// incidence_sign(c, d) times the restriction matrix.
RatMatrix coboundary(const VectorSheaf& sheaf, int k);

struct CochainComplex {
  std::vector<int> space_dims;    // dim C^k per degree
  std::vector<RatMatrix> deltas;  // deltas[k] maps C^k to C^{k+1}
};

CochainComplex cochain_complex(const VectorSheaf& sheaf);

/// dim H^k for every degree 0..dim(base), over exact rationals.
std::vector<int> cohomology_dims(const VectorSheaf& sheaf,
                                 Exec exec = Exec::parallel);

/// Basis of the global section space (the kernel of the degree-0
/// coboundary), as coordinate vectors over C^0.
std::vector<std::vector<Rat>> global_section_space(const VectorSheaf& sheaf);

}  // namespace sheafnet
