#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

#include "sheafnet/errors.hpp"
#include "sheafnet/exec.hpp"

namespace sheafnet {

/// Exact rational scalar.
using Rat = mpq_class;

Rat rat_from_string(const std::string& text);  // "n" or "n/d"
std::string rat_to_string(const Rat& q);       // always "n/d"

/// Dense rational matrix, row major. Kept simple on purpose; the matrices
/// in this project are rank and kernel inputs, not hot linear algebra.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols);

  static RatMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c);
  const Rat& at(int r, int c) const;

  bool is_zero() const;
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

  RatMatrix transposed() const;
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> data_;
};

/// Production rank: splits the matrix into connected components of its
/// nonzero pattern and eliminates each block, OpenMP across blocks (or
/// across row updates when there is a single block). Exact and
/// deterministic regardless of thread count.
int rank(const RatMatrix& m, Exec exec = Exec::parallel);

/// Serial reference rank: plain dense forward elimination, no splitting.
/// Kept for tests and the benchmark.
int rank_reference(const RatMatrix& m);

/// Basis of the right kernel (each entry one basis vector), computed from
/// the reduced row echelon form. Deterministic column order.
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m);

/// Sparse triplet dump, one "row col numerator/denominator" line per
/// nonzero, row major.
void write_triplets(std::ostream& os, const RatMatrix& m);

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

}  // namespace sheafnet
