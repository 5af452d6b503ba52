#include "sheafnet/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sheafnet {

Rat rat_from_string(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (t.empty()) throw ParseError("empty rational literal");
  try {
    Rat q(t);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: '" + text + "'");
  }
}

std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q.get_num() << '/' << q.get_den();
  return os.str();
}

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  data_.resize(static_cast<std::size_t>(rows) * cols);
}

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Rat& RatMatrix::at(int r, int c) {
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

const Rat& RatMatrix::at(int r, int c) const {
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

bool RatMatrix::is_zero() const {
  for (const Rat& q : data_) {
    if (q != 0) return false;
  }
  return true;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in product");
  RatMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b.at(k, j) != 0) out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw InputError("matrix shape mismatch in difference");
  }
  RatMatrix out(a.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  }
  return out;
}

namespace {

// Forward elimination on a row-of-vectors working copy. Row updates within
// one pivot step are independent, so they may run under OpenMP when
// `parallel_rows` is set. Pivoting is first-nonzero, which keeps the result
// independent of thread count.
int eliminate(std::vector<std::vector<Rat>>& rows, bool parallel_rows) {
#ifndef _OPENMP
  (void)parallel_rows;
#endif
  const int nrows = static_cast<int>(rows.size());
  if (nrows == 0) return 0;
  const int ncols = static_cast<int>(rows[0].size());
  int r = 0;
  for (int col = 0; col < ncols && r < nrows; ++col) {
    int pivot = -1;
    for (int i = r; i < nrows; ++i) {
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    const std::vector<Rat>& prow = rows[r];
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel_rows && nrows - r > 16)
#endif
    for (int i = r + 1; i < nrows; ++i) {
      if (rows[i][col] == 0) continue;
      Rat factor = rows[i][col] / prow[col];
      for (int j = col; j < ncols; ++j) {
        if (prow[j] != 0) rows[i][j] -= factor * prow[j];
      }
    }
    ++r;
  }
  return r;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int rank(const RatMatrix& m, Exec exec) {
  const int nr = m.rows(), nc = m.cols();
  if (nr == 0 || nc == 0) return 0;

  // Connected components of the nonzero pattern (rows and columns as one
  // vertex set). Rank is additive across components.
  Dsu dsu(nr + nc);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      if (m.at(r, c) != 0) dsu.unite(r, nr + c);
    }
  }
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> comps;
  for (int r = 0; r < nr; ++r) {
    bool nonzero = false;
    for (int c = 0; c < nc; ++c) {
      if (m.at(r, c) != 0) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) comps[dsu.find(r)].first.push_back(r);
  }
  for (int c = 0; c < nc; ++c) {
    comps[dsu.find(nr + c)].second.push_back(c);
  }

  std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
  for (auto& [root, block] : comps) {
    if (!block.first.empty()) blocks.push_back(std::move(block));
  }
  if (blocks.empty()) return 0;

  const bool one_block = blocks.size() == 1;
  std::vector<int> block_rank(blocks.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel && !one_block)
#endif
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    const auto& [rids, cids] = blocks[b];
    std::vector<std::vector<Rat>> rows(rids.size());
    for (std::size_t i = 0; i < rids.size(); ++i) {
      rows[i].resize(cids.size());
      for (std::size_t j = 0; j < cids.size(); ++j) {
        rows[i][j] = m.at(rids[i], cids[j]);
      }
    }
    block_rank[b] = eliminate(rows, exec == Exec::parallel && one_block);
  }
  int total = 0;
  for (int r : block_rank) total += r;
  return total;
}

int rank_reference(const RatMatrix& m) {
  std::vector<std::vector<Rat>> rows(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    rows[r].resize(m.cols());
    for (int c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  }
  return eliminate(rows, false);
}

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m) {
  const int nr = m.rows(), nc = m.cols();
  std::vector<std::vector<Rat>> rows(nr);
  for (int r = 0; r < nr; ++r) {
    rows[r].resize(nc);
    for (int c = 0; c < nc; ++c) rows[r][c] = m.at(r, c);
  }

  // Reduced row echelon form, then one kernel vector per free column.
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < nc && r < nr; ++col) {
    int pivot = -1;
    for (int i = r; i < nr; ++i) {
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    Rat inv = rows[r][col];
    for (int j = col; j < nc; ++j) rows[r][j] /= inv;
    for (int i = 0; i < nr; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rat factor = rows[i][col];
      for (int j = col; j < nc; ++j) rows[i][j] -= factor * rows[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }

  std::vector<char> is_pivot(nc, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(nc);
    v[free] = 1;
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr) {
      v[pivot_col[pr]] = -rows[pr][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

void write_triplets(std::ostream& os, const RatMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m.at(r, c) != 0) {
        os << r << ' ' << c << ' ' << rat_to_string(m.at(r, c)) << '\n';
      }
    }
  }
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m.at(r, c);
    }
    os << '\n';
  }
  return os;
}

}  // namespace sheafnet
