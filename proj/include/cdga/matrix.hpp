#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cdga/field.hpp"

namespace cdga {

// Sparse exact matrix over a field K. Entries live in a (row,col)-keyed map;
// absent entries are zero. Elimination is deterministic: pivots are chosen in
// (col, row) lexicographic order, so witnesses (solutions, kernels) are
// reproducible. A dense working copy is used below 64x64, a sparse row list
// above; RREF is canonical so both paths agree (and tests force both).
template <class K>
class Matrix {
 public:
  enum class Elim { Auto, Dense, Sparse };

  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw UsageError("negative matrix shape");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, K(1));
    return m;
  }

  static Matrix from_rows(std::vector<std::vector<K>> rows) {
    int r = (int)rows.size();
    int c = r ? (int)rows[0].size() : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if ((int)rows[i].size() != c) throw UsageError("ragged row list");
      for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<K>>& cols, int nrows) {
    Matrix m(nrows, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j) {
      if ((int)cols[j].size() != nrows) throw UsageError("bad column length");
      for (int i = 0; i < nrows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K at(int r, int c) const {
    check_index(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? K(0) : it->second;
  }

  void set(int r, int c, const K& v) {
    check_index(r, c);
    if (v == K(0))
      entries_.erase({r, c});
    else
      entries_[{r, c}] = v;
  }

  bool is_zero() const { return entries_.empty(); }
  const std::map<std::pair<int, int>, K>& entries() const { return entries_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (auto& [rc, v] : o.entries_) r.set(rc.first, rc.second, r.at(rc.first, rc.second) + v);
    return r;
  }
  Matrix operator-(const Matrix& o) const { return *this + o.scaled(K(-1)); }
  Matrix operator-() const { return scaled(K(-1)); }

  Matrix scaled(const K& s) const {
    Matrix r(rows_, cols_);
    if (s == K(0)) return r;
    for (auto& [rc, v] : entries_) r.set(rc.first, rc.second, s * v);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw UsageError("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    std::map<std::pair<int, int>, K> acc;
    for (auto& [rc, v] : entries_) {
      auto [i, k] = rc;
      auto it = o.entries_.lower_bound({k, 0});
      for (; it != o.entries_.end() && it->first.first == k; ++it)
        acc[{i, it->first.second}] += v * it->second;
    }
    for (auto& [rc, v] : acc)
      if (v != K(0)) r.entries_[rc] = v;
    return r;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if ((int)v.size() != cols_) throw UsageError("matrix-vector shape mismatch");
    std::vector<K> out(rows_, K(0));
    for (auto& [rc, w] : entries_) out[rc.first] += w * v[rc.second];
    return out;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (auto& [rc, v] : entries_) r.entries_[{rc.second, rc.first}] = v;
    return r;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw UsageError("hstack row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    r.entries_ = a.entries_;
    for (auto& [rc, v] : b.entries_) r.entries_[{rc.first, rc.second + a.cols_}] = v;
    return r;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw UsageError("vstack col mismatch");
    Matrix r(a.rows_ + b.rows_, a.cols_);
    r.entries_ = a.entries_;
    for (auto& [rc, v] : b.entries_) r.entries_[{rc.first + a.rows_, rc.second}] = v;
    return r;
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
      throw UsageError("block out of range");
    Matrix r(nr, nc);
    auto it = entries_.lower_bound({r0, 0});
    for (; it != entries_.end() && it->first.first < r0 + nr; ++it) {
      auto [i, j] = it->first;
      if (j >= c0 && j < c0 + nc) r.entries_[{i - r0, j - c0}] = it->second;
    }
    return r;
  }

  void insert_block(int r0, int c0, const Matrix& m) {
    if (r0 < 0 || c0 < 0 || r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_)
      throw UsageError("insert_block out of range");
    for (auto& [rc, v] : m.entries_) set(r0 + rc.first, c0 + rc.second, v);
  }

  struct Echelon {
    Matrix reduced;
    std::vector<int> pivots;  // pivot column of each pivot row, ascending
    int rank = 0;
  };

  Echelon rref(Elim mode = Elim::Auto) const {
    bool dense = mode == Elim::Dense ||
                 (mode == Elim::Auto && rows_ < 64 && cols_ < 64);
    return dense ? rref_dense() : rref_sparse();
  }

  int rank(Elim mode = Elim::Auto) const { return rref(mode).rank; }

  // First solution in pivot order: free variables are set to zero.
  std::optional<std::vector<K>> solve(const std::vector<K>& b,
                                      Elim mode = Elim::Auto) const {
    return solve_info(b, mode).x;
  }

  struct SolveInfo {
    std::optional<std::vector<K>> x;
    int rank_a = 0;
    int rank_aug = 0;
  };

  SolveInfo solve_info(const std::vector<K>& b, Elim mode = Elim::Auto) const {
    if ((int)b.size() != rows_) throw UsageError("solve rhs length mismatch");
    Matrix bm(rows_, 1);
    for (int i = 0; i < rows_; ++i) bm.set(i, 0, b[i]);
    Echelon e = hstack(*this, bm).rref(mode);
    SolveInfo info;
    info.rank_aug = e.rank;
    info.rank_a = e.rank;
    for (int col : e.pivots)
      if (col == cols_) { info.rank_a = e.rank - 1; return info; }
    std::vector<K> x(cols_, K(0));
    for (int i = 0; i < (int)e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced.at(i, cols_);
    info.x = std::move(x);
    return info;
  }

  std::vector<std::vector<K>> kernel_basis(Elim mode = Elim::Auto) const {
    Echelon e = rref(mode);
    std::vector<char> is_pivot(cols_, 0);
    for (int c : e.pivots) is_pivot[c] = 1;
    std::vector<std::vector<K>> basis;
    for (int j = 0; j < cols_; ++j) {
      if (is_pivot[j]) continue;
      std::vector<K> v(cols_, K(0));
      v[j] = K(1);
      for (int i = 0; i < (int)e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced.at(i, j);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Echelon e = hstack(*this, identity(rows_)).rref();
    if (e.rank < rows_) return std::nullopt;
    for (int c : e.pivots)
      if (c >= cols_) return std::nullopt;
    return e.reduced.block(0, cols_, rows_, cols_);
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw UsageError("matrix index out of range");
  }
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix shape mismatch");
  }

  Echelon rref_dense() const {
    std::vector<std::vector<K>> w(rows_, std::vector<K>(cols_, K(0)));
    for (auto& [rc, v] : entries_) w[rc.first][rc.second] = v;
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < cols_ && lead < rows_; ++col) {
      int piv = -1;
      for (int r = lead; r < rows_; ++r)
        if (w[r][col] != K(0)) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(w[piv], w[lead]);
      K inv = K(1) / w[lead][col];
      for (int j = col; j < cols_; ++j) w[lead][j] = w[lead][j] * inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == lead || w[r][col] == K(0)) continue;
        K f = w[r][col];
        for (int j = col; j < cols_; ++j) w[r][j] = w[r][j] - f * w[lead][j];
      }
      pivots.push_back(col);
      ++lead;
    }
    Echelon e;
    e.reduced = Matrix(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (w[i][j] != K(0)) e.reduced.entries_[{i, j}] = w[i][j];
    e.pivots = std::move(pivots);
    e.rank = (int)e.pivots.size();
    return e;
  }

  Echelon rref_sparse() const {
    std::vector<std::map<int, K>> w(rows_);
    for (auto& [rc, v] : entries_) w[rc.first][rc.second] = v;
    auto axpy = [&](std::map<int, K>& dst, const K& f, const std::map<int, K>& src) {
      for (auto& [j, v] : src) {
        auto it = dst.find(j);
        if (it == dst.end()) {
          K nv = -(f * v);
          if (nv != K(0)) dst[j] = nv;
        } else {
          it->second -= f * v;
          if (it->second == K(0)) dst.erase(it);
        }
      }
    };
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < cols_ && lead < rows_; ++col) {
      int piv = -1;
      for (int r = lead; r < rows_; ++r) {
        auto it = w[r].find(col);
        if (it != w[r].end()) { piv = r; break; }
      }
      if (piv < 0) continue;
      std::swap(w[piv], w[lead]);
      K inv = K(1) / w[lead][col];
      for (auto& [j, v] : w[lead]) v *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == lead) continue;
        auto it = w[r].find(col);
        if (it == w[r].end()) continue;
        K f = it->second;
        axpy(w[r], f, w[lead]);
      }
      pivots.push_back(col);
      ++lead;
    }
    Echelon e;
    e.reduced = Matrix(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (auto& [j, v] : w[i]) e.reduced.entries_[{i, j}] = v;
    e.pivots = std::move(pivots);
    e.rank = (int)e.pivots.size();
    return e;
  }

  int rows_ = 0, cols_ = 0;
  std::map<std::pair<int, int>, K> entries_;
};

}  // namespace cdga
