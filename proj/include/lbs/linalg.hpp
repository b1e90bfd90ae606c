#pragma once

// Exact linear algebra over the rationals: an incremental sparse row reducer
// (kept in fully reduced echelon form) and a handful of dense helpers for the
// small matrices produced by the structure maps and the homology ranks.

#include <map>
#include <optional>
#include <vector>

#include "lbs/common.hpp"

namespace lbs {

// Sparse vector, keyed by column index.  Column 0 has the highest pivot
// preference; callers choose the column numbering accordingly.
using SVec = std::map<int, Rat>;

inline void svec_axpy(SVec& target, const Rat& c, const SVec& src) {
  if (c == 0) return;
  for (const auto& [col, v] : src) {
    Rat& t = target[col];
    t += c * v;
    if (t == 0) target.erase(col);
  }
}

// Maintains a set of rows in reduced row echelon form.  Pivots are always the
// smallest remaining column of each incoming row, so columns listed first are
// eliminated first and the trailing columns end up spanning the quotient.
class RowReducer {
 public:
  // Fully reduce v against the current rows.
  SVec reduce(SVec v) const {
    SVec out;
    while (!v.empty()) {
      auto [col, coeff] = *v.begin();
      v.erase(v.begin());
      auto it = rows_.find(col);
      if (it == rows_.end()) {
        out.emplace(col, coeff);
      } else {
        // row has pivot coefficient 1 at col; cancel it.
        for (auto jt = std::next(it->second.begin()); jt != it->second.end();
             ++jt) {
          Rat& t = v[jt->first];
          t -= coeff * jt->second;
          if (t == 0) v.erase(jt->first);
        }
      }
    }
    return out;
  }

  // Returns true if the row was independent (rank increased).
  bool add_row(SVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    auto [piv, coeff] = *v.begin();
    for (auto& [col, val] : v) val /= coeff;
    // Back-substitute into previously stored rows to keep full reduction.
    for (auto& [p, row] : rows_) {
      auto it = row.find(piv);
      if (it == row.end()) continue;
      Rat c = it->second;
      row.erase(it);
      for (auto jt = std::next(v.begin()); jt != v.end(); ++jt) {
        Rat& t = row[jt->first];
        t -= c * jt->second;
        if (t == 0) row.erase(jt->first);
      }
    }
    rows_.emplace(piv, std::move(v));
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int col) const { return rows_.count(col) != 0; }
  const std::map<int, SVec>& rows() const { return rows_; }

 private:
  std::map<int, SVec> rows_;  // pivot column -> normalized reduced row
};

// ---- dense helpers ----

using Mat = std::vector<std::vector<Rat>>;  // row major

inline Mat mat_zero(int r, int c) { return Mat(r, std::vector<Rat>(c, Rat(0))); }

inline Mat mat_identity(int n) {
  Mat m = mat_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  check_internal(a.empty() || b.empty() || a[0].size() == b.size(),
                 "mat_mul: shape mismatch");
  int r = static_cast<int>(a.size());
  int k = r ? static_cast<int>(a[0].size()) : 0;
  int c = k ? static_cast<int>(b[0].size()) : 0;
  Mat out = mat_zero(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (int l = 0; l < c; ++l)
        if (b[j][l] != 0) out[i][l] += a[i][j] * b[j][l];
    }
  return out;
}

inline Mat mat_transpose(const Mat& a) {
  int r = static_cast<int>(a.size());
  int c = r ? static_cast<int>(a[0].size()) : 0;
  Mat out = mat_zero(c, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out[j][i] = a[i][j];
  return out;
}

inline int mat_rank(Mat a) {
  int r = static_cast<int>(a.size());
  int c = r ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    Rat inv = a[rank][col];
    for (int j = col; j < c; ++j) a[rank][j] /= inv;
    for (int i = 0; i < r; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = col; j < c; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::optional<Mat> mat_inverse(Mat a) {
  int n = static_cast<int>(a.size());
  Mat inv = mat_identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    Rat d = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Basis of the right kernel {v : a v = 0}, as columns.
inline std::vector<std::vector<Rat>> mat_kernel(Mat a) {
  int r = static_cast<int>(a.size());
  int c = r ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_of_col(c, -1);
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    Rat inv = a[rank][col];
    for (int j = col; j < c; ++j) a[rank][j] /= inv;
    for (int i = 0; i < r; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = col; j < c; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  std::vector<std::vector<Rat>> out;
  for (int col = 0; col < c; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<Rat> v(c, Rat(0));
    v[col] = 1;
    for (int j = 0; j < c; ++j)
      if (pivot_of_col[j] >= 0) v[j] = -a[pivot_of_col[j]][col];
    out.push_back(std::move(v));
  }
  return out;
}

// Solve a x = b for x (a need not be square); nullopt when inconsistent.
// When the solution is not unique, free coordinates are set to zero.
inline std::optional<std::vector<Rat>> mat_solve(Mat a, std::vector<Rat> b) {
  int r = static_cast<int>(a.size());
  int c = r ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivot_of_col(c, -1);
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    std::swap(b[rank], b[piv]);
    Rat inv = a[rank][col];
    for (int j = col; j < c; ++j) a[rank][j] /= inv;
    b[rank] /= inv;
    for (int i = 0; i < r; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = col; j < c; ++j) a[i][j] -= f * a[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  for (int i = rank; i < r; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(c, Rat(0));
  for (int col = 0; col < c; ++col)
    if (pivot_of_col[col] >= 0) x[col] = b[pivot_of_col[col]];
  return x;
}

}  // namespace lbs
