#include "linfty/linalg.hpp"

#include "linfty/errors.hpp"

namespace linfty {

RatMat mat_zero(int rows, int cols) {
  return RatMat(rows, RatVec(cols, Rat(0)));
}

RatMat mat_identity(int n) {
  RatMat m = mat_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  int n = static_cast<int>(a.size());
  int k = n ? static_cast<int>(a[0].size()) : 0;
  int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  if (static_cast<int>(b.size()) != k) throw InputError("mat_mul: shape mismatch");
  RatMat c = mat_zero(n, m);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (rat_is_zero(a[i][t])) continue;
      for (int j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

RatMat mat_add(const RatMat& a, const RatMat& b) {
  RatMat c = a;
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

RatMat mat_sub(const RatMat& a, const RatMat& b) {
  RatMat c = a;
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c[i].size(); ++j) c[i][j] -= b[i][j];
  return c;
}

RatMat mat_scale(const Rat& s, const RatMat& a) {
  RatMat c = a;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

RatMat mat_transpose(const RatMat& a) {
  if (a.empty()) return a;
  RatMat t = mat_zero(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool mat_is_zero(const RatMat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!rat_is_zero(x)) return false;
  return true;
}

RatVec mat_apply(const RatMat& a, const RatVec& v) {
  RatVec out(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!rat_is_zero(a[i][j])) out[i] += a[i][j] * v[j];
  return out;
}

Rref rref(RatMat a) {
  Rref out;
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!rat_is_zero(a[i][c])) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[r], a[pivot]);
    Rat inv = 1 / a[r][c];
    for (int j = 0; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || rat_is_zero(a[i][c])) continue;
      Rat f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.mat = std::move(a);
  return out;
}

std::vector<RatVec> kernel_basis(const RatMat& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  Rref r = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rat(0));
    v[free] = 1;
    for (size_t p = 0; p < r.pivot_cols.size(); ++p) {
      // row p has leading 1 at pivot_cols[p]
      v[r.pivot_cols[p]] = -r.mat[p][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  RatMat aug = a;
  for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  Rref r = rref(std::move(aug));
  RatVec x(cols, Rat(0));
  for (size_t p = 0; p < r.pivot_cols.size(); ++p) {
    int c = r.pivot_cols[p];
    if (c == cols) return std::nullopt;  // pivot in the rhs column
    x[c] = r.mat[p][cols];
  }
  return x;
}

std::optional<RatMat> inverse(const RatMat& a) {
  int n = static_cast<int>(a.size());
  RatMat aug = a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
  }
  Rref r = rref(std::move(aug));
  if (r.rank() != n) return std::nullopt;
  RatMat inv = mat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = r.mat[i][n + j];
  return inv;
}

std::optional<Rat> scalar_multiple_of_identity(const RatMat& a) {
  if (a.empty()) return Rat(0);
  Rat c = a[0][0];
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) {
      if (i == j ? a[i][j] != c : !rat_is_zero(a[i][j])) return std::nullopt;
    }
  return c;
}

}  // namespace linfty
