#pragma once

#include <optional>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

// Dense exact-rational matrices, row major.  Sized for the small systems this
// library solves (complements, preimages, Hamiltonian coefficients).
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatMat mat_zero(int rows, int cols);
RatMat mat_identity(int n);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat mat_add(const RatMat& a, const RatMat& b);
RatMat mat_sub(const RatMat& a, const RatMat& b);
RatMat mat_scale(const Rat& c, const RatMat& a);
RatMat mat_transpose(const RatMat& a);
bool mat_is_zero(const RatMat& a);
RatVec mat_apply(const RatMat& a, const RatVec& v);

// Gauss-Jordan; returns reduced matrix and pivot columns.
struct Rref {
  RatMat mat;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};
Rref rref(RatMat a);

// Basis of the null space, one column vector per free column, in column order.
std::vector<RatVec> kernel_basis(const RatMat& a);

// Solves a x = b exactly; nullopt when inconsistent.  When the solution is
// not unique the free variables are set to zero (deterministic).
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

std::optional<RatMat> inverse(const RatMat& a);

// True when a == c * identity for some scalar c, which is then reported.
std::optional<Rat> scalar_multiple_of_identity(const RatMat& a);

}  // namespace linfty
