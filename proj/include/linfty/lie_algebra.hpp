#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linfty/linalg.hpp"
#include "linfty/symform.hpp"

namespace linfty {

// Lie algebra by structure constants.  bracket[i][j] is the coefficient
// vector of [e_i, e_j]; antisymmetry is validated at construction.
struct LieAlgebra {
  std::vector<std::string> labels;
  std::vector<std::vector<RatVec>> bracket;

  int dim() const { return static_cast<int>(labels.size()); }
  RatVec apply(const RatVec& x, const RatVec& y) const;

  static LieAlgebra make(std::vector<std::string> labels,
                         std::vector<std::vector<RatVec>> bracket);

  // Structure constants c[i][j][k] with [e_i,e_j] = sum_k c[i][j][k] e_k.
  static LieAlgebra from_structure_constants(
      std::vector<std::string> labels,
      const std::vector<std::vector<RatVec>>& c) {
    return make(std::move(labels), c);
  }

  // Jacobiator on basis triples; nullopt when Jacobi holds, else the first
  // failing (i,j,k).
  std::optional<std::array<int, 3>> jacobi_witness() const;

  // The algebra as a symmetric binary degree-1 bracket on a space
  // concentrated in degree -1.
  std::pair<SpacePtr, SymValForm> as_symmetric_form() const;
};

LieAlgebra abelian_lie_algebra(int dim);
LieAlgebra nonabelian_2d();   // [e1,e2] = e2
LieAlgebra heisenberg3();     // [e1,e2] = e3
LieAlgebra sl2();             // basis h,e,f
LieAlgebra so3();             // [e_i,e_j] = e_k cyclic
LieAlgebra solvable3();       // [e1,e2] = e2, [e1,e3] = e3

}  // namespace linfty
