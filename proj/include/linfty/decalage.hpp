#pragma once

#include <map>

#include "linfty/symform.hpp"

namespace linfty {

// Same labels, all degrees shifted by p.
SpacePtr shift_space(const SpacePtr& space, int p);

// Graded skew-symmetric vector-valued form in the wedge convention, living on
// the shifted space.  Canonical monomials are ascending; a slot of even
// degree never repeats (skew symmetry forces the coefficient to zero there).
class SkewValForm {
 public:
  SkewValForm() = default;
  SkewValForm(SpacePtr space, int arity, int degree, std::map<Monomial, Element> table);

  const SpacePtr& space() const { return space_; }
  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const std::map<Monomial, Element>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  // Koszul-times-parity normalization.
  Element eval_slots(std::span<const int> slots) const;

  friend bool operator==(const SkewValForm& a, const SkewValForm& b) {
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.table_ == b.table_;
  }

 private:
  SpacePtr space_;
  int arity_ = 0;
  int degree_ = 0;
  std::map<Monomial, Element> table_;
};

// Family of skew brackets indexed by arity (the image of a degree-1 FormSum
// under decalage).
struct SkewFamily {
  SpacePtr space;  // shifted space
  std::map<int, SkewValForm> parts;

  friend bool operator==(const SkewFamily& a, const SkewFamily& b) {
    return a.parts == b.parts;
  }
};

// l_i(X_1..X_i) = (-1)^{(i-1)|X_1|+(i-2)|X_2|+...+|X_{i-1}|} l'_i(X_1..X_i),
// degrees measured on the symmetric side.  Input must have form degree 1;
// the skew part of arity i carries map degree 2-i on the shifted space.
SkewFamily decalage_to_skew(const FormSum& mu);
FormSum decalage_to_symmetric(const SkewFamily& family);

// Residual of the skew-convention generalized Jacobi identity
//   sum_{i+j=n+1} sum_{Sh(i,j-1)} (-1)^{i(j-1)} eps(sigma) sign(sigma)
//       l'_j(l'_i(X_s1..X_si), ..., X_sn)
// on a basis tuple of the shifted space.
Element skew_jacobi_residual(const SkewFamily& family, std::span<const int> slots);

// Ascending basis tuples of the shifted space; slots of even degree never
// repeat (the skew-side counterpart of enumerate_monomials).
std::vector<Monomial> enumerate_skew_monomials(const GradedVectorSpace& space, int size);

}  // namespace linfty
