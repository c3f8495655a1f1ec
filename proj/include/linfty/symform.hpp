#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linfty/graded_space.hpp"
#include "linfty/perm.hpp"

namespace linfty {

// Canonical symmetric basis monomial: slot ids sorted ascending; a slot of
// odd degree never repeats (its coefficient is forced to zero by graded
// symmetry).
using Monomial = std::vector<int>;

// Sorts arbitrary slots into canonical order, returning the Koszul sign of
// the sorting permutation; sign 0 when an odd-degree slot repeats.
std::pair<int, Monomial> canonical_monomial(const GradedVectorSpace& space,
                                            std::span<const int> slots);

// All canonical monomials of the given size (odd-degree repeats excluded),
// lexicographic.
std::vector<Monomial> enumerate_monomials(const GradedVectorSpace& space, int size);

// Graded symmetric vector-valued k-form with exact rational coefficients.
// Values are stored on canonical monomials only; evaluation re-derives Koszul
// signs.  Stored outputs are homogeneous of degree sum(inputs) + degree().
class SymValForm {
 public:
  SymValForm() = default;
  // Normalizes: drops zero outputs, checks degree coherence.
  SymValForm(SpacePtr space, int arity, int degree, std::map<Monomial, Element> table);

  static SymValForm zero(SpacePtr space, int arity, int degree);
  // Arity-0 form identified with a homogeneous element (degree = |X|).
  static SymValForm from_element(const Element& x);

  const SpacePtr& space() const { return space_; }
  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const std::map<Monomial, Element>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  // Value on a basis tuple in any order (Koszul-normalized).
  Element eval_slots(std::span<const int> slots) const;
  // Multilinear value on homogeneous elements.
  Element eval(std::span<const Element> args) const;
  // The element identified with an arity-0 form.
  Element as_element() const;

  SymValForm& operator+=(const SymValForm& other);
  SymValForm& operator*=(const Rat& s);
  friend SymValForm operator+(SymValForm a, const SymValForm& b) { return a += b; }
  friend SymValForm operator*(const Rat& s, SymValForm a) { return a *= s; }
  friend bool operator==(const SymValForm& a, const SymValForm& b) {
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.table_ == b.table_;
  }

 private:
  SpacePtr space_;
  int arity_ = 0;
  int degree_ = 0;
  std::map<Monomial, Element> table_;
};

// Finite sum of symmetric vector-valued forms across arities, one part per
// arity, all of one graded-map degree.
class FormSum {
 public:
  FormSum() = default;
  FormSum(SpacePtr space, int degree) : space_(std::move(space)), degree_(degree) {}

  static FormSum of(const SymValForm& part);
  static FormSum zero(SpacePtr space, int degree) { return FormSum(std::move(space), degree); }

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  const std::map<int, SymValForm>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  int max_arity() const { return parts_.empty() ? 0 : parts_.rbegin()->first; }

  const SymValForm* part(int arity) const;
  SymValForm part_or_zero(int arity) const;
  void set_part(SymValForm form);  // drops zero parts

  FormSum& operator+=(const FormSum& other);
  FormSum& operator-=(const FormSum& other);
  FormSum& operator*=(const Rat& s);
  friend FormSum operator+(FormSum a, const FormSum& b) { return a += b; }
  friend FormSum operator-(FormSum a, const FormSum& b) { return a -= b; }
  friend FormSum operator*(const Rat& s, FormSum a) { return a *= s; }
  friend bool operator==(const FormSum& a, const FormSum& b) {
    return a.degree_ == b.degree_ && a.parts_ == b.parts_;
  }

 private:
  SpacePtr space_;
  int degree_ = 0;
  std::map<int, SymValForm> parts_;
};

// --- insertion / Richardson-Nijenhuis kernel ------------------------------
//
// insertion_pair_serial is the reference implementation; insertion_pair runs
// the same per-output-monomial sums under OpenMP.  Results are identical;
// tests compare them and tools/bench_rn times them.

SymValForm insertion_pair_serial(const SymValForm& k_form, const SymValForm& l_form);
SymValForm insertion_pair(const SymValForm& k_form, const SymValForm& l_form);

FormSum insertion(const FormSum& k_form, const FormSum& l_form);

// [K,L] = i_K L - (-1)^{K.deg * L.deg} i_L K, degree K.deg + L.deg.
FormSum rn_bracket(const FormSum& k_form, const FormSum& l_form);
FormSum rn_bracket(const SymValForm& k_form, const SymValForm& l_form);

// Euler map S(X) = -|X| X as an arity-1 degree-0 form.
SymValForm euler_form(const SpacePtr& space);
SymValForm identity_form(const SpacePtr& space);
// Unary form from a slot matrix acting within fixed degrees (columns indexed
// by slots); used by deformers and tensor lifts.
SymValForm unary_form(const SpacePtr& space, int degree,
                      const std::vector<std::vector<Rat>>& slot_matrix);
// Composition A(B(x)) of unary forms.
SymValForm compose_unary(const SymValForm& a, const SymValForm& b);

}  // namespace linfty
