#pragma once

#include <map>
#include <vector>

#include "linfty/poly.hpp"

namespace linfty {

// Differential forms and multivector fields on R^m with polynomial
// coefficients.  Keys are strictly increasing index tuples; antisymmetry is
// implicit in that normalization.
template <class Tag>
class Alternating {
 public:
  Alternating() = default;
  Alternating(PolyRing ring, int degree) : ring_(ring), degree_(degree) {}
  Alternating(PolyRing ring, int degree, std::map<std::vector<int>, Poly> comps);

  const PolyRing& ring() const { return ring_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Poly>& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  // Accumulate c * basis[indices] with sign normalization; zero when an
  // index repeats.
  void add_term(std::vector<int> indices, Poly c);
  const Poly& coeff(const std::vector<int>& indices) const;  // increasing tuple

  Alternating& operator+=(const Alternating& other);
  Alternating& operator-=(const Alternating& other);
  Alternating& operator*=(const Rat& s);
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(const Rat& s, Alternating a) { return a *= s; }
  friend bool operator==(const Alternating& a, const Alternating& b) {
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  PolyRing ring_;
  int degree_ = 0;
  std::map<std::vector<int>, Poly> comps_;
};

struct FormTag {};
struct MultivectorTag {};
using PolyForm = Alternating<FormTag>;
using PolyMultivector = Alternating<MultivectorTag>;

PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyMultivector wedge(const PolyMultivector& a, const PolyMultivector& b);

// Exterior derivative.
PolyForm d(const PolyForm& a);

// Contraction with a polynomial vector field (degree-1 multivector).
PolyForm contract(const PolyMultivector& field, const PolyForm& a);

// Lie derivative along a vector field: Cartan's formula d i_X + i_X d.
PolyForm lie_derivative(const PolyMultivector& field, const PolyForm& a);

// Schouten-Nijenhuis bracket of multivector fields on R^m; extends the Lie
// bracket of vector fields as a biderivation, [P,Q] = -(-1)^{(p-1)(q-1)}[Q,P].
PolyMultivector schouten(const PolyMultivector& p, const PolyMultivector& q);

// Convenience constructors.
PolyForm form_basis(PolyRing ring, std::vector<int> indices, Poly c);
PolyMultivector field_basis(PolyRing ring, std::vector<int> indices, Poly c);
// Pairing of a 1-form with a vector field.
Poly pair_form_field(const PolyForm& a, const PolyMultivector& x);

}  // namespace linfty
