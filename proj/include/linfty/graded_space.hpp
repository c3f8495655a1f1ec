#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

class GradedVectorSpace;
using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

// Finite-dimensional Z-graded vector space with labelled basis slots.  Slots
// are canonically ordered by (degree, index within degree); all sign
// normalizations reference this order.  Immutable after construction.
class GradedVectorSpace {
 public:
  struct Component {
    int degree = 0;
    std::vector<std::string> labels;
  };

  static SpacePtr make(std::vector<Component> components);

  int dim() const { return static_cast<int>(slot_deg_.size()); }
  int slot_degree(int slot) const { return slot_deg_[slot]; }
  const std::string& slot_label(int slot) const { return slot_label_[slot]; }
  const std::vector<Component>& components() const { return components_; }

  // Slot id for a label; InputError if unknown.
  int slot_of(const std::string& label) const;

  // Slots of one degree, contiguous: [first, first+count).
  std::pair<int, int> degree_slots(int degree) const;  // (first, count); (0,0) if absent
  bool has_degree(int degree) const;
  int min_degree() const { return components_.front().degree; }
  int max_degree() const { return components_.back().degree; }

  bool same_structure(const GradedVectorSpace& other) const;

 private:
  GradedVectorSpace() = default;
  std::vector<Component> components_;
  std::vector<int> slot_deg_;
  std::vector<std::string> slot_label_;
  std::map<std::string, int> slot_of_label_;
  std::map<int, std::pair<int, int>> degree_range_;
};

// True when both elements/forms may interact: identical object or identical
// structure.
bool same_space(const SpacePtr& a, const SpacePtr& b);

// Dense exact-rational vector in a graded space.
class Element {
 public:
  Element() = default;
  Element(SpacePtr space, std::vector<Rat> coeff);

  static Element zero(SpacePtr space);
  static Element basis(SpacePtr space, int slot);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rat>& coeff() const { return c_; }
  const Rat& operator[](int slot) const { return c_[slot]; }
  Rat& operator[](int slot) { return c_[slot]; }

  bool is_zero() const;
  // Unique degree of a homogeneous nonzero element; NotHomogeneous otherwise.
  int degree_of() const;
  std::optional<int> homogeneous_degree() const;  // nullopt when zero or mixed

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Rat& s);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rat& s, Element a) { return a *= s; }
  friend bool operator==(const Element& a, const Element& b) { return a.c_ == b.c_; }

  std::string describe() const;  // "3/2*e1 - 1/1*f2" for witnesses

 private:
  SpacePtr space_;
  std::vector<Rat> c_;
};

}  // namespace linfty
