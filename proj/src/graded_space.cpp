#include "linfty/graded_space.hpp"

#include <algorithm>
#include <set>

#include "linfty/errors.hpp"

namespace linfty {

SpacePtr GradedVectorSpace::make(std::vector<Component> components) {
  std::sort(components.begin(), components.end(),
            [](const Component& a, const Component& b) { return a.degree < b.degree; });
  std::set<int> degrees;
  std::set<std::string> labels;
  int total = 0;
  for (const auto& comp : components) {
    if (!degrees.insert(comp.degree).second)
      throw InputError("duplicate degree " + std::to_string(comp.degree));
    if (comp.labels.empty())
      throw InputError("empty component at degree " + std::to_string(comp.degree));
    for (const auto& l : comp.labels) {
      if (l.empty() || !labels.insert(l).second)
        throw InputError("duplicate or empty basis label '" + l + "'");
    }
    total += static_cast<int>(comp.labels.size());
  }
  if (total < 1) throw InputError("graded space must have total dimension >= 1");

  auto space = std::shared_ptr<GradedVectorSpace>(new GradedVectorSpace());
  space->components_ = std::move(components);
  for (const auto& comp : space->components_) {
    int first = static_cast<int>(space->slot_deg_.size());
    for (const auto& l : comp.labels) {
      space->slot_of_label_[l] = static_cast<int>(space->slot_deg_.size());
      space->slot_deg_.push_back(comp.degree);
      space->slot_label_.push_back(l);
    }
    space->degree_range_[comp.degree] = {first, static_cast<int>(comp.labels.size())};
  }
  return space;
}

int GradedVectorSpace::slot_of(const std::string& label) const {
  auto it = slot_of_label_.find(label);
  if (it == slot_of_label_.end()) throw InputError("unknown basis label '" + label + "'");
  return it->second;
}

std::pair<int, int> GradedVectorSpace::degree_slots(int degree) const {
  auto it = degree_range_.find(degree);
  if (it == degree_range_.end()) return {0, 0};
  return it->second;
}

bool GradedVectorSpace::has_degree(int degree) const {
  return degree_range_.count(degree) != 0;
}

bool GradedVectorSpace::same_structure(const GradedVectorSpace& other) const {
  if (components_.size() != other.components_.size()) return false;
  for (size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].degree != other.components_[i].degree ||
        components_[i].labels != other.components_[i].labels)
      return false;
  }
  return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!a || !b) return false;
  return a == b || a->same_structure(*b);
}

Element::Element(SpacePtr space, std::vector<Rat> coeff)
    : space_(std::move(space)), c_(std::move(coeff)) {
  if (static_cast<int>(c_.size()) != space_->dim())
    throw InputError("element coefficient vector has wrong length");
}

Element Element::zero(SpacePtr space) {
  std::vector<Rat> c(space->dim(), Rat(0));
  return Element(std::move(space), std::move(c));
}

Element Element::basis(SpacePtr space, int slot) {
  Element e = zero(std::move(space));
  e.c_[slot] = 1;
  return e;
}

bool Element::is_zero() const {
  for (const auto& x : c_)
    if (!rat_is_zero(x)) return false;
  return true;
}

std::optional<int> Element::homogeneous_degree() const {
  std::optional<int> deg;
  for (int s = 0; s < static_cast<int>(c_.size()); ++s) {
    if (rat_is_zero(c_[s])) continue;
    int d = space_->slot_degree(s);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

int Element::degree_of() const {
  auto deg = homogeneous_degree();
  if (!deg) throw NotHomogeneous(is_zero() ? "degree_of(zero element)"
                                           : "element mixes degrees");
  return *deg;
}

Element& Element::operator+=(const Element& other) {
  if (!same_space(space_, other.space_)) throw InputError("element spaces differ");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  if (!same_space(space_, other.space_)) throw InputError("element spaces differ");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

Element& Element::operator*=(const Rat& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

std::string Element::describe() const {
  std::string out;
  for (int s = 0; s < static_cast<int>(c_.size()); ++s) {
    if (rat_is_zero(c_[s])) continue;
    if (!out.empty()) out += " + ";
    out += rat_str(c_[s]) + "*" + space_->slot_label(s);
  }
  return out.empty() ? "0" : out;
}

}  // namespace linfty
