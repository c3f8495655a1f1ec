#include "linfty/decalage.hpp"

#include "linfty/errors.hpp"

namespace linfty {

SpacePtr shift_space(const SpacePtr& space, int p) {
  std::vector<GradedVectorSpace::Component> comps;
  for (const auto& c : space->components())
    comps.push_back({c.degree + p, c.labels});
  return GradedVectorSpace::make(std::move(comps));
}

namespace {

// Sign accumulated when sorting slots ascending under the skew convention:
// Koszul sign times permutation parity.  Zero when an even-degree slot
// repeats.
std::pair<int, Monomial> canonical_skew(const GradedVectorSpace& space,
                                        std::span<const int> slots) {
  Monomial m(slots.begin(), slots.end());
  int sign = 1;
  for (size_t i = 1; i < m.size(); ++i) {
    for (size_t j = i; j > 0 && m[j] < m[j - 1]; --j) {
      if ((space.slot_degree(m[j]) & 1) && (space.slot_degree(m[j - 1]) & 1))
        sign = -sign;
      sign = -sign;  // parity of the adjacent transposition
      std::swap(m[j], m[j - 1]);
    }
  }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && (space.slot_degree(m[i]) & 1) == 0)
      return {0, std::move(m)};
  return {sign, std::move(m)};
}

// Exponent of the decalage sign for a tuple of symmetric-side degrees.
int decalage_sign(std::span<const int> sym_degrees) {
  int n = static_cast<int>(sym_degrees.size());
  long expo = 0;
  for (int r = 0; r < n; ++r) expo += static_cast<long>(n - 1 - r) * sym_degrees[r];
  return (expo % 2 + 2) % 2 ? -1 : 1;
}

}  // namespace

SkewValForm::SkewValForm(SpacePtr space, int arity, int degree,
                         std::map<Monomial, Element> table)
    : space_(std::move(space)), arity_(arity), degree_(degree) {
  for (auto& [mono, value] : table) {
    if (static_cast<int>(mono.size()) != arity_)
      throw InputError("skew monomial size does not match arity");
    auto [sign, canon] = canonical_skew(*space_, mono);
    if (canon != mono || sign != 1)
      throw InputError("skew monomial not in canonical order");
    if (!value.is_zero()) table_.emplace(mono, std::move(value));
  }
}

Element SkewValForm::eval_slots(std::span<const int> slots) const {
  if (static_cast<int>(slots.size()) != arity_)
    throw InputError("skew eval_slots: arity mismatch");
  auto [sign, canon] = canonical_skew(*space_, slots);
  if (sign == 0) return Element::zero(space_);
  auto it = table_.find(canon);
  if (it == table_.end()) return Element::zero(space_);
  Element out = it->second;
  if (sign < 0) out *= Rat(-1);
  return out;
}

SkewFamily decalage_to_skew(const FormSum& mu) {
  if (mu.degree() != 1)
    throw InputError("decalage_to_skew expects a degree-1 form sum");
  // E[-1] has component of degree i equal to E_{i-1}, so slot degrees go up
  // by one.
  SpacePtr shifted = shift_space(mu.space(), 1);
  SkewFamily family;
  family.space = shifted;
  for (const auto& [arity, part] : mu.parts()) {
    std::map<Monomial, Element> table;
    std::vector<int> degs(arity);
    for (const auto& [mono, value] : part.table()) {
      for (int t = 0; t < arity; ++t) degs[t] = mu.space()->slot_degree(mono[t]);
      Element moved(shifted, value.coeff());
      if (decalage_sign(degs) < 0) moved *= Rat(-1);
      table.emplace(mono, std::move(moved));
    }
    family.parts.emplace(arity, SkewValForm(shifted, arity, 2 - arity, std::move(table)));
  }
  return family;
}

FormSum decalage_to_symmetric(const SkewFamily& family) {
  SpacePtr base = shift_space(family.space, -1);
  FormSum mu(base, 1);
  for (const auto& [arity, part] : family.parts) {
    if (part.degree() != 2 - arity)
      throw InputError("decalage inverse: skew part of arity " + std::to_string(arity) +
                       " must have degree " + std::to_string(2 - arity));
    std::map<Monomial, Element> table;
    std::vector<int> degs(arity);
    for (const auto& [mono, value] : part.table()) {
      for (int t = 0; t < arity; ++t) degs[t] = base->slot_degree(mono[t]);
      Element moved(base, value.coeff());
      if (decalage_sign(degs) < 0) moved *= Rat(-1);
      table.emplace(mono, std::move(moved));
    }
    SymValForm sym(base, arity, 1, std::move(table));
    mu.set_part(std::move(sym));
  }
  return mu;
}

std::vector<Monomial> enumerate_skew_monomials(const GradedVectorSpace& space, int size) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int s = from; s < space.dim(); ++s) {
      if (!cur.empty() && cur.back() == s && (space.slot_degree(s) & 1) == 0) continue;
      cur.push_back(s);
      self(self, s);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Element skew_jacobi_residual(const SkewFamily& family, std::span<const int> slots) {
  const GradedVectorSpace& space = *family.space;
  int n = static_cast<int>(slots.size());
  std::vector<int> degs(n);
  for (int t = 0; t < n; ++t) degs[t] = space.slot_degree(slots[t]);
  Element acc = Element::zero(family.space);
  for (int i = 1; i <= n; ++i) {
    int j = n + 1 - i;
    auto it_i = family.parts.find(i);
    auto it_j = family.parts.find(j);
    if (it_i == family.parts.end() || it_j == family.parts.end()) continue;
    int front = (i * (j - 1)) % 2 ? -1 : 1;
    for (const Permutation& sigma : unshuffles(i, j - 1)) {
      int sign = front * koszul_sign(sigma, degs) * perm_sign(sigma);
      std::vector<int> inner(i);
      for (int t = 0; t < i; ++t) inner[t] = slots[sigma.img[t]];
      Element mid = it_i->second.eval_slots(inner);
      if (mid.is_zero()) continue;
      std::vector<int> outer(j);
      for (int t = 1; t < j; ++t) outer[t] = slots[sigma.img[i + t - 1]];
      for (int s = 0; s < space.dim(); ++s) {
        if (rat_is_zero(mid[s])) continue;
        outer[0] = s;
        Element val = it_j->second.eval_slots(outer);
        val *= mid[s] * sign;
        acc += val;
      }
    }
  }
  return acc;
}

}  // namespace linfty
