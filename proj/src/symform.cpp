#include "linfty/symform.hpp"

#include <algorithm>

#include "linfty/config.hpp"
#include "linfty/errors.hpp"

namespace linfty {

std::pair<int, Monomial> canonical_monomial(const GradedVectorSpace& space,
                                            std::span<const int> slots) {
  Monomial m(slots.begin(), slots.end());
  int sign = 1;
  // insertion sort, tracking the Koszul sign of each adjacent swap
  for (size_t i = 1; i < m.size(); ++i) {
    for (size_t j = i; j > 0 && m[j] < m[j - 1]; --j) {
      if ((space.slot_degree(m[j]) & 1) && (space.slot_degree(m[j - 1]) & 1))
        sign = -sign;
      std::swap(m[j], m[j - 1]);
    }
  }
  for (size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && (space.slot_degree(m[i]) & 1)) return {0, std::move(m)};
  return {sign, std::move(m)};
}

std::vector<Monomial> enumerate_monomials(const GradedVectorSpace& space, int size) {
  require_arity(size, "enumerate_monomials");
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int s = from; s < space.dim(); ++s) {
      if (!cur.empty() && cur.back() == s && (space.slot_degree(s) & 1)) continue;
      cur.push_back(s);
      self(self, s);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

SymValForm::SymValForm(SpacePtr space, int arity, int degree,
                       std::map<Monomial, Element> table)
    : space_(std::move(space)), arity_(arity), degree_(degree) {
  require_arity(arity, "SymValForm");
  for (auto& [mono, value] : table) {
    if (static_cast<int>(mono.size()) != arity_)
      throw InputError("monomial size does not match form arity");
    auto [sign, canon] = canonical_monomial(*space_, mono);
    if (canon != mono || sign != 1)
      throw InputError("monomial not in canonical order");
    if (value.is_zero()) continue;
    int want = degree_;
    for (int s : mono) want += space_->slot_degree(s);
    for (int s = 0; s < space_->dim(); ++s) {
      if (!rat_is_zero(value[s]) && space_->slot_degree(s) != want)
        throw InputError("form output violates degree coherence");
    }
    table_.emplace(mono, std::move(value));
  }
}

SymValForm SymValForm::zero(SpacePtr space, int arity, int degree) {
  return SymValForm(std::move(space), arity, degree, {});
}

SymValForm SymValForm::from_element(const Element& x) {
  if (x.is_zero())
    throw InputError("arity-0 form from zero element has no well-defined degree");
  std::map<Monomial, Element> table;
  table.emplace(Monomial{}, x);
  return SymValForm(x.space(), 0, x.degree_of(), std::move(table));
}

Element SymValForm::eval_slots(std::span<const int> slots) const {
  if (static_cast<int>(slots.size()) != arity_)
    throw InputError("eval_slots: arity mismatch");
  auto [sign, canon] = canonical_monomial(*space_, slots);
  if (sign == 0) return Element::zero(space_);
  auto it = table_.find(canon);
  if (it == table_.end()) return Element::zero(space_);
  Element out = it->second;
  if (sign < 0) out *= Rat(-1);
  return out;
}

Element SymValForm::eval(std::span<const Element> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw InputError("eval: arity mismatch");
  for (const auto& a : args) {
    if (!same_space(space_, a.space())) throw InputError("eval: foreign space");
    if (!a.is_zero()) a.degree_of();  // homogeneity required
  }
  Element acc = Element::zero(space_);
  std::vector<int> slots(arity_);
  Rat coeff;
  auto rec = [&](auto&& self, int pos, const Rat& c) -> void {
    if (rat_is_zero(c)) return;
    if (pos == arity_) {
      Element v = eval_slots(slots);
      v *= c;
      acc += v;
      return;
    }
    for (int s = 0; s < space_->dim(); ++s) {
      const Rat& x = args[pos][s];
      if (rat_is_zero(x)) continue;
      slots[pos] = s;
      self(self, pos + 1, c * x);
    }
  };
  rec(rec, 0, Rat(1));
  return acc;
}

Element SymValForm::as_element() const {
  if (arity_ != 0) throw InputError("as_element on form of positive arity");
  auto it = table_.find(Monomial{});
  return it == table_.end() ? Element::zero(space_) : it->second;
}

SymValForm& SymValForm::operator+=(const SymValForm& other) {
  if (other.is_zero()) return *this;
  if (is_zero() && table_.empty() && !space_) { *this = other; return *this; }
  if (!same_space(space_, other.space_) || arity_ != other.arity_ || degree_ != other.degree_)
    throw InputError("form addition: incompatible forms");
  for (const auto& [mono, value] : other.table_) {
    auto it = table_.find(mono);
    if (it == table_.end()) {
      table_.emplace(mono, value);
    } else {
      it->second += value;
      if (it->second.is_zero()) table_.erase(it);
    }
  }
  return *this;
}

SymValForm& SymValForm::operator*=(const Rat& s) {
  if (rat_is_zero(s)) {
    table_.clear();
    return *this;
  }
  for (auto& [mono, value] : table_) value *= s;
  return *this;
}

FormSum FormSum::of(const SymValForm& part) {
  FormSum fs(part.space(), part.degree());
  fs.set_part(part);
  return fs;
}

const SymValForm* FormSum::part(int arity) const {
  auto it = parts_.find(arity);
  return it == parts_.end() ? nullptr : &it->second;
}

SymValForm FormSum::part_or_zero(int arity) const {
  if (const SymValForm* p = part(arity)) return *p;
  return SymValForm::zero(space_, arity, degree_);
}

void FormSum::set_part(SymValForm form) {
  if (!same_space(space_, form.space()) || form.degree() != degree_)
    throw InputError("FormSum::set_part: incompatible part");
  if (form.is_zero())
    parts_.erase(form.arity());
  else
    parts_.insert_or_assign(form.arity(), std::move(form));
}

FormSum& FormSum::operator+=(const FormSum& other) {
  if (other.is_zero()) return *this;
  if (!space_) { *this = other; return *this; }
  if (!same_space(space_, other.space_) || degree_ != other.degree_)
    throw InputError("FormSum addition: incompatible sums");
  for (const auto& [arity, form] : other.parts_) {
    SymValForm merged = part_or_zero(arity);
    merged += form;
    set_part(std::move(merged));
  }
  return *this;
}

FormSum& FormSum::operator-=(const FormSum& other) {
  FormSum neg = other;
  neg *= Rat(-1);
  return *this += neg;
}

FormSum& FormSum::operator*=(const Rat& s) {
  if (rat_is_zero(s)) {
    parts_.clear();
    return *this;
  }
  for (auto& [arity, form] : parts_) form *= s;
  return *this;
}

SymValForm euler_form(const SpacePtr& space) {
  std::map<Monomial, Element> table;
  for (int s = 0; s < space->dim(); ++s) {
    int d = space->slot_degree(s);
    if (d == 0) continue;
    Element v = Element::basis(space, s);
    v *= Rat(-d);
    table.emplace(Monomial{s}, std::move(v));
  }
  return SymValForm(space, 1, 0, std::move(table));
}

SymValForm identity_form(const SpacePtr& space) {
  std::map<Monomial, Element> table;
  for (int s = 0; s < space->dim(); ++s)
    table.emplace(Monomial{s}, Element::basis(space, s));
  return SymValForm(space, 1, 0, std::move(table));
}

SymValForm unary_form(const SpacePtr& space, int degree,
                      const std::vector<std::vector<Rat>>& slot_matrix) {
  std::map<Monomial, Element> table;
  for (int s = 0; s < space->dim(); ++s) {
    Element v = Element::zero(space);
    for (int t = 0; t < space->dim(); ++t) v[t] = slot_matrix[t][s];
    if (!v.is_zero()) table.emplace(Monomial{s}, std::move(v));
  }
  return SymValForm(space, 1, degree, std::move(table));
}

SymValForm compose_unary(const SymValForm& a, const SymValForm& b) {
  if (a.arity() != 1 || b.arity() != 1)
    throw InputError("compose_unary: both forms must have arity 1");
  std::map<Monomial, Element> table;
  for (int s = 0; s < a.space()->dim(); ++s) {
    int slot[1] = {s};
    Element mid = b.eval_slots(slot);
    Element out = Element::zero(a.space());
    for (int t = 0; t < a.space()->dim(); ++t) {
      if (rat_is_zero(mid[t])) continue;
      int tt[1] = {t};
      Element av = a.eval_slots(tt);
      av *= mid[t];
      out += av;
    }
    if (!out.is_zero()) table.emplace(Monomial{s}, std::move(out));
  }
  return SymValForm(a.space(), 1, a.degree() + b.degree(), std::move(table));
}

}  // namespace linfty
