#include <vector>

#include "linfty/config.hpp"
#include "linfty/errors.hpp"
#include "linfty/symform.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace linfty {

namespace {

// Koszul sign of the unshuffle sending positions {pick} to the front, for
// the degree sequence of the monomial.
int unshuffle_sign(const GradedVectorSpace& space, const Monomial& mono,
                   const std::vector<int>& order) {
  int sign = 1;
  int n = static_cast<int>(order.size());
  for (int a = 0; a < n; ++a) {
    if ((space.slot_degree(mono[order[a]]) & 1) == 0) continue;
    for (int b = a + 1; b < n; ++b)
      if (order[a] > order[b] && (space.slot_degree(mono[order[b]]) & 1)) sign = -sign;
  }
  return sign;
}

// One output value of iota_K L on a canonical monomial: sum over the
// (k, m-k)-unshuffles of the monomial positions.
Element insertion_cell(const SymValForm& k_form, const SymValForm& l_form,
                       const Monomial& mono) {
  const GradedVectorSpace& space = *k_form.space();
  int m = static_cast<int>(mono.size());
  int k = k_form.arity();
  Element acc = Element::zero(k_form.space());

  std::vector<int> order(m);
  std::vector<int> pick(k);
  for (int t = 0; t < k; ++t) pick[t] = t;
  std::vector<int> inner(k), rest(m - k + 1);
  for (;;) {
    // order = pick ++ complement
    {
      int w = 0;
      std::vector<bool> used(m, false);
      for (int v : pick) {
        order[w++] = v;
        used[v] = true;
      }
      for (int v = 0; v < m; ++v)
        if (!used[v]) order[w++] = v;
    }
    int sign = unshuffle_sign(space, mono, order);
    if (sign != 0) {
      for (int t = 0; t < k; ++t) inner[t] = mono[order[t]];
      Element mid = k_form.eval_slots(inner);
      if (!mid.is_zero()) {
        for (int t = k; t < m; ++t) rest[t - k + 1] = mono[order[t]];
        for (int s = 0; s < space.dim(); ++s) {
          if (rat_is_zero(mid[s])) continue;
          rest[0] = s;
          Element val = l_form.eval_slots(rest);
          if (val.is_zero()) continue;
          val *= (sign < 0 ? -mid[s] : mid[s]);
          acc += val;
        }
      }
    }
    // next k-combination of {0..m-1}
    int t = k - 1;
    while (t >= 0 && pick[t] == m - k + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
  }
  return acc;
}

SymValForm assemble(const SymValForm& k_form, const SymValForm& l_form, int out_arity,
                    const std::vector<Monomial>& monos, std::vector<Element> values) {
  std::map<Monomial, Element> table;
  for (size_t i = 0; i < monos.size(); ++i) {
    if (values[i].is_zero()) continue;
    table.emplace(monos[i], std::move(values[i]));
  }
  return SymValForm(k_form.space(), out_arity, k_form.degree() + l_form.degree(),
                    std::move(table));
}

enum class Mode { serial, parallel };

SymValForm insertion_impl(const SymValForm& k_form, const SymValForm& l_form, Mode mode) {
  if (!same_space(k_form.space(), l_form.space()))
    throw InputError("insertion: forms live on different spaces");
  // i_K L = 0 whenever L has arity 0
  if (l_form.arity() == 0)
    return SymValForm::zero(k_form.space(), 0, k_form.degree() + l_form.degree());
  int m = k_form.arity() + l_form.arity() - 1;
  require_arity(m, "insertion");
  if (k_form.is_zero() || l_form.is_zero())
    return SymValForm::zero(k_form.space(), m, k_form.degree() + l_form.degree());

  // Arity-0 K inserts as first argument: (i_X L)(...) = L(X, ...).
  if (k_form.arity() == 0) {
    Element x = k_form.as_element();
    std::map<Monomial, Element> table;
    for (const Monomial& mono : enumerate_monomials(*k_form.space(), m)) {
      std::vector<int> slots(m + 1);
      for (int t = 0; t < m; ++t) slots[t + 1] = mono[t];
      Element acc = Element::zero(k_form.space());
      for (int s = 0; s < k_form.space()->dim(); ++s) {
        if (rat_is_zero(x[s])) continue;
        slots[0] = s;
        Element val = l_form.eval_slots(slots);
        val *= x[s];
        acc += val;
      }
      if (!acc.is_zero()) table.emplace(mono, std::move(acc));
    }
    return SymValForm(k_form.space(), m, k_form.degree() + l_form.degree(),
                      std::move(table));
  }

  std::vector<Monomial> monos = enumerate_monomials(*k_form.space(), m);
  std::vector<Element> values(monos.size());
  if (mode == Mode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long i = 0; i < static_cast<long>(monos.size()); ++i)
      values[i] = insertion_cell(k_form, l_form, monos[i]);
  } else {
    for (size_t i = 0; i < monos.size(); ++i)
      values[i] = insertion_cell(k_form, l_form, monos[i]);
  }
  return assemble(k_form, l_form, m, monos, std::move(values));
}

}  // namespace

SymValForm insertion_pair_serial(const SymValForm& k_form, const SymValForm& l_form) {
  return insertion_impl(k_form, l_form, Mode::serial);
}

SymValForm insertion_pair(const SymValForm& k_form, const SymValForm& l_form) {
  return insertion_impl(k_form, l_form, Mode::parallel);
}

FormSum insertion(const FormSum& k_form, const FormSum& l_form) {
  if (!same_space(k_form.space(), l_form.space()))
    throw InputError("insertion: forms live on different spaces");
  FormSum out(k_form.space(), k_form.degree() + l_form.degree());
  for (const auto& [ka, kpart] : k_form.parts())
    for (const auto& [la, lpart] : l_form.parts()) {
      SymValForm cell = insertion_pair(kpart, lpart);
      if (cell.is_zero()) continue;
      SymValForm merged = out.part_or_zero(cell.arity());
      merged += cell;
      out.set_part(std::move(merged));
    }
  return out;
}

FormSum rn_bracket(const FormSum& k_form, const FormSum& l_form) {
  FormSum ikl = insertion(k_form, l_form);
  FormSum ilk = insertion(l_form, k_form);
  int sign = (k_form.degree() * l_form.degree()) % 2 ? -1 : 1;
  if (sign < 0)
    return ikl += ilk;
  return ikl -= ilk;
}

FormSum rn_bracket(const SymValForm& k_form, const SymValForm& l_form) {
  return rn_bracket(FormSum::of(k_form), FormSum::of(l_form));
}

}  // namespace linfty
