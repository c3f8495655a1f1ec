#pragma once

// Evaluator-valued graded forms for carriers without a finite basis (section
// spaces, Hamiltonian forms).  Elements are concrete homogeneous values; a
// form is a closure evaluated on tuples, with nullopt standing for zero.
// Insertion and the RN bracket compose lazily through the same unshuffle and
// Koszul machinery as the table-based kernel.
//
// The element type E must provide, via ADL:
//   int  gelem_degree(const E&);
//   E    gelem_add(E, const E&);
//   E    gelem_scale(const Rat&, E);
//   bool gelem_is_zero(const E&);

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "linfty/perm.hpp"
#include "linfty/rational.hpp"

namespace linfty {

template <class E>
struct GenForm {
  int arity = 0;
  int degree = 0;
  std::function<std::optional<E>(std::span<const E>)> fn;
};

template <class E>
struct GenSum {
  int degree = 0;
  std::map<int, GenForm<E>> parts;

  void set_part(GenForm<E> part) { parts.insert_or_assign(part.arity, std::move(part)); }
};

template <class E>
std::optional<E> gen_eval_part(const GenSum<E>& s, int arity, std::span<const E> args) {
  auto it = s.parts.find(arity);
  if (it == s.parts.end()) return std::nullopt;
  return it->second.fn(args);
}

namespace detail {

template <class E>
void gen_accumulate(std::optional<E>& acc, std::optional<E> value, int sign) {
  if (!value || gelem_is_zero(*value)) return;
  if (sign < 0) value = gelem_scale(Rat(-1), std::move(*value));
  if (!acc)
    acc = std::move(value);
  else
    acc = gelem_add(std::move(*acc), *value);
}

}  // namespace detail

// iota_K L evaluated on one argument tuple.
template <class E>
std::optional<E> gen_insertion_eval(const GenSum<E>& k_sum, const GenSum<E>& l_sum,
                                    int out_arity, std::span<const E> args) {
  std::optional<E> acc;
  std::vector<int> degs(args.size());
  for (size_t t = 0; t < args.size(); ++t) degs[t] = gelem_degree(args[t]);
  for (const auto& [ka, kpart] : k_sum.parts) {
    int la = out_arity - ka + 1;
    if (la <= 0) continue;  // iota into an arity-0 form vanishes
    auto lit = l_sum.parts.find(la);
    if (lit == l_sum.parts.end()) continue;
    for (const Permutation& sigma : unshuffles(ka, la - 1)) {
      int sign = koszul_sign(sigma, degs);
      std::vector<E> inner;
      inner.reserve(ka);
      for (int t = 0; t < ka; ++t) inner.push_back(args[sigma.img[t]]);
      std::optional<E> mid = kpart.fn(inner);
      if (!mid || gelem_is_zero(*mid)) continue;
      std::vector<E> outer;
      outer.reserve(la);
      outer.push_back(std::move(*mid));
      for (int t = ka; t < out_arity; ++t) outer.push_back(args[sigma.img[t]]);
      detail::gen_accumulate(acc, lit->second.fn(outer), sign);
    }
  }
  return acc;
}

template <class E>
GenSum<E> gen_insertion(GenSum<E> k_sum, GenSum<E> l_sum) {
  auto ks = std::make_shared<GenSum<E>>(std::move(k_sum));
  auto ls = std::make_shared<GenSum<E>>(std::move(l_sum));
  GenSum<E> out;
  out.degree = ks->degree + ls->degree;
  for (const auto& [ka, kpart] : ks->parts)
    for (const auto& [la, lpart] : ls->parts) {
      if (la == 0) continue;
      int m = ka + la - 1;
      if (out.parts.count(m)) continue;
      GenForm<E> part;
      part.arity = m;
      part.degree = out.degree;
      part.fn = [ks, ls, m](std::span<const E> args) {
        return gen_insertion_eval(*ks, *ls, m, args);
      };
      out.set_part(std::move(part));
    }
  return out;
}

template <class E>
GenSum<E> gen_rn_bracket(GenSum<E> k_sum, GenSum<E> l_sum) {
  int sign = (k_sum.degree * l_sum.degree) % 2 ? 1 : -1;  // -(-1)^{KL}
  auto ks = std::make_shared<GenSum<E>>(std::move(k_sum));
  auto ls = std::make_shared<GenSum<E>>(std::move(l_sum));
  GenSum<E> out;
  out.degree = ks->degree + ls->degree;
  auto add_arity = [&](int m) {
    if (m < 0 || out.parts.count(m)) return;
    GenForm<E> part;
    part.arity = m;
    part.degree = out.degree;
    part.fn = [ks, ls, m, sign](std::span<const E> args) {
      std::optional<E> acc = gen_insertion_eval(*ks, *ls, m, args);
      detail::gen_accumulate(acc, gen_insertion_eval(*ls, *ks, m, args), sign);
      return acc;
    };
    out.set_part(std::move(part));
  };
  for (const auto& [ka, kpart] : ks->parts)
    for (const auto& [la, lpart] : ls->parts) {
      if (la != 0) add_arity(ka + la - 1);
      if (ka != 0) add_arity(ka + la - 1);
    }
  return out;
}

// Direct generalized-Jacobi residual (with the curvature term when an
// arity-0 part is present) on one tuple.
template <class E>
std::optional<E> gen_jacobi_residual(const GenSum<E>& mu, std::span<const E> args) {
  int n = static_cast<int>(args.size());
  std::optional<E> acc;
  std::vector<int> degs(n);
  for (int t = 0; t < n; ++t) degs[t] = gelem_degree(args[t]);
  if (auto it0 = mu.parts.find(0); it0 != mu.parts.end()) {
    if (auto itn = mu.parts.find(n + 1); itn != mu.parts.end()) {
      std::optional<E> curv = it0->second.fn({});
      if (curv && !gelem_is_zero(*curv)) {
        std::vector<E> with;
        with.push_back(std::move(*curv));
        for (const E& a : args) with.push_back(a);
        detail::gen_accumulate(acc, itn->second.fn(with), 1);
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    int j = n + 1 - i;
    auto it_i = mu.parts.find(i);
    auto it_j = mu.parts.find(j);
    if (it_i == mu.parts.end() || it_j == mu.parts.end()) continue;
    for (const Permutation& sigma : unshuffles(i, j - 1)) {
      int sign = koszul_sign(sigma, degs);
      std::vector<E> inner;
      for (int t = 0; t < i; ++t) inner.push_back(args[sigma.img[t]]);
      std::optional<E> mid = it_i->second.fn(inner);
      if (!mid || gelem_is_zero(*mid)) continue;
      std::vector<E> outer;
      outer.push_back(std::move(*mid));
      for (int t = i; t < n; ++t) outer.push_back(args[sigma.img[t]]);
      detail::gen_accumulate(acc, it_j->second.fn(outer), sign);
    }
  }
  return acc;
}

template <class E>
bool gen_opt_is_zero(const std::optional<E>& v) {
  return !v || gelem_is_zero(*v);
}

}  // namespace linfty
