#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linfty/decalage.hpp"
#include "linfty/errors.hpp"
#include "linfty/symform.hpp"
#include "test_util.hpp"

using namespace linfty;
using namespace linfty::testutil;

TEST_CASE("evaluation: zero form, arity mismatch, graded symmetry law") {
  Rng rng(11);
  auto space = random_space(rng, 5, -3, 0);
  SymValForm zero = SymValForm::zero(space, 2, 1);
  std::array<Element, 2> args = {random_homogeneous(rng, space, -1),
                                 random_homogeneous(rng, space, -2)};
  CHECK(zero.eval(args).is_zero());
  CHECK_THROWS_AS(zero.eval_slots(std::array{0}), InputError);

  for (int trial = 0; trial < 60; ++trial) {
    auto sp = random_space(rng, 6, -3, 0);
    SymValForm k = random_form(rng, sp, 2, 1);
    int d1 = sp->slot_degree(rng.below(sp->dim()));
    int d2 = sp->slot_degree(rng.below(sp->dim()));
    Element x = random_homogeneous(rng, sp, d1);
    Element y = random_homogeneous(rng, sp, d2);
    std::array<Element, 2> xy = {x, y};
    std::array<Element, 2> yx = {y, x};
    Element lhs = k.eval(xy);
    Element rhs = k.eval(yx);
    if ((d1 & 1) && (d2 & 1)) rhs *= Rat(-1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Eq kform: K(X1..Xk) equals the nested RN bracket") {
  Rng rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    auto space = random_space(rng, 5, -3, 0);
    int arity = 1 + rng.below(3);
    SymValForm k = random_form(rng, space, arity, rng.range(0, 1));
    std::vector<Element> args;
    std::vector<FormSum> arg_forms;
    bool any_zero = false;
    for (int t = 0; t < arity; ++t) {
      int deg = space->slot_degree(rng.below(space->dim()));
      Element x = random_homogeneous(rng, space, deg);
      if (x.is_zero()) any_zero = true;
      args.push_back(x);
    }
    if (any_zero) continue;  // arity-0 forms require nonzero elements
    FormSum nested = FormSum::of(k);
    for (int t = 0; t < arity; ++t)
      nested = rn_bracket(FormSum::of(SymValForm::from_element(args[t])), nested);
    Element direct = k.eval(args);
    REQUIRE(nested.max_arity() == 0);
    Element via_brackets = nested.is_zero() ? Element::zero(space)
                                            : nested.part(0)->as_element();
    CHECK(direct == via_brackets);
  }
}

TEST_CASE("insertion: arity-0 rules from the paper") {
  Rng rng(13);
  auto space = random_space(rng, 5, -2, 0);
  SymValForm k = random_form(rng, space, 2, 1);
  Element x = Element::basis(space, 0);
  // iota_K X = 0 for any K
  CHECK(insertion(FormSum::of(k), FormSum::of(SymValForm::from_element(x))).is_zero());
  // iota_X K = K(X, .)
  FormSum unary = insertion(FormSum::of(SymValForm::from_element(x)), FormSum::of(k));
  for (int s = 0; s < space->dim(); ++s) {
    std::array<Element, 2> pair = {x, Element::basis(space, s)};
    Element expect = k.eval(pair);
    Element got = unary.is_zero() ? Element::zero(space)
                                  : unary.part(1)->eval_slots(std::array{s});
    CHECK(got == expect);
  }
}

TEST_CASE("insertion iota_{l2} l2 matches the Sh(2,1) expansion") {
  Rng rng(99);
  auto [sl2_space, sl2_l2] = sl2_symmetric();
  std::vector<std::pair<SpacePtr, SymValForm>> cases = {{sl2_space, sl2_l2}};
  // also a random (non-Jacobi) binary form so the expansion is exercised on
  // nonzero values
  auto space2 = random_space(rng, 5, -2, -1);
  cases.emplace_back(space2, random_form(rng, space2, 2, 1));
  for (auto& [space, l2] : cases) {
    FormSum iota = insertion(FormSum::of(l2), FormSum::of(l2));
    SymValForm part = iota.part_or_zero(3);
    for (const Monomial& mono : enumerate_monomials(*space, 3)) {
      auto b = [&, sp = space](int s) { return Element::basis(sp, s); };
      auto ev2 = [&](Element a, Element c) {
        std::array<Element, 2> args = {std::move(a), std::move(c)};
        return l2.eval(args);
      };
      int dy = space->slot_degree(mono[1]), dz = space->slot_degree(mono[2]);
      int dx = space->slot_degree(mono[0]);
      Element expect = ev2(ev2(b(mono[0]), b(mono[1])), b(mono[2]));
      Element t2 = ev2(ev2(b(mono[0]), b(mono[2])), b(mono[1]));
      if ((dy & 1) && (dz & 1)) t2 *= Rat(-1);
      Element t3 = ev2(ev2(b(mono[1]), b(mono[2])), b(mono[0]));
      if ((dx & 1) && ((dy + dz) & 1)) t3 *= Rat(-1);
      expect += t2;
      expect += t3;
      CHECK(part.eval_slots(mono) == expect);
    }
  }
}

TEST_CASE("insertion on random element tuples matches the element-level oracle") {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    auto space = random_space(rng, 5, -3, 0);
    int ka = rng.range(0, 2);
    int la = rng.range(0, 2);
    SymValForm k = random_form(rng, space, ka, rng.range(0, 1));
    SymValForm l = random_form(rng, space, la, rng.range(0, 1));
    if (k.is_zero() || l.is_zero()) continue;
    int m = ka + la - 1;
    if (m < 0) continue;
    std::vector<Element> args;
    bool ok = true;
    for (int t = 0; t < m; ++t) {
      Element x = random_homogeneous(rng, space, space->slot_degree(rng.below(space->dim())));
      if (x.is_zero()) ok = false;
      args.push_back(x);
    }
    if (!ok) continue;
    SymValForm table = insertion_pair(k, l);
    Element got = table.is_zero() ? Element::zero(space) : table.eval(args);
    CHECK(got == insertion_oracle(k, l, args));
  }
}

TEST_CASE("parallel insertion kernel equals the serial reference") {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    auto space = random_space(rng, 6, -3, 0);
    SymValForm k = random_form(rng, space, rng.range(1, 3), rng.range(0, 1));
    SymValForm l = random_form(rng, space, rng.range(1, 3), rng.range(0, 1));
    CHECK(insertion_pair(k, l) == insertion_pair_serial(k, l));
  }
}

TEST_CASE("rn_bracket: zero on pairs of arity-0 forms") {
  Rng rng(16);
  auto space = random_space(rng, 5, -2, 0);
  Element x = Element::basis(space, 0);
  Element y = Element::basis(space, space->dim() - 1);
  FormSum fx = FormSum::of(SymValForm::from_element(x));
  FormSum fy = FormSum::of(SymValForm::from_element(y));
  CHECK(rn_bracket(fx, fy).is_zero());
}

TEST_CASE("Euler lemma: [S, alpha] = deg(alpha) * alpha, degrees -2..2") {
  Rng rng(17);
  for (int deg = -2; deg <= 2; ++deg) {
    for (int trial = 0; trial < 12; ++trial) {
      auto space = random_space(rng, 6, -3, 1);
      SymValForm alpha = random_form(rng, space, rng.range(0, 3), deg);
      if (alpha.arity() == 0 && alpha.is_zero()) continue;
      FormSum fa = FormSum::of(alpha);
      FormSum lhs = rn_bracket(FormSum::of(euler_form(space)), fa);
      CHECK(lhs == Rat(deg) * fa);
    }
  }
  auto space = random_space(rng, 4, -2, 0);
  CHECK(rn_bracket(FormSum::of(euler_form(space)), FormSum::of(euler_form(space))).is_zero());
}

TEST_CASE("[mu,mu] = 2 sum iota_{l_i} l_j on random mu") {
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    auto space = random_space(rng, 5, -3, 0);
    FormSum mu = random_formsum(rng, space, 1, 3);
    FormSum lhs = rn_bracket(mu, mu);
    FormSum rhs = Rat(2) * insertion(mu, mu);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("graded antisymmetry and graded Jacobi of the RN bracket") {
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    auto space = random_space(rng, 5, -3, 0);
    FormSum k = random_formsum(rng, space, rng.range(-1, 1), 2);
    FormSum l = random_formsum(rng, space, rng.range(-1, 1), 2);
    FormSum m = random_formsum(rng, space, rng.range(-1, 1), 2);
    int kl = (k.degree() * l.degree()) & 1;
    FormSum anti = rn_bracket(l, k);
    anti *= Rat(kl ? 1 : -1);
    CHECK(rn_bracket(k, l) == anti);

    // [[K,L],M] = [K,[L,M]] - (-1)^{K.L} [L,[K,M]]
    FormSum lhs = rn_bracket(rn_bracket(k, l), m);
    FormSum rhs = rn_bracket(k, rn_bracket(l, m));
    FormSum cross = rn_bracket(l, rn_bracket(k, m));
    cross *= Rat(kl ? 1 : -1);
    rhs += cross;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("decalage: unary regrading, sl(2) Lie bracket, round-trips") {
  // unary part carries over with the empty sign exponent
  auto [space, l2] = sl2_symmetric();
  FormSum mu = FormSum::of(l2);
  SkewFamily skew = decalage_to_skew(mu);
  REQUIRE(skew.parts.count(2));
  CHECK(skew.space->slot_degree(0) == 0);

  // binary symmetric degree-1 bracket concentrated in -1 maps to the skew
  // bracket with sign (-1)^{|X|} = -1 on each basis pair
  const SkewValForm& bracket = skew.parts.at(2);
  for (const Monomial& mono : enumerate_monomials(*space, 2)) {
    Element expect = l2.eval_slots(mono);
    Element got(space, bracket.eval_slots(mono).coeff());
    expect *= Rat(-1);
    CHECK(got == expect);
  }

  // the skew bracket on degree 0 satisfies the ordinary Jacobi identity
  auto b = [&](int s) { return Element::basis(skew.space, s); };
  auto br = [&](const Element& x, const Element& y) {
    Element acc = Element::zero(skew.space);
    for (int s = 0; s < 3; ++s)
      for (int t = 0; t < 3; ++t) {
        if (rat_is_zero(x[s]) || rat_is_zero(y[t])) continue;
        std::array<int, 2> slots = {s, t};
        Element v = bracket.eval_slots(slots);
        v *= x[s] * y[t];
        acc += v;
      }
    return acc;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Element jac = br(br(b(i), b(j)), b(k)) + br(br(b(j), b(k)), b(i)) +
                      br(br(b(k), b(i)), b(j));
        CHECK(jac.is_zero());
      }

  Rng rng(20);
  for (int trial = 0; trial < 25; ++trial) {
    auto sp = random_space(rng, 6, -3, 0);
    FormSum rand_mu = random_formsum(rng, sp, 1, 3);
    FormSum back = decalage_to_symmetric(decalage_to_skew(rand_mu));
    CHECK(back == rand_mu);
  }
}

TEST_CASE("decalage transports the generalized Jacobi identities") {
  Rng rng(21);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto space = random_space(rng, 5, -3, 0);
    FormSum mu = random_formsum(rng, space, 1, 3);
    SkewFamily skew = decalage_to_skew(mu);
    bool sym_ok = rn_bracket(mu, mu).is_zero();
    bool skew_ok = true;
    for (int n = 1; n <= 5 && skew_ok; ++n)
      for (const Monomial& mono : enumerate_skew_monomials(*skew.space, n)) {
        if (!skew_jacobi_residual(skew, mono).is_zero()) {
          skew_ok = false;
          break;
        }
      }
    CHECK(sym_ok == skew_ok);
    if (!sym_ok) ++checked;
  }
  CHECK(checked > 0);  // the equivalence was exercised on failing cases too

  // and on a passing case: sl(2)
  auto [sl2_space, sl2_l2] = sl2_symmetric();
  SkewFamily sk = decalage_to_skew(FormSum::of(sl2_l2));
  for (int n = 1; n <= 3; ++n)
    for (const Monomial& mono : enumerate_skew_monomials(*sk.space, n))
      CHECK(skew_jacobi_residual(sk, mono).is_zero());
}

TEST_CASE("decalage rejects wrong input degree") {
  Rng rng(22);
  auto space = random_space(rng, 4, -2, 0);
  FormSum wrong = random_formsum(rng, space, 0, 2);
  CHECK_THROWS_AS(decalage_to_skew(wrong), InputError);
}
