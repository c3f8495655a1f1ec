#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linfty/errors.hpp"
#include "linfty/linfty_check.hpp"
#include "test_util.hpp"

using namespace linfty;
using namespace linfty::testutil;

namespace {

// Independent oracle for Eq (gla): mu(mu(X,Y),Z) + (-1)^{|Y||Z|} mu(mu(X,Z),Y)
// + (-1)^{|X|(|Y|+|Z|)} mu(mu(Y,Z),X) over all basis triples, evaluated
// straight from a bracket table.
bool gla_holds(const SymValForm& l2, Monomial* witness = nullptr) {
  const SpacePtr& space = l2.space();
  for (const Monomial& mono : enumerate_monomials(*space, 3)) {
    auto b = [&](int s) { return Element::basis(space, s); };
    auto ev = [&](Element a, Element c) {
      std::array<Element, 2> args = {std::move(a), std::move(c)};
      return l2.eval(args);
    };
    int dx = space->slot_degree(mono[0]);
    int dy = space->slot_degree(mono[1]);
    int dz = space->slot_degree(mono[2]);
    Element acc = ev(ev(b(mono[0]), b(mono[1])), b(mono[2]));
    Element t2 = ev(ev(b(mono[0]), b(mono[2])), b(mono[1]));
    if ((dy & 1) && (dz & 1)) t2 *= Rat(-1);
    Element t3 = ev(ev(b(mono[1]), b(mono[2])), b(mono[0]));
    if ((dx & 1) && ((dy + dz) & 1)) t3 *= Rat(-1);
    acc += t2;
    acc += t3;
    if (!acc.is_zero()) {
      if (witness) *witness = mono;
      return false;
    }
  }
  return true;
}

// E_{-2} = <f>, E_{-1} = <x>, all brackets zero except l1(f) = x.
std::pair<SpacePtr, FormSum> tiny_lie2() {
  auto space = GradedVectorSpace::make({{-2, {"f"}}, {-1, {"x"}}});
  std::map<Monomial, Element> t;
  t.emplace(Monomial{0}, Element::basis(space, 1));
  FormSum mu(space, 1);
  mu.set_part(SymValForm(space, 1, 1, std::move(t)));
  return {space, mu};
}

}  // namespace

TEST_CASE("check_linfty: zero structure, sl(2), perturbed sl(2) with witness") {
  Rng rng(30);
  auto space = random_space(rng, 5, -3, 0);
  CHECK(check_linfty(FormSum::zero(space, 1)).pass);

  auto [sl2_space, l2] = sl2_symmetric();
  CHECK(gla_holds(l2));
  CheckReport good = check_linfty(FormSum::of(l2));
  CHECK(good.pass);
  CHECK(good.methods_agree);

  // perturb one structure constant: [h,e] = 2e becomes 2e + h
  std::map<Monomial, Element> table = l2.table();
  table[Monomial{0, 1}] += Element::basis(sl2_space, 0);
  SymValForm broken(sl2_space, 2, 1, std::move(table));
  Monomial oracle_witness;
  CHECK_FALSE(gla_holds(broken, &oracle_witness));
  CheckReport bad = check_linfty(FormSum::of(broken));
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.witnesses.empty());
  CHECK(bad.witnesses.front().arity == 3);
  CHECK(!jacobi_residual(FormSum::of(broken), bad.witnesses.front().tuple).is_zero());
}

TEST_CASE("check_linfty routes agree on random structures") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    auto space = random_space(rng, 5, -3, 0);
    FormSum mu = random_formsum(rng, space, 1, 3);
    CheckReport r = check_linfty(mu);  // throws InternalError on disagreement
    CHECK(r.methods_agree);
  }
}

TEST_CASE("curved check: curvature condition and flag handling") {
  auto space = GradedVectorSpace::make({{0, {"p"}}, {1, {"q"}}});
  // l1(p) = q, curvature l0 = q with l1(q) = 0
  std::map<Monomial, Element> t1;
  t1.emplace(Monomial{0}, Element::basis(space, 1));
  FormSum mu(space, 1);
  mu.set_part(SymValForm(space, 1, 1, std::move(t1)));
  mu += FormSum::of(SymValForm::from_element(Element::basis(space, 1)));
  CHECK(check_linfty(mu, true).pass);
  CHECK_THROWS_AS(check_linfty(mu, false), InputError);

  // a degree-0 element cannot even be attached as the arity-0 part of a
  // degree-1 structure; degree bookkeeping rejects it at construction
  FormSum bad(space, 1);
  CHECK_THROWS_AS(bad += FormSum::of(SymValForm::from_element(Element::basis(space, 0))),
                  InputError);
}

TEST_CASE("deform: by Euler map is the identity, by zero is zero") {
  auto [space, l2] = sl2_symmetric();
  FormSum mu = FormSum::of(l2);
  CHECK(deform(mu, FormSum::of(euler_form(space))) == mu);
  CHECK(deform(mu, FormSum::zero(space, 0)).is_zero());
}

TEST_CASE("nijenhuis_classify: Euler map, identity, cocycle shift") {
  auto [space, l2] = sl2_symmetric();
  FormSum mu = FormSum::of(l2);

  NijenhuisVerdict s = nijenhuis_classify(FormSum::of(euler_form(space)), mu);
  CHECK(s.classification == NijClass::nijenhuis);
  REQUIRE(s.square.has_value());
  CHECK(*s.square == FormSum::of(euler_form(space)));
  CHECK_FALSE(s.with_curvature);

  NijenhuisVerdict id = nijenhuis_classify(FormSum::of(identity_form(space)), mu);
  CHECK(id.classification == NijClass::nijenhuis);

  // S + alpha for a mu-cocycle alpha: on mu = l1 alone, alpha = Id works
  auto [space2, mu2] = tiny_lie2();
  FormSum alpha = FormSum::of(identity_form(space2));
  CHECK(rn_bracket(mu2, alpha).is_zero());
  FormSum shifted = FormSum::of(euler_form(space2)) + alpha;
  NijenhuisVerdict v =
      nijenhuis_classify(shifted, mu2, {FormSum::of(euler_form(space2))});
  CHECK(v.classification == NijClass::nijenhuis);
  CHECK(*v.square == FormSum::of(euler_form(space2)));
}

TEST_CASE("weak classification matches deformed-structure check on random input") {
  Rng rng(32);
  int weak_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto space = random_space(rng, 4, -2, 0);
    FormSum mu = random_formsum(rng, space, 1, 2);
    if (!rn_bracket(mu, mu).is_zero()) continue;  // Prop assumes mu is L-infinity
    FormSum n = random_formsum(rng, space, 0, 2);
    NijenhuisVerdict v = nijenhuis_classify(n, mu);
    CHECK(v.weak_agrees_with_deformed_check);
    if (v.classification != NijClass::none) ++weak_count;
  }
  CHECK(weak_count > 0);
}

TEST_CASE("hierarchy: Euler map fixes mu, all pairwise brackets vanish") {
  auto [space, l2] = sl2_symmetric();
  FormSum mu = FormSum::of(l2);
  HierarchyReport h =
      hierarchy(mu, FormSum::of(euler_form(space)), 3, FormSum::of(euler_form(space)));
  CHECK(h.all_pass());
  for (const FormSum& mk : h.mu_k) CHECK(mk == mu);
}

TEST_CASE("hierarchy reports the failure for a torsionful deformer") {
  auto [space, l2] = sl2_symmetric();
  FormSum mu = FormSum::of(l2);
  // N = diag(1,2,3) in basis h,e,f has nonzero torsion, so the square
  // identity against K = N^2 must fail at the first stage
  std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3, Rat(0)));
  m[0][0] = 1;
  m[1][1] = 2;
  m[2][2] = 3;
  SymValForm n = unary_form(space, 0, m);
  CHECK_FALSE(classical_torsion(n, l2).is_zero());
  HierarchyReport h =
      hierarchy(mu, FormSum::of(n), 2, FormSum::of(compose_unary(n, n)));
  CHECK_FALSE(h.all_pass());
  REQUIRE(h.nijenhuis_wrt_mu_k.size() == 2);
  CHECK_FALSE(h.nijenhuis_wrt_mu_k[0]);

  // torsion-free N = c Id keeps the whole chain intact
  std::vector<std::vector<Rat>> cm(3, std::vector<Rat>(3, Rat(0)));
  for (int i = 0; i < 3; ++i) cm[i][i] = Rat(2);
  SymValForm cid = unary_form(space, 0, cm);
  CHECK(classical_torsion(cid, l2).is_zero());
  HierarchyReport ok =
      hierarchy(mu, FormSum::of(cid), 2, FormSum::of(compose_unary(cid, cid)));
  CHECK(ok.all_pass());

  // a deformer classified none must break the L-infinity property of mu_1
  Rng rng(34);
  bool found = false;
  for (int attempt = 0; attempt < 200 && !found; ++attempt) {
    auto sp = random_space(rng, 4, -2, 0);
    FormSum rmu = random_formsum(rng, sp, 1, 2);
    if (!rn_bracket(rmu, rmu).is_zero()) continue;
    FormSum rn = random_formsum(rng, sp, 0, 2);
    if (nijenhuis_classify(rn, rmu).classification != NijClass::none) continue;
    HierarchyReport bad = hierarchy(rmu, rn, 1);
    if (!bad.linfty_reports.empty() && !bad.linfty_reports[0].pass) found = true;
  }
  CHECK(found);
}

TEST_CASE("classical torsion: scalar and diagonal examples, RN identity") {
  auto [space, l2] = sl2_symmetric();
  std::vector<std::vector<Rat>> cid(3, std::vector<Rat>(3, Rat(0)));
  for (int i = 0; i < 3; ++i) cid[i][i] = Rat(5, 2);
  CHECK(classical_torsion(unary_form(space, 0, cid), l2).is_zero());

  // 2d nonabelian [e1,e2] = e2 with N = diag(a,b)
  auto na = GradedVectorSpace::make({{-1, {"e1", "e2"}}});
  std::map<Monomial, Element> t;
  t.emplace(Monomial{0, 1}, Element::basis(na, 1));
  SymValForm bracket(na, 2, 1, std::move(t));
  std::vector<std::vector<Rat>> diag(2, std::vector<Rat>(2, Rat(0)));
  diag[0][0] = Rat(3);
  diag[1][1] = Rat(-7, 3);
  CHECK(classical_torsion(unary_form(na, 0, diag), bracket).is_zero());

  // T = 1/2 (mu^{N,N} - mu^{N^2}) for random N
  Rng rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    auto sp = random_space(rng, 4, -2, 0);
    SymValForm mu2 = random_form(rng, sp, 2, 1);
    std::vector<std::vector<Rat>> rnd(sp->dim(), std::vector<Rat>(sp->dim(), Rat(0)));
    for (int i = 0; i < sp->dim(); ++i)
      for (int j = 0; j < sp->dim(); ++j)
        if (sp->slot_degree(i) == sp->slot_degree(j)) rnd[i][j] = rng.rat();
    SymValForm n = unary_form(sp, 0, rnd);
    FormSum twice = rn_bracket(FormSum::of(n), rn_bracket(FormSum::of(n), FormSum::of(mu2)));
    FormSum once = rn_bracket(FormSum::of(compose_unary(n, n)), FormSum::of(mu2));
    FormSum diff = twice - once;
    diff *= Rat(1, 2);
    CHECK(FormSum::of(classical_torsion(n, mu2)) == diff);
  }
}

TEST_CASE("DGLA Poisson deformer") {
  // l2 = 0: any pi is Poisson
  auto space = GradedVectorSpace::make({{0, {"p"}}, {1, {"q"}}});
  std::map<Monomial, Element> t1;
  t1.emplace(Monomial{0}, Element::basis(space, 1));
  FormSum dgla(space, 1);
  dgla.set_part(SymValForm(space, 1, 1, std::move(t1)));
  dgla += FormSum::of(SymValForm::from_element(Element::basis(space, 1)));
  REQUIRE(check_linfty(dgla, true).pass);

  Element pi = Element::basis(space, 0);
  DglaDeformation d = dgla_poisson_deformer(dgla, pi);
  CHECK(d.verdict.classification == NijClass::nijenhuis);
  CHECK(d.verdict.with_curvature);
  CHECK(d.condition_residual.is_zero());
  // deformed curvature is c + l1(pi) = q + q = 2q
  REQUIRE(d.deformed.part(0) != nullptr);
  Element expect = Element::basis(space, 1);
  expect *= Rat(2);
  CHECK(d.deformed.part(0)->as_element() == expect);

  // non-Poisson pi: l2(p,p) = q
  std::map<Monomial, Element> t2;
  t2.emplace(Monomial{0, 0}, Element::basis(space, 1));
  FormSum gla(space, 1);
  gla.set_part(SymValForm(space, 2, 1, std::move(t2)));
  REQUIRE(check_linfty(gla).pass);
  DglaDeformation bad = dgla_poisson_deformer(gla, pi);
  CHECK(bad.verdict.classification != NijClass::nijenhuis);
  std::array<Element, 2> pp = {pi, pi};
  CHECK(bad.condition_residual == gla.part(2)->eval(pp));
  CHECK_FALSE(bad.condition_residual.is_zero());
}

TEST_CASE("DGLA Maurer-Cartan deformer") {
  auto space = GradedVectorSpace::make({{0, {"p"}}, {1, {"q"}}});
  FormSum dgla = FormSum::zero(space, 1);
  Element pi = Element::basis(space, 0);
  DglaDeformation mc = dgla_mc_deformer(dgla, pi);
  CHECK(mc.verdict.classification == NijClass::nijenhuis);
  CHECK(mc.condition_residual.is_zero());
  CHECK(mc.deformed.is_zero());

  // residual formula: (l1(pi) - c) - 1/2 l2(pi,pi)
  std::map<Monomial, Element> t1;
  t1.emplace(Monomial{0}, Element::basis(space, 1));
  FormSum with_l1(space, 1);
  with_l1.set_part(SymValForm(space, 1, 1, std::move(t1)));
  DglaDeformation r = dgla_mc_deformer(with_l1, pi);
  CHECK(r.condition_residual == Element::basis(space, 1));
  CHECK(r.verdict.classification != NijClass::nijenhuis);

  // MC element: c = l1(pi), others zero
  FormSum curved = with_l1;
  curved += FormSum::of(SymValForm::from_element(Element::basis(space, 1)));
  DglaDeformation ok = dgla_mc_deformer(curved, pi);
  CHECK(ok.verdict.classification == NijClass::nijenhuis);
  CHECK(ok.condition_residual.is_zero());
  CHECK(ok.deformed.is_zero());  // l1(pi) - c = 0, l2 = 0
}

TEST_CASE("Lie n family deformer") {
  // n = 2: the only admissible arity is 3 = n+1, where degree reasons force
  // the zero form; accepted and trivially Nijenhuis
  auto [space2, mu2] = tiny_lie2();
  LieNFamilyReport r2 = lie_n_family_deformer(mu2, {SymValForm::zero(space2, 3, 0)});
  CHECK(r2.accepted);
  CHECK(r2.degree_vanishings_hold);
  CHECK(r2.verdict.classification == NijClass::nijenhuis);

  // n = 3 with a nonzero arity-3 family member
  auto sp = GradedVectorSpace::make({{-3, {"w"}}, {-2, {"v"}}, {-1, {"x", "y", "z"}}});
  std::map<Monomial, Element> t1;
  t1.emplace(Monomial{0}, Element::basis(sp, 1));  // l1(w) = v
  FormSum mu3(sp, 1);
  mu3.set_part(SymValForm(sp, 1, 1, std::move(t1)));
  REQUIRE(check_linfty(mu3).pass);
  std::map<Monomial, Element> tn;
  tn.emplace(Monomial{2, 3, 4}, Element::basis(sp, 0));  // N(x,y,z) = w
  SymValForm n_form(sp, 3, 0, std::move(tn));
  LieNFamilyReport r3 = lie_n_family_deformer(mu3, {n_form});
  CHECK(r3.accepted);
  CHECK(r3.degree_vanishings_hold);
  CHECK(r3.verdict.classification == NijClass::nijenhuis);
  REQUIRE(r3.verdict.square.has_value());
  FormSum expect_square = FormSum::of(euler_form(sp)) + Rat(2) * FormSum::of(n_form);
  CHECK(*r3.verdict.square == expect_square);
  CHECK_FALSE((r3.deformed - mu3).is_zero());  // [N, l1] contributes

  // n = 3, arity 2 rejected: 2 < ceil((3+3)/2)
  LieNFamilyReport rej = lie_n_family_deformer(mu3, {SymValForm::zero(sp, 2, 0)});
  CHECK_FALSE(rej.accepted);
  CHECK(rej.rejection.find("below") != std::string::npos);

  // all N_i zero: deformed structure is mu
  LieNFamilyReport triv = lie_n_family_deformer(mu3, {});
  CHECK(triv.accepted);
  CHECK(triv.deformed == mu3);
}
