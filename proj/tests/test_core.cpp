#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "linfty/errors.hpp"
#include "linfty/graded_space.hpp"
#include "linfty/linalg.hpp"
#include "linfty/perm.hpp"
#include "linfty/rational.hpp"
#include "linfty/rng.hpp"

using namespace linfty;

namespace {

// Independent Koszul oracle: decompose into adjacent transpositions, one
// factor (-1)^{d_a d_b} per swap.
int koszul_oracle(std::vector<int> img, const std::vector<int>& degrees) {
  int sign = 1;
  for (size_t i = 0; i < img.size(); ++i) {
    for (size_t j = i; j > 0 && img[j] < img[j - 1]; --j) {
      if ((degrees[img[j]] & 1) && (degrees[img[j - 1]] & 1)) sign = -sign;
      std::swap(img[j], img[j - 1]);
    }
  }
  return sign;
}

Permutation random_perm(Rng& rng, int n) {
  Permutation p = identity_perm(n);
  for (int i = n - 1; i > 0; --i)
    std::swap(p.img[i], p.img[rng.below(i + 1)]);
  return p;
}

}  // namespace

TEST_CASE("rational parsing round-trips and rejects garbage") {
  CHECK(rat_str(parse_rat("2/4")) == "1/2");
  CHECK(rat_str(parse_rat("-6/4")) == "-3/2");
  CHECK(rat_str(parse_rat("5")) == "5/1");
  CHECK_THROWS_AS(parse_rat("1/0"), InputError);
  CHECK_THROWS_AS(parse_rat("x"), InputError);
  CHECK_THROWS_AS(parse_rat(""), InputError);
}

TEST_CASE("koszul sign on the spec examples") {
  std::vector<int> even_odd = {-1, -1};
  CHECK(koszul_sign(identity_perm(2), even_odd) == 1);
  Permutation swap01{{1, 0}};
  CHECK(koszul_sign(swap01, even_odd) == -1);

  // cycle 1 -> 2 -> 3 -> 1 on degrees (-1,-2,-1): oracle = adjacent swaps
  Permutation cyc{{1, 2, 0}};
  std::vector<int> degs = {-1, -2, -1};
  CHECK(koszul_sign(cyc, degs) == koszul_oracle(cyc.img, degs));
}

TEST_CASE("koszul sign is multiplicative under composition") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + rng.below(6);
    Permutation sigma = random_perm(rng, n);
    Permutation tau = random_perm(rng, n);
    std::vector<int> degs(n);
    for (auto& d : degs) d = rng.range(-3, 2);
    // (sigma . tau)(i) = sigma(tau(i));   eps(st, d) = eps(t, d o sigma) eps(s, d)
    Permutation st;
    st.img.resize(n);
    for (int i = 0; i < n; ++i) st.img[i] = sigma.img[tau.img[i]];
    std::vector<int> d_sigma(n);
    for (int i = 0; i < n; ++i) d_sigma[i] = degs[sigma.img[i]];
    CHECK(koszul_sign(st, degs) == koszul_sign(tau, d_sigma) * koszul_sign(sigma, degs));
  }
}

TEST_CASE("koszul sign is +1 when all degrees are even") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + rng.below(6);
    Permutation sigma = random_perm(rng, n);
    std::vector<int> degs(n);
    for (auto& d : degs) d = 2 * rng.range(-2, 2);
    CHECK(koszul_sign(sigma, degs) == 1);
  }
}

TEST_CASE("unshuffles: counts, order, and exhaustive filter oracle") {
  CHECK(unshuffles(0, 3).size() == 1);
  CHECK(unshuffles(0, 3)[0].img == std::vector<int>{0, 1, 2});
  auto sh11 = unshuffles(1, 1);
  REQUIRE(sh11.size() == 2);
  CHECK(sh11[0].img == std::vector<int>{0, 1});
  CHECK(sh11[1].img == std::vector<int>{1, 0});

  // (2,2): filter all 24 permutations of S4 by monotonicity of both blocks
  auto sh22 = unshuffles(2, 2);
  std::vector<std::vector<int>> expected;
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    if (perm[0] < perm[1] && perm[2] < perm[3]) expected.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  REQUIRE(sh22.size() == expected.size());
  std::vector<std::vector<int>> got;
  for (const auto& p : sh22) got.push_back(p.img);
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  CHECK(got == expected);

  for (int i = 0; i <= 7; ++i)
    for (int j = 0; i + j <= 7; ++j) {
      long binom = 1;
      for (int t = 1; t <= i; ++t) binom = binom * (i + j - t + 1) / t;
      CHECK(static_cast<long>(unshuffles(i, j).size()) == binom);
    }
}

TEST_CASE("arity cap rejects oversized tuples") {
  CHECK_THROWS_AS(unshuffles(6, 6), InputError);
}

TEST_CASE("element algebra and degree_of") {
  auto space = GradedVectorSpace::make({{-2, {"f"}}, {-1, {"e1", "e2"}}});
  CHECK(space->dim() == 3);
  CHECK(space->slot_degree(0) == -2);
  CHECK(space->slot_of("e2") == 2);

  Element x = Element::basis(space, 1);
  Element minus = x;
  minus *= Rat(-1);
  CHECK((x + minus).is_zero());

  auto deep = GradedVectorSpace::make({{-2, {"g1", "g2"}}});
  CHECK(Element::basis(deep, 0).degree_of() == -2);

  Element mixed = Element::basis(space, 0) + Element::basis(space, 1);
  CHECK_THROWS_AS(mixed.degree_of(), NotHomogeneous);
  CHECK_THROWS_AS(Element::zero(space).degree_of(), NotHomogeneous);
}

TEST_CASE("graded space invariants are enforced") {
  CHECK_THROWS_AS(GradedVectorSpace::make({{0, {"a"}}, {0, {"b"}}}), InputError);
  CHECK_THROWS_AS(GradedVectorSpace::make({{0, {}}}), InputError);
  CHECK_THROWS_AS(GradedVectorSpace::make({{0, {"a", "a"}}}), InputError);
  CHECK_THROWS_AS(GradedVectorSpace::make({}), InputError);
}

TEST_CASE("exact linear algebra: rref, kernel, solve, inverse") {
  RatMat a = {{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(0), Rat(1), Rat(1)}};
  Rref r = rref(a);
  CHECK(r.rank() == 2);
  auto ker = kernel_basis(a);
  REQUIRE(ker.size() == 1);
  CHECK(mat_is_zero({mat_apply(a, ker[0])}));

  auto sol = solve(a, mat_apply(a, {Rat(1), Rat(-2), Rat(5)}));
  REQUIRE(sol.has_value());
  CHECK(mat_apply(a, *sol) == mat_apply(a, {Rat(1), Rat(-2), Rat(5)}));
  CHECK_FALSE(solve({{Rat(1)}, {Rat(1)}}, {Rat(0), Rat(1)}).has_value());

  RatMat m = {{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(m, *inv) == mat_identity(2));
  CHECK(scalar_multiple_of_identity(mat_identity(3)) == Rat(1));
  CHECK_FALSE(scalar_multiple_of_identity(m).has_value());
}
