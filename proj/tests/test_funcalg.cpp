#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linfty/errors.hpp"
#include "linfty/polyalg.hpp"
#include "linfty/rng.hpp"

using namespace linfty;

namespace {

Poly random_poly(Rng& rng, PolyRing ring, int max_deg) {
  Poly p(ring);
  int terms = 1 + rng.below(3);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(ring.vars, 0);
    int deg = rng.below(max_deg + 1);
    for (int i = 0; i < deg; ++i) e[rng.below(ring.vars)] += 1;
    std::map<std::vector<int>, Rat> one;
    one.emplace(std::move(e), rng.rat());
    p += Poly(ring, std::move(one));
  }
  return p;
}

PolyForm random_form(Rng& rng, PolyRing ring, int degree, int max_deg) {
  PolyForm out(ring, degree);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> idx;
    for (int i = 0; i < degree; ++i) idx.push_back(rng.below(ring.vars));
    out.add_term(std::move(idx), random_poly(rng, ring, max_deg));
  }
  return out;
}

PolyMultivector random_mv(Rng& rng, PolyRing ring, int degree, int max_deg) {
  PolyMultivector out(ring, degree);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> idx;
    for (int i = 0; i < degree; ++i) idx.push_back(rng.below(ring.vars));
    out.add_term(std::move(idx), random_poly(rng, ring, max_deg));
  }
  return out;
}

}  // namespace

TEST_CASE("poly arithmetic and the degree cap") {
  PolyRing ring{2, 4};
  Poly x = Poly::variable(ring, 0);
  Poly y = Poly::variable(ring, 1);
  Poly p = x * x + Rat(3) * y;
  CHECK(p.total_degree() == 2);
  CHECK((p - p).is_zero());
  Poly big = x * x * y * y;  // degree 4 = cap
  CHECK(big.total_degree() == 4);
  CHECK_THROWS_AS(big * x, CapExceeded);
}

TEST_CASE("d(x dy) = dx^dy and the index-deletion contraction sign") {
  PolyRing ring{3, 6};
  Poly x = Poly::variable(ring, 0);
  PolyForm xdy = form_basis(ring, {1}, x);
  PolyForm expect = form_basis(ring, {0, 1}, Poly::constant(ring, Rat(1)));
  CHECK(d(xdy) == expect);

  // i_{dy-direction}(dx^dy^dz) = -dx^dz
  PolyMultivector dy = field_basis(ring, {1}, Poly::constant(ring, Rat(1)));
  PolyForm vol = form_basis(ring, {0, 1, 2}, Poly::constant(ring, Rat(1)));
  PolyForm got = contract(dy, vol);
  PolyForm want = form_basis(ring, {0, 2}, Poly::constant(ring, Rat(-1)));
  CHECK(got == want);
}

TEST_CASE("Cartan calculus identities on random data") {
  Rng rng(50);
  for (int m = 1; m <= 3; ++m) {
    PolyRing ring{m, 12};
    for (int trial = 0; trial < 35; ++trial) {
      Poly f = random_poly(rng, ring, 3);
      PolyForm zf(ring, 0);
      zf.add_term({}, f);
      CHECK(d(d(zf)).is_zero());

      int dega = rng.below(m + 1);
      PolyForm a = random_form(rng, ring, dega, 3);
      CHECK(d(d(a)).is_zero());

      PolyMultivector vx = random_mv(rng, ring, 1, 3);
      PolyMultivector vy = random_mv(rng, ring, 1, 3);
      int degb = rng.below(m + 1);
      PolyForm b = random_form(rng, ring, degb, 3);

      // i_X is a degree -1 antiderivation
      PolyForm lhs = contract(vx, wedge(a, b));
      PolyForm rhs = wedge(contract(vx, a), b);
      PolyForm second = wedge(a, contract(vx, b));
      if (dega % 2) second *= Rat(-1);
      rhs += second;
      CHECK(lhs == rhs);

      // L_X = d i_X + i_X d commutes with d, and [L_X, i_Y] = i_{[X,Y]}
      CHECK(lie_derivative(vx, d(a)) == d(lie_derivative(vx, a)));
      PolyForm cart = lie_derivative(vx, contract(vy, a)) -
                      contract(vy, lie_derivative(vx, a));
      CHECK(cart == contract(schouten(vx, vy), a));

      // wedge graded-commutative and associative
      PolyForm ab = wedge(a, b);
      PolyForm ba = wedge(b, a);
      if ((dega * degb) % 2) ba *= Rat(-1);
      CHECK(ab == ba);
      PolyForm cform = random_form(rng, ring, rng.below(m + 1), 2);
      CHECK(wedge(wedge(a, b), cform) == wedge(a, wedge(b, cform)));
    }
  }
}

TEST_CASE("schouten: vector-field bracket, functions, constants") {
  PolyRing ring{1, 8};
  Poly x = Poly::variable(ring, 0);
  PolyMultivector dx = field_basis(ring, {0}, Poly::constant(ring, Rat(1)));
  PolyMultivector xdx = field_basis(ring, {0}, x);
  // [d/dx, x d/dx] = d/dx
  CHECK(schouten(dx, xdx) == dx);

  // [P, f] = P(f) for a vector field
  PolyRing r2{2, 8};
  Poly f = Poly::variable(r2, 0) * Poly::variable(r2, 1);
  PolyMultivector p = field_basis(r2, {0}, Poly::variable(r2, 1));
  PolyMultivector f0(r2, 0);
  f0.add_term({}, f);
  PolyMultivector got = schouten(p, f0);
  PolyMultivector want(r2, 0);
  want.add_term({}, Poly::variable(r2, 1) * Poly::variable(r2, 1));
  CHECK(got == want);

  // [pi, pi] = 0 for constant pi = dx^dy
  PolyMultivector pi = field_basis(r2, {0, 1}, Poly::constant(r2, Rat(1)));
  CHECK(schouten(pi, pi).is_zero());

  // [f, g] = 0 for functions
  PolyMultivector g0(r2, 0);
  g0.add_term({}, Poly::variable(r2, 0));
  CHECK(schouten(f0, g0).is_zero());
}

TEST_CASE("schouten graded identities on random multivectors") {
  Rng rng(51);
  PolyRing ring{3, 18};
  for (int trial = 0; trial < 30; ++trial) {
    int dp = 1 + rng.below(2), dq = 1 + rng.below(2), dr = 1 + rng.below(2);
    PolyMultivector p = random_mv(rng, ring, dp, 2);
    PolyMultivector q = random_mv(rng, ring, dq, 2);
    PolyMultivector r = random_mv(rng, ring, dr, 2);

    // graded skew-symmetry with shifted degrees
    PolyMultivector sym = schouten(q, p);
    if (((dp - 1) * (dq - 1)) % 2 == 0) sym *= Rat(-1);
    CHECK(schouten(p, q) == sym);

    // Leibniz: [P, Q ^ R] = [P,Q] ^ R + (-1)^{(p-1)q} Q ^ [P,R]
    PolyMultivector lhs = schouten(p, wedge(q, r));
    PolyMultivector rhs = wedge(schouten(p, q), r);
    PolyMultivector second = wedge(q, schouten(p, r));
    if (((dp - 1) * dq) % 2) second *= Rat(-1);
    rhs += second;
    CHECK(lhs == rhs);

    // graded Jacobi: [[P,Q],R] = [P,[Q,R]] - (-1)^{(p-1)(q-1)} [Q,[P,R]]
    PolyMultivector j1 = schouten(schouten(p, q), r);
    PolyMultivector j2 = schouten(p, schouten(q, r));
    PolyMultivector j3 = schouten(q, schouten(p, r));
    if (((dp - 1) * (dq - 1)) % 2 == 0) j3 *= Rat(-1);
    j2 += j3;
    CHECK(j1 == j2);
  }
}
