#include "linfty/lie2.hpp"

#include <array>

#include "linfty/errors.hpp"

namespace linfty {

namespace {

RatVec zero_vec(int n) { return RatVec(n, Rat(0)); }

bool vec_zero(const RatVec& v) {
  for (const auto& x : v)
    if (!rat_is_zero(x)) return false;
  return true;
}

RatVec vec_add(RatVec a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

RatVec vec_sub(RatVec a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

RatVec vec_neg(RatVec a) {
  for (auto& x : a) x = -x;
  return a;
}

RatVec basis_vec(int n, int i) {
  RatVec v = zero_vec(n);
  v[i] = 1;
  return v;
}

std::string idx_tuple(std::initializer_list<int> idx) {
  std::string out = "(";
  bool first = true;
  for (int i : idx) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + ")";
}

}  // namespace

Lie2Quadruple Lie2Quadruple::make(SpacePtr space, RatMat partial,
                                  std::vector<std::vector<RatVec>> chi,
                                  std::vector<std::vector<RatVec>> bracket2,
                                  std::vector<std::vector<std::vector<RatVec>>> omega) {
  Lie2Quadruple q;
  auto [first2, dim2] = space->degree_slots(-2);
  auto [first1, dim1] = space->degree_slots(-1);
  if (dim2 == 0 || dim1 == 0 || dim2 + dim1 != space->dim() || first2 != 0)
    throw InputError("Lie2Quadruple: space must be concentrated in degrees -2, -1");
  q.space = std::move(space);
  q.dim2 = dim2;
  q.dim1 = dim1;
  if (static_cast<int>(partial.size()) != dim1 ||
      (dim1 && static_cast<int>(partial[0].size()) != dim2))
    throw InputError("Lie2Quadruple: partial has wrong shape");
  q.partial = std::move(partial);
  q.chi = std::move(chi);
  q.bracket2 = std::move(bracket2);
  q.omega = std::move(omega);
  if (static_cast<int>(q.chi.size()) != dim1 ||
      static_cast<int>(q.bracket2.size()) != dim1 ||
      static_cast<int>(q.omega.size()) != dim1)
    throw InputError("Lie2Quadruple: table shapes do not match dim E_{-1}");
  for (int x = 0; x < dim1; ++x) {
    if (static_cast<int>(q.chi[x].size()) != dim2)
      throw InputError("Lie2Quadruple: chi shape");
    for (int y = 0; y < dim1; ++y)
      for (int k = 0; k < dim1; ++k)
        if (q.bracket2[x][y][k] != -q.bracket2[y][x][k])
          throw InputError("Lie2Quadruple: bracket2 not antisymmetric");
    for (int y = 0; y < dim1; ++y)
      for (int z = 0; z < dim1; ++z)
        for (int k = 0; k < dim2; ++k) {
          if (q.omega[x][y][z][k] != -q.omega[y][x][z][k] ||
              q.omega[x][y][z][k] != -q.omega[x][z][y][k])
            throw InputError("Lie2Quadruple: omega not alternating");
        }
  }
  return q;
}

bool Lie2Quadruple::chi_is_zero() const {
  for (const auto& row : chi)
    for (const auto& v : row)
      if (!vec_zero(v)) return false;
  return true;
}

bool Lie2Quadruple::omega_is_zero() const {
  for (const auto& a : omega)
    for (const auto& b : a)
      for (const auto& v : b)
        if (!vec_zero(v)) return false;
  return true;
}

FormSum quadruple_to_mu(const Lie2Quadruple& q) {
  const SpacePtr& space = q.space;
  FormSum mu(space, 1);
  std::map<Monomial, Element> t1;
  for (int f = 0; f < q.dim2; ++f) {
    Element v = Element::zero(space);
    for (int x = 0; x < q.dim1; ++x) v[q.dim2 + x] = q.partial[x][f];
    if (!v.is_zero()) t1.emplace(Monomial{f}, std::move(v));
  }
  mu.set_part(SymValForm(space, 1, 1, std::move(t1)));
  std::map<Monomial, Element> t2;
  for (int f = 0; f < q.dim2; ++f)
    for (int x = 0; x < q.dim1; ++x) {
      Element v = Element::zero(space);
      for (int k = 0; k < q.dim2; ++k) v[k] = q.chi[x][f][k];
      if (!v.is_zero()) t2.emplace(Monomial{f, q.dim2 + x}, std::move(v));
    }
  for (int x = 0; x < q.dim1; ++x)
    for (int y = x + 1; y < q.dim1; ++y) {
      Element v = Element::zero(space);
      for (int k = 0; k < q.dim1; ++k) v[q.dim2 + k] = q.bracket2[x][y][k];
      if (!v.is_zero()) t2.emplace(Monomial{q.dim2 + x, q.dim2 + y}, std::move(v));
    }
  mu.set_part(SymValForm(space, 2, 1, std::move(t2)));
  std::map<Monomial, Element> t3;
  for (int x = 0; x < q.dim1; ++x)
    for (int y = x + 1; y < q.dim1; ++y)
      for (int z = y + 1; z < q.dim1; ++z) {
        Element v = Element::zero(space);
        for (int k = 0; k < q.dim2; ++k) v[k] = q.omega[x][y][z][k];
        if (!v.is_zero())
          t3.emplace(Monomial{q.dim2 + x, q.dim2 + y, q.dim2 + z}, std::move(v));
      }
  mu.set_part(SymValForm(space, 3, 1, std::move(t3)));
  return mu;
}

Lie2Quadruple mu_to_quadruple(const FormSum& mu) {
  if (mu.degree() != 1) throw InputError("mu_to_quadruple: form degree must be 1");
  const SpacePtr& space = mu.space();
  auto [first2, dim2] = space->degree_slots(-2);
  auto [first1, dim1] = space->degree_slots(-1);
  (void)first1;
  if (dim2 == 0 || dim1 == 0 || dim2 + dim1 != space->dim() || first2 != 0)
    throw InputError("mu_to_quadruple: space must be concentrated in degrees -2, -1");
  for (const auto& [arity, part] : mu.parts())
    if (arity > 3 && !part.is_zero())
      throw InputError("mu_to_quadruple: arity-4+ part present");

  RatMat partial = mat_zero(dim1, dim2);
  std::vector<std::vector<RatVec>> chi(dim1, std::vector<RatVec>(dim2, zero_vec(dim2)));
  std::vector<std::vector<RatVec>> bracket2(dim1, std::vector<RatVec>(dim1, zero_vec(dim1)));
  std::vector<std::vector<std::vector<RatVec>>> omega(
      dim1, std::vector<std::vector<RatVec>>(dim1,
                                             std::vector<RatVec>(dim1, zero_vec(dim2))));

  if (const SymValForm* l1 = mu.part(1)) {
    for (int f = 0; f < dim2; ++f) {
      Element v = l1->eval_slots(std::array{f});
      for (int x = 0; x < dim1; ++x) partial[x][f] = v[dim2 + x];
    }
  }
  if (const SymValForm* l2 = mu.part(2)) {
    for (int f = 0; f < dim2; ++f)
      for (int x = 0; x < dim1; ++x) {
        Element v = l2->eval_slots(std::array{f, dim2 + x});
        for (int k = 0; k < dim2; ++k) chi[x][f][k] = v[k];
      }
    for (int x = 0; x < dim1; ++x)
      for (int y = 0; y < dim1; ++y) {
        Element v = l2->eval_slots(std::array{dim2 + x, dim2 + y});
        for (int k = 0; k < dim1; ++k) bracket2[x][y][k] = v[dim2 + k];
      }
  }
  if (const SymValForm* l3 = mu.part(3)) {
    for (int x = 0; x < dim1; ++x)
      for (int y = 0; y < dim1; ++y)
        for (int z = 0; z < dim1; ++z) {
          Element v = l3->eval_slots(std::array{dim2 + x, dim2 + y, dim2 + z});
          for (int k = 0; k < dim2; ++k) omega[x][y][z][k] = v[k];
        }
  }
  return Lie2Quadruple::make(space, std::move(partial), std::move(chi),
                             std::move(bracket2), std::move(omega));
}

namespace {

RatVec q_partial(const Lie2Quadruple& q, const RatVec& f) {
  RatVec out = zero_vec(q.dim1);
  for (int x = 0; x < q.dim1; ++x)
    for (int j = 0; j < q.dim2; ++j) out[x] += q.partial[x][j] * f[j];
  return out;
}

RatVec q_chi(const Lie2Quadruple& q, const RatVec& x, const RatVec& f) {
  RatVec out = zero_vec(q.dim2);
  for (int a = 0; a < q.dim1; ++a) {
    if (rat_is_zero(x[a])) continue;
    for (int b = 0; b < q.dim2; ++b) {
      if (rat_is_zero(f[b])) continue;
      for (int k = 0; k < q.dim2; ++k) out[k] += x[a] * f[b] * q.chi[a][b][k];
    }
  }
  return out;
}

RatVec q_br(const Lie2Quadruple& q, const RatVec& x, const RatVec& y) {
  RatVec out = zero_vec(q.dim1);
  for (int a = 0; a < q.dim1; ++a) {
    if (rat_is_zero(x[a])) continue;
    for (int b = 0; b < q.dim1; ++b) {
      if (rat_is_zero(y[b])) continue;
      for (int k = 0; k < q.dim1; ++k) out[k] += x[a] * y[b] * q.bracket2[a][b][k];
    }
  }
  return out;
}

RatVec q_omega(const Lie2Quadruple& q, const RatVec& x, const RatVec& y,
               const RatVec& z) {
  RatVec out = zero_vec(q.dim2);
  for (int a = 0; a < q.dim1; ++a)
    for (int b = 0; b < q.dim1; ++b)
      for (int c = 0; c < q.dim1; ++c) {
        Rat f = x[a] * y[b] * z[c];
        if (rat_is_zero(f)) continue;
        for (int k = 0; k < q.dim2; ++k) out[k] += f * q.omega[a][b][c][k];
      }
  return out;
}

}  // namespace

QuadrupleReport check_quadruple(const Lie2Quadruple& q) {
  QuadrupleReport report;
  auto add = [&](RelationReport r) {
    report.pass = report.pass && r.pass;
    report.relations.push_back(std::move(r));
  };
  int d1 = q.dim1, d2 = q.dim2;
  auto b1 = [&](int i) { return basis_vec(d1, i); };
  auto b2 = [&](int i) { return basis_vec(d2, i); };

  {
    RelationReport r{"chi(df)g = -chi(dg)f", true, ""};
    for (int f = 0; f < d2 && r.pass; ++f)
      for (int g = 0; g < d2 && r.pass; ++g) {
        RatVec lhs = q_chi(q, q_partial(q, b2(f)), b2(g));
        RatVec rhs = q_chi(q, q_partial(q, b2(g)), b2(f));
        if (!vec_zero(vec_add(lhs, rhs))) {
          r.pass = false;
          r.witness = idx_tuple({f, g});
        }
      }
    add(std::move(r));
  }
  {
    RelationReport r{"[X,df]_2 = d(chi(X)f)", true, ""};
    for (int x = 0; x < d1 && r.pass; ++x)
      for (int f = 0; f < d2 && r.pass; ++f) {
        RatVec lhs = q_br(q, b1(x), q_partial(q, b2(f)));
        RatVec rhs = q_partial(q, q_chi(q, b1(x), b2(f)));
        if (!vec_zero(vec_sub(lhs, rhs))) {
          r.pass = false;
          r.witness = idx_tuple({x, f});
        }
      }
    add(std::move(r));
  }
  {
    RelationReport r{"chi([X,Y])f + chi(Y)chi(X)f - chi(X)chi(Y)f + omega(X,Y,df) = 0",
                     true, ""};
    for (int x = 0; x < d1 && r.pass; ++x)
      for (int y = 0; y < d1 && r.pass; ++y)
        for (int f = 0; f < d2 && r.pass; ++f) {
          RatVec acc = q_chi(q, q_br(q, b1(x), b1(y)), b2(f));
          acc = vec_add(acc, q_chi(q, b1(y), q_chi(q, b1(x), b2(f))));
          acc = vec_sub(acc, q_chi(q, b1(x), q_chi(q, b1(y), b2(f))));
          acc = vec_add(acc, q_omega(q, b1(x), b1(y), q_partial(q, b2(f))));
          if (!vec_zero(acc)) {
            r.pass = false;
            r.witness = idx_tuple({x, y, f});
          }
        }
    add(std::move(r));
  }
  {
    RelationReport r{"[[X,Y],Z] + c.p. = d(omega(X,Y,Z))", true, ""};
    for (int x = 0; x < d1 && r.pass; ++x)
      for (int y = 0; y < d1 && r.pass; ++y)
        for (int z = 0; z < d1 && r.pass; ++z) {
          RatVec acc = q_br(q, q_br(q, b1(x), b1(y)), b1(z));
          acc = vec_add(acc, q_br(q, q_br(q, b1(y), b1(z)), b1(x)));
          acc = vec_add(acc, q_br(q, q_br(q, b1(z), b1(x)), b1(y)));
          acc = vec_sub(acc, q_partial(q, q_omega(q, b1(x), b1(y), b1(z))));
          if (!vec_zero(acc)) {
            r.pass = false;
            r.witness = idx_tuple({x, y, z});
          }
        }
    add(std::move(r));
  }
  {
    RelationReport r{"CE-closedness of omega", true, ""};
    for (int x = 0; x < d1 && r.pass; ++x)
      for (int y = 0; y < d1 && r.pass; ++y)
        for (int z = 0; z < d1 && r.pass; ++z)
          for (int w = 0; w < d1 && r.pass; ++w) {
            RatVec lhs = q_chi(q, b1(w), q_omega(q, b1(x), b1(y), b1(z)));
            lhs = vec_sub(lhs, q_chi(q, b1(z), q_omega(q, b1(x), b1(y), b1(w))));
            lhs = vec_add(lhs, q_chi(q, b1(y), q_omega(q, b1(x), b1(z), b1(w))));
            lhs = vec_sub(lhs, q_chi(q, b1(x), q_omega(q, b1(y), b1(z), b1(w))));
            RatVec rhs = vec_neg(q_omega(q, q_br(q, b1(x), b1(y)), b1(z), b1(w)));
            rhs = vec_add(rhs, q_omega(q, q_br(q, b1(x), b1(z)), b1(y), b1(w)));
            rhs = vec_sub(rhs, q_omega(q, q_br(q, b1(x), b1(w)), b1(y), b1(z)));
            rhs = vec_sub(rhs, q_omega(q, q_br(q, b1(y), b1(z)), b1(x), b1(w)));
            rhs = vec_add(rhs, q_omega(q, q_br(q, b1(y), b1(w)), b1(x), b1(z)));
            rhs = vec_sub(rhs, q_omega(q, q_br(q, b1(z), b1(w)), b1(x), b1(y)));
            if (!vec_zero(vec_sub(lhs, rhs))) {
              r.pass = false;
              r.witness = idx_tuple({x, y, z, w});
            }
          }
    add(std::move(r));
  }

  CheckReport linfty = check_linfty(quadruple_to_mu(q));
  report.agrees_with_linfty = (linfty.pass == report.pass);
  if (!report.agrees_with_linfty)
    throw InternalError("check_quadruple disagrees with check_linfty");
  return report;
}

SymValForm ce_differential(const SymValForm& eta, const Lie2Quadruple& q) {
  int k = eta.arity();
  if (eta.degree() != k - 2)
    throw InputError("ce_differential: form of arity k must have degree k-2");
  if (!same_space(eta.space(), q.space))
    throw InputError("ce_differential: foreign space");
  const SpacePtr& space = q.space;

  std::map<Monomial, Element> table;
  std::vector<int> xs(k + 1);
  auto rec = [&](auto&& self, int pos, int from) -> void {
    if (pos == k + 1) {
      Element acc = Element::zero(space);
      std::vector<Element> args;
      for (int t = 0; t <= k; ++t) args.push_back(Element::basis(space, q.dim2 + xs[t]));
      for (int i = 0; i <= k; ++i) {
        std::vector<Element> rest;
        for (int t = 0; t <= k; ++t)
          if (t != i) rest.push_back(args[t]);
        Element ev = eta.eval(rest);
        RatVec fv(q.dim2);
        for (int t = 0; t < q.dim2; ++t) fv[t] = ev[t];
        RatVec chi_v = q_chi(q, basis_vec(q.dim1, xs[i]), fv);
        Element term = Element::zero(space);
        for (int t = 0; t < q.dim2; ++t) term[t] = chi_v[t];
        if (i % 2) term *= Rat(-1);
        acc += term;
      }
      for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
          RatVec br = q_br(q, basis_vec(q.dim1, xs[i]), basis_vec(q.dim1, xs[j]));
          Element first = Element::zero(space);
          for (int t = 0; t < q.dim1; ++t) first[q.dim2 + t] = br[t];
          std::vector<Element> rest;
          rest.push_back(first);
          for (int t = 0; t <= k; ++t)
            if (t != i && t != j) rest.push_back(args[t]);
          Element term = eta.eval(rest);
          if ((i + j) % 2) term *= Rat(-1);
          acc += term;
        }
      if (!acc.is_zero()) {
        Monomial mono;
        for (int t = 0; t <= k; ++t) mono.push_back(q.dim2 + xs[t]);
        table.emplace(std::move(mono), std::move(acc));
      }
      return;
    }
    for (int s = from; s < q.dim1; ++s) {
      xs[pos] = s;
      self(self, pos + 1, s + 1);
    }
  };
  rec(rec, 0, 0);
  return SymValForm(space, k + 1, k - 1, std::move(table));
}

AlphaNijenhuisResult alpha_nijenhuis(const SymValForm& alpha, const Lie2Quadruple& q) {
  if (alpha.arity() != 2 || alpha.degree() != 0)
    throw InputError("alpha_nijenhuis: alpha must be an arity-2 degree-0 form");
  if (!same_space(alpha.space(), q.space))
    throw InputError("alpha_nijenhuis: foreign space");
  const SpacePtr& space = q.space;
  AlphaNijenhuisResult out{true, "", {}, Lie2Quadruple{}, true, true};
  FormSum mu = quadruple_to_mu(q);

  auto alpha_vv = [&](const Element& a, const Element& b) {
    std::array<Element, 2> args = {a, b};
    return alpha.eval(args);
  };
  auto d_of = [&](const Element& f) {
    RatVec fv(q.dim2);
    for (int t = 0; t < q.dim2; ++t) fv[t] = f[t];
    RatVec xv = q_partial(q, fv);
    Element o = Element::zero(space);
    for (int t = 0; t < q.dim1; ++t) o[q.dim2 + t] = xv[t];
    return o;
  };
  for (int x = 0; x < q.dim1 && out.condition_holds; ++x)
    for (int y = 0; y < q.dim1 && out.condition_holds; ++y)
      for (int z = 0; z < q.dim1 && out.condition_holds; ++z) {
        Element ex = Element::basis(space, q.dim2 + x);
        Element ey = Element::basis(space, q.dim2 + y);
        Element ez = Element::basis(space, q.dim2 + z);
        Element acc = alpha_vv(d_of(alpha_vv(ex, ey)), ez);
        acc += alpha_vv(d_of(alpha_vv(ey, ez)), ex);
        acc += alpha_vv(d_of(alpha_vv(ez, ex)), ey);
        if (!acc.is_zero()) {
          out.condition_holds = false;
          out.condition_witness = idx_tuple({x, y, z});
        }
      }

  FormSum s_alpha = FormSum::of(euler_form(space)) + FormSum::of(alpha);
  FormSum s_2alpha = FormSum::of(euler_form(space)) + Rat(2) * FormSum::of(alpha);
  out.verdict = nijenhuis_classify(s_alpha, mu, {s_2alpha});
  bool is_nij = out.verdict.classification == NijClass::nijenhuis;
  if (is_nij != out.condition_holds)
    throw InternalError("alpha_nijenhuis: cyclic condition disagrees with classifier");

  FormSum deformed_mu = rn_bracket(s_alpha, mu);
  RatMat dp = q.partial;
  auto chi2 = q.chi;
  auto br2 = q.bracket2;
  auto om2 = q.omega;
  for (int x = 0; x < q.dim1; ++x) {
    Element ex = Element::basis(space, q.dim2 + x);
    for (int f = 0; f < q.dim2; ++f) {
      Element corr = alpha_vv(d_of(Element::basis(space, f)), ex);
      for (int k = 0; k < q.dim2; ++k) chi2[x][f][k] -= corr[k];
    }
    for (int y = 0; y < q.dim1; ++y) {
      Element ey = Element::basis(space, q.dim2 + y);
      Element da = d_of(alpha_vv(ex, ey));
      for (int k = 0; k < q.dim1; ++k) br2[x][y][k] += da[q.dim2 + k];
    }
  }
  SymValForm dce = ce_differential(alpha, q);
  for (int x = 0; x < q.dim1; ++x)
    for (int y = 0; y < q.dim1; ++y)
      for (int z = 0; z < q.dim1; ++z) {
        Element v = dce.eval_slots(std::array{q.dim2 + x, q.dim2 + y, q.dim2 + z});
        for (int k = 0; k < q.dim2; ++k) om2[x][y][z][k] += v[k];
      }
  out.deformed = Lie2Quadruple::make(space, std::move(dp), std::move(chi2),
                                     std::move(br2), std::move(om2));
  out.deformed_matches_rn = (quadruple_to_mu(out.deformed) == deformed_mu);

  FormSum s_minus = FormSum::of(euler_form(space)) - FormSum::of(alpha);
  out.inverse_recovers = (rn_bracket(s_minus, deformed_mu) == mu);
  return out;
}

ChiZeroDecomposition decompose_chi_zero(const Lie2Quadruple& q) {
  if (!q.chi_is_zero()) throw InputError("decompose_chi_zero: chi must vanish");
  if (!check_quadruple(q).pass)
    throw InputError("decompose_chi_zero: quadruple does not verify");
  const SpacePtr& space = q.space;
  ChiZeroDecomposition out{SymValForm::zero(space, 2, 0)};

  Rref r = rref(q.partial);
  std::vector<int> pivot_cols = r.pivot_cols;
  std::vector<RatVec> ker = kernel_basis(q.partial);

  std::vector<RatVec> image;
  for (int p : pivot_cols) {
    RatVec col(q.dim1);
    for (int x = 0; x < q.dim1; ++x) col[x] = q.partial[x][p];
    image.push_back(std::move(col));
  }
  std::vector<int> complement_rows;
  {
    RatMat chosen;
    for (const auto& c : image) chosen.push_back(c);
    int rank = chosen.empty() ? 0 : rref(chosen).rank();
    for (int row = 0; row < q.dim1; ++row) {
      RatMat trial = chosen;
      trial.push_back(basis_vec(q.dim1, row));
      int nr = rref(trial).rank();
      if (nr > rank) {
        rank = nr;
        chosen = std::move(trial);
        complement_rows.push_back(row);
      }
    }
  }

  auto embed2 = [&](const RatVec& f) {
    Element e = Element::zero(space);
    for (int t = 0; t < q.dim2; ++t) e[t] = f[t];
    return e;
  };
  auto embed1 = [&](const RatVec& x) {
    Element e = Element::zero(space);
    for (int t = 0; t < q.dim1; ++t) e[q.dim2 + t] = x[t];
    return e;
  };
  for (int p : pivot_cols) out.trivial_m2.push_back(embed2(basis_vec(q.dim2, p)));
  for (const auto& k : ker) out.string_m2.push_back(embed2(k));
  for (const auto& c : image) out.trivial_m1.push_back(embed1(c));
  for (int row : complement_rows) out.string_m1.push_back(embed1(basis_vec(q.dim1, row)));
  out.dimensions_add_up =
      static_cast<int>(out.trivial_m2.size() + out.string_m2.size()) == q.dim2 &&
      static_cast<int>(out.trivial_m1.size() + out.string_m1.size()) == q.dim1;

  // alpha(X,Y) = -sum c_i f_{p_i} where [X,Y]_2 = sum c_i (partial f_{p_i})
  // + complement part, in the adapted basis of E_{-1}
  int nt = static_cast<int>(image.size());
  int ns = static_cast<int>(complement_rows.size());
  RatMat basis_m1 = mat_zero(q.dim1, nt + ns);
  for (int c = 0; c < nt; ++c)
    for (int x = 0; x < q.dim1; ++x) basis_m1[x][c] = image[c][x];
  for (int c = 0; c < ns; ++c) basis_m1[complement_rows[c]][nt + c] = 1;

  std::map<Monomial, Element> alpha_table;
  for (int x = 0; x < q.dim1; ++x)
    for (int y = x + 1; y < q.dim1; ++y) {
      auto coords = solve(basis_m1, q.bracket2[x][y]);
      if (!coords) throw InternalError("decompose_chi_zero: bracket outside E_{-1}");
      Element a = Element::zero(space);
      for (int c = 0; c < nt; ++c) a[pivot_cols[c]] -= (*coords)[c];
      if (!a.is_zero()) alpha_table.emplace(Monomial{q.dim2 + x, q.dim2 + y}, std::move(a));
    }
  out.alpha = SymValForm(space, 2, 0, std::move(alpha_table));

  for (int x = 0; x < q.dim1 && out.defining_equation_holds; ++x)
    for (int y = 0; y < q.dim1 && out.defining_equation_holds; ++y) {
      Element a = out.alpha.eval_slots(std::array{q.dim2 + x, q.dim2 + y});
      RatVec av(q.dim2);
      for (int t = 0; t < q.dim2; ++t) av[t] = a[t];
      RatVec lhs = q_partial(q, av);
      auto coords = solve(basis_m1, q.bracket2[x][y]);
      RatVec proj = zero_vec(q.dim1);
      for (int c = 0; c < nt; ++c)
        for (int t = 0; t < q.dim1; ++t) proj[t] += (*coords)[c] * image[c][t];
      if (!vec_zero(vec_add(lhs, proj))) out.defining_equation_holds = false;
    }

  for (const Element& v : out.trivial_m1) {
    for (int s = 0; s < space->dim(); ++s) {
      std::array<Element, 2> args = {v, Element::basis(space, s)};
      if (!out.alpha.eval(args).is_zero()) out.alpha_vanishes_on_image = false;
    }
  }

  FormSum mu = quadruple_to_mu(q);
  FormSum s_alpha = FormSum::of(euler_form(space)) + FormSum::of(out.alpha);
  FormSum deformed_mu = rn_bracket(s_alpha, mu);
  out.deformed = mu_to_quadruple(deformed_mu);

  auto in_span = [&](const Element& v, const std::vector<Element>& b1,
                     const std::vector<Element>& b2) {
    int cols = static_cast<int>(b1.size() + b2.size());
    RatMat m = mat_zero(space->dim(), cols);
    int c = 0;
    for (const auto& b : b1) {
      for (int t = 0; t < space->dim(); ++t) m[t][c] = b[t];
      ++c;
    }
    for (const auto& b : b2) {
      for (int t = 0; t < space->dim(); ++t) m[t][c] = b[t];
      ++c;
    }
    return solve(m, v.coeff()).has_value();
  };

  const SymValForm l1p = deformed_mu.part_or_zero(1);
  const SymValForm l2p = deformed_mu.part_or_zero(2);
  const SymValForm l3p = deformed_mu.part_or_zero(3);
  auto ev1 = [&](const Element& a) {
    std::array<Element, 1> args = {a};
    return l1p.eval(args);
  };
  auto ev2 = [&](const Element& a, const Element& b) {
    std::array<Element, 2> args = {a, b};
    return l2p.eval(args);
  };
  auto ev3 = [&](const Element& a, const Element& b, const Element& c) {
    std::array<Element, 3> args = {a, b, c};
    return l3p.eval(args);
  };

  {
    std::vector<Element> all_t = out.trivial_m2;
    all_t.insert(all_t.end(), out.trivial_m1.begin(), out.trivial_m1.end());
    for (const Element& f : out.trivial_m2)
      if (!in_span(ev1(f), out.trivial_m1, {})) out.trivial_summand_ok = false;
    RatMat img = mat_zero(q.dim1, static_cast<int>(out.trivial_m2.size()));
    for (size_t c = 0; c < out.trivial_m2.size(); ++c) {
      Element v = ev1(out.trivial_m2[c]);
      for (int t = 0; t < q.dim1; ++t) img[t][c] = v[q.dim2 + t];
    }
    if (rref(img).rank() != static_cast<int>(out.trivial_m2.size()))
      out.trivial_summand_ok = false;
    for (const Element& a : all_t)
      for (const Element& b : all_t) {
        if (!ev2(a, b).is_zero()) out.trivial_summand_ok = false;
        for (const Element& c : all_t)
          if (!ev3(a, b, c).is_zero()) out.trivial_summand_ok = false;
      }
  }
  {
    for (const Element& f : out.string_m2)
      if (!ev1(f).is_zero()) out.string_summand_ok = false;
    std::vector<Element> all_s = out.string_m2;
    all_s.insert(all_s.end(), out.string_m1.begin(), out.string_m1.end());
    for (const Element& a : all_s)
      for (const Element& b : all_s) {
        if (!in_span(ev2(a, b), out.string_m2, out.string_m1))
          out.string_summand_ok = false;
        for (const Element& c : all_s)
          if (!in_span(ev3(a, b, c), out.string_m2, out.string_m1))
            out.string_summand_ok = false;
      }
  }
  {
    std::vector<Element> all_t = out.trivial_m2;
    all_t.insert(all_t.end(), out.trivial_m1.begin(), out.trivial_m1.end());
    std::vector<Element> all_s = out.string_m2;
    all_s.insert(all_s.end(), out.string_m1.begin(), out.string_m1.end());
    for (const Element& t : all_t)
      for (const Element& s : all_s) {
        if (!ev2(t, s).is_zero()) out.cross_terms_vanish = false;
        for (const Element& u : all_t)
          if (!ev3(t, s, u).is_zero()) out.cross_terms_vanish = false;
        for (const Element& u : all_s)
          if (!ev3(t, s, u).is_zero()) out.cross_terms_vanish = false;
      }
  }
  if (!out.ok())
    throw InternalError("decompose_chi_zero: theorem verification failed");
  return out;
}

CrossedModuleReport check_crossed_module(const CrossedModule& cm) {
  CrossedModuleReport report;
  auto add = [&](RelationReport r) {
    report.pass = report.pass && r.pass;
    report.conditions.push_back(std::move(r));
  };
  int dg = cm.g.dim(), dh = cm.h.dim();
  auto bg = [&](int i) { return basis_vec(dg, i); };
  auto bh = [&](int i) { return basis_vec(dh, i); };
  auto chi_of = [&](const RatVec& h, const RatVec& g) {
    RatVec out = zero_vec(dg);
    for (int a = 0; a < dh; ++a)
      for (int b = 0; b < dg; ++b) {
        Rat c = h[a] * g[b];
        if (rat_is_zero(c)) continue;
        for (int k = 0; k < dg; ++k) out[k] += c * cm.chi[a][b][k];
      }
    return out;
  };
  auto d_of = [&](const RatVec& g) {
    RatVec out = zero_vec(dh);
    for (int a = 0; a < dh; ++a)
      for (int b = 0; b < dg; ++b) out[a] += cm.partial[a][b] * g[b];
    return out;
  };

  {
    auto w = cm.g.jacobi_witness();
    add({"g satisfies Jacobi", !w.has_value(),
         w ? idx_tuple({(*w)[0], (*w)[1], (*w)[2]}) : ""});
  }
  {
    auto w = cm.h.jacobi_witness();
    add({"h satisfies Jacobi", !w.has_value(),
         w ? idx_tuple({(*w)[0], (*w)[1], (*w)[2]}) : ""});
  }
  {
    RelationReport r{"partial is a homomorphism", true, ""};
    for (int i = 0; i < dg && r.pass; ++i)
      for (int j = 0; j < dg && r.pass; ++j) {
        RatVec lhs = d_of(cm.g.apply(bg(i), bg(j)));
        RatVec rhs = cm.h.apply(d_of(bg(i)), d_of(bg(j)));
        if (!vec_zero(vec_sub(lhs, rhs))) {
          r.pass = false;
          r.witness = idx_tuple({i, j});
        }
      }
    add(std::move(r));
  }
  {
    RelationReport r{"chi acts by derivations", true, ""};
    for (int a = 0; a < dh && r.pass; ++a)
      for (int i = 0; i < dg && r.pass; ++i)
        for (int j = 0; j < dg && r.pass; ++j) {
          RatVec lhs = chi_of(bh(a), cm.g.apply(bg(i), bg(j)));
          RatVec rhs = vec_add(cm.g.apply(chi_of(bh(a), bg(i)), bg(j)),
                               cm.g.apply(bg(i), chi_of(bh(a), bg(j))));
          if (!vec_zero(vec_sub(lhs, rhs))) {
            r.pass = false;
            r.witness = idx_tuple({a, i, j});
          }
        }
    add(std::move(r));
  }
  {
    RelationReport r{"chi is an action", true, ""};
    for (int a = 0; a < dh && r.pass; ++a)
      for (int b = 0; b < dh && r.pass; ++b)
        for (int i = 0; i < dg && r.pass; ++i) {
          RatVec lhs = chi_of(cm.h.apply(bh(a), bh(b)), bg(i));
          RatVec rhs = vec_sub(chi_of(bh(a), chi_of(bh(b), bg(i))),
                               chi_of(bh(b), chi_of(bh(a), bg(i))));
          if (!vec_zero(vec_sub(lhs, rhs))) {
            r.pass = false;
            r.witness = idx_tuple({a, b, i});
          }
        }
    add(std::move(r));
  }
  {
    RelationReport r{"partial(chi(h)g) = [h, partial g]", true, ""};
    for (int a = 0; a < dh && r.pass; ++a)
      for (int i = 0; i < dg && r.pass; ++i) {
        RatVec lhs = d_of(chi_of(bh(a), bg(i)));
        RatVec rhs = cm.h.apply(bh(a), d_of(bg(i)));
        if (!vec_zero(vec_sub(lhs, rhs))) {
          r.pass = false;
          r.witness = idx_tuple({a, i});
        }
      }
    add(std::move(r));
  }
  {
    RelationReport r{"chi(partial g1) g2 = [g1, g2]", true, ""};
    for (int i = 0; i < dg && r.pass; ++i)
      for (int j = 0; j < dg && r.pass; ++j) {
        RatVec lhs = chi_of(d_of(bg(i)), bg(j));
        RatVec rhs = cm.g.apply(bg(i), bg(j));
        if (!vec_zero(vec_sub(lhs, rhs))) {
          r.pass = false;
          r.witness = idx_tuple({i, j});
        }
      }
    add(std::move(r));
  }
  return report;
}

CrossedModule crossed_module_from_lie2(const Lie2Quadruple& q) {
  if (!q.omega_is_zero())
    throw InputError("crossed_module_from_lie2: omega must vanish");
  if (!check_quadruple(q).pass)
    throw InputError("crossed_module_from_lie2: quadruple does not verify");
  CrossedModule cm;
  std::vector<std::string> glabels, hlabels;
  for (int t = 0; t < q.dim2; ++t) glabels.push_back(q.space->slot_label(t));
  for (int t = 0; t < q.dim1; ++t) hlabels.push_back(q.space->slot_label(q.dim2 + t));
  std::vector<std::vector<RatVec>> gb(q.dim2, std::vector<RatVec>(q.dim2, zero_vec(q.dim2)));
  for (int i = 0; i < q.dim2; ++i)
    for (int j = 0; j < q.dim2; ++j)
      gb[i][j] = q_chi(q, q_partial(q, basis_vec(q.dim2, i)), basis_vec(q.dim2, j));
  cm.g = LieAlgebra::make(std::move(glabels), std::move(gb));
  std::vector<std::vector<RatVec>> hb(q.dim1, std::vector<RatVec>(q.dim1, zero_vec(q.dim1)));
  for (int i = 0; i < q.dim1; ++i)
    for (int j = 0; j < q.dim1; ++j) hb[i][j] = q.bracket2[i][j];
  cm.h = LieAlgebra::make(std::move(hlabels), std::move(hb));
  cm.partial = q.partial;
  cm.chi = q.chi;
  return cm;
}

Lie2Quadruple lie2_from_crossed_module(const CrossedModule& cm) {
  int dg = cm.g.dim(), dh = cm.h.dim();
  std::vector<std::string> low, high;
  for (const auto& l : cm.g.labels) low.push_back("g." + l);
  for (const auto& l : cm.h.labels) high.push_back("h." + l);
  auto space = GradedVectorSpace::make({{-2, low}, {-1, high}});
  std::vector<std::vector<RatVec>> bracket2(dh, std::vector<RatVec>(dh, zero_vec(dh)));
  for (int i = 0; i < dh; ++i)
    for (int j = 0; j < dh; ++j) bracket2[i][j] = cm.h.apply(basis_vec(dh, i), basis_vec(dh, j));
  std::vector<std::vector<std::vector<RatVec>>> omega(
      dh, std::vector<std::vector<RatVec>>(dh, std::vector<RatVec>(dh, zero_vec(dg))));
  return Lie2Quadruple::make(space, cm.partial, cm.chi, std::move(bracket2),
                             std::move(omega));
}

TildeAlphaResult tilde_alpha_and_weak_rep(const SymValForm& alpha,
                                          const Lie2Quadruple& q) {
  if (alpha.arity() != 2 || alpha.degree() != 0)
    throw InputError("tilde_alpha: alpha must be an arity-2 degree-0 form");
  const SpacePtr& space = q.space;
  TildeAlphaResult out;
  int n = space->dim();

  auto tilde_raw = [&](const Element& a, const Element& b) {
    std::array<Element, 2> args = {a, b};
    return alpha.eval(args);
  };
  // promote any E_{-2} component through partial, then evaluate alpha
  auto tilde = [&](const Element& a, const Element& b) {
    RatVec fa(q.dim2), fb(q.dim2);
    for (int t = 0; t < q.dim2; ++t) {
      fa[t] = a[t];
      fb[t] = b[t];
    }
    Element pa = a, pb = b;
    for (int t = 0; t < q.dim2; ++t) {
      pa[t] = 0;
      pb[t] = 0;
    }
    RatVec xa = q_partial(q, fa), xb = q_partial(q, fb);
    for (int t = 0; t < q.dim1; ++t) {
      pa[q.dim2 + t] += xa[t];
      pb[q.dim2 + t] += xb[t];
    }
    return tilde_raw(pa, pb);
  };

  for (int i = 0; i < n && out.tilde_is_lie; ++i)
    for (int j = 0; j < n && out.tilde_is_lie; ++j)
      for (int k = 0; k < n && out.tilde_is_lie; ++k) {
        Element a = Element::basis(space, i);
        Element b = Element::basis(space, j);
        Element c = Element::basis(space, k);
        if (!(tilde(a, b) + tilde(b, a)).is_zero()) {
          out.tilde_is_lie = false;
          out.witness = idx_tuple({i, j});
          break;
        }
        Element acc = tilde(tilde(a, b), c);
        acc += tilde(tilde(b, c), a);
        acc += tilde(tilde(c, a), b);
        if (!acc.is_zero()) {
          out.tilde_is_lie = false;
          out.witness = idx_tuple({i, j, k});
        }
      }

  AlphaNijenhuisResult an = alpha_nijenhuis(alpha, q);
  out.equivalence_holds = (out.tilde_is_lie == an.condition_holds);
  if (!out.equivalence_holds)
    throw InternalError("tilde_alpha: Lie property disagrees with Nijenhuis condition");

  // weak-Nijenhuis representation extraction for mu = partial alone
  FormSum mu_partial(space, 1);
  {
    std::map<Monomial, Element> t1;
    for (int f = 0; f < q.dim2; ++f) {
      RatVec xv = q_partial(q, basis_vec(q.dim2, f));
      Element v = Element::zero(space);
      for (int t = 0; t < q.dim1; ++t) v[q.dim2 + t] = xv[t];
      if (!v.is_zero()) t1.emplace(Monomial{f}, std::move(v));
    }
    mu_partial.set_part(SymValForm(space, 1, 1, std::move(t1)));
  }
  FormSum s_alpha = FormSum::of(euler_form(space)) + FormSum::of(alpha);
  NijenhuisVerdict weak = nijenhuis_classify(s_alpha, mu_partial);
  out.weak_wrt_partial = weak.classification != NijClass::none;

  auto d_alpha = [&](const Element& a, const Element& b) {
    Element v = tilde_raw(a, b);
    RatVec f(q.dim2);
    for (int t = 0; t < q.dim2; ++t) f[t] = v[t];
    RatVec x = q_partial(q, f);
    Element o = Element::zero(space);
    for (int t = 0; t < q.dim1; ++t) o[q.dim2 + t] = x[t];
    return o;
  };
  bool eq1 = true, eq2 = true;
  for (int x = 0; x < q.dim1 && eq1; ++x)
    for (int y = 0; y < q.dim1 && eq1; ++y)
      for (int z = 0; z < q.dim1 && eq1; ++z) {
        Element ex = Element::basis(space, q.dim2 + x);
        Element ey = Element::basis(space, q.dim2 + y);
        Element ez = Element::basis(space, q.dim2 + z);
        Element acc = d_alpha(d_alpha(ex, ey), ez);
        acc += d_alpha(d_alpha(ey, ez), ex);
        acc += d_alpha(d_alpha(ez, ex), ey);
        if (!acc.is_zero()) eq1 = false;
      }
  for (int x = 0; x < q.dim1 && eq2; ++x)
    for (int y = 0; y < q.dim1 && eq2; ++y)
      for (int f = 0; f < q.dim2 && eq2; ++f) {
        Element ex = Element::basis(space, q.dim2 + x);
        Element ey = Element::basis(space, q.dim2 + y);
        RatVec dfv = q_partial(q, basis_vec(q.dim2, f));
        Element df = Element::zero(space);
        for (int t = 0; t < q.dim1; ++t) df[q.dim2 + t] = dfv[t];
        Element acc = tilde_raw(d_alpha(ex, ey), df);
        acc += tilde_raw(d_alpha(ey, df), ex);
        acc += tilde_raw(d_alpha(df, ex), ey);
        if (!acc.is_zero()) eq2 = false;
      }
  out.weak_equations_hold = eq1 && eq2;
  if (out.weak_equations_hold != out.weak_wrt_partial)
    throw InternalError("tilde_alpha: weak equations disagree with classifier");

  if (out.weak_wrt_partial) {
    out.bracket_jacobi = eq1;
    out.representation_property = true;
    auto dot = [&](const Element& xx, const Element& ff) {
      RatVec fv(q.dim2);
      for (int t = 0; t < q.dim2; ++t) fv[t] = ff[t];
      RatVec dv = q_partial(q, fv);
      Element df = Element::zero(space);
      for (int t = 0; t < q.dim1; ++t) df[q.dim2 + t] = dv[t];
      return tilde_raw(xx, df);
    };
    for (int x = 0; x < q.dim1 && out.representation_property; ++x)
      for (int y = 0; y < q.dim1 && out.representation_property; ++y)
        for (int f = 0; f < q.dim2 && out.representation_property; ++f) {
          Element ex = Element::basis(space, q.dim2 + x);
          Element ey = Element::basis(space, q.dim2 + y);
          Element ef = Element::basis(space, f);
          Element lhs = dot(d_alpha(ex, ey), ef);
          Element rhs = dot(ex, dot(ey, ef)) - dot(ey, dot(ex, ef));
          if (!(lhs == rhs)) out.representation_property = false;
        }
  }
  return out;
}

}  // namespace linfty
