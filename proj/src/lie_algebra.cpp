#include "linfty/lie_algebra.hpp"

#include "linfty/errors.hpp"

namespace linfty {

RatVec LieAlgebra::apply(const RatVec& x, const RatVec& y) const {
  RatVec out(dim(), Rat(0));
  for (int i = 0; i < dim(); ++i) {
    if (rat_is_zero(x[i])) continue;
    for (int j = 0; j < dim(); ++j) {
      if (rat_is_zero(y[j])) continue;
      Rat c = x[i] * y[j];
      for (int k = 0; k < dim(); ++k) out[k] += c * bracket[i][j][k];
    }
  }
  return out;
}

LieAlgebra LieAlgebra::make(std::vector<std::string> labels,
                            std::vector<std::vector<RatVec>> bracket) {
  LieAlgebra g;
  g.labels = std::move(labels);
  g.bracket = std::move(bracket);
  int d = g.dim();
  if (static_cast<int>(g.bracket.size()) != d)
    throw InputError("lie algebra: bracket table has wrong shape");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(g.bracket[i].size()) != d)
      throw InputError("lie algebra: bracket table has wrong shape");
    for (int j = 0; j < d; ++j) {
      if (static_cast<int>(g.bracket[i][j].size()) != d)
        throw InputError("lie algebra: bracket table has wrong shape");
      for (int k = 0; k < d; ++k)
        if (g.bracket[i][j][k] != -g.bracket[j][i][k])
          throw InputError("lie algebra: bracket not antisymmetric");
    }
  }
  return g;
}

std::optional<std::array<int, 3>> LieAlgebra::jacobi_witness() const {
  int d = dim();
  auto basis = [&](int i) {
    RatVec v(d, Rat(0));
    v[i] = 1;
    return v;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        RatVec acc = apply(apply(basis(i), basis(j)), basis(k));
        RatVec t2 = apply(apply(basis(j), basis(k)), basis(i));
        RatVec t3 = apply(apply(basis(k), basis(i)), basis(j));
        bool zero = true;
        for (int t = 0; t < d; ++t)
          if (!rat_is_zero(acc[t] + t2[t] + t3[t])) zero = false;
        if (!zero) return std::array<int, 3>{i, j, k};
      }
  return std::nullopt;
}

std::pair<SpacePtr, SymValForm> LieAlgebra::as_symmetric_form() const {
  auto space = GradedVectorSpace::make({{-1, labels}});
  std::map<Monomial, Element> table;
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) {
      Element value(space, bracket[i][j]);
      if (!value.is_zero()) table.emplace(Monomial{i, j}, std::move(value));
    }
  return {space, SymValForm(space, 2, 1, std::move(table))};
}

namespace {

std::vector<std::vector<RatVec>> empty_table(int d) {
  return std::vector<std::vector<RatVec>>(d, std::vector<RatVec>(d, RatVec(d, Rat(0))));
}

}  // namespace

LieAlgebra abelian_lie_algebra(int dim) {
  std::vector<std::string> labels;
  for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
  return LieAlgebra::make(std::move(labels), empty_table(dim));
}

LieAlgebra nonabelian_2d() {
  auto t = empty_table(2);
  t[0][1][1] = 1;
  t[1][0][1] = -1;
  return LieAlgebra::make({"e1", "e2"}, std::move(t));
}

LieAlgebra heisenberg3() {
  auto t = empty_table(3);
  t[0][1][2] = 1;
  t[1][0][2] = -1;
  return LieAlgebra::make({"e1", "e2", "e3"}, std::move(t));
}

LieAlgebra sl2() {
  auto t = empty_table(3);
  // basis h,e,f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
  t[0][1][1] = 2;
  t[1][0][1] = -2;
  t[0][2][2] = -2;
  t[2][0][2] = 2;
  t[1][2][0] = 1;
  t[2][1][0] = -1;
  return LieAlgebra::make({"h", "e", "f"}, std::move(t));
}

LieAlgebra solvable3() {
  auto t = empty_table(3);
  t[0][1][1] = 1;
  t[1][0][1] = -1;
  t[0][2][2] = 1;
  t[2][0][2] = -1;
  return LieAlgebra::make({"e1", "e2", "e3"}, std::move(t));
}

LieAlgebra so3() {
  auto t = empty_table(3);
  t[0][1][2] = 1;
  t[1][0][2] = -1;
  t[1][2][0] = 1;
  t[2][1][0] = -1;
  t[2][0][1] = 1;
  t[0][2][1] = -1;
  return LieAlgebra::make({"e1", "e2", "e3"}, std::move(t));
}

}  // namespace linfty
