#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linfty/symform.hpp"

namespace linfty {

// One failing identity instance: the lexicographically first offending basis
// tuple and the nonzero residual there.
struct Witness {
  std::string identity;
  int arity = 0;
  Monomial tuple;
  Element residual;
  std::string tuple_labels(const GradedVectorSpace& space) const;
};

struct CheckReport {
  bool pass = true;
  std::string regime = "exact-exhaustive";
  bool methods_agree = true;  // RN-square route vs direct generalized Jacobi
  std::vector<Witness> witnesses;

  void fail(Witness w) {
    pass = false;
    witnesses.push_back(std::move(w));
  }
};

// Verifies [mu,mu]_RN = 0 and, independently, the generalized Jacobi sums per
// total arity; both must agree.  With `curved`, mu may carry an arity-0 part
// l0 in E_1; then l1(l0) = 0 and the curved relations are enforced.  An
// arity-0 part without `curved` is an input error.
CheckReport check_linfty(const FormSum& mu, bool curved = false);

// Direct generalized Jacobi residual (plus curvature terms when l0 present)
// at one basis tuple; the independent second verifier inside check_linfty.
Element jacobi_residual(const FormSum& mu, std::span<const int> slots);

// mu^N = [N, mu]_RN.
FormSum deform(const FormSum& mu, const FormSum& n_form);

enum class NijClass { none, weak, coboundary, nijenhuis };
const char* nij_class_name(NijClass c);

struct NijenhuisVerdict {
  NijClass classification = NijClass::none;
  bool with_curvature = false;           // deformer has an arity-0 part
  std::optional<FormSum> square;         // the candidate that worked
  bool weak_agrees_with_deformed_check = true;
  std::vector<Witness> residuals;        // per failed identity
};

// Classifies N (degree 0) against mu (degree 1).  Weak iff
// [mu,[N,[N,mu]]] = 0 (cross-checked against check_linfty of the deformed
// structure whenever mu itself verifies); co-boundary iff some candidate K
// satisfies [N,[N,mu]] = [K,mu]; nijenhuis iff additionally [N,K] = 0.
// Candidates tried in order: user-supplied, then S, Id, iota_N N, and NoN for
// the unary part.
NijenhuisVerdict nijenhuis_classify(const FormSum& n_form, const FormSum& mu,
                                    const std::vector<FormSum>& square_candidates = {});

struct HierarchyReport {
  std::vector<FormSum> mu_k;                   // mu_1 .. mu_kmax
  std::vector<CheckReport> linfty_reports;     // per mu_k
  std::vector<bool> nijenhuis_wrt_mu_k;        // N stays Nijenhuis with the same square
  bool pairwise_brackets_vanish = true;
  std::optional<std::pair<int, int>> first_failing_pair;
  bool all_pass() const;
};

// Iterated deformations mu_k = [N, mu_{k-1}].  When a square is supplied the
// report asserts the full hierarchy theorem; otherwise it is report-only.
HierarchyReport hierarchy(const FormSum& mu, const FormSum& n_form, int kmax,
                          const std::optional<FormSum>& square = std::nullopt);

// T_mu N(X,Y) = mu(NX,NY) - N(mu(NX,Y) + mu(X,NY) - N(mu(X,Y))).
SymValForm classical_torsion(const SymValForm& n_form, const SymValForm& bracket);

// Curved symmetric DGLA data: parts of arity <= 2 plus optional curvature.
struct DglaDeformation {
  NijenhuisVerdict verdict;
  FormSum deformed;          // [N, mu]
  Element condition_residual;  // l2(pi,pi), resp. (l1(pi)-c) - 1/2 l2(pi,pi)
};

// N = pi + S with square 2 pi + S; Nijenhuis iff pi is a Poisson element.
DglaDeformation dgla_poisson_deformer(const FormSum& dgla, const Element& pi);
// N = Id + pi with square Id + pi; Nijenhuis iff pi is Maurer-Cartan.
DglaDeformation dgla_mc_deformer(const FormSum& dgla, const Element& pi);

struct LieNFamilyReport {
  bool accepted = false;            // arity bounds satisfied
  std::string rejection;            // which bound failed
  bool degree_vanishings_hold = true;
  NijenhuisVerdict verdict;
  FormSum deformed;
};

// N = S + sum N_i on a Lie n-algebra (space concentrated in -n..-1), each N_i
// of degree 0 with ceil((n+3)/2) <= k_1 <= ... <= k_l <= n+1.
LieNFamilyReport lie_n_family_deformer(const FormSum& mu,
                                       const std::vector<SymValForm>& forms);

}  // namespace linfty
