#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linfty/evalform.hpp"
#include "linfty/lie_algebra.hpp"
#include "linfty/linfty_check.hpp"
#include "linfty/polyalg.hpp"
#include "linfty/rng.hpp"

namespace linfty {

// ---------------------------------------------------------------------------
// Point model: a quadratic Lie algebra (anchor = 0, Dorfman = bracket).
// Everything here is exhaustive and exact.
// ---------------------------------------------------------------------------

struct CourantPoint {
  LieAlgebra g;
  RatMat pairing;  // symmetric, nondegenerate, ad-invariant when verified
};

CourantPoint so3_killing_point();

struct CourantAxiomReport {
  bool leibniz = true;         // axiom (i)
  bool invariance = true;      // axiom (ii)
  bool symmetrized = true;     // axiom (iii)
  bool module_rule = true;     // X o (fY) = f (X o Y) + (rho(X)f) Y
  bool skew_bracket_rule = true;  // Lemma: [X,fY] = f[X,Y] + (rho(X)f)Y - 1/2 <X,Y> Df
  std::string regime = "exact-exhaustive";
  std::string witness;
  bool pass() const {
    return leibniz && invariance && symmetrized && module_rule && skew_bracket_rule;
  }
};

CourantAxiomReport check_courant_axioms(const CourantPoint& model);

// V = R c + g with degrees -2, -1; exact FormSum per Eq. (Lie2fromCourant).
std::pair<SpacePtr, FormSum> associated_lie2(const CourantPoint& model);

struct PointDeformReport {
  SymValForm torsion;                     // binary form on the g block
  bool torsion_identity = true;           // T = 1/2 (o^{N,N} - o^{N^2})
  std::optional<Rat> lambda;              // N + N* = lambda Id
  std::optional<Rat> gamma;               // N^2 + (N^2)* = gamma Id
  bool deformed_axioms_pass = false;      // when torsion-free and lambda exists
  std::string note;                       // records rho = 0 restrictions
};

PointDeformReport deform_and_torsion(const CourantPoint& model, const RatMat& n);

struct PointLiftReport {
  bool preconditions = false;  // torsion-free, lambda/gamma scalars
  std::optional<Rat> lambda, gamma;
  bool square_closed_form = false;  // N^2 = lambda N + (gamma - lambda^2)/2 Id
  NijenhuisVerdict verdict;
  bool deformed_matches = false;  // Lemma: lie2(deformed model) = [NN, mu]
  std::string note;
};

PointLiftReport lift_tensor(const CourantPoint& model, const RatMat& n);

struct QuadrupleConditionsReport {
  bool twice_equals_k = false;      // o^{N,N} = o^K
  bool commute = false;             // NK = KN
  bool n_adjoint = false;           // N + N* = lambda Id
  bool k_adjoint = false;           // K + K* = gamma Id
  bool leibniz_deformed = false;    // o^N and o^K Leibniz
  bool all() const {
    return twice_equals_k && commute && n_adjoint && k_adjoint && leibniz_deformed;
  }
  std::string regime = "exact-exhaustive";
  // standard model only: rigidity falsification for alpha != 0
  bool rigidity_witness_found = false;
  int rigidity_samples_used = 0;
};

QuadrupleConditionsReport quadruple_conditions(const CourantPoint& model,
                                               const RatMat& n, const RatMat& k,
                                               const Rat& lambda, const Rat& gamma);

// ---------------------------------------------------------------------------
// Standard model: TM + T*M over R^m with polynomial sections, Dorfman
// bracket, canonical pairing <(X,xi),(Y,eta)> = 1/2 (eta(X) + xi(Y)).  With
// that normalization Eq. <Df, e> = rho(e) f forces Df = (0, 2 df).
// Verification is falsification-by-sampling with a seeded generator.
// ---------------------------------------------------------------------------

struct Section {
  PolyMultivector x;  // vector field part
  PolyForm xi;        // 1-form part
};

struct CourantStandard {
  int m = 2;
  int sample_cap = 3;  // degree bound for sampled coefficients
  PolyRing ring;       // working ring; cap leaves room for triple products

  static CourantStandard make(int m, int sample_cap = 3);

  Section dorfman(const Section& a, const Section& b) const;
  Section skew_bracket(const Section& a, const Section& b) const;
  Poly pairing(const Section& a, const Section& b) const;
  Poly rho_apply(const Section& a, const Poly& f) const;
  Section d_op(const Poly& f) const;  // (0, 2 df)

  Section random_section(Rng& rng) const;
  Poly random_function(Rng& rng) const;

  // fiber tensors are constant 2m x 2m matrices in the (x, xi) coordinates
  Section apply_tensor(const RatMat& n, const Section& a) const;
  RatMat tensor_adjoint(const RatMat& n) const;  // with respect to the pairing

  Section deformed_dorfman(const RatMat& n, const Section& a, const Section& b) const;
};

// graded element of V = C(M) + Gamma(E)
struct CStdElem {
  int deg = -1;  // -1 section, -2 function
  Section sec;
  Poly fn;
};
int gelem_degree(const CStdElem& e);
CStdElem gelem_add(CStdElem a, const CStdElem& b);
CStdElem gelem_scale(const Rat& s, CStdElem a);
bool gelem_is_zero(const CStdElem& e);

CStdElem section_elem(Section s);
CStdElem function_elem(Poly f);

// The associated Lie 2-algebra as evaluator forms; `bracket` lets the same
// construction run on a deformed Dorfman bracket.
GenSum<CStdElem> standard_lie2(const CourantStandard& model);
GenSum<CStdElem> standard_lie2_deformed(const CourantStandard& model, const RatMat& n);

struct StdAxiomReport {
  bool leibniz = true;
  bool invariance = true;
  bool symmetrized = true;
  bool module_rule = true;
  bool skew_bracket_rule = true;
  bool lie2_jacobi = true;  // sampled generalized Jacobi of the Lie 2-algebra
  std::string regime;
  std::string witness;
  bool pass() const {
    return leibniz && invariance && symmetrized && module_rule &&
           skew_bracket_rule && lie2_jacobi;
  }
};

StdAxiomReport check_courant_axioms(const CourantStandard& model, int samples,
                                    std::uint64_t seed);

struct StdDeformReport {
  bool torsion_zero = true;           // sampled
  bool torsion_identity = true;       // T = 1/2 (o^{N,N} - o^{N^2})
  std::optional<Rat> lambda, gamma;
  bool deformed_d_identity = true;    // D^N = (-N + lambda Id) D
  bool deformed_axioms_pass = true;   // when torsion-free and lambda scalar
  std::string regime;
};

StdDeformReport deform_and_torsion(const CourantStandard& model, const RatMat& n,
                                   int samples, std::uint64_t seed);

struct StdLiftReport {
  bool preconditions = false;
  std::optional<Rat> lambda, gamma;
  bool nijenhuis_identities = true;  // sampled [NN,[NN,mu]] = [K,mu], [NN,K] = 0
  bool deformed_matches = true;      // Lemma (leml^N) per bracket, sampled
  std::string regime;
};

StdLiftReport lift_tensor(const CourantStandard& model, const RatMat& n, int samples,
                          std::uint64_t seed);

struct StdQuadrupleReport {
  bool twice_equals_k = true;
  bool commute = true;
  bool n_adjoint = true;
  bool k_adjoint = true;
  bool leibniz_deformed = true;
  bool all() const {
    return twice_equals_k && commute && n_adjoint && k_adjoint && leibniz_deformed;
  }
  std::string regime;
};

StdQuadrupleReport quadruple_conditions(const CourantStandard& model, const RatMat& n,
                                        const RatMat& k, int samples,
                                        std::uint64_t seed);

// Rigidity sampler: injects a nonzero constant skew alpha into NN = lambda +
// N + alpha and hunts for a violation of the module-rule shape of the
// deformed binary part, Eq. (mainbody).  Returns the number of samples used
// when a witness appears.
std::optional<int> rigidity_witness(const CourantStandard& model, const RatMat& n,
                                    const Rat& lambda, const RatMat& alpha,
                                    int samples, std::uint64_t seed);

// Anchor uniqueness on samples: two models with one bracket share rho.
bool anchors_agree_on_samples(const CourantStandard& model, int samples,
                              std::uint64_t seed);

}  // namespace linfty
