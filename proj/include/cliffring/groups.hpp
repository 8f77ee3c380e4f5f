#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliffring/clifford.hpp"
#include "cliffring/orthogonal.hpp"

namespace cliffring {

// A unit of C with the twisted-conjugation data for M and for R ⊕ M.
struct CliffordGroupElement {
    CliffordElement alpha;
    CliffordElement inverse;
    bool clifford = false;    // α M α′⁻¹ ⊆ M and α⁻¹ M α′ ⊆ M
    bool paravector = false;  // the same for R ⊕ M
    std::optional<Matrix> pi;        // n×n, columns α x_i α′⁻¹
    std::optional<Matrix> pi_tilde;  // (n+1)×(n+1) on the basis (1, x_1..x_n)
    CliffordElement norm;

    std::string flavor() const;  // "clifford", "paravector", "both" or "none"
};

// Checks invertibility and both containments for both flavors. Returns
// nullopt when α is not a unit; `why` receives the reason.
std::optional<CliffordGroupElement> classify(const CliffordElement& alpha, std::string* why = nullptr);
std::optional<CliffordGroupElement> in_clifford_group(const CliffordElement& alpha, std::string* why = nullptr);
std::optional<CliffordGroupElement> in_paravector_group(const CliffordElement& alpha, std::string* why = nullptr);

// Throw PreconditionFailed on the wrong flavor.
const Matrix& pi(const CliffordGroupElement& g);
const Matrix& pi_tilde(const CliffordGroupElement& g);

// α x = x α′ for every generator x.
bool in_twisted_center(const CliffordElement& a);

// α = (1−e) + x with α⁻¹ = ((1−e) − t)α′; π(α) = r_x.
CliffordGroupElement lift_reflection(const AlgebraPtr& alg, const RingElement& e, const Vec& x);
// β = 1 − xu with β⁻¹ = 1 − ux; π(β) = E_{u,x}.
CliffordGroupElement lift_euler(const AlgebraPtr& alg, const Vec& u, const Vec& x);
// Paravector coordinates (a, v_1..v_n). β = 1 + ξυ′ with β⁻¹ = 1 + υξ′; π̃(β) = E_{υ,ξ}.
CliffordGroupElement lift_paravector_euler(const AlgebraPtr& alg, const Vec& upsilon, const Vec& xi);
// α = (1−e) + ξ for ξ ∈ e(R ⊕ M) with q_R(ξ) ∈ (eR)^×; π̃(α) = r_ξ ∘ r_e.
CliffordGroupElement lift_paravector_reflection(const AlgebraPtr& alg, const RingElement& e, const Vec& xi);

// r_e on R ⊕ M, the e-reflection at the paravector e·1.
Matrix paravector_re(const QuadraticModule& m, const RingElement& e);

// Involutions applied to a member: membership of α′, α*, ᾱ and their images.
CheckList involution_action(const CliffordGroupElement& g);

// Every idempotent e with (1−e)α ∈ C₊ and eα ∈ C₋.
std::vector<RingElement> homogeneity_witnesses(const CliffordElement& alpha);
std::optional<RingElement> homogeneity_degree(const CliffordElement& alpha);
// For homogeneous invertible α: α ∈ Γ iff α ∈ Γ̃, and π̃(α) = (1−2e)Id_R ⊕ π(α).
CheckList ehom_check(const CliffordElement& alpha);

enum class GroupFlavor { Clifford, Paravector };
// Members of Γ or Γ̃ over a finite ring, scanning all of C (|R|^(2ⁿ) ≤ budget).
std::vector<CliffordGroupElement> enumerate_group(const AlgebraPtr& alg, GroupFlavor flavor,
                                                  uint64_t budget = 10'000'000);

// Closure of `gens` under composition inside the finite set `ambient`
// (breadth-first products until nothing new appears).
std::vector<Matrix> generated_subgroup(const std::vector<Matrix>& gens, size_t rank, const Ring& r,
                                       uint64_t budget = 10'000'000);

// All e-reflections and Euler transformations of a finite module.
std::vector<Matrix> reflection_euler_generators(const QuadraticModule& m, uint64_t budget = 10'000'000);

struct SesReport : CheckList {
    bool hypotheses_certified = false;
    bool generation_holds = false;  // generated subgroup = O_{M^⊥} (resp. on M_R)
    size_t group_size = 0;          // |Γ| or |Γ̃|
    size_t kernel_size = 0;
    size_t image_size = 0;
    size_t target_size = 0;  // |O_{M^⊥}| or |SO_{M_R^⊥}|
};
SesReport verify_sesgamma(const AlgebraPtr& alg, uint64_t budget = 10'000'000);
SesReport verify_sespara(const AlgebraPtr& alg, uint64_t budget = 10'000'000);

// Orthogonal basis, 2 and every nonzero q_i non-zero-divisors in R.
bool ses_hypotheses(const QuadraticModule& m, std::string* why = nullptr);

struct VahlenResult {
    std::vector<CliffordGroupElement> kept;
    bool closed = false;  // products of kept elements have unit scalar norm
};
// Members whose norm is a scalar unit.
VahlenResult vahlen_filter(const std::vector<CliffordGroupElement>& members);

// Units α of the twisted center with 2α₊ = 0. Requires 2 ≠ 0 in R.
struct EmptyIntReport {
    size_t searched = 0;
    std::vector<CliffordElement> counterexamples;
};
EmptyIntReport conjecture_emptyint_search(const AlgebraPtr& alg, uint64_t budget = 10'000'000);

// Members of Γ̃ with α′ = δα for some δ ∈ μ₂(R) outside {1 − 2e}.
struct MultiplierReport {
    size_t searched = 0;
    std::vector<std::pair<CliffordElement, RingElement>> hits;
};
MultiplierReport multiplier_search(const AlgebraPtr& alg, uint64_t budget = 10'000'000);

// Under Z̃(C) = R: homogeneity degree is a homomorphism to (Idem(R), ⊕),
// degree 0 is Γ ∩ C₊, and det π(α) = 1 − 2e.
CheckList gammadecom_check(const AlgebraPtr& alg, uint64_t budget = 10'000'000);

}  // namespace cliffring
