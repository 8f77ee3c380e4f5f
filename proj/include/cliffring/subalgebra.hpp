#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cliffring/clifford.hpp"

namespace cliffring {

enum class SubalgebraKind { Center, EvenCenter, TwistedCenter, CentralizerEven, ExteriorPerp, ExteriorPerpEven, Other };
std::string to_string(SubalgebraKind k);

// R-submodule of C given by module generators.
struct Subalgebra {
    AlgebraPtr algebra;
    SubalgebraKind kind = SubalgebraKind::Other;
    std::vector<CliffordElement> generators;

    bool contains(const CliffordElement& a) const;
    bool contains_all(const Subalgebra& o) const;
    bool contains_all(const std::vector<CliffordElement>& elems) const;
    // Products of generators stay inside.
    bool closed_under_mul() const;
    bool graded() const;
};
bool same_submodule(const Subalgebra& a, const Subalgebra& b);
// a + Σ R·extra.
Subalgebra with_extra(const Subalgebra& a, const std::vector<CliffordElement>& extra);
Subalgebra even_part(const Subalgebra& a);

// Solution modules of the defining linear conditions.
Subalgebra twisted_center(const AlgebraPtr& alg);
Subalgebra center(const AlgebraPtr& alg);
Subalgebra centralizer_even(const AlgebraPtr& alg);
Subalgebra even_center(const AlgebraPtr& alg);
Subalgebra solve_subalgebra(const AlgebraPtr& alg, SubalgebraKind kind);

// Closed-form coefficient conditions for an orthogonal basis.
bool orthobasis_membership(const CliffordElement& a, SubalgebraKind kind);

// Span of products of M^⊥ generators (all lengths, or even lengths only).
Subalgebra exterior_perp_image(const AlgebraPtr& alg);
Subalgebra exterior_perp_even(const AlgebraPtr& alg);

struct ZtildeZReport {
    bool certified = false;
    std::string pattern;  // "orthogonal-basis" or "integral-domain"
    std::string reason;   // why hypotheses were not certified
    std::optional<CliffordElement> beta;
    bool form_zero = false;
    bool degenerate = false;
    std::vector<std::pair<std::string, bool>> checks;
    // The q = 0 clause read literally (Z(C) = even part for every n); it
    // misses x_[n] when n is odd and is kept apart from `checks`.
    std::vector<std::pair<std::string, bool>> literal_checks;
    bool all_passed() const;
};
// Compares the solver's subalgebras with the theorem's description when the
// hypotheses can be certified. Over ℤ, `rational_basis` may give integer
// columns that are pairwise orthogonal and span M ⊗ ℚ; one is derived when absent.
ZtildeZReport verify_ztildez(const AlgebraPtr& alg, const std::optional<Matrix>& rational_basis = std::nullopt);

// Over ℤ: (ℚ·span) ∩ C.
Subalgebra saturate(const Subalgebra& s);

// Integer columns, pairwise orthogonal for the form, with nonzero determinant.
Matrix rational_orthogonal_basis(const QuadraticModule& m);

}  // namespace cliffring
