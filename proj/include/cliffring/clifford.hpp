#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cliffring/quadratic_module.hpp"

namespace cliffring {

inline constexpr size_t kMaxCliffordRank = 12;

class CliffordAlgebra;
using AlgebraPtr = std::shared_ptr<const CliffordAlgebra>;

// Sparse combination of basis monomials, used for structure constants.
using Terms = std::vector<std::pair<uint32_t, RingElement>>;

// Element of C(M,q): coefficient a_I for every subset I ⊆ [n], bit i of the
// mask set iff x_i occurs. x_I is the increasing-order product.
class CliffordElement {
public:
    CliffordElement() = default;
    CliffordElement(AlgebraPtr alg, std::vector<RingElement> coeffs);

    const CliffordAlgebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const Ring& ring() const;
    size_t rank() const;
    const RingElement& coeff(uint32_t mask) const { return c_[mask]; }
    const std::vector<RingElement>& coeffs() const { return c_; }

    CliffordElement operator+(const CliffordElement& b) const;
    CliffordElement operator-(const CliffordElement& b) const;
    CliffordElement operator-() const;
    CliffordElement operator*(const CliffordElement& b) const;
    CliffordElement scaled(const RingElement& a) const;

    CliffordElement even_part() const;
    CliffordElement odd_part() const;
    bool is_zero() const;
    bool is_scalar() const;
    bool operator==(const CliffordElement& b) const;
    bool operator!=(const CliffordElement& b) const { return !(*this == b); }
    bool operator<(const CliffordElement& b) const;

    // `3 + 2*e{1} - e{1,2}` with 1-based indices.
    std::string to_string() const;

private:
    AlgebraPtr alg_;
    std::vector<RingElement> c_;
};

class CliffordAlgebra : public std::enable_shared_from_this<CliffordAlgebra> {
public:
    static AlgebraPtr create(const QuadraticModule& m);

    const QuadraticModule& module() const { return module_; }
    const Ring& ring() const { return module_.ring(); }
    size_t rank() const { return module_.rank(); }
    uint32_t dim() const { return uint32_t(1) << rank(); }

    CliffordElement zero() const;
    CliffordElement one() const;
    CliffordElement scalar(const RingElement& a) const;
    CliffordElement generator(size_t i) const;
    CliffordElement basis(uint32_t mask) const;
    // Σ v_i x_i for v ∈ M.
    CliffordElement from_vector(const Vec& v) const;
    // a + Σ v_i x_i for (a, v) ∈ R ⊕ M, coordinates (a, v_1..v_n).
    CliffordElement from_paravector(const Vec& av) const;
    CliffordElement parse(std::string_view text) const;

    // x_I · x_J as structure constants, derived by straightening.
    Terms basis_product(uint32_t I, uint32_t J) const;
    // x_I · x_i.
    const Terms& right_generator(uint32_t I, size_t i) const;

    // Coefficients as a vector of length 2ⁿ in mask order.
    Vec to_vec(const CliffordElement& a) const { return a.coeffs(); }
    CliffordElement from_vec(const Vec& v) const;

    bool same_as(const CliffordAlgebra& o) const { return this == &o || module_ == o.module_; }

    explicit CliffordAlgebra(const QuadraticModule& m);

private:
    void build_generator_table() const;
    void build_product_table() const;

    QuadraticModule module_;
    mutable std::once_flag gen_once_, prod_once_, trans_once_;
    mutable std::vector<Terms> gen_table_;   // index I * n + i
    mutable std::vector<Terms> prod_table_;  // index I * 2ⁿ + J, only for small n
    mutable std::vector<Terms> trans_table_;
    friend CliffordElement transpose(const CliffordElement& a);
};

void require_same_algebra(const CliffordElement& a, const CliffordElement& b);

CliffordElement mul(const CliffordElement& a, const CliffordElement& b);
// Orthogonal-basis shortcuts with the b(I,i) constants; throw on non-diagonal Gram.
CliffordElement mul_generator_fast(const CliffordElement& a, size_t i);
CliffordElement mul_generator_fast_left(size_t i, const CliffordElement& a);
// The constant b(I,i) with α·x_i = Σ a_I b(I,i) x_{IΔi}.
RingElement sign_constant(const CliffordAlgebra& alg, uint32_t I, size_t i);

CliffordElement grade_involution(const CliffordElement& a);
CliffordElement transpose(const CliffordElement& a);
CliffordElement clifford_involution(const CliffordElement& a);
CliffordElement norm(const CliffordElement& a);
CliffordElement power(const CliffordElement& a, unsigned k);

// Matrix of β ↦ αβ (columns indexed by basis masks).
Matrix left_mul_matrix(const CliffordElement& a);
Matrix right_mul_matrix(const CliffordElement& a);
std::optional<CliffordElement> invert(const CliffordElement& a);

// Generators of {α : α′ = α} = C₊ ⊕ C₋[2].
std::vector<CliffordElement> fixed_by_grade(const CliffordAlgebra& alg);

// R-algebra map C(M) → C(N) fixed by the images of the generators.
struct AlgebraHom {
    AlgebraPtr source, target;
    std::vector<CliffordElement> images;
    std::vector<CliffordElement> basis_images;  // φ(x_I) for every mask
    CliffordElement operator()(const CliffordElement& a) const;
};
// Checks φ(x_i)φ(x_j) + φ(x_j)φ(x_i) = g_ij and φ(x_i)² = q_i.
AlgebraHom algebra_hom(AlgebraPtr source, AlgebraPtr target, std::vector<CliffordElement> images);

// p : C(M,q) → C(M̄,q̄) killing M_q^⊥; needs a basis-split radical.
struct RadicalQuotient {
    KernelSplitting splitting;
    AlgebraHom map;
};
RadicalQuotient radical_quotient_map(const AlgebraPtr& alg);

}  // namespace cliffring
