#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cliffring/linalg.hpp"

namespace cliffring {

// Free quadratic module with basis x_1..x_n (0-based in code).
class QuadraticModule {
public:
    QuadraticModule() = default;
    // Validates symmetry and gram[i][i] = 2·qdiag[i].
    QuadraticModule(const Ring& r, Vec qdiag, Matrix gram);
    // Orthogonal basis: gram = diag(2·qdiag).
    static QuadraticModule orthogonal(const Ring& r, const Vec& qdiag);
    static QuadraticModule diagonal(const Ring& r, const std::vector<int64_t>& qdiag);
    static QuadraticModule from_ints(const Ring& r, const std::vector<int64_t>& qdiag,
                                     const std::vector<std::vector<int64_t>>& gram);

    const Ring& ring() const { return *ring_; }
    size_t rank() const { return qdiag_.size(); }
    const Vec& qdiag() const { return qdiag_; }
    const Matrix& gram() const { return gram_; }

    RingElement eval_q(const Vec& v) const;
    RingElement eval_pair(const Vec& v, const Vec& w) const;
    // Row vector (v, x_j)_j.
    Vec pairing_row(const Vec& v) const;

    bool is_orthogonal_basis() const;
    bool is_zero_form() const;
    std::string describe() const;

    bool operator==(const QuadraticModule& o) const;

private:
    const Ring* ring_ = nullptr;
    Vec qdiag_;
    Matrix gram_;
};

struct KernelData {
    enum class Method { Nullspace, Enumeration, TwoRegular };
    std::vector<Vec> perp;   // generators of M^⊥
    std::vector<Vec> qperp;  // generators of M_q^⊥
    Method method = Method::Nullspace;
};
std::string to_string(KernelData::Method m);

// M^⊥ by nullspace of the Gram matrix; M_q^⊥ equal to it over 2-regular
// rings, by enumeration over finite rings, otherwise NotComputable.
KernelData kernel_perp(const QuadraticModule& m);

bool in_perp(const QuadraticModule& m, const Vec& v);

// R ⊕ M with basis (1, x_1..x_n) and q_R(a + x) = q(x) − a².
struct ParavectorModule {
    QuadraticModule base;
    QuadraticModule module;
};
ParavectorModule paravector_extension(const QuadraticModule& m);

// Unital ring homomorphism R → S.
struct RingHom {
    const Ring* source = nullptr;
    const Ring* target = nullptr;
    std::function<RingElement(const RingElement&)> map;
    RingElement operator()(const RingElement& a) const { return map(a); }
};
// ℤ → S, or ℤ/n → S when n·1_S = 0.
RingHom canonical_hom(const Ring& source, const Ring& target);
// R[X]/(f) → S determined by X ↦ x_image, with R → S canonical.
RingHom quotient_hom(const Ring& source, const Ring& target, const RingElement& x_image);
// Projection of a product onto one factor.
RingHom projection_hom(const Ring& source, size_t factor);

QuadraticModule scalar_extension(const QuadraticModule& m, const RingHom& h);

// New basis u_j = columns of U (unimodular): qdiag_j = q(u_j), gram = Uᵀ G U.
QuadraticModule change_basis(const QuadraticModule& m, const Matrix& U);

// A basis of M in which M_q^⊥ is spanned by the basis vectors listed in
// `killed`; the remaining vectors span a complement carrying q̄.
struct KernelSplitting {
    Matrix U;     // columns = new basis in old coordinates
    Matrix Uinv;  // old coordinates → new coordinates
    std::vector<size_t> killed;
    std::vector<size_t> kept;
    QuadraticModule adapted;   // M in the new basis
    QuadraticModule quotient;  // (M̄, q̄) on the kept vectors
};
// nullopt with `reason` filled when no basis-split form is found.
std::optional<KernelSplitting> split_quadratic_kernel(const QuadraticModule& m, std::string* reason = nullptr);

}  // namespace cliffring
