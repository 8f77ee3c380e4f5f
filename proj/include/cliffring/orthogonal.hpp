#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cliffring/quadratic_module.hpp"

namespace cliffring {

// Endomorphism of M by its matrix (columns = images of basis vectors).
struct OrthogonalMap {
    Matrix mat;
    bool bijective = false;
    std::optional<Matrix> inverse;
};
OrthogonalMap make_map(const Matrix& A);

bool is_orthogonal(const QuadraticModule& m, const Matrix& A);
bool acts_trivially_on_perp(const QuadraticModule& m, const Matrix& A);

// x ∈ eM with q(x)·t = e, t ∈ eR.
struct ReflectionData {
    RingElement e;
    Vec x;
    RingElement t;
};
// Throws PreconditionFailed when e is not idempotent, ex ≠ x, or q(x) ∉ (eR)^×.
ReflectionData reflection_data(const QuadraticModule& m, const RingElement& e, const Vec& x);
std::optional<ReflectionData> try_reflection_data(const QuadraticModule& m, const RingElement& e, const Vec& x);
// r_x(y) = y − (x,y)·t·x.
Matrix e_reflection(const QuadraticModule& m, const ReflectionData& d);
bool is_trivial_reflection(const QuadraticModule& m, const ReflectionData& d);

// Certified (u,x) = 0, q(u)q(x) = 0, q(u)(x, x_j) = 0 for all j.
struct EulerData {
    Vec u, x;
};
EulerData euler_data(const QuadraticModule& m, const Vec& u, const Vec& x);
std::optional<EulerData> try_euler_data(const QuadraticModule& m, const Vec& u, const Vec& x);
// E_{u,x}(y) = y + (x,y)u − (u,y)[x + q(x)u].
Matrix euler_transformation(const QuadraticModule& m, const EulerData& d);
// The extra condition q(u)q(x)(u, x_j) = 0 under which det E_{u,x} = 1.
bool euler_det_condition(const QuadraticModule& m, const EulerData& d);

// T_{z,t}(y) = y + (t,y)z and its determinant 1 + (z,t).
Matrix transvection(const QuadraticModule& m, const Vec& z, const Vec& t);
RingElement transvection_det(const QuadraticModule& m, const Vec& z, const Vec& t);

// δ·Id_N ⊕ Id_L for N spanned by the listed basis vectors, after certifying
// that N ⊥ L, N ∩ M^⊥ = 0 and δ² = 1.
Matrix scaled_summand_map(const QuadraticModule& m, const std::vector<size_t>& n_basis, const RingElement& delta);

// Relations between reflections and Euler transformations; each throws
// PreconditionFailed when its hypotheses fail.
bool relation_orthogonal_sum(const QuadraticModule& m, const ReflectionData& dx, const ReflectionData& dy);
bool relation_restriction(const QuadraticModule& m, const ReflectionData& d, const RingElement& eps);
bool relation_idempotent_sum(const QuadraticModule& m, const ReflectionData& d, const RingElement& eps1,
                             const RingElement& eps2);
bool relation_euler_scaling(const QuadraticModule& m, const EulerData& d, const RingElement& a);
bool relation_euler_additive(const QuadraticModule& m, const Vec& u, const Vec& x, const Vec& z);
bool relation_euler_exchange(const QuadraticModule& m, const Vec& u, const Vec& v, const Vec& x);
// r_x ∘ r_{x − q(x)u} = E_{u,x} for u ∈ M^⊥ with e·q(u) = 0.
bool relation_mref(const QuadraticModule& m, const ReflectionData& d, const Vec& u);

enum class Restrict { All, TrivialOnPerp };
// Every orthogonal matrix over a finite ring, in column-major lexicographic
// order; `budget` bounds the number of search nodes.
std::vector<OrthogonalMap> enumerate_orthogonal(const QuadraticModule& m, Restrict restrict = Restrict::All,
                                                uint64_t budget = 10'000'000);

struct CheckList {
    bool available = true;
    std::string reason;
    std::vector<std::pair<std::string, bool>> checks;
    bool all_passed() const;
};

// Exact sequences for the automorphism groups O(M,q) and O_{M^⊥}(M,q) and the Euler map from
// M ⊗ M_q^⊥, verified on enumerated groups.
struct SequenceReport : CheckList {
    size_t group_size = 0;        // |O(M,q)|
    size_t perp_group_size = 0;   // |O_{M^⊥}(M,q)|
    size_t kernel_size = 0;       // kernel of O(M,q) → GL(M_q^⊥) × O(M̄)
    size_t perp_kernel_size = 0;  // kernel of O_{M^⊥}(M,q) → O(M̄)
};
SequenceReport sequence_checks(const QuadraticModule& m, uint64_t budget = 10'000'000);

// Orthogonal maps that fix M^⊥ pointwise but are not bijective.
struct AllMqReport {
    size_t searched = 0;
    std::vector<Matrix> counterexamples;
};
AllMqReport conjecture_allmq_search(const QuadraticModule& m, uint64_t budget = 10'000'000);

// Vectors x ∈ eM for which q(x) is a unit of eR.
std::vector<ReflectionData> admissible_reflections(const QuadraticModule& m, const RingElement& e,
                                                   uint64_t budget = 10'000'000);

}  // namespace cliffring
