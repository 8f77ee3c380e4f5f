#include "cliffring/subalgebra.hpp"

#include <bit>
#include <numeric>

namespace cliffring {

std::string to_string(SubalgebraKind k) {
    switch (k) {
        case SubalgebraKind::Center:
            return "center";
        case SubalgebraKind::EvenCenter:
            return "even_center";
        case SubalgebraKind::TwistedCenter:
            return "twisted_center";
        case SubalgebraKind::CentralizerEven:
            return "centralizer_even";
        case SubalgebraKind::ExteriorPerp:
            return "exterior_perp";
        case SubalgebraKind::ExteriorPerpEven:
            return "exterior_perp_even";
        case SubalgebraKind::Other:
            break;
    }
    return "other";
}

namespace {

std::vector<Vec> coeff_vectors(const std::vector<CliffordElement>& elems) {
    std::vector<Vec> out;
    for (auto& e : elems) out.push_back(e.coeffs());
    return out;
}

// Stack the rows of several 2ⁿ×2ⁿ condition matrices.
Matrix stack(const Ring& r, uint32_t dim, const std::vector<Matrix>& blocks) {
    Matrix out(r, blocks.size() * dim, dim);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (uint32_t i = 0; i < dim; ++i)
            for (uint32_t j = 0; j < dim; ++j) out.at(b * dim + i, j) = blocks[b].at(i, j);
    return out;
}

Matrix grade_matrix(const CliffordAlgebra& alg) {
    Matrix G = Matrix::identity(alg.ring(), alg.dim());
    for (uint32_t m = 0; m < alg.dim(); ++m)
        if (std::popcount(m) % 2) G.at(m, m) = -alg.ring().one();
    return G;
}

Matrix odd_selector(const CliffordAlgebra& alg) {
    Matrix S(alg.ring(), alg.dim(), alg.dim());
    for (uint32_t m = 0; m < alg.dim(); ++m)
        if (std::popcount(m) % 2) S.at(m, m) = alg.ring().one();
    return S;
}

Subalgebra from_nullspace(const AlgebraPtr& alg, SubalgebraKind kind, const std::vector<Matrix>& blocks) {
    Subalgebra s{alg, kind, {}};
    if (blocks.empty()) {
        for (uint32_t m = 0; m < alg->dim(); ++m) s.generators.push_back(alg->basis(m));
        return s;
    }
    for (auto& v : nullspace(stack(alg->ring(), alg->dim(), blocks))) {
        auto e = alg->from_vec(v);
        if (!e.is_zero()) s.generators.push_back(e);
    }
    return s;
}

}  // namespace

bool Subalgebra::contains(const CliffordElement& a) const {
    return in_span(algebra->ring(), algebra->dim(), coeff_vectors(generators), a.coeffs());
}

bool Subalgebra::contains_all(const std::vector<CliffordElement>& elems) const {
    auto gens = coeff_vectors(generators);
    for (auto& e : elems)
        if (!in_span(algebra->ring(), algebra->dim(), gens, e.coeffs())) return false;
    return true;
}

bool Subalgebra::contains_all(const Subalgebra& o) const { return contains_all(o.generators); }

bool Subalgebra::closed_under_mul() const {
    std::vector<CliffordElement> prods;
    for (auto& a : generators)
        for (auto& b : generators) prods.push_back(a * b);
    return contains_all(prods);
}

bool Subalgebra::graded() const {
    std::vector<CliffordElement> parts;
    for (auto& g : generators) {
        parts.push_back(g.even_part());
        parts.push_back(g.odd_part());
    }
    return contains_all(parts);
}

bool same_submodule(const Subalgebra& a, const Subalgebra& b) { return a.contains_all(b) && b.contains_all(a); }

Subalgebra with_extra(const Subalgebra& a, const std::vector<CliffordElement>& extra) {
    Subalgebra s = a;
    s.kind = SubalgebraKind::Other;
    s.generators.insert(s.generators.end(), extra.begin(), extra.end());
    return s;
}

Subalgebra even_part(const Subalgebra& a) {
    // Valid for graded submodules.
    Subalgebra s{a.algebra, SubalgebraKind::Other, {}};
    for (auto& g : a.generators) {
        auto e = g.even_part();
        if (!e.is_zero()) s.generators.push_back(e);
    }
    return s;
}

Subalgebra twisted_center(const AlgebraPtr& alg) {
    // α x_i − x_i α′ = 0.
    std::vector<Matrix> blocks;
    Matrix G = grade_matrix(*alg);
    for (size_t i = 0; i < alg->rank(); ++i) {
        auto x = alg->generator(i);
        blocks.push_back(right_mul_matrix(x) - left_mul_matrix(x) * G);
    }
    return from_nullspace(alg, SubalgebraKind::TwistedCenter, blocks);
}

Subalgebra center(const AlgebraPtr& alg) {
    std::vector<Matrix> blocks;
    for (size_t i = 0; i < alg->rank(); ++i) {
        auto x = alg->generator(i);
        blocks.push_back(right_mul_matrix(x) - left_mul_matrix(x));
    }
    return from_nullspace(alg, SubalgebraKind::Center, blocks);
}

namespace {

std::vector<Matrix> even_commutator_blocks(const AlgebraPtr& alg) {
    std::vector<Matrix> blocks;
    for (size_t i = 0; i < alg->rank(); ++i)
        for (size_t j = i + 1; j < alg->rank(); ++j) {
            auto x = alg->generator(i) * alg->generator(j);
            blocks.push_back(right_mul_matrix(x) - left_mul_matrix(x));
        }
    return blocks;
}

}  // namespace

Subalgebra centralizer_even(const AlgebraPtr& alg) {
    return from_nullspace(alg, SubalgebraKind::CentralizerEven, even_commutator_blocks(alg));
}

Subalgebra even_center(const AlgebraPtr& alg) {
    auto blocks = even_commutator_blocks(alg);
    blocks.push_back(odd_selector(*alg));
    return from_nullspace(alg, SubalgebraKind::EvenCenter, blocks);
}

Subalgebra solve_subalgebra(const AlgebraPtr& alg, SubalgebraKind kind) {
    switch (kind) {
        case SubalgebraKind::Center:
            return center(alg);
        case SubalgebraKind::EvenCenter:
            return even_center(alg);
        case SubalgebraKind::TwistedCenter:
            return twisted_center(alg);
        case SubalgebraKind::CentralizerEven:
            return centralizer_even(alg);
        case SubalgebraKind::ExteriorPerp:
            return exterior_perp_image(alg);
        case SubalgebraKind::ExteriorPerpEven:
            return exterior_perp_even(alg);
        case SubalgebraKind::Other:
            break;
    }
    throw Error("no solver for this subalgebra kind");
}

bool orthobasis_membership(const CliffordElement& a, SubalgebraKind kind) {
    const auto& alg = a.algebra();
    const auto& m = alg.module();
    if (!m.is_orthogonal_basis()) throw PreconditionFailed("closed-form membership needs an orthogonal basis");
    const size_t n = alg.rank();
    const uint32_t full = alg.dim() - 1;
    auto twisted_ok = [&](uint32_t I) {
        for (size_t i = 0; i < n; ++i)
            if ((I >> i & 1) && !(a.coeff(I) * m.qdiag()[i]).scaled(2).is_zero()) return false;
        return true;
    };
    for (uint32_t I = 0; I <= full; ++I) {
        const int k = std::popcount(I);
        switch (kind) {
            case SubalgebraKind::TwistedCenter:
                if (!twisted_ok(I)) return false;
                break;
            case SubalgebraKind::Center:
                if (k % 2 == 0 && !twisted_ok(I)) return false;
                if (k % 2 == 1 && size_t(k) < n && !a.coeff(I).scaled(2).is_zero()) return false;
                break;
            case SubalgebraKind::CentralizerEven:
                if (I != full && !twisted_ok(I)) return false;
                break;
            case SubalgebraKind::EvenCenter:
                if (k % 2 == 1 && !a.coeff(I).is_zero()) return false;
                if (I != full && !twisted_ok(I)) return false;
                break;
            default:
                throw Error("no closed form for " + to_string(kind));
        }
    }
    return true;
}

namespace {

Subalgebra exterior_products(const AlgebraPtr& alg, bool even_only, SubalgebraKind kind) {
    auto kd = kernel_perp(alg->module());
    std::vector<CliffordElement> perp;
    for (auto& v : kd.perp) perp.push_back(alg->from_vector(v));
    if (perp.size() > 20) throw PreconditionFailed("too many M^⊥ generators");
    Subalgebra s{alg, kind, {}};
    for (uint32_t S = 0; S < (uint32_t(1) << perp.size()); ++S) {
        if (even_only && std::popcount(S) % 2) continue;
        CliffordElement p = alg->one();
        for (size_t k = 0; k < perp.size(); ++k)
            if (S >> k & 1) p = p * perp[k];
        if (!p.is_zero()) s.generators.push_back(p);
    }
    return s;
}

}  // namespace

Subalgebra exterior_perp_image(const AlgebraPtr& alg) { return exterior_products(alg, false, SubalgebraKind::ExteriorPerp); }

Subalgebra exterior_perp_even(const AlgebraPtr& alg) {
    return exterior_products(alg, true, SubalgebraKind::ExteriorPerpEven);
}

Matrix rational_orthogonal_basis(const QuadraticModule& m) {
    const Ring& Z = m.ring();
    if (Z.descriptor().kind != RingDescriptor::Kind::Integers) throw PreconditionFailed("needs the integers");
    const size_t n = m.rank();
    std::vector<Vec> rest, out;
    for (size_t i = 0; i < n; ++i) rest.push_back(unit_vec(Z, n, i));
    auto primitive = [&](Vec v) {
        int64_t g = 0;
        for (auto& c : v) g = std::gcd(g, c.coord(0));
        if (g > 1)
            for (auto& c : v) c = Z.from_int(c.coord(0) / g);
        return v;
    };
    while (!rest.empty()) {
        std::optional<Vec> v;
        for (size_t a = 0; a < rest.size() && !v; ++a)
            if (!m.eval_pair(rest[a], rest[a]).is_zero()) {
                v = rest[a];
                rest.erase(rest.begin() + a);
            }
        for (size_t a = 0; a < rest.size() && !v; ++a)
            for (size_t b = a + 1; b < rest.size() && !v; ++b)
                if (!m.eval_pair(rest[a], rest[b]).is_zero()) {
                    v = add(rest[a], rest[b]);
                    rest.erase(rest.begin() + a);
                }
        if (!v) {
            // The form vanishes on what is left.
            out.insert(out.end(), rest.begin(), rest.end());
            break;
        }
        const RingElement vv = m.eval_pair(*v, *v);
        for (auto& w : rest) w = primitive(sub(scale(vv, w), scale(m.eval_pair(*v, w), *v)));
        out.push_back(*v);
    }
    return Matrix::from_columns(Z, n, out);
}

Subalgebra saturate(const Subalgebra& s) {
    const auto& alg = s.algebra;
    if (alg->ring().descriptor().kind != RingDescriptor::Kind::Integers) throw PreconditionFailed("needs the integers");
    const uint32_t d = alg->dim();
    // Annihilator of the span, then its annihilator.
    Matrix Gt(alg->ring(), s.generators.size(), d);
    for (size_t k = 0; k < s.generators.size(); ++k)
        for (uint32_t j = 0; j < d; ++j) Gt.at(k, j) = s.generators[k].coeff(j);
    Subalgebra out{alg, SubalgebraKind::Other, {}};
    std::vector<Vec> ann = s.generators.empty() ? std::vector<Vec>{} : nullspace(Gt);
    if (s.generators.empty()) return out;
    if (ann.empty()) {
        for (uint32_t m = 0; m < d; ++m) out.generators.push_back(alg->basis(m));
        return out;
    }
    Matrix A(alg->ring(), ann.size(), d);
    for (size_t k = 0; k < ann.size(); ++k)
        for (uint32_t j = 0; j < d; ++j) A.at(k, j) = ann[k][j];
    for (auto& v : nullspace(A)) out.generators.push_back(alg->from_vec(v));
    return out;
}

bool ZtildeZReport::all_passed() const {
    for (auto& [name, ok] : checks)
        if (!ok) return false;
    return certified;
}

ZtildeZReport verify_ztildez(const AlgebraPtr& alg, const std::optional<Matrix>& rational_basis) {
    ZtildeZReport rep;
    const auto& m = alg->module();
    const Ring& R = alg->ring();
    const size_t n = m.rank();

    bool orth_ok = m.is_orthogonal_basis() && R.is_two_regular();
    if (orth_ok)
        for (auto& q : m.qdiag())
            if (!q.is_zero() && R.is_zero_divisor(q)) orth_ok = false;
    if (orth_ok) {
        rep.certified = true;
        rep.pattern = "orthogonal-basis";
        rep.beta = alg->basis(alg->dim() - 1);
    } else if (R.descriptor().kind == RingDescriptor::Kind::Integers) {
        Matrix P = rational_basis ? *rational_basis : rational_orthogonal_basis(m);
        if (P.rows() != n || P.cols() != n || &P.ring() != &R) throw Error("rational basis has the wrong shape");
        bool orth = !determinant(P).is_zero();
        for (size_t i = 0; i < n && orth; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (!m.eval_pair(P.column(i), P.column(j)).is_zero()) orth = false;
        if (!orth) {
            rep.reason = "supplied basis is not orthogonal of full rank";
            return rep;
        }
        rep.certified = true;
        rep.pattern = "integral-domain";
        // C ∩ ℚ·u_1⋯u_n is generated by the primitive part of that product.
        CliffordElement u = alg->one();
        for (size_t j = 0; j < n; ++j) u = u * alg->from_vector(P.column(j));
        int64_t g = 0;
        for (auto& c : u.coeffs()) g = std::gcd(g, c.coord(0));
        std::vector<RingElement> c = u.coeffs();
        if (g > 1)
            for (auto& x : c) x = R.from_int(x.coord(0) / g);
        rep.beta = alg->from_vec(c);
    } else {
        rep.reason = "no certified orthogonal basis with 2 and the nonzero q(x_i) non-zero-divisors";
        return rep;
    }

    auto kd = kernel_perp(m);
    rep.form_zero = m.is_zero_form();
    rep.degenerate = !kd.perp.empty();
    auto Zt = twisted_center(alg), Z = center(alg), Zp = even_center(alg), Cc = centralizer_even(alg);
    auto E = exterior_perp_image(alg), Ee = exterior_perp_even(alg);
    const CliffordElement& b = *rep.beta;
    // With a basis only over ℚ, R ⊕ Pβ is known only as its intersection with C.
    const bool over_q = rep.pattern == "integral-domain";
    auto plus_beta = [&](const Subalgebra& s) {
        auto t = with_extra(s, {b});
        return over_q ? saturate(t) : t;
    };
    rep.checks.emplace_back("twisted_center = exterior(M^perp)", same_submodule(Zt, E));
    auto b2 = b * b;
    rep.checks.emplace_back("beta^2 is a scalar", b2.is_scalar());
    rep.checks.emplace_back("beta^2 = 0 iff degenerate", b2.is_zero() == rep.degenerate);
    if (rep.form_zero) {
        rep.checks.emplace_back("centralizer_even = exterior(M^perp)", same_submodule(Cc, E));
        rep.checks.emplace_back("even_center = exterior(M^perp)_+", same_submodule(Zp, Ee));
        // x_[n] is central for odd n even when q = 0, so the odd-rank split applies.
        if (n % 2 == 0) {
            rep.checks.emplace_back("center = exterior(M^perp)_+", same_submodule(Z, Ee));
        } else {
            rep.checks.emplace_back("center = exterior(M^perp)_+ + R beta", same_submodule(Z, plus_beta(Ee)));
            rep.literal_checks.emplace_back("center = exterior(M^perp)_+", same_submodule(Z, Ee));
        }
    } else {
        rep.checks.emplace_back("centralizer_even = twisted_center + R beta", same_submodule(Cc, plus_beta(Zt)));
        if (n % 2 == 0) {
            rep.checks.emplace_back("center = exterior(M^perp)_+", same_submodule(Z, Ee));
            rep.checks.emplace_back("even_center = center + R beta", same_submodule(Zp, plus_beta(Ee)));
        } else {
            rep.checks.emplace_back("even_center = exterior(M^perp)_+", same_submodule(Zp, Ee));
            rep.checks.emplace_back("center = exterior(M^perp)_+ + R beta", same_submodule(Z, plus_beta(Ee)));
        }
    }
    return rep;
}

}  // namespace cliffring
