#include <gtest/gtest.h>

#include <set>

#include "cliffring/groups.hpp"
#include "cliffring/subalgebra.hpp"

using namespace cliffring;

namespace {

Vec ints(const Ring& r, std::vector<int64_t> v) {
    Vec out;
    for (auto x : v) out.push_back(r.from_int(x));
    return out;
}

AlgebraPtr diag(const char* ring, std::vector<int64_t> q) {
    return CliffordAlgebra::create(QuadraticModule::diagonal(Ring::parse(ring), q));
}

// Coordinates of a paravector element, by reading coefficients.
Vec para_coords(const CliffordElement& a) {
    Vec out{a.coeff(0)};
    for (size_t i = 0; i < a.rank(); ++i) out.push_back(a.coeff(uint32_t(1) << i));
    return out;
}

// Twisted conjugation computed from scratch: α ξ α′⁻¹ with α′⁻¹ found by
// solving α′·γ = 1 through invert on the grade involution, not on α.
Matrix conj_oracle(const CliffordElement& a, bool paravector) {
    const auto& alg = a.algebra();
    CliffordElement api = *invert(grade_involution(a));
    size_t off = paravector ? 1 : 0;
    std::vector<Vec> cols;
    for (size_t j = 0; j < alg.rank() + off; ++j) {
        CliffordElement b = paravector && j == 0 ? alg.one() : alg.generator(j - off);
        Vec c = para_coords(a * b * api);
        if (!paravector) c.erase(c.begin());
        cols.push_back(c);
    }
    return Matrix::from_columns(alg.ring(), alg.rank() + off, cols);
}

Matrix direct_sum(const RingElement& s, const Matrix& A) {
    Matrix out(A.ring(), A.rows() + 1, A.cols() + 1);
    out.at(0, 0) = s;
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) out.at(i + 1, j + 1) = A.at(i, j);
    return out;
}

}  // namespace

TEST(Groups, MembershipExamples) {
    auto alg = diag("Z", {1});
    const Ring& z = alg->ring();
    auto s = in_clifford_group(alg->scalar(z.from_int(-1)));
    ASSERT_TRUE(s);
    EXPECT_TRUE(pi(*s).is_identity());
    EXPECT_FALSE(in_clifford_group(alg->scalar(z.from_int(2))));

    auto x = in_clifford_group(alg->generator(0));
    ASSERT_TRUE(x);
    EXPECT_EQ(pi(*x), Matrix::from_ints(z, {{-1}}));
    const auto& m = alg->module();
    EXPECT_EQ(pi(*x), e_reflection(m, reflection_data(m, z.one(), ints(z, {1}))));

    auto alg2 = diag("Z", {0, 1});
    auto g = in_clifford_group(alg2->parse("1 + e{1}"));
    ASSERT_TRUE(g);
    EXPECT_TRUE(pi(*g).is_identity());
    EXPECT_TRUE(in_twisted_center(g->alpha));

    std::string why;
    auto alg3 = diag("Z", {1, 1});
    EXPECT_FALSE(in_clifford_group(alg3->parse("1 + e{1,2}"), &why));
    EXPECT_EQ(why, "not invertible");

    // pi_tilde refuses a member of the wrong flavor.
    auto f4 = diag("Z/4", {1, 1});
    for (const Vec& v : all_vectors(f4->ring(), f4->dim())) {
        auto c = classify(f4->from_vec(v));
        if (c && c->clifford && !c->paravector) EXPECT_THROW(pi_tilde(*c), PreconditionFailed);
        if (c && c->paravector && !c->clifford) EXPECT_THROW(pi(*c), PreconditionFailed);
    }
}

TEST(Groups, ConjugationMatchesOracle) {
    for (const char* rs : {"Z/3", "Z/4", "Z/6"}) {
        for (std::vector<int64_t> q : {std::vector<int64_t>{1, 0}, {1, 1}, {1, 2}, {0, 0}}) {
            auto alg = diag(rs, q);
            for (const Vec& v : all_vectors(alg->ring(), alg->dim())) {
                auto g = classify(alg->from_vec(v));
                if (!g) continue;
                if (g->clifford) ASSERT_EQ(*g->pi, conj_oracle(g->alpha, false));
                if (g->paravector) ASSERT_EQ(*g->pi_tilde, conj_oracle(g->alpha, true));
            }
        }
    }
}

TEST(Groups, LiftExamples) {
    const Ring& z6 = Ring::parse("Z/6");
    auto alg = diag("Z/6", {1});
    auto g = lift_reflection(alg, z6.from_int(4), ints(z6, {4}));
    EXPECT_EQ(g.alpha, alg->parse("3 + 4*e{1}"));
    EXPECT_EQ(pi(g), Matrix::from_ints(z6, {{5}}));
    EXPECT_EQ(lift_reflection(alg, z6.zero(), ints(z6, {0})).alpha, alg->one());
    EXPECT_EQ(lift_reflection(alg, z6.one(), ints(z6, {1})).alpha, alg->generator(0));
    EXPECT_THROW(lift_reflection(alg, z6.from_int(4), ints(z6, {1})), PreconditionFailed);

    auto alg2 = diag("Z", {0, 1});
    const Ring& z = alg2->ring();
    auto b = lift_euler(alg2, ints(z, {1, 0}), ints(z, {0, 1}));
    EXPECT_EQ(b.alpha, alg2->parse("1 + e{1,2}"));
    EXPECT_EQ(pi(b), Matrix::from_ints(z, {{1, 2}, {0, 1}}));
    EXPECT_EQ(lift_euler(alg2, ints(z, {0, 0}), ints(z, {0, 1})).alpha, alg2->one());
    EXPECT_EQ(b.norm, alg2->one());

    auto pe = lift_paravector_euler(alg2, ints(z, {0, 1, 0}), ints(z, {1, 0, 0}));
    EXPECT_EQ(pe.alpha, alg2->parse("1 - e{1}"));
    auto pm = paravector_extension(alg2->module()).module;
    EXPECT_EQ(pi_tilde(pe), euler_transformation(pm, euler_data(pm, ints(z, {0, 1, 0}), ints(z, {1, 0, 0}))));
}

// Every admissible reflection and Euler pair over small rings lifts to an
// element mapping to exactly the claimed orthogonal map.
TEST(Groups, LiftsExhaustive) {
    for (const char* rs : {"Z/2", "Z/3", "Z/4", "Z/6"}) {
        for (std::vector<int64_t> q : {std::vector<int64_t>{1, 0}, {1, 1}, {0, 0}, {1, 3}}) {
            auto alg = diag(rs, q);
            const auto& m = alg->module();
            const Ring& r = m.ring();
            auto pm = paravector_extension(m).module;
            for (const RingElement& e : r.idempotents()) {
                for (const auto& d : admissible_reflections(m, e)) {
                    auto g = lift_reflection(alg, e, d.x);
                    ASSERT_EQ(pi(g), e_reflection(m, d));
                    ASSERT_TRUE(g.paravector);
                    ASSERT_EQ(pi_tilde(g), direct_sum(idem_to_mu2(e), e_reflection(m, d)));
                    ASSERT_EQ(g.norm, alg->scalar(r.one() - e - m.eval_q(d.x)).scaled(r.one()) * alg->one());
                }
                Matrix re = paravector_re(m, e);
                for (const auto& d : admissible_reflections(pm, e)) {
                    auto g = lift_paravector_reflection(alg, e, d.x);
                    ASSERT_EQ(pi_tilde(g), e_reflection(pm, d) * re);
                }
            }
            auto vs = all_vectors(r, m.rank());
            for (const Vec& u : vs)
                for (const Vec& x : vs)
                    if (auto d = try_euler_data(m, u, x)) {
                        auto g = lift_euler(alg, u, x);
                        ASSERT_EQ(pi(g), euler_transformation(m, *d));
                        ASSERT_TRUE(g.alpha.odd_part().is_zero());
                        ASSERT_EQ(g.norm, alg->one());
                    }
            auto pvs = all_vectors(r, pm.rank());
            for (const Vec& u : pvs)
                for (const Vec& x : pvs)
                    if (auto d = try_euler_data(pm, u, x)) ASSERT_EQ(pi_tilde(lift_paravector_euler(alg, u, x)), euler_transformation(pm, *d));
        }
    }
}

TEST(Groups, LiftProducts) {
    const Ring& r = Ring::parse("Z/15");
    auto alg = diag("Z/15", {1, 1});
    const auto& m = alg->module();
    auto x = ints(r, {1, 1});
    ASSERT_TRUE(try_reflection_data(m, r.one(), x));
    auto lift = [&](const RingElement& eps) { return lift_reflection(alg, eps, scale(eps, x)).alpha; };
    for (const RingElement& a : r.idempotents())
        for (const RingElement& b : r.idempotents()) {
            CliffordElement prod = lift(a) * lift(b);
            CliffordElement target = lift(idem_add(a, b));
            bool found = false;
            for (const RingElement& c : r.elements())
                if (c.try_invert() && prod == target.scaled(c)) found = true;
            EXPECT_TRUE(found) << a.to_string() << " " << b.to_string();
        }
    auto dx = lift_reflection(alg, r.from_int(6), ints(r, {6, 0}));
    auto dy = lift_reflection(alg, r.from_int(10), ints(r, {0, 10}));
    EXPECT_EQ(dx.alpha * dy.alpha, lift_reflection(alg, r.from_int(1), ints(r, {6, 10})).alpha);

    auto alg2 = diag("Z/9", {0, 1, 1});
    const Ring& r9 = alg2->ring();
    const auto& m2 = alg2->module();
    auto vs = all_vectors(r9, 3);
    int tried = 0;
    for (const Vec& u : {ints(r9, {1, 0, 0}), ints(r9, {2, 0, 0}), ints(r9, {0, 3, 3})})
        for (size_t a = 0; a < vs.size(); a += 7)
            for (size_t b = 0; b < vs.size(); b += 11) {
                if (!try_euler_data(m2, u, vs[a]) || !try_euler_data(m2, u, vs[b])) continue;
                ++tried;
                CliffordElement U = alg2->from_vector(u), X = alg2->from_vector(vs[a]), Z = alg2->from_vector(vs[b]);
                CliffordElement gamma = alg2->one() - (X * Z).scaled(m2.eval_q(u));
                ASSERT_EQ((alg2->one() - U * X) * (alg2->one() - U * Z), gamma * (alg2->one() - U * (X + Z)));
                ASSERT_TRUE(invert(gamma));
                ASSERT_TRUE(gamma.odd_part().is_zero());
                for (size_t i = 0; i < 3; ++i) ASSERT_EQ(gamma * alg2->generator(i), alg2->generator(i) * gamma);
            }
    EXPECT_GT(tried, 0);
}

TEST(Groups, InvolutionAction) {
    auto alg = diag("Z", {1});
    auto x = *in_clifford_group(alg->generator(0));
    EXPECT_EQ(x.norm, alg->scalar(alg->ring().from_int(-1)));
    EXPECT_TRUE(involution_action(x).all_passed());
    auto alg2 = diag("Z", {0, 1});
    const Ring& z = alg2->ring();
    EXPECT_TRUE(involution_action(lift_euler(alg2, ints(z, {1, 0}), ints(z, {0, 1}))).all_passed());
    auto unit = *classify(alg2->scalar(z.from_int(-1)));
    EXPECT_TRUE(pi(unit).is_identity());
    EXPECT_TRUE(pi_tilde(unit).is_identity());
    EXPECT_TRUE(involution_action(unit).all_passed());

    for (const char* rs : {"Z/3", "Z/4"}) {
        for (std::vector<int64_t> q : {std::vector<int64_t>{1, 0}, {1, 1}, {0, 0}}) {
            auto a = diag(rs, q);
            for (const Vec& v : all_vectors(a->ring(), a->dim())) {
                auto g = classify(a->from_vec(v));
                if (!g || (!g->clifford && !g->paravector)) continue;
                auto rep = involution_action(*g);
                for (const auto& [name, ok] : rep.checks) ASSERT_TRUE(ok) << rs << " " << g->alpha.to_string() << ": " << name;
            }
        }
    }
}

TEST(Groups, ParavectorRe) {
    const Ring& z6 = Ring::parse("Z/6");
    auto m = QuadraticModule::diagonal(z6, {1, 2});
    EXPECT_TRUE(paravector_re(m, z6.from_int(3)).is_identity());
    Matrix r4 = paravector_re(m, z6.from_int(4));
    EXPECT_EQ(r4, Matrix::from_ints(z6, {{5, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(determinant(r4), z6.from_int(5));
    EXPECT_EQ(paravector_re(m, z6.one()), Matrix::from_ints(z6, {{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));

    for (const char* rs : {"Z/6", "Z/15", "Z/4", "Z/2", "Z/3 x Z/4"}) {
        const Ring& r = Ring::parse(rs);
        auto mm = QuadraticModule::diagonal(r, {1, 0});
        auto alg = CliffordAlgebra::create(mm);
        for (const RingElement& e : r.idempotents()) {
            Matrix re = paravector_re(mm, e);
            // η ↦ (1−e)η − eη′ computed in the algebra.
            std::vector<Vec> cols;
            for (size_t j = 0; j < 3; ++j) {
                CliffordElement eta = alg->from_paravector(unit_vec(r, 3, j));
                cols.push_back(para_coords(eta.scaled(r.one() - e) - grade_involution(eta).scaled(e)));
            }
            EXPECT_EQ(re, Matrix::from_columns(r, 3, cols)) << rs;
            EXPECT_EQ(re.is_identity(), e.scaled(2).is_zero()) << rs;
            for (const RingElement& f : r.idempotents()) EXPECT_EQ(re * paravector_re(mm, f), paravector_re(mm, idem_add(e, f)));
        }
    }
}

TEST(Groups, Homogeneity) {
    auto alg = diag("Z", {1, 1});
    const Ring& z = alg->ring();
    EXPECT_EQ(homogeneity_degree(alg->parse("2 + e{1,2}")), z.zero());
    EXPECT_EQ(homogeneity_degree(alg->parse("e{1} - e{2}")), z.one());
    EXPECT_FALSE(homogeneity_degree(alg->parse("1 + e{1}")));

    auto a15 = diag("Z/15", {1});
    const Ring& r = a15->ring();
    auto w = homogeneity_witnesses(a15->parse("10 + 6*e{1}"));
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0], r.from_int(6));
    EXPECT_TRUE(homogeneity_witnesses(a15->parse("9 + 6*e{1}")).empty());

    for (const char* rs : {"Z/15", "Z/6", "Z/3"}) {
        auto a = diag(rs, {1, 1});
        const Ring& rr = a->ring();
        for (const RingElement& e : rr.idempotents())
            for (const auto& d : admissible_reflections(a->module(), e)) {
                auto g = lift_reflection(a, e, d.x);
                auto ws = homogeneity_witnesses(g.alpha);
                EXPECT_NE(std::find(ws.begin(), ws.end(), e), ws.end());
                auto rep = ehom_check(g.alpha);
                EXPECT_TRUE(rep.all_passed()) << rs;
            }
    }
    EXPECT_FALSE(ehom_check(alg->parse("1 + e{1}")).available);
}

TEST(Groups, SesGamma) {
    auto a = diag("Z/3", {1, 0});
    auto rep = verify_sesgamma(a);
    ASSERT_TRUE(rep.hypotheses_certified) << rep.reason;
    for (const auto& [name, ok] : rep.checks) EXPECT_TRUE(ok) << name;
    EXPECT_EQ(rep.kernel_size, 6u);

    auto one = diag("Z/3", {1});
    auto r1 = verify_sesgamma(one);
    EXPECT_TRUE(r1.all_passed());
    EXPECT_EQ(r1.image_size, 2u);
    EXPECT_EQ(r1.target_size, 2u);
    auto gamma = enumerate_group(one, GroupFlavor::Clifford);
    std::set<CliffordElement> got, want;
    for (auto& g : gamma) got.insert(g.alpha);
    for (int s : {1, 2}) {
        want.insert(one->scalar(one->ring().from_int(s)));
        want.insert(one->generator(0).scaled(one->ring().from_int(s)));
    }
    EXPECT_EQ(got, want);

    for (const char* rs : {"Z/3", "Z/5", "Z/9"}) {
        for (std::vector<int64_t> q : {std::vector<int64_t>{1}, {0}, {1, 1}, {1, 2}, {0, 1}, {0, 0}}) {
            auto s = verify_sesgamma(diag(rs, q));
            for (const auto& [name, ok] : s.checks) EXPECT_TRUE(ok) << rs << " " << name;
        }
    }
    auto f2 = verify_sesgamma(diag("Z/2", {1, 0}));
    EXPECT_FALSE(f2.hypotheses_certified);
    EXPECT_TRUE(f2.all_passed());
}

TEST(Groups, SesPara) {
    auto one = diag("Z/3", {1});
    auto rep = verify_sespara(one);
    ASSERT_TRUE(rep.hypotheses_certified);
    for (const auto& [name, ok] : rep.checks) EXPECT_TRUE(ok) << name;
    EXPECT_TRUE(rep.generation_holds);

    // r₁ has no preimage: scan every element of C directly.
    Matrix r1 = paravector_re(one->module(), one->ring().one());
    for (const Vec& v : all_vectors(one->ring(), one->dim())) {
        auto g = classify(one->from_vec(v));
        if (g && g->paravector) EXPECT_NE(*g->pi_tilde, r1);
    }

    for (const char* rs : {"Z/3", "Z/5", "Z/15"}) {
        for (std::vector<int64_t> q : {std::vector<int64_t>{1}, {0}, {2}, {1, 0}, {1, 1}}) {
            if (std::string(rs) == "Z/15" && q.size() > 1) continue;
            auto s = verify_sespara(diag(rs, q));
            for (const auto& [name, ok] : s.checks) EXPECT_TRUE(ok) << rs << " " << name;
        }
    }
    // 𝔽₂ with σ_q = 0: every unit is in ker π̃.
    auto f2 = diag("Z/2", {1, 1});
    auto para = enumerate_group(f2, GroupFlavor::Paravector);
    size_t units = 0;
    for (const Vec& v : all_vectors(f2->ring(), f2->dim())) units += invert(f2->from_vec(v)).has_value();
    EXPECT_EQ(para.size(), units);
    for (const auto& g : para) EXPECT_TRUE(g.pi_tilde->is_identity());
}

TEST(Groups, Vahlen) {
    auto alg = diag("Z/5", {1, 0});
    const Ring& r = alg->ring();
    std::vector<CliffordGroupElement> members{lift_reflection(alg, r.one(), ints(r, {1, 0})),
                                              lift_euler(alg, ints(r, {0, 1}), ints(r, {1, 0}))};
    auto res = vahlen_filter(members);
    EXPECT_EQ(res.kept.size(), 2u);
    EXPECT_TRUE(res.closed);

    // ν ∈ ⋀²M^⊥ has ν̄ = −ν, so N(1+ν) = 1; a degree-3 ν has ν̄ = ν and N(1+ν) = 1 + 2ν.
    auto q0 = diag("Z/3", {0, 0, 0});
    auto two = *classify(q0->parse("1 + e{1,2}"));
    auto three = *classify(q0->parse("1 + e{1,2,3}"));
    EXPECT_EQ(two.norm, q0->one());
    EXPECT_EQ(three.norm, q0->parse("1 + 2*e{1,2,3}"));
    auto v = vahlen_filter({two, three});
    ASSERT_EQ(v.kept.size(), 1u);
    EXPECT_EQ(v.kept[0].alpha, two.alpha);

    auto all = vahlen_filter(enumerate_group(diag("Z/3", {1, 0}), GroupFlavor::Clifford));
    EXPECT_TRUE(all.closed);
}

TEST(Groups, EmptyIntSearch) {
    for (std::vector<int64_t> q : {std::vector<int64_t>{1}, {0}, {1, 0}, {1, 1}, {0, 0}})
        EXPECT_TRUE(conjecture_emptyint_search(diag("Z/3", q)).counterexamples.empty());
    auto z4 = conjecture_emptyint_search(diag("Z/4", {1, 0}));
    EXPECT_GT(z4.searched, 0u);
    EXPECT_THROW(conjecture_emptyint_search(diag("Z/2", {1})), PreconditionFailed);
}

TEST(Groups, Decomposition) {
    for (auto [rs, q] : {std::pair<const char*, std::vector<int64_t>>{"Z/15", {1}}, {"Z/3", {1, 1}}, {"Z/5", {1, 2}}}) {
        auto rep = gammadecom_check(diag(rs, q));
        ASSERT_TRUE(rep.available) << rs << " " << rep.reason;
        for (const auto& [name, ok] : rep.checks) EXPECT_TRUE(ok) << rs << " " << name;
    }
    EXPECT_FALSE(gammadecom_check(diag("Z/3", {1, 0})).available);
}

TEST(Groups, MultiplierSearch) {
    auto rep = multiplier_search(diag("Z/8", {1}));
    EXPECT_GT(rep.searched, 0u);
    for (const auto& [a, d] : rep.hits) EXPECT_EQ(grade_involution(a), a.scaled(d));
    auto quad = multiplier_search(diag("Z/4[X]/(X^2-1)", {1}));
    EXPECT_GT(quad.searched, 0u);
    for (const auto& [a, d] : quad.hits) {
        EXPECT_EQ(grade_involution(a), a.scaled(d));
        EXPECT_TRUE(in_mu2(d));
    }
}
