#include <gtest/gtest.h>

#include <random>

#include "cliffring/quadratic_module.hpp"

using namespace cliffring;

namespace {

Vec ints(const Ring& r, std::vector<int64_t> v) {
    Vec out;
    for (auto x : v) out.push_back(r.from_int(x));
    return out;
}

// All symmetric Gram matrices with even diagonal over a small finite ring,
// sampled rather than exhaustive.
QuadraticModule random_module(const Ring& r, size_t n, std::mt19937_64& rng) {
    Vec q;
    Matrix g(r, n, n);
    auto pick = [&] { return r.element_at(rng() % r.size()); };
    for (size_t i = 0; i < n; ++i) {
        q.push_back(pick());
        g.at(i, i) = q[i].scaled(2);
        for (size_t j = i + 1; j < n; ++j) g.at(i, j) = g.at(j, i) = pick();
    }
    return QuadraticModule(r, q, g);
}

}  // namespace

TEST(QuadraticModule, RejectsBadGram) {
    const Ring& z = Ring::parse("Z");
    EXPECT_THROW(QuadraticModule::from_ints(z, {1, 1}, {{2, 1}, {0, 2}}), Error);
    EXPECT_THROW(QuadraticModule::from_ints(z, {1, 1}, {{2, 1}, {1, 3}}), Error);
}

TEST(QuadraticModule, EvalExamples) {
    const Ring& z = Ring::parse("Z");
    auto m = QuadraticModule::diagonal(z, {0, 1});
    EXPECT_EQ(m.eval_q(ints(z, {0, 0})), z.zero());
    EXPECT_EQ(m.eval_q(ints(z, {1, 1})), z.one());
    EXPECT_EQ(m.eval_pair(ints(z, {0, 1}), ints(z, {0, 1})), z.from_int(2));
}

TEST(QuadraticModule, PolarIdentities) {
    std::mt19937_64 rng(1);
    for (const char* s : {"Z/6", "Z/4", "Z/2[X]/(X^2)", "Z/3 x Z/2"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 10; ++t) {
            auto m = random_module(r, 2, rng);
            auto vs = all_vectors(r, 2);
            for (size_t a = 0; a < vs.size(); a += 3)
                for (size_t b = 0; b < vs.size(); b += 5) {
                    auto& v = vs[a];
                    auto& w = vs[b];
                    EXPECT_EQ(m.eval_pair(v, w), m.eval_q(add(v, w)) - m.eval_q(v) - m.eval_q(w));
                    EXPECT_EQ(m.eval_pair(v, w), m.eval_pair(w, v));
                    EXPECT_EQ(m.eval_pair(v, v), m.eval_q(v).scaled(2));
                    EXPECT_EQ(m.eval_q(scale(w[0], v)), w[0] * w[0] * m.eval_q(v));
                }
        }
    }
}

TEST(KernelPerp, Examples) {
    const Ring& z = Ring::parse("Z");
    auto kd = kernel_perp(QuadraticModule::diagonal(z, {0, 1}));
    EXPECT_TRUE(same_span(z, 2, kd.perp, {ints(z, {1, 0})}));
    EXPECT_TRUE(same_span(z, 2, kd.qperp, {ints(z, {1, 0})}));

    const Ring& f2 = Ring::parse("Z/2");
    auto kf = kernel_perp(QuadraticModule::diagonal(f2, {1, 0}));
    EXPECT_TRUE(same_span(f2, 2, kf.perp, {ints(f2, {1, 0}), ints(f2, {0, 1})}));
    auto k1 = kernel_perp(QuadraticModule::diagonal(f2, {1}));
    EXPECT_TRUE(k1.qperp.empty());
    EXPECT_EQ(k1.method, KernelData::Method::Enumeration);

    EXPECT_THROW(kernel_perp(QuadraticModule::orthogonal(Ring::parse("Z x Z/2"),
                                                         Vec{Ring::parse("Z x Z/2").parse_element("(1, 1)")})),
                 NotComputable);
}

TEST(KernelPerp, MatchesBruteForce) {
    std::mt19937_64 rng(2);
    for (const char* s : {"Z/6", "Z/4", "Z/2", "Z/2[X]/(X^2)", "Z/8", "Z/3"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 8; ++t) {
            size_t n = 1 + rng() % 2;
            auto m = random_module(r, n, rng);
            auto kd = kernel_perp(m);
            auto vs = all_vectors(r, n);
            VecSet perp, qperp;
            for (auto& v : vs) {
                bool ok = true;
                for (auto& w : vs)
                    if (!m.eval_pair(v, w).is_zero()) ok = false;
                if (ok) {
                    perp.insert(v);
                    if (m.eval_q(v).is_zero()) qperp.insert(v);
                }
            }
            EXPECT_EQ(enumerate_span(r, n, kd.perp).size(), perp.size()) << s << m.describe();
            auto qs = enumerate_span(r, n, kd.qperp);
            EXPECT_EQ(qs.size(), qperp.size()) << s << m.describe();
            for (auto& v : qs) EXPECT_TRUE(qperp.count(v));
            // q on M^⊥ is additive into R[2].
            for (auto& v : perp)
                for (auto& w : perp) {
                    EXPECT_EQ(m.eval_q(add(v, w)), m.eval_q(v) + m.eval_q(w));
                    EXPECT_TRUE(in_two_torsion(m.eval_q(v)));
                }
        }
    }
}

TEST(KernelPerp, OrthogonalBasisCriterion) {
    // v ∈ M^⊥ iff 2 a_i q_i = 0; v ∈ M_q^⊥ iff additionally Σ a_i² q_i = 0.
    for (const char* s : {"Z/2", "Z/4", "Z/6", "Z/8", "Z/2[X]/(X^2)"}) {
        const Ring& r = Ring::parse(s);
        for (auto& q : all_vectors(r, 2)) {
            auto m = QuadraticModule::orthogonal(r, q);
            auto kd = kernel_perp(m);
            auto perp = enumerate_span(r, 2, kd.perp);
            auto qperp = enumerate_span(r, 2, kd.qperp);
            VecSet ps(perp.begin(), perp.end()), qs(qperp.begin(), qperp.end());
            for (auto& v : all_vectors(r, 2)) {
                bool c1 = (v[0] * q[0]).scaled(2).is_zero() && (v[1] * q[1]).scaled(2).is_zero();
                bool c2 = c1 && (v[0] * v[0] * q[0] + v[1] * v[1] * q[1]).is_zero();
                EXPECT_EQ(ps.count(v) > 0, c1);
                EXPECT_EQ(qs.count(v) > 0, c2);
            }
        }
    }
}

TEST(Paravector, Basics) {
    const Ring& z = Ring::parse("Z");
    auto base = QuadraticModule::diagonal(z, {0, 3});
    auto pm = paravector_extension(base).module;
    EXPECT_EQ(pm.eval_q(ints(z, {1, 0, 0})), z.from_int(-1));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        Vec a = ints(z, {int64_t(rng() % 7) - 3, int64_t(rng() % 7) - 3, int64_t(rng() % 7) - 3});
        Vec b = ints(z, {int64_t(rng() % 7) - 3, int64_t(rng() % 7) - 3, int64_t(rng() % 7) - 3});
        Vec x(a.begin() + 1, a.end()), y(b.begin() + 1, b.end());
        EXPECT_EQ(pm.eval_q(a), base.eval_q(x) - a[0] * a[0]);
        EXPECT_EQ(pm.eval_pair(a, b), base.eval_pair(x, y) - (a[0] * b[0]).scaled(2));
    }
    auto kd = kernel_perp(pm);
    EXPECT_TRUE(same_span(z, 3, kd.perp, {ints(z, {0, 1, 0})}));

    const Ring& z6 = Ring::parse("Z/6");
    auto pm6 = paravector_extension(QuadraticModule::diagonal(z6, {1})).module;
    auto k6 = kernel_perp(pm6);
    EXPECT_TRUE(same_span(z6, 2, k6.perp, {ints(z6, {3, 0}), ints(z6, {0, 3})}));
}

TEST(ScalarExtension, Examples) {
    const Ring& z = Ring::parse("Z");
    const Ring& z6 = Ring::parse("Z/6");
    auto m = QuadraticModule::diagonal(z, {5});
    auto m6 = scalar_extension(m, canonical_hom(z, z6));
    EXPECT_EQ(m6.qdiag()[0], z6.from_int(5));
    const Ring& z3 = Ring::parse("Z/3");
    auto m3 = QuadraticModule::diagonal(z3, {1, 2});
    EXPECT_EQ(scalar_extension(m3, canonical_hom(z3, z3)), m3);
    EXPECT_THROW(canonical_hom(z3, Ring::parse("Z/5")), Error);
    const Ring& zx = Ring::parse("Z[X]/(X^2-1)");
    EXPECT_THROW(quotient_hom(zx, z3, z3.from_int(0)), Error);
    auto h = quotient_hom(zx, z3, z3.from_int(2));
    EXPECT_EQ(h(zx.parse_element("X + 1")), z3.zero());
    // eval_q commutes with the embedding.
    auto mz = QuadraticModule::from_ints(z, {2, -1}, {{4, 3}, {3, -2}});
    auto mz6 = scalar_extension(mz, canonical_hom(z, z6));
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            EXPECT_EQ(z6.from_int(mz.eval_q(ints(z, {a, b})).coord(0)), mz6.eval_q(ints(z6, {a, b})));
}

TEST(Splitting, Examples) {
    const Ring& z = Ring::parse("Z");
    auto s = split_quadratic_kernel(QuadraticModule::diagonal(z, {0, 1}));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->killed, std::vector<size_t>{0});
    EXPECT_EQ(s->quotient.qdiag(), ints(z, {1}));

    // Radical spanned by (1,-1), not by a basis vector.
    auto m = QuadraticModule::from_ints(z, {1, 1}, {{2, 2}, {2, 2}});
    auto s2 = split_quadratic_kernel(m);
    ASSERT_TRUE(s2);
    ASSERT_EQ(s2->killed.size(), 1u);
    auto kd = kernel_perp(m);
    EXPECT_TRUE(same_span(z, 2, kd.qperp, {s2->U.column(s2->killed[0])}));
    EXPECT_EQ(s2->quotient.qdiag()[0] * s2->quotient.qdiag()[0], z.one());

    // Over ℤ/6 with q = 3: M_q^⊥ = 2ℤ/6, a summand but not free.
    const Ring& z6 = Ring::parse("Z/6");
    EXPECT_FALSE(split_quadratic_kernel(QuadraticModule::diagonal(z6, {3})));
    auto s5 = split_quadratic_kernel(QuadraticModule::diagonal(z6, {1}));
    ASSERT_TRUE(s5);
    EXPECT_TRUE(s5->killed.empty());

    // Over ℤ/4 with q = 1: M_q^⊥ = 2ℤ/4 is not a summand.
    const Ring& z4 = Ring::parse("Z/4");
    std::string why;
    auto s4 = split_quadratic_kernel(QuadraticModule::diagonal(z4, {1}), &why);
    EXPECT_FALSE(s4);
    EXPECT_FALSE(why.empty());
}
