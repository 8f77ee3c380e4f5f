#include <gtest/gtest.h>

#include <bit>
#include <map>
#include <random>
#include <thread>

#include "cliffring/clifford.hpp"

using namespace cliffring;

namespace {

// Reference product: rewrite generator words with x_b x_a = g_ab − x_a x_b
// (a < b) and x_a x_a = q_a until every word is strictly increasing.
struct WordOracle {
    const QuadraticModule& m;

    void reduce(std::vector<int> w, RingElement c, std::map<uint32_t, RingElement>& out) const {
        if (c.is_zero()) return;
        for (size_t k = 0; k + 1 < w.size(); ++k) {
            int a = w[k], b = w[k + 1];
            if (a < b) continue;
            std::vector<int> shorter(w.begin(), w.begin() + k);
            shorter.insert(shorter.end(), w.begin() + k + 2, w.end());
            if (a == b) {
                reduce(shorter, c * m.qdiag()[a], out);
            } else {
                reduce(shorter, c * m.gram().at(a, b), out);
                std::swap(w[k], w[k + 1]);
                reduce(w, -c, out);
            }
            return;
        }
        uint32_t mask = 0;
        for (int i : w) mask |= 1u << i;
        auto it = out.find(mask);
        if (it == out.end())
            out.emplace(mask, c);
        else
            it->second += c;
    }

    CliffordElement mul(const CliffordElement& x, const CliffordElement& y) const {
        const auto& alg = x.algebra();
        std::map<uint32_t, RingElement> out;
        for (uint32_t I = 0; I < alg.dim(); ++I)
            for (uint32_t J = 0; J < alg.dim(); ++J) {
                if (x.coeff(I).is_zero() || y.coeff(J).is_zero()) continue;
                std::vector<int> w;
                for (size_t i = 0; i < alg.rank(); ++i)
                    if (I >> i & 1) w.push_back(int(i));
                for (size_t i = 0; i < alg.rank(); ++i)
                    if (J >> i & 1) w.push_back(int(i));
                reduce(w, x.coeff(I) * y.coeff(J), out);
            }
        CliffordElement r = alg.zero();
        for (auto& [mask, c] : out) r = r + alg.basis(mask).scaled(c);
        return r;
    }
};

RingElement pick(const Ring& r, std::mt19937_64& rng) {
    if (r.is_finite()) return r.element_at(rng() % r.size());
    return r.from_int(int64_t(rng() % 7) - 3);
}

QuadraticModule random_module(const Ring& r, size_t n, std::mt19937_64& rng, bool orthogonal) {
    Vec q;
    Matrix g(r, n, n);
    for (size_t i = 0; i < n; ++i) {
        q.push_back(pick(r, rng));
        g.at(i, i) = q[i].scaled(2);
        if (!orthogonal)
            for (size_t j = i + 1; j < n; ++j) g.at(i, j) = g.at(j, i) = pick(r, rng);
    }
    return QuadraticModule(r, q, g);
}

CliffordElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
    std::vector<RingElement> c;
    for (uint32_t m = 0; m < alg->dim(); ++m) c.push_back(pick(alg->ring(), rng));
    return CliffordElement(alg, c);
}

// Every element of a small finite algebra.
std::vector<CliffordElement> all_elements(const AlgebraPtr& alg) {
    std::vector<CliffordElement> out;
    for (auto& v : all_vectors(alg->ring(), alg->dim())) out.push_back(alg->from_vec(v));
    return out;
}

}  // namespace

TEST(Clifford, BasicProducts) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {3, 5}));
    auto x1 = alg->generator(0), x2 = alg->generator(1);
    EXPECT_EQ(x1 * x1, alg->scalar(z.from_int(3)));
    EXPECT_EQ((x1 * x2) * (x1 * x2), alg->scalar(z.from_int(-15)));
    EXPECT_EQ(x2 * x1, -(x1 * x2));

    auto ng = CliffordAlgebra::create(QuadraticModule::from_ints(z, {1, 1}, {{2, 7}, {7, 2}}));
    auto y1 = ng->generator(0), y2 = ng->generator(1);
    EXPECT_EQ(y2 * y1, ng->scalar(z.from_int(7)) - y1 * y2);
    EXPECT_EQ(y1 * y2 + y2 * y1, ng->scalar(z.from_int(7)));
}

TEST(Clifford, MatchesWordOracle) {
    std::mt19937_64 rng(11);
    for (const char* s : {"Z", "Z/6", "Z/4", "Z[X]/(X^2-1)", "Z/2 x Z/3"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 6; ++t) {
            size_t n = 1 + rng() % 4;
            auto m = random_module(r, n, rng, t % 2 == 0);
            auto alg = CliffordAlgebra::create(m);
            WordOracle oracle{alg->module()};
            for (int k = 0; k < 4; ++k) {
                auto a = random_element(alg, rng), b = random_element(alg, rng);
                EXPECT_EQ(a * b, oracle.mul(a, b)) << s << " " << m.describe();
            }
        }
    }
}

TEST(Clifford, AssociativeAndUnital) {
    std::mt19937_64 rng(12);
    for (const char* s : {"Z", "Z/4", "Z/15"}) {
        const Ring& r = Ring::parse(s);
        for (size_t n = 1; n <= 4; ++n) {
            auto alg = CliffordAlgebra::create(random_module(r, n, rng, false));
            for (uint32_t I = 0; I < alg->dim(); ++I)
                for (uint32_t J = 0; J < alg->dim(); ++J) {
                    uint32_t K = uint32_t(rng() % alg->dim());
                    auto a = alg->basis(I), b = alg->basis(J), c = alg->basis(K);
                    EXPECT_EQ((a * b) * c, a * (b * c));
                }
            for (int t = 0; t < 5; ++t) {
                auto a = random_element(alg, rng), b = random_element(alg, rng), c = random_element(alg, rng);
                EXPECT_EQ((a * b) * c, a * (b * c));
                EXPECT_EQ(alg->one() * a, a);
                EXPECT_EQ(a * alg->one(), a);
            }
        }
    }
}

TEST(Clifford, LargeRankUsesGeneratorChains) {
    std::mt19937_64 rng(13);
    const Ring& r = Ring::parse("Z/5");
    auto alg = CliffordAlgebra::create(random_module(r, 9, rng, false));
    WordOracle oracle{alg->module()};
    for (int t = 0; t < 20; ++t) {
        auto a = alg->basis(uint32_t(rng() % alg->dim())), b = alg->basis(uint32_t(rng() % alg->dim()));
        EXPECT_EQ(a * b, oracle.mul(a, b));
    }
    EXPECT_THROW(CliffordAlgebra::create(QuadraticModule::diagonal(r, std::vector<int64_t>(13, 1))),
                 PreconditionFailed);
}

TEST(Clifford, ExteriorAlgebraWhenFormVanishes) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {0, 0, 0}));
    for (uint32_t I = 0; I < 8; ++I)
        for (uint32_t J = 0; J < 8; ++J) {
            auto p = alg->basis(I) * alg->basis(J);
            if (I & J) {
                EXPECT_TRUE(p.is_zero());
            } else {
                // Sign of the shuffle: pairs (i ∈ I, j ∈ J) with i > j.
                int inv = 0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if ((I >> i & 1) && (J >> j & 1) && i > j) ++inv;
                EXPECT_EQ(p, alg->basis(I | J).scaled(z.from_int(inv % 2 ? -1 : 1)));
            }
        }
}

TEST(Clifford, FastGeneratorProduct) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {3, 2}));
    auto x1 = alg->generator(0), x2 = alg->generator(1);
    EXPECT_EQ(mul_generator_fast(x1, 1), x1 * x2);
    EXPECT_EQ(mul_generator_fast(x2, 0), -(x1 * x2));
    // x₁x₂·x₁ = −x₁x₁x₂ = −3x₂.
    EXPECT_EQ(mul_generator_fast(x1 * x2, 0), x2.scaled(z.from_int(-3)));
    EXPECT_EQ(sign_constant(*alg, 0b11, 0), z.from_int(-3));

    auto ng = CliffordAlgebra::create(QuadraticModule::from_ints(z, {1, 1}, {{2, 1}, {1, 2}}));
    EXPECT_THROW(mul_generator_fast(ng->one(), 0), PreconditionFailed);
}

TEST(Clifford, FastGeneratorExhaustive) {
    for (const char* s : {"Z/2", "Z/3", "Z/4", "Z/2[X]/(X^2)"}) {
        const Ring& r = Ring::parse(s);
        for (size_t n = 1; n <= 3; ++n)
            for (auto& q : all_vectors(r, n)) {
                auto alg = CliffordAlgebra::create(QuadraticModule::orthogonal(r, q));
                for (uint32_t I = 0; I < alg->dim(); ++I)
                    for (size_t i = 0; i < n; ++i) {
                        auto b = alg->basis(I);
                        EXPECT_EQ(mul_generator_fast(b, i), b * alg->generator(i));
                        EXPECT_EQ(mul_generator_fast_left(i, b), alg->generator(i) * b);
                    }
            }
    }
    std::mt19937_64 rng(14);
    const Ring& z = Ring::parse("Z");
    for (int t = 0; t < 30; ++t) {
        auto alg = CliffordAlgebra::create(random_module(z, 1 + rng() % 4, rng, true));
        auto a = random_element(alg, rng);
        size_t i = rng() % alg->rank();
        EXPECT_EQ(mul_generator_fast(a, i), a * alg->generator(i));
        EXPECT_EQ(mul_generator_fast_left(i, a), alg->generator(i) * a);
    }
}

TEST(Clifford, Involutions) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::from_ints(z, {1, 2}, {{2, 5}, {5, 4}}));
    auto x1 = alg->generator(0), x2 = alg->generator(1);
    auto a = alg->one() + x1 + x1 * x2;
    EXPECT_EQ(grade_involution(a), alg->one() - x1 + x1 * x2);
    EXPECT_EQ(transpose(x1 * x2), alg->scalar(z.from_int(5)) - x1 * x2);
    EXPECT_EQ(transpose(x1), x1);
    EXPECT_EQ(clifford_involution(x1), -x1);
    auto s = alg->scalar(z.from_int(4));
    EXPECT_EQ(transpose(s), s);
    EXPECT_EQ(clifford_involution(s), s);

    std::mt19937_64 rng(15);
    for (const char* rs : {"Z", "Z/6", "Z/8"}) {
        const Ring& r = Ring::parse(rs);
        for (int t = 0; t < 10; ++t) {
            auto b = CliffordAlgebra::create(random_module(r, 1 + rng() % 3, rng, t % 2));
            auto u = random_element(b, rng), v = random_element(b, rng);
            EXPECT_EQ(grade_involution(grade_involution(u)), u);
            EXPECT_EQ(transpose(transpose(u)), u);
            EXPECT_EQ(clifford_involution(clifford_involution(u)), u);
            EXPECT_EQ(grade_involution(u * v), grade_involution(u) * grade_involution(v));
            EXPECT_EQ(transpose(u * v), transpose(v) * transpose(u));
            EXPECT_EQ(clifford_involution(u * v), clifford_involution(v) * clifford_involution(u));
            EXPECT_EQ(transpose(grade_involution(u)), grade_involution(transpose(u)));
            // Orthogonal basis: (x_I)* = (−1)^{k(k−1)/2} x_I.
            if (b->module().is_orthogonal_basis())
                for (uint32_t I = 0; I < b->dim(); ++I) {
                    int k = std::popcount(I);
                    EXPECT_EQ(transpose(b->basis(I)), b->basis(I).scaled(r.from_int((k * (k - 1) / 2) % 2 ? -1 : 1)));
                }
        }
    }
}

TEST(Clifford, NormAndParavectorPairing) {
    std::mt19937_64 rng(16);
    for (const char* rs : {"Z", "Z/6", "Z/4"}) {
        const Ring& r = Ring::parse(rs);
        for (int t = 0; t < 10; ++t) {
            auto m = random_module(r, 1 + rng() % 3, rng, t % 2);
            auto alg = CliffordAlgebra::create(m);
            auto pm = paravector_extension(m).module;
            Vec xv, yv;
            for (size_t i = 0; i <= m.rank(); ++i) {
                xv.push_back(pick(r, rng));
                yv.push_back(pick(r, rng));
            }
            Vec x(xv.begin() + 1, xv.end());
            EXPECT_EQ(norm(alg->from_vector(x)), alg->scalar(-m.eval_q(x)));
            auto xi = alg->from_paravector(xv), eta = alg->from_paravector(yv);
            EXPECT_EQ(norm(xi), alg->scalar(-pm.eval_q(xv)));
            auto rhs = alg->scalar(-pm.eval_pair(xv, yv));
            EXPECT_EQ(xi * grade_involution(eta) + eta * grade_involution(xi), rhs);
            EXPECT_EQ(grade_involution(xi) * eta + grade_involution(eta) * xi, rhs);
        }
    }
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(Ring::parse("Z"), {2}));
    EXPECT_EQ(norm(alg->one()), alg->one());
}

TEST(Clifford, InvertExamples) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {0, 7}));
    auto x1 = alg->generator(0), x2 = alg->generator(1);
    auto inv = invert(alg->one() + x1 * x2);
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv, alg->one() - x1 * x2);
    EXPECT_FALSE(invert(x1));
    EXPECT_EQ(*invert(alg->scalar(z.from_int(-1))), alg->scalar(z.from_int(-1)));
    EXPECT_FALSE(invert(alg->scalar(z.from_int(2))));

    const Ring& z6 = Ring::parse("Z/6");
    auto a6 = CliffordAlgebra::create(QuadraticModule::diagonal(z6, {1}));
    EXPECT_EQ(*invert(a6->scalar(z6.from_int(5))), a6->scalar(z6.from_int(5)));
}

TEST(Clifford, InvertMatchesExhaustiveSearch) {
    for (const char* s : {"Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7"}) {
        const Ring& r = Ring::parse(s);
        for (size_t n = 1; n <= 2; ++n) {
            if (std::pow(double(r.size()), double(1u << n)) > 700) continue;
            for (auto& q : all_vectors(r, n)) {
                auto alg = CliffordAlgebra::create(QuadraticModule::orthogonal(r, q));
                auto elems = all_elements(alg);
                size_t brute = 0, solved = 0;
                for (auto& a : elems) {
                    bool unit = false;
                    for (auto& b : elems)
                        if (a * b == alg->one() && b * a == alg->one()) {
                            unit = true;
                            break;
                        }
                    brute += unit;
                    if (auto inv = invert(a)) {
                        ++solved;
                        EXPECT_EQ(a * *inv, alg->one());
                        EXPECT_EQ(*inv * a, alg->one());
                    }
                }
                EXPECT_EQ(brute, solved) << s << " " << to_string(q);
            }
        }
    }
}

TEST(Clifford, FixedByGrade) {
    auto check = [](const char* s, std::vector<int64_t> q) {
        const Ring& r = Ring::parse(s);
        auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(r, q));
        auto gens = fixed_by_grade(*alg);
        std::vector<Vec> gv;
        for (auto& g : gens) gv.push_back(g.coeffs());
        size_t fixed = 0;
        for (auto& a : all_elements(alg))
            if (grade_involution(a) == a) ++fixed;
        EXPECT_EQ(enumerate_span(r, alg->dim(), gv).size(), fixed) << s;
        return gens.size();
    };
    check("Z/6", {1});
    check("Z/4", {1, 3});
    check("Z/3", {1, 1});
    EXPECT_EQ(check("Z/2", {1, 1}), 4u);

    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {1, 1}));
    EXPECT_EQ(fixed_by_grade(*alg).size(), 2u);
    const Ring& z6 = Ring::parse("Z/6");
    auto a6 = CliffordAlgebra::create(QuadraticModule::diagonal(z6, {1}));
    auto g6 = fixed_by_grade(*a6);
    ASSERT_EQ(g6.size(), 2u);
    EXPECT_EQ(g6[1], a6->generator(0).scaled(z6.from_int(3)));
}

TEST(Clifford, TextFormat) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {3, 1}));
    auto a = alg->parse("3 + 2*e{1} - e{1,2}");
    EXPECT_EQ(a.to_string(), "3 + 2*e{1} - e{1,2}");
    EXPECT_EQ(alg->parse("e{}"), alg->one());
    EXPECT_EQ(alg->parse("e{1}*e{1}").to_string(), "3");
    EXPECT_EQ(alg->parse("e{2,1}"), -alg->parse("e{1,2}"));
    EXPECT_EQ(alg->parse("-e{2} + -2").to_string(), "-2 - e{2}");
    EXPECT_EQ(alg->zero().to_string(), "0");
    EXPECT_THROW(alg->parse("e{3}"), Error);
    EXPECT_THROW(alg->parse("2*e{1"), Error);
    EXPECT_THROW(alg->parse("2 +"), Error);

    std::mt19937_64 rng(17);
    for (const char* s : {"Z", "Z/6", "Z[X]/(X^2-1)", "Z/2 x Z/3"}) {
        const Ring& r = Ring::parse(s);
        auto b = CliffordAlgebra::create(random_module(r, 3, rng, false));
        for (int t = 0; t < 10; ++t) {
            auto e = random_element(b, rng);
            EXPECT_EQ(b->parse(e.to_string()), e) << e.to_string();
        }
    }
}

TEST(Clifford, RadicalQuotient) {
    const Ring& z = Ring::parse("Z");
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(z, {0, 1}));
    auto rq = radical_quotient_map(alg);
    auto p = rq.map;
    EXPECT_EQ(p.target->rank(), 1u);
    auto a = alg->parse("2 + 3*e{1} + 5*e{2} + 7*e{1,2}");
    EXPECT_EQ(p(a).to_string(), "2 + 5*e{1}");

    // q = 0: the quotient is R.
    auto ext = CliffordAlgebra::create(QuadraticModule::diagonal(z, {0, 0}));
    auto pe = radical_quotient_map(ext).map;
    EXPECT_EQ(pe.target->rank(), 0u);
    EXPECT_EQ(pe(ext->parse("4 + e{1} + e{1,2}")).to_string(), "4");

    // Non-degenerate: identity.
    auto nd = CliffordAlgebra::create(QuadraticModule::diagonal(z, {1, -1}));
    auto pn = radical_quotient_map(nd).map;
    auto b = nd->parse("1 - e{2} + 3*e{1,2}");
    EXPECT_EQ(pn(b).coeffs(), b.coeffs());

    // Radical off the basis: homomorphism property, kernel is nilpotent.
    auto tilted = CliffordAlgebra::create(QuadraticModule::from_ints(z, {1, 1, 2}, {{2, 2, 0}, {2, 2, 0}, {0, 0, 4}}));
    auto pt = radical_quotient_map(tilted).map;
    EXPECT_EQ(pt.target->rank(), 2u);
    std::mt19937_64 rng(18);
    for (int t = 0; t < 20; ++t) {
        auto u = random_element(tilted, rng), v = random_element(tilted, rng);
        EXPECT_EQ(pt(u * v), pt(u) * pt(v));
        EXPECT_EQ(pt(u + v), pt(u) + pt(v));
    }
    auto r = tilted->parse("e{1} - e{2}");
    EXPECT_TRUE(pt(r).is_zero());
    EXPECT_TRUE(power(r, 2).is_zero());

    const Ring& z4 = Ring::parse("Z/4");
    EXPECT_THROW(radical_quotient_map(CliffordAlgebra::create(QuadraticModule::diagonal(z4, {1}))), PreconditionFailed);
}

TEST(Clifford, ConcurrentFirstUse) {
    const Ring& r = Ring::parse("Z/7");
    std::mt19937_64 rng(19);
    auto m = random_module(r, 5, rng, false);
    auto reference = CliffordAlgebra::create(m);
    WordOracle oracle{reference->module()};
    auto a = random_element(reference, rng), b = random_element(reference, rng);
    auto expected = oracle.mul(a, b);
    auto shared = CliffordAlgebra::create(m);
    CliffordElement a2(shared, a.coeffs()), b2(shared, b.coeffs());
    std::vector<std::thread> threads;
    std::vector<int> ok(8, 0);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] { ok[t] = (a2 * b2).coeffs() == expected.coeffs() && transpose(transpose(a2)) == a2; });
    for (auto& th : threads) th.join();
    for (int v : ok) EXPECT_TRUE(v);
}
