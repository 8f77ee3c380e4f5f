#include <gtest/gtest.h>

#include <random>

#include "cliffring/linalg.hpp"

using namespace cliffring;

namespace {

Matrix random_matrix(const Ring& r, size_t m, size_t k, std::mt19937_64& rng, int64_t span = 7) {
    Matrix a(r, m, k);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < k; ++j) {
            std::vector<int64_t> c;
            for (int64_t mod : r.leaf_moduli())
                c.push_back(mod ? static_cast<int64_t>(rng() % static_cast<uint64_t>(mod))
                                : static_cast<int64_t>(rng() % (2 * span + 1)) - span);
            a.at(i, j) = r.from_coords(c);
        }
    return a;
}

// Permutation-sum determinant, independent of the subset recursion.
RingElement leibniz(const Matrix& a) {
    size_t n = a.rows();
    std::vector<size_t> p(n);
    for (size_t i = 0; i < n; ++i) p[i] = i;
    RingElement acc = a.ring().zero();
    do {
        int inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        RingElement t = a.ring().one();
        for (size_t i = 0; i < n; ++i) t *= a.at(i, p[i]);
        acc = inv % 2 ? acc - t : acc + t;
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

}  // namespace

TEST(Solve, IdentityReturnsRhs) {
    for (const char* s : {"Z", "Z/6", "Z[X]/(X^2-1)", "Z/3 x Z"}) {
        const Ring& r = Ring::parse(s);
        Vec b{r.from_int(4), r.from_int(-3), r.from_int(2)};
        auto x = solve_linear(Matrix::identity(r, 3), b);
        ASSERT_TRUE(x);
        EXPECT_EQ(*x, b);
    }
}

TEST(Nullspace, Examples) {
    const Ring& z6 = Ring::parse("Z/6");
    auto k = nullspace(Matrix::from_ints(z6, {{2}}));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0][0], z6.from_int(3));

    const Ring& z = Ring::parse("Z");
    auto kz = nullspace(Matrix::from_ints(z, {{0, 0}, {0, 2}}));
    ASSERT_EQ(kz.size(), 1u);
    EXPECT_TRUE(same_span(z, 2, kz, {Vec{z.one(), z.zero()}}));
}

TEST(Nullspace, CardinalityMatchesExhaustiveCount) {
    std::mt19937_64 rng(3);
    for (const char* s : {"Z/6", "Z/4", "Z/12", "Z/2 x Z/3", "Z/2[X]/(X^2)", "Z/3 x Z/4", "Z/2[X]/(X^2+X+1)"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 15; ++t) {
            size_t m = 1 + rng() % 3, k = 1 + rng() % 3;
            Matrix a = random_matrix(r, m, k, rng);
            auto gens = nullspace(a);
            auto span = enumerate_span(r, k, gens);
            size_t brute = 0;
            for (auto& v : all_vectors(r, k))
                if (is_zero(a * v)) ++brute;
            EXPECT_EQ(span.size(), brute) << s << " " << a.to_string();
        }
    }
}

TEST(Solve, AgreesWithExhaustiveSolvability) {
    std::mt19937_64 rng(5);
    for (const char* s : {"Z/6", "Z/8", "Z/2 x Z/4", "Z/3[X]/(X^2)"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 15; ++t) {
            size_t m = 1 + rng() % 3, k = 1 + rng() % 2;
            Matrix a = random_matrix(r, m, k, rng);
            VecSet image;
            for (auto& v : all_vectors(r, k)) image.insert(a * v);
            for (auto& b : all_vectors(r, m)) {
                auto x = solve_linear(a, b);
                EXPECT_EQ(x.has_value(), image.count(b) > 0);
            }
        }
    }
}

TEST(Solve, IntegerSystemsVerifiedBySubstitution) {
    std::mt19937_64 rng(9);
    const Ring& z = Ring::parse("Z");
    for (int t = 0; t < 100; ++t) {
        size_t m = 1 + rng() % 4, k = 1 + rng() % 4;
        Matrix a = random_matrix(z, m, k, rng, 5);
        Matrix xs = random_matrix(z, k, 1, rng, 5);
        Vec b = a * xs.column(0);
        auto x = solve_linear(a, b);
        ASSERT_TRUE(x);
        for (auto& g : nullspace(a)) EXPECT_TRUE(is_zero(a * g));
    }
    // 2x = 1 has no integer solution; 2x = 1 mod 5 does.
    EXPECT_FALSE(solve_linear(Matrix::from_ints(z, {{2}}), {z.one()}));
    const Ring& z5 = Ring::parse("Z/5");
    EXPECT_TRUE(solve_linear(Matrix::from_ints(z5, {{2}}), {z5.one()}));
}

TEST(Nullspace, MixedFreeAndTorsion) {
    const Ring& r = Ring::parse("Z/6 x Z");
    Matrix a(r, 1, 1);
    a.at(0, 0) = r.parse_element("(2, 0)");
    auto k = nullspace(a);
    // kernel = {(3a, b)}
    EXPECT_TRUE(in_span(r, 1, k, {r.parse_element("(3, 5)")}));
    EXPECT_FALSE(in_span(r, 1, k, {r.parse_element("(1, 0)")}));
}

TEST(Determinant, MatchesLeibniz) {
    std::mt19937_64 rng(13);
    for (const char* s : {"Z", "Z/6", "Z[X]/(X^2-1)", "Z/3 x Z/5"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 30; ++t) {
            size_t n = rng() % 5;
            Matrix a = random_matrix(r, n, n, rng, 3);
            EXPECT_EQ(determinant(a), leibniz(a)) << s;
        }
    }
}

TEST(Inverse, RoundTrip) {
    std::mt19937_64 rng(17);
    const Ring& r = Ring::parse("Z/15");
    int found = 0;
    for (int t = 0; t < 100; ++t) {
        Matrix a = random_matrix(r, 3, 3, rng);
        auto inv = inverse(a);
        EXPECT_EQ(inv.has_value(), determinant(a).try_invert().has_value());
        if (inv) {
            ++found;
            EXPECT_TRUE((a * *inv).is_identity());
            EXPECT_TRUE((*inv * a).is_identity());
        }
    }
    EXPECT_GT(found, 0);
}
