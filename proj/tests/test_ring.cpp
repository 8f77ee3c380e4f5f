#include <gtest/gtest.h>

#include <random>

#include "cliffring/ring.hpp"

using namespace cliffring;

namespace {

std::vector<int64_t> values(const std::vector<RingElement>& v) {
    std::vector<int64_t> out;
    for (auto& a : v) out.push_back(a.coord(0));
    return out;
}

RingElement random_element(const Ring& r, std::mt19937_64& rng) {
    std::vector<int64_t> c;
    for (int64_t m : r.leaf_moduli()) {
        if (m)
            c.push_back(static_cast<int64_t>(rng() % static_cast<uint64_t>(m)));
        else
            c.push_back(static_cast<int64_t>(rng() % 41) - 20);
    }
    return r.from_coords(c);
}

}  // namespace

TEST(RingArith, Examples) {
    const Ring& z6 = Ring::parse("Z/6");
    EXPECT_EQ(z6.from_int(3) * z6.from_int(4), z6.zero());

    const Ring& zx = Ring::parse("Z[X]/(X^2-1)");
    RingElement x = zx.parse_element("X");
    EXPECT_EQ(x * x, zx.one());
    EXPECT_EQ(x.to_string(), "X");

    const Ring& prod = Ring::parse("Z/15 x Z");
    RingElement a = prod.parse_element("(3, 2)");
    RingElement b = prod.parse_element("(5, -2)");
    EXPECT_EQ((a + b).to_string(), "(8, 0)");
}

TEST(RingArith, DescriptorMismatchThrows) {
    const Ring& z6 = Ring::parse("Z/6");
    const Ring& z5 = Ring::parse("Z/5");
    EXPECT_THROW(z6.one() + z5.one(), DescriptorMismatch);
}

TEST(RingArith, DescriptorRoundTrip) {
    for (const char* s : {"Z", "Z/6", "Z[X]/(X^2-1)", "Z/3 x Z/5", "Z/2[X]/(X^2)", "(Z/3 x Z/5)[X]/(X^2+1)"}) {
        auto d = RingDescriptor::parse(s);
        EXPECT_EQ(RingDescriptor::parse(d.to_string()), d) << s;
    }
    EXPECT_EQ(RingDescriptor::parse("F3").to_string(), "Z/3");
    EXPECT_THROW(RingDescriptor::parse("Q"), Error);
    EXPECT_THROW(RingDescriptor::parse("Z/1"), Error);
    EXPECT_THROW(RingDescriptor::parse("Z[X]/(2*X^2+1)"), Error);
}

TEST(RingArith, FiniteAndTwoRegular) {
    EXPECT_FALSE(Ring::parse("Z").is_finite());
    EXPECT_TRUE(Ring::parse("Z/4[X]/(X^2)").is_finite());
    EXPECT_FALSE(Ring::parse("Z/3 x Z").is_finite());
    EXPECT_TRUE(Ring::parse("Z").is_two_regular());
    EXPECT_FALSE(Ring::parse("Z/6").is_two_regular());
    EXPECT_TRUE(Ring::parse("Z/15").is_two_regular());
    EXPECT_FALSE(Ring::parse("Z/3 x Z/4").is_two_regular());
    EXPECT_EQ(Ring::parse("Z/3 x Z/4").size(), 12u);
}

TEST(RingArith, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(7);
    for (const char* s : {"Z", "Z/6", "Z/15", "Z[X]/(X^2-1)", "Z/3 x Z/5", "Z/2[X]/(X^2)", "Z/4[X]/(X^3+X+1)",
                          "(Z/3 x Z)[X]/(X^2+1)"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 200; ++t) {
            RingElement a = random_element(r, rng), b = random_element(r, rng), c = random_element(r, rng);
            EXPECT_EQ((a * b) * c, a * (b * c)) << s;
            EXPECT_EQ(a * (b + c), a * b + a * c) << s;
            EXPECT_EQ(a * b, b * a) << s;
            EXPECT_EQ(a + (-a), r.zero()) << s;
            EXPECT_EQ(a * r.one(), a) << s;
        }
    }
}

TEST(RingArith, ElementTextRoundTrip) {
    std::mt19937_64 rng(11);
    for (const char* s : {"Z", "Z/6", "Z[X]/(X^2-1)", "Z/3 x Z/5", "Z/2[X]/(X^2)", "Z[X]/(X^3-2)",
                          "(Z/3 x Z/5)[X]/(X^2+1)"}) {
        const Ring& r = Ring::parse(s);
        for (int t = 0; t < 100; ++t) {
            RingElement a = random_element(r, rng);
            EXPECT_EQ(r.parse_element(a.to_string()), a) << s << " " << a.to_string();
        }
    }
}

TEST(RingInvert, Examples) {
    EXPECT_EQ(Ring::parse("Z/6").from_int(5).try_invert()->coord(0), 5);
    EXPECT_FALSE(Ring::parse("Z").from_int(2).try_invert());
    const Ring& zx = Ring::parse("Z[X]/(X^2-1)");
    EXPECT_EQ(*zx.parse_element("X").try_invert(), zx.parse_element("X"));
    EXPECT_FALSE(zx.parse_element("X+1").try_invert());
}

TEST(RingInvert, MatchesExhaustiveSearch) {
    for (const char* s : {"Z/12", "Z/15", "Z/3 x Z/4", "Z/2[X]/(X^2)", "Z/3[X]/(X^2+1)", "Z/4[X]/(X^2-1)"}) {
        const Ring& r = Ring::parse(s);
        auto elems = r.elements();
        for (auto& a : elems) {
            std::optional<RingElement> brute;
            for (auto& b : elems)
                if ((a * b).is_one()) brute = b;
            auto inv = a.try_invert();
            ASSERT_EQ(inv.has_value(), brute.has_value()) << s << " " << a.to_string();
            if (inv) EXPECT_EQ(*inv, *brute);
        }
    }
}

TEST(TwoTorsion, Examples) {
    EXPECT_EQ(values(Ring::parse("Z").two_torsion_generators()), std::vector<int64_t>{0});
    EXPECT_EQ(values(Ring::parse("Z/6").two_torsion_generators()), std::vector<int64_t>{3});
    EXPECT_EQ(values(Ring::parse("Z/2").two_torsion_generators()), std::vector<int64_t>{1});
    EXPECT_EQ(values(Ring::parse("Z/9").two_torsion_generators()), std::vector<int64_t>{0});
}

TEST(TwoTorsion, GeneratorsSpanBruteForceIdeal) {
    for (const char* s : {"Z/12", "Z/2 x Z/4", "Z/2[X]/(X^2)", "Z/6[X]/(X^2+1)"}) {
        const Ring& r = Ring::parse(s);
        auto gens = r.two_torsion_generators();
        for (auto& a : r.elements()) {
            bool torsion = in_two_torsion(a);
            // membership in the ideal generated by gens, by brute force
            bool spanned = false;
            auto elems = r.elements();
            if (gens.size() == 1) {
                for (auto& c : elems)
                    if (c * gens[0] == a) spanned = true;
            } else {
                std::vector<RingElement> span{r.zero()};
                for (auto& g : gens) {
                    std::vector<RingElement> next;
                    for (auto& x : span)
                        for (auto& c : elems) next.push_back(x + c * g);
                    span = next;
                }
                for (auto& x : span)
                    if (x == a) spanned = true;
            }
            EXPECT_EQ(torsion, spanned) << s << " " << a.to_string();
        }
    }
}

TEST(Idempotents, Examples) {
    EXPECT_EQ(values(Ring::parse("Z").idempotents()), (std::vector<int64_t>{0, 1}));
    EXPECT_EQ(values(Ring::parse("Z/6").idempotents()), (std::vector<int64_t>{0, 1, 3, 4}));
    EXPECT_EQ(values(Ring::parse("Z/15").idempotents()), (std::vector<int64_t>{0, 1, 6, 10}));
    EXPECT_EQ(Ring::parse("Z x Z/6").idempotents().size(), 8u);
    EXPECT_THROW(Ring::parse("Z[X]/(X^2-1)").idempotents(), NotComputable);
}

TEST(Idempotents, BooleanRingAndMu2) {
    const Ring& z6 = Ring::parse("Z/6");
    EXPECT_EQ(idem_add(z6.from_int(3), z6.from_int(4)), z6.one());
    EXPECT_EQ(idem_to_mu2(z6.from_int(3)), z6.one());
    EXPECT_EQ(idem_to_mu2(z6.from_int(4)), z6.from_int(5));
    for (const char* s : {"Z/6", "Z/15", "Z/30", "Z/4 x Z/9"}) {
        const Ring& r = Ring::parse(s);
        auto idem = r.idempotents();
        for (auto& e : idem) {
            EXPECT_EQ(idem_add(e, e), r.zero());
            EXPECT_EQ(idem_add(e, r.one()), r.one() - e);
            EXPECT_TRUE(in_mu2(idem_to_mu2(e)));
            EXPECT_EQ(idem_to_mu2(e).is_one(), in_two_torsion(e));
            for (auto& f : idem) {
                RingElement s2 = idem_add(e, f);
                EXPECT_TRUE(is_idempotent(s2));
                EXPECT_EQ(idem_to_mu2(s2), idem_to_mu2(e) * idem_to_mu2(f));
                EXPECT_EQ(e * idem_add(f, f), r.zero());
                for (auto& g : idem) {
                    EXPECT_EQ(idem_add(idem_add(e, f), g), idem_add(e, idem_add(f, g)));
                    EXPECT_EQ(e * idem_add(f, g), idem_add(e * f, e * g));
                }
            }
        }
    }
}

TEST(Idempotents, MuTwoLargerThanImage) {
    const Ring& r = Ring::parse("Z[X]/(X^2-1)");
    RingElement x = r.parse_element("X");
    EXPECT_TRUE(in_mu2(x));
    // Image of idempotents {0,1} is {1,-1}.
    for (auto& e : {r.zero(), r.one()}) EXPECT_NE(idem_to_mu2(e), x);
}

TEST(ZeroDivisors, Examples) {
    const Ring& z6 = Ring::parse("Z/6");
    EXPECT_TRUE(z6.is_zero_divisor(z6.from_int(2)));
    EXPECT_FALSE(z6.is_zero_divisor(z6.from_int(5)));
    const Ring& z = Ring::parse("Z");
    EXPECT_FALSE(z.is_zero_divisor(z.from_int(2)));
    const Ring& zx = Ring::parse("Z[X]/(X^2-1)");
    EXPECT_TRUE(zx.is_zero_divisor(zx.parse_element("X+1")));
    EXPECT_FALSE(zx.is_zero_divisor(zx.parse_element("X+2")));
}
