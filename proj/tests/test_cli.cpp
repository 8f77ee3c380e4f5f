#include <gtest/gtest.h>

#include <sstream>

#include "cliffring/cli.hpp"
#include "cliffring/clifford.hpp"

using namespace cliffring;
using nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int st = run_cli(args, out, err);
    return {st, out.str(), err.str()};
}

}  // namespace

TEST(Config, Valid) {
    Config c = parse_config(R"(ring="Z/6" rank=1 qdiag=[1])");
    ASSERT_TRUE(c.ring);
    EXPECT_EQ(*c.ring, "Z/6");
    EXPECT_EQ(c.qdiag, std::vector<int64_t>{1});
    EXPECT_EQ(c.instance().build().gram(), Matrix::from_ints(Ring::parse("Z/6"), {{2}}));

    Config q = parse_config("ring = \"Z[X]/(X^2-1)\"\n[module]\nrank = 2\nqdiag = [1, -1]  # comment\nx = [X, 1]\n");
    EXPECT_EQ(*q.ring, "Z[X]/(X^2-1)");
    EXPECT_EQ(q.qdiag, (std::vector<int64_t>{1, -1}));
    EXPECT_EQ(q.params["module.x"], json({"X", 1}));

    Config g = parse_config("ring=Z qdiag=[1,0] gram=[[2,1],[1,0]] e=1");
    EXPECT_TRUE(g.gram);
    EXPECT_EQ(g.params["e"], 1);
    EXPECT_FALSE(parse_config("").has_module());
}

TEST(Config, Errors) {
    try {
        parse_config("ring=\"Z\"\nrank=2\nqdiag=[1,1]\ngram=[[2,1],[0,2]]\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.rule, "gram-not-symmetric");
        EXPECT_EQ(e.line, 4u);
        EXPECT_EQ(e.column, 1u);
    }
    try {
        parse_config("ring=Z qdiag=[1,1] gram=[[4,0],[0,2]]");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.rule, "gram-diagonal-mismatch");
    }
    try {
        parse_config("ring=Z\nqdiag=[1 2\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.rule, "syntax");
        EXPECT_EQ(e.line, 2u);
        EXPECT_EQ(e.column, 7u);
    }
    try {
        parse_config("ring=Z rank=3 qdiag=[1]");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.rule, "rank-mismatch");
    }
    try {
        parse_config("ring=\"Z/0\"");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.rule, "ring-descriptor");
    }
    EXPECT_THROW(parse_config("ring=Z ring=Z/2"), ConfigError);
    EXPECT_THROW(parse_config("ring Z"), ConfigError);
    EXPECT_THROW(parse_config("qdiag=[1]"), ConfigError);
    EXPECT_THROW(parse_config("ring=\"Z"), ConfigError);
}

TEST(Cli, Examples) {
    auto c = cli({"centers", "ring=Z", "qdiag=[0,1]"});
    ASSERT_EQ(c.status, 0) << c.err;
    json j = json::parse(c.out);
    auto gens = j["result"]["twisted_center"]["generators"].get<std::vector<std::string>>();
    std::sort(gens.begin(), gens.end());
    EXPECT_EQ(gens, (std::vector<std::string>{"1", "e{1}"}));

    auto m = cli({"mul", "e{1}", "e{1}", "ring=Z", "qdiag=[3]"});
    ASSERT_EQ(m.status, 0);
    EXPECT_EQ(json::parse(m.out)["result"]["product"], "3");

    auto chk = cli({"check", "prop-detref", "ring=Z/6", "qdiag=[1]"});
    EXPECT_EQ(chk.status, 0);
    EXPECT_EQ(json::parse(chk.out)[0]["verdict"], "pass");

    auto refl = cli({"reflect", "ring=Z/6", "qdiag=[1]", "e=4", "x=[4]"});
    ASSERT_EQ(refl.status, 0) << refl.err;
    EXPECT_EQ(json::parse(refl.out)["result"]["lift"]["alpha"], "3 + 4*e{1}");

    auto eul = cli({"euler", "ring=Z", "qdiag=[0,1]", "u=[1,0]", "x=[0,1]"});
    ASSERT_EQ(eul.status, 0) << eul.err;
    EXPECT_EQ(json::parse(eul.out)["result"]["matrix"], json::array({json::array({"1", "2"}), json::array({"0", "1"})}));

    auto inv = cli({"invert", "1 + e{1}", "ring=Z", "qdiag=[1]"});
    EXPECT_EQ(json::parse(inv.out)["result"]["invertible"], false);

    auto en = cli({"enumerate", "gamma", "ring=Z/3", "qdiag=[1]"});
    EXPECT_EQ(json::parse(en.out)["result"]["count"], 4);

    auto gt = cli({"gamma-test", "e{1}", "ring=Z", "qdiag=[1]", "--pretty"});
    EXPECT_EQ(gt.status, 0);
    EXPECT_NE(gt.out.find("flavor: both"), std::string::npos);
}

TEST(Cli, ErrorsAndStatus) {
    EXPECT_EQ(cli({"frobnicate", "ring=Z", "qdiag=[1]"}).status, 2);
    EXPECT_EQ(cli({"check", "prop-nonexistent"}).status, 2);
    EXPECT_EQ(cli({"mul", "e{1}", "e{1}"}).status, 2);
    auto bad = cli({"kernels", "ring=Z", "qdiag=[1,1]", "gram=[[2,1],[0,2]]"});
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.err.find("not symmetric"), std::string::npos);
    auto unsup = cli({"enumerate", "orthogonal", "ring=Z", "qdiag=[1]"});
    EXPECT_EQ(unsup.status, 3);
    EXPECT_NE(unsup.err.find("error:"), std::string::npos);
    auto conj = cli({"check", "conj-emptyint", "ring=Z/3", "qdiag=[1,0]"});
    EXPECT_EQ(conj.status, 0);
    EXPECT_EQ(json::parse(conj.out)[0]["verdict"], "report");
}

TEST(Cli, Deterministic) {
    for (std::vector<std::string> args : {std::vector<std::string>{"enumerate", "gamma-tilde", "ring=Z/3", "qdiag=[1,0]"},
                                          {"centers", "ring=Z/6", "qdiag=[1,3]", "--pretty"},
                                          {"check", "lemma-dettrans", "ring=Z", "qdiag=[1,0,2]", "--seed", "5"}}) {
        auto a = cli(args), b = cli(args);
        if (args[0] == "check") {
            auto ja = json::parse(a.out), jb = json::parse(b.out);
            for (auto* j : {&ja, &jb})
                for (auto& r : *j) r.erase("wall_ms");
            EXPECT_EQ(ja, jb);
        } else {
            EXPECT_EQ(a.out, b.out);
        }
    }
}

// print(parse(text)) is canonical, and parse(print(a)) = a.
TEST(Cli, ElementRoundTrip) {
    auto alg = CliffordAlgebra::create(QuadraticModule::diagonal(Ring::parse("Z/6"), {1, 3, 2}));
    auto vs = all_vectors(alg->ring(), alg->dim(), 20'000'000);
    for (size_t k = 0; k < vs.size(); k += 97) {
        CliffordElement a = alg->from_vec(vs[k]);
        std::string t = a.to_string();
        ASSERT_EQ(alg->parse(t), a) << t;
        ASSERT_EQ(alg->parse(t).to_string(), t);
    }
    auto z = CliffordAlgebra::create(QuadraticModule::diagonal(Ring::parse("Z[X]/(X^2-1)"), {1, -1}));
    for (const char* t : {"X*e{1} - 3 + e{2,1}", "(1 + X)*e{1,2}", "-e{2}"}) {
        CliffordElement a = z->parse(t);
        EXPECT_EQ(z->parse(a.to_string()), a) << t;
    }
}
