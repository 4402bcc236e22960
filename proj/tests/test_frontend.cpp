#include <random>

#include "doctest.h"
#include "levinorm/frontend.hpp"

using namespace levinorm;

TEST_CASE("parse examples") {
    const auto ctx = Context::germ(2);
    const GaussianRational half(1, 2), quarter(1, 4);
    SparsePoly expected(ctx);
    for (const char* v : {"z1", "z2", "zb1", "zb2"}) expected += half * SparsePoly::variable(ctx, v).pow(2);
    CHECK(parse_germ("Re(z1^2 + z2^2)", 2) == expected);

    CHECK(parse_germ("z1*zb1 - z2*zb2", 2) ==
          SparsePoly::variable(ctx, "z1") * SparsePoly::variable(ctx, "zb1") -
              SparsePoly::variable(ctx, "z2") * SparsePoly::variable(ctx, "zb2"));

    const auto z1 = SparsePoly::variable(ctx, "z1"), z2 = SparsePoly::variable(ctx, "z2");
    const auto c1 = SparsePoly::variable(ctx, "zb1"), c2 = SparsePoly::variable(ctx, "zb2");
    CHECK(parse_germ("Re((1/2)*z1*z2) + z1*zb1*z2*zb2", 2) == quarter * z1 * z2 + quarter * c1 * c2 + z1 * c1 * z2 * c2);
}

TEST_CASE("Im and conj expand") {
    const auto p = parse_germ("Im(z1)", 1);
    CHECK(p == parse_germ("-1/2*i*z1 + 1/2*i*zb1", 1));
    CHECK(parse_germ("conj(i*z1^2)", 1) == parse_germ("-i*zb1^2", 1));
    CHECK(parse_germ("-(z1 - 2)^2", 1) == parse_germ("-z1^2 + 4*z1 - 4", 1));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_germ("z1 + z3", 2);
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_germ("z1^-2", 1), ParseError);
    CHECK_THROWS_AS(parse_germ("z1 +", 1), ParseError);
    CHECK_THROWS_AS(parse_germ("(z1", 1), ParseError);
    CHECK_THROWS_AS(parse_germ("3/0", 1), ParseError);
    CHECK_THROWS_AS(parse_germ("", 1), ParseError);
    CHECK_THROWS_AS(parse_germ("z1 $ z1", 1), ParseError);
}

TEST_CASE("render") {
    CHECK(render(parse_germ("0", 1)) == "0");
    CHECK(parse_germ(render(parse_germ("z1^2", 1)), 1) == parse_germ("z1^2", 1));
    const auto p = parse_germ("Re(z1^3 + (1+2*i)*z2^2*z1) - 3/4*z1*zb1 + 7", 2);
    CHECK(render(p) == render(parse_germ(render(p), 2)));
}

TEST_CASE("render round trip on random polynomials") {
    std::mt19937 rng(3);
    for (int n = 1; n <= 3; ++n) {
        const auto ctx = Context::germ(n);
        for (int trial = 0; trial < 30; ++trial) {
            SparsePoly p(ctx);
            for (int t = 0; t < 6; ++t) {
                Monomial m(ctx->size());
                for (int k = 0; k < static_cast<int>(rng() % 5); ++k) ++m.exps[rng() % ctx->size()];
                const long a = static_cast<long>(rng() % 11) - 5, b = static_cast<long>(rng() % 11) - 5;
                p.add_term(m, GaussianRational(Rational(a, 1 + rng() % 4), Rational(b, 1 + rng() % 3)));
            }
            CHECK(parse_germ(render(p), n) == p);
        }
    }
}

TEST_CASE("Re/Im expressions are real") {
    std::mt19937 rng(9);
    const char* pieces[] = {"z1", "z2*zb1", "(2+i)*z1^2", "i*z2^3", "1/3*z1*z2"};
    for (int trial = 0; trial < 20; ++trial) {
        std::string text;
        for (int k = 0; k < 3; ++k) {
            if (k) text += " + ";
            text += (rng() % 2 ? "Re(" : "Im(");
            text += pieces[rng() % 5];
            text += std::string(" * ") + pieces[rng() % 5] + ")";
        }
        const auto p = parse_germ(text, 2);
        CHECK(conjugate(p) == p);
    }
}

TEST_CASE("germ files") {
    const auto file = parse_germ_file("n=2\nweights=1,1\nf=z1*z2\nRe(z1*z2)\n+ z1*zb1*z2*zb2\n");
    CHECK(file.n == 2);
    REQUIRE(file.weights);
    CHECK(file.weights->weights() == std::vector<int>{1, 1});
    REQUIRE(file.first_integral);
    CHECK(file.germ == parse_germ("Re(z1*z2) + z1*zb1*z2*zb2", 2));
    const auto again = parse_germ_file(render_germ_file(file));
    CHECK(again.germ == file.germ);
    CHECK(*again.first_integral == *file.first_integral);
    CHECK(render_germ_file(again) == render_germ_file(file));
    CHECK_THROWS_AS(parse_germ_file("weights=1\nz1"), ParseError);
    CHECK_THROWS_AS(parse_germ_file("n=2\nweights=1\nz1"), ParseError);
    CHECK_THROWS_AS(parse_germ_file("n=1\n"), ParseError);
}
