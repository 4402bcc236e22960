#include <random>

#include "doctest.h"
#include "levinorm/frontend.hpp"
#include "levinorm/normalform.hpp"

using namespace levinorm;

namespace {

SparsePoly G(const std::string& text) { return parse_germ(text, 2); }

struct TableGerm {
    const char* name;
    const char* q;
    std::vector<int> w;
    int d;
};

std::vector<TableGerm> table() {
    return {
        {"A2", "z1^2 + z2^3", {3, 2}, 6},       {"A3", "z1^2 + z2^4", {2, 1}, 4},
        {"A4", "z1^2 + z2^5", {5, 2}, 10},      {"A5", "z1^2 + z2^6", {3, 1}, 6},
        {"D4", "z1^2*z2 + z2^3", {1, 1}, 3},    {"D5", "z1^2*z2 + z2^4", {3, 2}, 8},
        {"D6", "z1^2*z2 + z2^5", {2, 1}, 5},    {"E6", "z1^4 + z2^3", {3, 4}, 12},
        {"E7", "z1^3*z2 + z2^3", {2, 3}, 9},    {"E8", "z1^5 + z2^3", {3, 5}, 15},
        {"J10", "z1^3 + z2^6", {2, 1}, 6},      {"x3y7", "z1^3 + z2^7", {7, 3}, 21},
    };
}

GaussianRational random_coeff(std::mt19937& rng) {
    return GaussianRational(Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3),
                            Rational(static_cast<long>(rng() % 5) - 2));
}

// Q plus a few holomorphic terms of weighted degree d+1 .. d+span.
SparsePoly perturb(const SparsePoly& q, const WeightedStructure& ws, std::mt19937& rng, int span) {
    const auto& ctx = q.context();
    SparsePoly f = q;
    for (int t = 0; t < 3; ++t) {
        const int l = ws.degree + 1 + static_cast<int>(rng() % static_cast<unsigned>(span));
        std::vector<Monomial> ms;
        for_each_monomial(*ctx, ws.weights, l, [&](const Monomial& m) { ms.push_back(m); });
        if (ms.empty()) continue;
        f += SparsePoly::monomial(ctx, ms[rng() % ms.size()], random_coeff(rng));
    }
    return f;
}

// f o phi by plain products, truncating after every multiplication.
SparsePoly oracle_apply(const SparsePoly& f, const CoordJet& phi) {
    const auto& ctx = f.context();
    const auto& w = phi.weights();
    const auto vars = coordinate_variables(*ctx);
    SparsePoly out(ctx);
    for (const auto& [m, c] : f.terms()) {
        SparsePoly t = SparsePoly::constant(ctx, c);
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (int k = 0; k < m.exps[vars[i]]; ++k) t = truncate_weighted(t * phi.components()[i], w, phi.order());
        out += t;
    }
    return out;
}

}  // namespace

TEST_CASE("coordinate jets") {
    const auto ctx = Context::germ(2);
    const WeightVector w = WeightVector::uniform(2);
    const CoordJet phi(ctx, w, 6, {G("2*z1 + z2 + z1*z2 - i*z2^3"), G("z2 - 1/2*z1^2 + z1^2*z2")});
    CHECK(phi.linear_determinant() == GaussianRational(2));
    const CoordJet inv = phi.inverse();
    CHECK(phi.compose(inv).is_identity());
    CHECK(inv.compose(phi).is_identity());
    const auto f = G("z1^3 + z1*z2^2 - 3*z2^4");
    CHECK(inv.apply(phi.apply(f)) == truncate(f, 6));
    CHECK(phi.apply(f) == oracle_apply(f, phi));

    CHECK_THROWS(CoordJet(ctx, w, 4, {G("z1^2"), G("z2")}));
    CHECK_THROWS(CoordJet(ctx, w, 4, {G("1 + z1"), G("z2")}));
    CHECK_THROWS(CoordJet(ctx, WeightVector({2, 1}), 4, {G("z1 + z2"), G("z2")}));
}

TEST_CASE("random jets invert") {
    std::mt19937 rng(5);
    const auto ctx = Context::germ(2);
    for (int trial = 0; trial < 10; ++trial) {
        const WeightVector w({1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3)});
        const int order = 8;
        std::vector<SparsePoly> comps;
        for (int i = 0; i < 2; ++i) {
            SparsePoly c = SparsePoly::variable(ctx, ctx->holo(i)) * GaussianRational(1 + static_cast<long>(rng() % 3));
            for (int t = 0; t < 3; ++t) {
                const int l = w[static_cast<std::size_t>(i)] + 1 + static_cast<int>(rng() % 4);
                std::vector<Monomial> ms;
                for_each_monomial(*ctx, w, l, [&](const Monomial& m) { ms.push_back(m); });
                if (!ms.empty()) c += SparsePoly::monomial(ctx, ms[rng() % ms.size()], random_coeff(rng));
            }
            comps.push_back(c);
        }
        const CoordJet phi(ctx, w, order, comps);
        CHECK(phi.compose(phi.inverse()).is_identity());
        CHECK(phi.inverse().compose(phi).is_identity());
    }
}

TEST_CASE("arnold examples") {
    const auto morse = arnold_reduce(G("z1^2 + z2^2 + z1^3"), G("z1^2 + z2^2"), {WeightVector({1, 1}), 2});
    CHECK(morse.c.empty());
    CHECK(morse.normal_form == G("z1^2 + z2^2"));
    CHECK(oracle_apply(G("z1^2 + z2^2 + z1^3"), morse.jet.inverse()) == G("z1^2 + z2^2"));

    const WeightedStructure ws{WeightVector({7, 3}), 21};
    const auto fixed = arnold_reduce(G("z1^3 + z2^7 + z1*z2^5"), G("z1^3 + z2^7"), ws);
    REQUIRE(fixed.c.size() == 1);
    CHECK(fixed.c[0] == GaussianRational(1));
    CHECK(fixed.e[0] == G("z1*z2^5").leading().first);
    CHECK(fixed.jet.is_identity());

    for (const auto& t : table()) {
        const auto q = G(t.q);
        const auto r = arnold_reduce(q, q, {WeightVector(t.w), t.d});
        CHECK(r.jet.is_identity());
        for (const auto& c : r.c) CHECK(c.is_zero());
    }
    CHECK_THROWS_AS(arnold_reduce(G("z1^2 + z2^3 + z1*z2"), G("z1^2 + z2^3"), {WeightVector({3, 2}), 6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(arnold_reduce(G("z1^2"), G("z1^2"), {WeightVector({1, 1}), 2}), std::invalid_argument);
}

TEST_CASE("arnold round trip and idempotence on perturbed table germs") {
    std::mt19937 rng(11);
    int trials = 0;
    for (int round = 0; round < 3; ++round)
        for (const auto& t : table()) {
            const auto q = G(t.q);
            const WeightedStructure ws{WeightVector(t.w), t.d};
            const auto f = perturb(q, ws, rng, 2 * t.d);
            const auto r = arnold_reduce(f, q, ws);
            CAPTURE(t.name);
            CAPTURE(render(f));
            // f o phi^{-1} reproduces the normal form.
            CHECK(oracle_apply(f, r.jet.inverse()) == truncate_weighted(r.normal_form, ws.weights, r.order));
            // normal form is Q plus basis monomials above d
            SparsePoly expect = q;
            for (std::size_t j = 0; j < r.e.size(); ++j) expect += SparsePoly::monomial(q.context(), r.e[j], r.c[j]);
            CHECK(r.normal_form == expect);
            const auto again = arnold_reduce(r.normal_form, q, ws);
            CHECK(again.c == r.c);
            CHECK(again.jet.is_identity());
            ++trials;
        }
    CHECK(trials == 36);
}

TEST_CASE("hessian form") {
    const auto a = hessian_form(G("z1^2 + z2^2"));
    CHECK(a.h == G("2*z1^2 + 2*z2^2"));
    CHECK(a.nondegenerate);
    const auto b = hessian_form(G("z1*z2 + z1^3"));
    CHECK(b.h == G("2*z1*z2"));
    CHECK(b.nondegenerate);
    CHECK_FALSE(hessian_form(G("z1^2")).nondegenerate);
}

TEST_CASE("product leading part") {
    CHECK(product_leading_check(parse_germ("z1*z2*z3 + z1^4", 3), 3));
    CHECK_FALSE(product_leading_check(parse_germ("z1*z2*z3 + z1^2", 3), 3));
    CHECK_FALSE(product_leading_check(parse_germ("2*z1*z2*z3", 3), 3));
    CHECK(product_leading_check(G("z1*z2 - i*z2^3"), 2));
}

TEST_CASE("quasihomogeneous pipeline") {
    const auto dk = theorem1_pipeline(G("Re(z1^2*z2 + z2^4)"));
    CHECK(dk.failure() == nullptr);
    CHECK(dk.s == 0);
    CHECK(dk.normal_form == "Re(z1^2*z2 + z2^4)");

    const auto a2 = theorem1_pipeline(G("Re(z1^2 + z2^3)"));
    CHECK(a2.s == 0);
    CHECK(a2.normal_form == "Re(z1^2 + z2^3)");

    const auto j = theorem1_pipeline(G("Re(z1^3 + z2^7 + z1*z2^5)"));
    REQUIRE(j.failure() == nullptr);
    CHECK(j.s == 1);
    CHECK(j.ws->weights == WeightVector({7, 3}));
    CHECK(j.normal_form == "Re(z1^3 + z2^7 + c1*z1*z2^5)");
    REQUIRE(j.c.size() == 1);
    CHECK(j.c[0] == GaussianRational(1));

    // Non-pluriharmonic tail: template only.
    const auto t = theorem1_pipeline(G("Re(z1^3 + z2^7) + z1^2*zb1^2*z2*zb2"));
    REQUIRE(t.failure() == nullptr);
    CHECK(t.normal_form == "Re(z1^3 + z2^7 + c1*z1*z2^5)");
    CHECK(t.c.empty());
}

TEST_CASE("pipeline with a supplied first integral") {
    const auto F = G("Re(z1^2 + z2^3 + z1*z2^2)");
    PipelineOptions opt;
    opt.first_integral = G("z1^2 + z2^3 + z1*z2^2");
    const auto r = theorem1_pipeline(F, opt);
    REQUIRE(r.failure() == nullptr);
    CHECK(*r.normal_form_poly == G("z1^2 + z2^3"));

    opt.first_integral = G("z1^2 + z2^3");
    const auto bad = theorem1_pipeline(F, opt);
    REQUIRE(bad.failure());
    CHECK(bad.failure()->code == DiagnosticCode::NotFirstIntegral);

    // U = 3 + |z1|^2.
    const auto U = G("3 + z1*zb1");
    const auto F2 = G("Re(z1^3 + z2^7)");
    opt.first_integral = G("3*z1^3 + 3*z2^7");
    const auto scaled = theorem1_pipeline(F2, opt);
    REQUIRE(scaled.failure() == nullptr);
    CHECK(*scaled.normal_form_poly == G("z1^3 + z2^7"));
    (void)U;
}

TEST_CASE("pipeline diagnostics") {
    auto code = [](const std::string& text) {
        PipelineOptions opt;
        opt.assert_irreducible = true;
        const auto r = theorem1_pipeline(G(text), opt);
        REQUIRE(r.failure());
        int failures = 0;
        for (const auto& d : r.diagnostics) failures += d.is_failure();
        CHECK(failures == 1);
        return r.failure()->code;
    };
    CHECK(code("Re(z1) + z2*zb2") == DiagnosticCode::NotLeviFlat);
    CHECK(code("Re(z1^2)") == DiagnosticCode::NotIsolated);
    CHECK(code("Re(z1)*Re(z2)") == DiagnosticCode::OrderTooLow);
    CHECK(code("z1*zb1 - z2*zb2") == DiagnosticCode::NotQuasihomogeneous);
    CHECK(code("i*z1 - i*zb1 + 1") == DiagnosticCode::NotReal);
    CHECK(theorem1_pipeline(parse_germ("Re(z1^2 + z2^2 + z3^2)", 3)).failure()->code == DiagnosticCode::WrongDimension);
}

TEST_CASE("diagonal scalings keep s and the basis monomials") {
    std::mt19937 rng(3);
    const std::vector<const char*> germs = {"Re(z1^3 + z2^7 + z1*z2^5)", "Re(z1^2*z2 + z2^5)", "Re(z1^4 + z2^3)",
                                            "Re(z1^3 + z2^6) + z1^3*zb1^3"};
    for (const char* text : germs) {
        const auto F = G(text);
        const auto base = theorem1_pipeline(F);
        REQUIRE(base.failure() == nullptr);
        for (int trial = 0; trial < 3; ++trial) {
            const auto ctx = F.context();
            GaussianRational l1 = random_coeff(rng), l2 = random_coeff(rng);
            if (l1.is_zero()) l1 = 2;
            if (l2.is_zero()) l2 = GaussianRational(Rational(1), Rational(1));
            Substitution s = Substitution::identity(ctx);
            s.set(ctx->holo(0), SparsePoly::variable(ctx, ctx->holo(0)) * l1);
            s.set(ctx->conj(0), SparsePoly::variable(ctx, ctx->conj(0)) * l1.conj());
            s.set(ctx->holo(1), SparsePoly::variable(ctx, ctx->holo(1)) * l2);
            s.set(ctx->conj(1), SparsePoly::variable(ctx, ctx->conj(1)) * l2.conj());
            const auto moved = theorem1_pipeline(substitute(F, s));
            REQUIRE(moved.failure() == nullptr);
            CHECK(moved.s == base.s);
            CHECK(moved.e == base.e);
        }
    }
}
