#include <random>

#include "doctest.h"
#include "levinorm/frontend.hpp"
#include "levinorm/levi.hpp"

using namespace levinorm;

namespace {

// Term-by-term differentiation written against the raw term map.
SparsePoly oracle_partial(const SparsePoly& p, std::size_t var) {
    SparsePoly out(p.context());
    for (const auto& [m, c] : p.terms()) {
        if (m.exps[var] == 0) continue;
        Monomial d = m;
        d.exps[var] -= 1;
        out.add_term(d, c * GaussianRational(m.exps[var]));
    }
    return out;
}

SparsePoly random_holomorphic(int n, int degree, std::mt19937& rng) {
    const auto ctx = Context::germ(n);
    SparsePoly f(ctx);
    for (int t = 0; t < 4; ++t) {
        Monomial m(ctx->size());
        const int d = 1 + static_cast<int>(rng() % degree);
        for (int k = 0; k < d; ++k) ++m.exps[ctx->holo(static_cast<int>(rng() % n))];
        f.add_term(m, GaussianRational(Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3),
                                       Rational(static_cast<long>(rng() % 5) - 2)));
    }
    return f;
}

}  // namespace

TEST_CASE("complexify") {
    const auto f = parse_germ("z1*zb1 - z2*zb2", 2);
    CHECK(complexify(f) == parse_germ("z1*w1 - z2*w2", 2));
    CHECK(complexify(parse_germ("Re(z1^2)", 1)) == parse_germ("1/2*z1^2 + 1/2*w1^2", 1));
    CHECK(decomplexify(complexify(f)) == f);
}

TEST_CASE("reality") {
    CHECK(reality_check(parse_germ("z1*zb1", 1)));
    CHECK_FALSE(reality_check(parse_germ("i*z1*zb1", 1)));
    CHECK(reality_check(parse_germ("1/2*z1*z2 + 1/2*zb1*zb2", 2)));
}

TEST_CASE("levi data") {
    const auto f = parse_germ("z1*zb1", 1);
    const auto ctx = f.context();
    const auto data = levi_data(f);
    PolyForm eta(ctx, 1);
    const GaussianRational i = GaussianRational::imaginary_unit();
    eta.add({ctx->holo(0)}, i * SparsePoly::variable(ctx, "zb1"));
    eta.add({ctx->conj(0)}, -i * SparsePoly::variable(ctx, "z1"));
    CHECK(data.eta == eta);

    for (const char* text : {"z1*zb1 - z2*zb2", "Re(z1*z2)", "Re(z1^3 + i*z2^2*z1) + z1*zb1*z2*zb2"}) {
        const auto g = parse_germ(text, 2);
        const auto d = levi_data(g);
        const auto gc = complexify(g);
        PolyForm alpha(g.context(), 1);
        for (int s = 0; s < 2; ++s) alpha.add({g.context()->holo(s)}, oracle_partial(gc, g.context()->holo(s)));
        CHECK(d.alpha == alpha);
        CHECK(exterior_derivative(PolyForm::function(gc)) == d.alpha + d.beta);
        CHECK(d.eta_c == i * (d.alpha - d.beta));
    }
    CHECK_THROWS_AS(levi_data(parse_germ("i*z1", 1)), NotRealError);
}

TEST_CASE("reference fixtures") {
    CHECK(leviflat_test(parse_germ("Re(z1*z2)", 2)).kind == LeviVerdictKind::LeviFlat);
    CHECK(leviflat_test(parse_germ("z1*zb1 - z2*zb2", 2)).kind == LeviVerdictKind::LeviFlat);
    const auto control = parse_germ("Re(z1) + z2*zb2", 2);
    const auto v = leviflat_test(control, {true, std::nullopt});
    CHECK(v.kind == LeviVerdictKind::NotLeviFlat);
    REQUIRE(v.witness);
    // dz1^dzb1^dz2^dzb2 sorts to -dz1^dz2^dzb1^dzb2 in context order.
    CHECK(*v.witness == parse_germ("-1/4", 2));
    CHECK(leviflat_test(control).kind == LeviVerdictKind::Inconclusive);
    CHECK_THROWS(leviflat_test(parse_germ("0", 2)));
}

TEST_CASE("real parts of holomorphic germs are Levi-flat") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const auto f = random_holomorphic(n, 4, rng);
        const auto F = (f + conjugate(f)) * GaussianRational(1, 2);
        CHECK(leviflat_test(F).kind == LeviVerdictKind::LeviFlat);
    }
}

TEST_CASE("partial differentials") {
    const auto f = parse_germ("Re(z1^2*z2) + z1*zb1*z2^2*zb2 + i*z1*zb2 - i*zb1*z2", 2);
    const auto ctx = f.context();
    const auto zs = variables_with_role(*ctx, VarRole::Holomorphic);
    const auto cs = variables_with_role(*ctx, VarRole::Conjugate);
    const auto F = PolyForm::function(f);
    CHECK(exterior_derivative(exterior_derivative(F, zs), zs).is_zero());
    CHECK(exterior_derivative(exterior_derivative(F, cs), cs).is_zero());
    CHECK(exterior_derivative(exterior_derivative(F, cs), zs) == -exterior_derivative(exterior_derivative(F, zs), cs));
}

TEST_CASE("singular components") {
    const auto cubic = parse_germ("Re(z1*z2*z3)", 3);
    const auto r = sing_component_check(cubic, 1, 2, 1, 2);
    CHECK(r.in_sing_m);
    CHECK(r.in_sing_l);
    const auto perturbed = parse_germ("Re(z1*z2*z3) + z1*zb1*z2*zb2*z3*zb3", 3);
    const auto r2 = sing_component_check(perturbed, 1, 2, 1, 2);
    CHECK(r2.in_sing_m);
    CHECK(r2.in_sing_l);
    CHECK_FALSE(sing_component_check(parse_germ("Re(z1*z2*z3) + z3*zb3", 3), 1, 2, 1, 2).in_sing_m);
    CHECK_THROWS(sing_component_check(parse_germ("Re(z1^2 + z2^2)", 2), 1, 2, 1, 2));
    CHECK_THROWS(sing_component_check(cubic, 2, 1, 1, 2));
    CHECK_THROWS(sing_component_check(cubic, 1, 4, 1, 2));
}
