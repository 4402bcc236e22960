#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "levinorm/blowup.hpp"
#include "levinorm/frontend.hpp"
#include "levinorm/isochore.hpp"
#include "levinorm/levi.hpp"
#include "levinorm/normalform.hpp"
#include "levinorm/quasi.hpp"

#ifndef LEVINORM_CLI_PATH
#define LEVINORM_CLI_PATH "levinorm-cli"
#endif

using namespace levinorm;

namespace {

// Wall-clock limits in seconds, per criterion.
constexpr double kLimit[9] = {0, 10.0, 5.0, 5.0, 30.0, 10.0, 1.0, 60.0, 5.0};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

GaussianRational random_coeff(std::mt19937& rng) {
    return GaussianRational(Rational(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3),
                            Rational(static_cast<long>(rng() % 5) - 2, 1 + rng() % 2));
}

Rational frac(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

// 1. Levi-flat fixtures.
Outcome criterion1() {
    Outcome o;
    std::mt19937 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const auto ctx = Context::germ(n);
        SparsePoly f(ctx);
        for (int t = 0; t < 4; ++t) {
            Monomial m(ctx->size());
            const int d = 1 + static_cast<int>(rng() % 4);
            for (int k = 0; k < d; ++k) ++m.exps[ctx->holo(static_cast<int>(rng() % static_cast<unsigned>(n)))];
            f.add_term(m, random_coeff(rng));
        }
        if (f.is_zero()) continue;
        const auto F = (f + conjugate(f)) * GaussianRational(1, 2);
        o.require(leviflat_test(F).kind == LeviVerdictKind::LeviFlat, "Re(f) not LeviFlat: " + render(F));
    }
    o.require(leviflat_test(parse_germ("z1*zb1 - z2*zb2", 2)).kind == LeviVerdictKind::LeviFlat,
              "z1*zb1 - z2*zb2 not LeviFlat");
    o.require(leviflat_test(parse_germ("Re(z1*z2)", 2)).kind == LeviVerdictKind::LeviFlat, "Re(z1*z2) not LeviFlat");
    const auto control = parse_germ("Re(z1) + z2*zb2", 2);
    const auto asserted = leviflat_test(control, {true, std::nullopt}).kind;
    const auto plain = leviflat_test(control).kind;
    o.require(asserted == LeviVerdictKind::NotLeviFlat, "control not refuted under irreducibility");
    o.require(plain != LeviVerdictKind::LeviFlat, "control accepted as LeviFlat");
    if (o.pass) o.detail = "20 random Re(f), two fixtures, control";
    return o;
}

// Standard monomials of the monomial ideal (x^a, y^b).
int monomial_ideal_colength(int a, int b) { return a * b; }

Rational milnor_orlik(const WeightedStructure& ws) {
    Rational mu = 1;
    for (int w : ws.weights.weights()) mu *= frac(ws.degree - w, w);
    return mu;
}

// 2. Milnor table.
Outcome criterion2() {
    Outcome o;
    const auto xy = Context::free({"x", "y"});
    for (int k = 3; k <= 6; ++k) {
        const auto q = parse_polynomial("x^2*y + y^" + std::to_string(k), xy);
        const auto ws = detect_weights(q);
        o.require(ws.has_value(), "no weights for x^2*y + y^k");
        if (!ws) return o;
        const auto md = milnor_basis(q, *ws);
        o.require(md.mu && *md.mu == k + 1, "mu(x^2*y + y^" + std::to_string(k) + ")");
        std::vector<Monomial> expected{Monomial(std::vector<int>{0, 0}), Monomial(std::vector<int>{1, 0})};
        for (int j = 1; j < k; ++j) expected.emplace_back(std::vector<int>{0, j});
        auto got = md.basis;
        std::sort(got.begin(), got.end(), MonomialLess());
        std::sort(expected.begin(), expected.end(), MonomialLess());
        o.require(got == expected, "basis of x^2*y + y^" + std::to_string(k));
    }
    struct Row {
        std::string text;
        int mu;
        int a, b;  // Jacobian ideal (x^a, y^b) when monomial, else 0
    };
    std::vector<Row> rows;
    for (int k = 1; k <= 6; ++k) rows.push_back({"x^2 + y^" + std::to_string(k + 1), k, 1, k});
    for (int k = 4; k <= 6; ++k) rows.push_back({"x^2*y + y^" + std::to_string(k - 1), k, 0, 0});
    rows.push_back({"x^4 + y^3", 6, 3, 2});
    rows.push_back({"x^3*y + y^3", 7, 0, 0});
    rows.push_back({"x^5 + y^3", 8, 4, 2});
    for (const auto& r : rows) {
        const auto q = parse_polynomial(r.text, xy);
        const auto ws = detect_weights(q);
        o.require(ws.has_value(), "no weights for " + r.text);
        if (!ws) return o;
        const auto md = milnor_basis(q, *ws);
        o.require(md.mu && *md.mu == r.mu, "mu(" + r.text + ")");
        o.require(Rational(r.mu) == milnor_orlik(*ws), "weight formula for " + r.text);
        if (r.a) o.require(monomial_ideal_colength(r.a, r.b) == r.mu, "monomial oracle for " + r.text);
        o.require(md.above_d.empty(), "s != 0 for " + r.text);
    }
    if (o.pass) o.detail = "x^2*y+y^k (k=3..6), A1-A6, D4-D6, E6-E8";
    return o;
}

// 3. Saito round trip.
Outcome criterion3() {
    Outcome o;
    const auto xy = Context::free({"x", "y"});
    std::mt19937 rng(303);
    int checked = 0;
    while (checked < 50) {
        SaitoForm f;
        f.p = 1 + static_cast<int>(rng() % 5);
        f.q = 1 + static_cast<int>(rng() % 5);
        if (std::gcd(f.p, f.q) != 1) continue;
        f.k = static_cast<int>(rng() % 4);
        f.m = static_cast<int>(rng() % 2);
        f.n = static_cast<int>(rng() % 2);
        if (f.k == 0) continue;
        f.mu = GaussianRational(Rational(1 + static_cast<long>(rng() % 4)), Rational(static_cast<long>(rng() % 3) - 1));
        for (int l = 0; l < f.k; ++l) {
            GaussianRational lambda;
            while (lambda.is_zero()) lambda = random_coeff(rng);
            f.roots.push_back(lambda);
        }
        // independent expansion by repeated products
        const auto x = SparsePoly::variable(xy, 0), y = SparsePoly::variable(xy, 1);
        SparsePoly q = SparsePoly::constant(xy, f.mu) * x.pow(static_cast<unsigned>(f.m)) * y.pow(static_cast<unsigned>(f.n));
        for (const auto& l : f.roots) q = q * (y.pow(static_cast<unsigned>(f.p)) - l * x.pow(static_cast<unsigned>(f.q)));
        const auto g = saito_factorize(q);
        auto sorted = f.roots;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return a.re() != b.re() ? a.re() < b.re() : a.im() < b.im();
        });
        const bool same = g.mu == f.mu && g.m == f.m && g.n == f.n && g.k == f.k && g.p == f.p && g.q == f.q &&
                          g.roots == sorted && expand(g, xy) == q;
        o.require(same, "round trip failed for " + render(q));
        ++checked;
    }
    if (o.pass) o.detail = "50 parameter sets";
    return o;
}

// f o phi by plain products, truncating after each multiplication.
SparsePoly apply_weighted(const SparsePoly& f, const CoordJet& phi) {
    const auto& ctx = f.context();
    const auto vars = coordinate_variables(*ctx);
    SparsePoly out(ctx);
    for (const auto& [m, c] : f.terms()) {
        SparsePoly t = SparsePoly::constant(ctx, c);
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (int k = 0; k < m.exps[vars[i]]; ++k)
                t = truncate_weighted(t * phi.components()[i], phi.weights(), phi.order());
        out += t;
    }
    return out;
}

// 4. Arnold reduction.
Outcome criterion4() {
    Outcome o;
    struct TableGerm {
        const char* q;
        std::vector<int> w;
        int d;
    };
    const std::vector<TableGerm> table{
        {"z1^2 + z2^3", {3, 2}, 6},    {"z1^2 + z2^4", {2, 1}, 4},    {"z1^2 + z2^5", {5, 2}, 10},
        {"z1^2*z2 + z2^3", {1, 1}, 3}, {"z1^2*z2 + z2^4", {3, 2}, 8}, {"z1^4 + z2^3", {3, 4}, 12},
        {"z1^3*z2 + z2^3", {2, 3}, 9}, {"z1^5 + z2^3", {3, 5}, 15},   {"z1^3 + z2^6", {2, 1}, 6},
        {"z1^3 + z2^7", {7, 3}, 21},
    };
    std::mt19937 rng(404);
    int trials = 0;
    for (int round = 0; round < 3; ++round)
        for (const auto& t : table) {
            const auto q = parse_germ(t.q, 2);
            const WeightedStructure ws{WeightVector(t.w), t.d};
            SparsePoly f = q;
            for (int k = 0; k < 3; ++k) {
                const int l = t.d + 1 + static_cast<int>(rng() % static_cast<unsigned>(2 * t.d));
                std::vector<Monomial> ms;
                for_each_monomial(*q.context(), ws.weights, l, [&](const Monomial& m) { ms.push_back(m); });
                if (!ms.empty()) f += SparsePoly::monomial(q.context(), ms[rng() % ms.size()], random_coeff(rng));
            }
            const auto r = arnold_reduce(f, q, ws);
            SparsePoly expect = q;
            for (std::size_t j = 0; j < r.e.size(); ++j) expect += SparsePoly::monomial(q.context(), r.e[j], r.c[j]);
            o.require(r.normal_form == expect, "normal form shape for " + render(f));
            o.require(apply_weighted(r.normal_form, r.jet) == truncate_weighted(f, ws.weights, r.order),
                      "round trip for " + render(f));
            const auto again = arnold_reduce(r.normal_form, q, ws);
            o.require(again.c == r.c && again.jet.is_identity(), "idempotence for " + render(f));
            ++trials;
        }
    if (o.pass) o.detail = std::to_string(trials) + " perturbed table germs";
    return o;
}

// 5. Blow-up exponent law.
Outcome criterion5() {
    Outcome o;
    std::mt19937 rng(505);
    int cases = 0;
    for (int m = 0; m <= 1; ++m)
        for (int n = 0; n <= 1; ++n)
            for (int p = 1; p <= 5; ++p)
                for (int q = 1; q <= 5; ++q)
                    for (int k = 1; k <= 3; ++k) {
                        if (std::gcd(p, q) != 1) continue;
                        const auto src = xyzw_context();
                        const auto x = SparsePoly::variable(src, "x"), y = SparsePoly::variable(src, "y");
                        SparsePoly Q = x.pow(static_cast<unsigned>(m)) * y.pow(static_cast<unsigned>(n));
                        for (int l = 0; l < k; ++l)
                            Q = Q * (y.pow(static_cast<unsigned>(p)) -
                                     GaussianRational(static_cast<long>(1 + rng() % 5 + 5 * l)) *
                                         x.pow(static_cast<unsigned>(q)));
                        const auto alpha = exterior_derivative(PolyForm::function(Q));
                        const int expected = p * m + q * n + k * p * q - 1;
                        const int e3 = pullback_1form(alpha, chart_u3(p, q)).exponent;
                        const int e4 = pullback_1form(alpha, chart_u4(p, q)).exponent;
                        o.require(e3 == expected, "U3 exponent at (m,n,p,q,k) = " + std::to_string(m) + "," +
                                                      std::to_string(n) + "," + std::to_string(p) + "," +
                                                      std::to_string(q) + "," + std::to_string(k));
                        o.require(e4 == e3, "U3/U4 disagree");
                        ++cases;
                    }
    for (int n = 3; n <= 4; ++n) {
        const auto c1 = chart_pi1(n);
        const auto src = c1.source;
        SparsePoly zs = SparsePoly::constant(src, 1), ws = SparsePoly::constant(src, 1);
        SparsePoly rs = SparsePoly::constant(c1.target, 1), ls = SparsePoly::constant(c1.target, 1);
        for (int i = 1; i <= n; ++i) {
            zs = zs * SparsePoly::variable(src, "z" + std::to_string(i));
            ws = ws * SparsePoly::variable(src, "w" + std::to_string(i));
            rs = rs * SparsePoly::variable(c1.target, "r" + std::to_string(i));
            if (i > 1) ls = ls * SparsePoly::variable(c1.target, "l" + std::to_string(i));
        }
        const auto fc = GaussianRational(1, 2) * (zs + ws);
        const auto st = strict_transform(fc, c1);
        o.require(st.exponent == n && st.poly == GaussianRational(1, 2) * (rs + ls),
                  "strict transform under pi1, n = " + std::to_string(n));
        PolyForm alpha(src, 1);
        for (int i = 0; i < n; ++i) alpha.add({static_cast<std::size_t>(i)}, diff(fc, static_cast<std::size_t>(i)));
        o.require(pullback_1form(alpha, c1).exponent == n - 1, "pi1 exponent, n = " + std::to_string(n));
    }
    if (o.pass) o.detail = std::to_string(cases) + " grid points, product charts n = 3,4";
    return o;
}

// 6. Holonomy tables.
Outcome criterion6() {
    Outcome o;
    auto rhos = [](const std::vector<HolonomyEntry>& t) {
        std::vector<Rational> out;
        for (const auto& e : t) out.push_back(e.rotation.rho);
        return out;
    };
    const auto base = holonomy_table(1, 1, 1, 1, 1);
    std::vector<std::string> text;
    for (const auto& e : base) text.push_back(e.rotation.to_string());
    o.require(text == std::vector<std::string>{"-2/3", "-2/3", "0", "-2/3"}, "(1,1,1,1,1) table");
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= 5; ++q)
            for (int k = 1; k <= 3; ++k) {
                if (std::gcd(p, q) != 1) continue;
                const long D = p + q + static_cast<long>(p) * q * k;
                const std::vector<Rational> t11{-frac(1 + static_cast<long>(q) * k, D),
                                                -frac(p + static_cast<long>(p) * q * k, q * D), Rational(0),
                                                -frac(1 + static_cast<long>(p) * k, D)};
                o.require(rhos(holonomy_table(1, 1, p, q, k)) == t11, "(1,1) case");
                o.require(rhos(holonomy_table(0, 1, p, q, k)) == std::vector<Rational>{-frac(1, p), -frac(1, q), 0},
                          "(0,1) case");
                o.require(rhos(holonomy_table(1, 0, p, q, k)) == std::vector<Rational>{-frac(1, q), -frac(1, p), 0},
                          "(1,0) case");
                o.require(rhos(holonomy_table(0, 0, p, q, k)) == std::vector<Rational>{-frac(1, q), -frac(1, p)},
                          "(0,0) case");
                for (int m = 0; m <= 1; ++m)
                    for (int n = 0; n <= 1; ++n)
                        o.require(first_integral_criterion(holonomy_table(m, n, p, q, k)), "criterion false");
            }
    for (int n = 3; n <= 5; ++n) {
        const auto t = product_holonomy_table(n);
        for (const auto& e : t) o.require(e.rotation.rho == -frac(1, n + 2), "product table");
        o.require(first_integral_criterion(t), "product criterion false");
    }
    if (o.pass) o.detail = "four cases over the grid, product n = 3..5";
    return o;
}

Substitution random_shear(const ContextPtr& ctx, std::mt19937& rng) {
    const int n = ctx->slots();
    std::vector<SparsePoly> images;
    for (int i = 0; i < n; ++i) images.push_back(SparsePoly::variable(ctx, ctx->holo(i)));
    for (int round = 0; round < 2; ++round) {
        const int i = static_cast<int>(rng() % static_cast<unsigned>(n));
        SparsePoly g(ctx);
        for (int t = 0; t < 2; ++t) {
            Monomial m(ctx->size());
            const int deg = 2 + static_cast<int>(rng() % 2);
            for (int k = 0; k < deg; ++k) {
                int j = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
                if (j >= i) ++j;
                ++m.exps[ctx->holo(j)];
            }
            g.add_term(m, GaussianRational(static_cast<long>(rng() % 5) - 2));
        }
        Substitution step = Substitution::identity(ctx);
        step.set(ctx->holo(i), SparsePoly::variable(ctx, ctx->holo(i)) + g);
        for (auto& im : images) im = substitute(im, step);
    }
    Substitution total = Substitution::identity(ctx);
    for (int i = 0; i < n; ++i) total.set(ctx->holo(i), images[static_cast<std::size_t>(i)]);
    return total;
}

// Determinant by cofactor expansion along the first row.
SparsePoly determinant(std::vector<std::vector<SparsePoly>> a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    SparsePoly out(a[0][0].context());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<SparsePoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<SparsePoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        const auto term = a[0][j] * determinant(minor);
        if (j % 2 == 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

bool explicit_unit_jacobian(const CoordJet& phi) {
    const auto vars = coordinate_variables(*phi.context());
    std::vector<std::vector<SparsePoly>> J;
    for (const auto& c : phi.components()) {
        std::vector<SparsePoly> row;
        for (std::size_t v : vars) row.push_back(diff(c, v));
        J.push_back(row);
    }
    return truncate(determinant(J), phi.order() - 1) == SparsePoly::constant(phi.context(), 1);
}

PsiSeries first_terms(PsiSeries p, int count) {
    p.coeffs.resize(static_cast<std::size_t>(count));
    p.order = count + 1;
    return p;
}

// 7. Isochore recovery.
Outcome criterion7() {
    Outcome o;
    std::mt19937 rng(707);
    for (int route = 0; route < 2; ++route)
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 2 + trial % 2;
            const auto ctx = Context::germ(n);
            const auto h = route == 0 ? sum_of_squares(ctx) : coordinate_product(ctx, n);
            const int order = route == 0 ? 8 : 4 * n;
            PsiSeries psi0;
            psi0.coeffs = {random_coeff(rng), random_coeff(rng), random_coeff(rng)};
            psi0.order = 4;
            const auto f = substitute(psi0.evaluate(h, order), random_shear(ctx, rng));
            const auto r = route == 0 ? vey_reduce(f, order) : szawlowski_reduce(f, n, order);
            const std::string tag = (route == 0 ? "vey" : "szawlowski") + std::string(" on ") + render(f);
            o.require(first_terms(sign_canonicalize(r.psi), 3) == sign_canonicalize(psi0), "psi mismatch: " + tag);
            o.require(r.volume.unit_jacobian && explicit_unit_jacobian(r.volume.jet), "Jacobian check: " + tag);
        }
    if (o.pass) o.detail = "20 vey (K=8) + 20 szawlowski (K=4n) shears";
    return o;
}

std::string run_capture(const std::string& cmd, int* status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    *status = pclose(pipe);
    return out;
}

// 8. End-to-end CLI.
Outcome criterion8(const std::string& cli) {
    Outcome o;
    const std::string path = "levinorm_acceptance_x3y7.germ";
    {
        std::ofstream g(path);
        g << "n=2\nRe(z1^3 + z2^7 + z1*z2^5)\n";
    }
    std::vector<std::string> outputs;
    for (const char* sub : {"analyze", "normal-form"})
        for (int run = 0; run < 2; ++run) {
            int status = 0;
            outputs.push_back(run_capture(cli + " " + sub + " --input " + path + " --format json", &status));
            o.require(status == 0, std::string(sub) + " exit status " + std::to_string(status));
        }
    std::remove(path.c_str());
    if (!o.pass) return o;
    o.require(outputs[0] == outputs[1], "analyze reports differ between runs");
    o.require(outputs[2] == outputs[3], "normal-form reports differ between runs");
    try {
        const auto a = nlohmann::json::parse(outputs[0]);
        const auto nf = nlohmann::json::parse(outputs[2]);
        for (const auto* j : {&a, &nf}) {
            o.require((*j)["s"] == 1, "s != 1");
            o.require((*j)["e"] == nlohmann::json::array({"z1*z2^5"}), "e1 != z1*z2^5");
        }
        o.require(nf["normal_form"] == "Re(z1^3 + z2^7 + c1*z1*z2^5)", "normal form text");
    } catch (const std::exception& e) {
        o.require(false, std::string("report is not JSON: ") + e.what());
    }
    if (o.pass) o.detail = "s = 1, e1 = z1*z2^5, byte-identical reruns";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : LEVINORM_CLI_PATH;
    const std::vector<std::function<Outcome()>> criteria{
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
        [&] { return criterion8(cli); },
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double limit = kLimit[i + 1];
        if (o.pass && secs >= limit) {
            o.pass = false;
            o.detail = "time limit exceeded";
        }
        if (!o.pass) ++failed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, limit);
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << timing << ") " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
