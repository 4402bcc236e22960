#include "levinorm/isochore.hpp"

#include <algorithm>
#include <map>

#include "levinorm/frontend.hpp"
#include "levinorm/linalg.hpp"
#include "levinorm/quasi.hpp"

namespace levinorm {

namespace {

WeightVector uniform_weights(const Context& ctx) { return WeightVector::uniform(ctx.slots()); }

bool canonical_positive(const GaussianRational& c) {
    if (sgn(c.re()) != 0) return sgn(c.re()) > 0;
    return sgn(c.im()) > 0;
}

SparsePoly poly_determinant(std::vector<std::vector<SparsePoly>> m, int max_degree) {
    const std::size_t n = m.size();
    if (n == 1) return truncate(m[0][0], max_degree);
    const ContextPtr ctx = m[0][0].context();
    SparsePoly det(ctx);
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<SparsePoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<SparsePoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        SparsePoly term = multiply_truncated(m[0][col], poly_determinant(std::move(minor), max_degree), max_degree);
        if (col % 2) det -= term;
        else det += term;
    }
    return det;
}

// Time-one flow of -X as a jet: z_i -> sum_k (-1)^k / k! X^k(z_i).
CoordJet flow_jet(const VectorField& x, const ContextPtr& ctx, int order) {
    const auto vars = coordinate_variables(*ctx);
    std::vector<SparsePoly> comps;
    for (std::size_t v : vars) {
        SparsePoly term = SparsePoly::variable(ctx, v);
        SparsePoly sum = term;
        for (int k = 1; k <= order; ++k) {
            term = truncate(apply_field(x, term), order) * GaussianRational(Rational(-1, k));
            if (term.is_zero()) break;
            sum += term;
        }
        comps.push_back(std::move(sum));
    }
    return CoordJet(ctx, uniform_weights(*ctx), order, std::move(comps));
}

struct Reduction {
    PsiSeries psi;
    CoordJet chi;  // f o chi = psi(h)
};

Reduction reduce_to_model(const SparsePoly& f, const SparsePoly& h, int order) {
    const auto& ctx = f.context();
    const int m = h.degree();
    if (order < m) throw std::invalid_argument("truncation order below the model degree");
    for (int l = 0; l < m; ++l)
        if (!homogeneous_part(f, l).is_zero()) throw std::invalid_argument("f has terms below the model degree");
    if (!(homogeneous_part(f, m) == h)) throw std::invalid_argument("leading part of f is not the model");

    SparsePoly g = truncate(f, order);
    CoordJet chi = CoordJet::identity(ctx, uniform_weights(*ctx), order);
    std::map<int, GaussianRational> cs;
    for (int l = m + 1; l <= order; ++l) {
        const SparsePoly r = homogeneous_part(g, l);
        if (r.is_zero()) continue;
        const DivFreeStep step = divfree_step(r, h);
        if (l % m == 0) cs[l / m] = step.c;
        bool moved = false;
        for (const auto& xi : step.field) moved = moved || !xi.is_zero();
        if (!moved) continue;
        const CoordJet phi = flow_jet(step.field, ctx, order);
        g = phi.apply(g);
        chi = chi.compose(phi);
    }
    PsiSeries psi;
    psi.order = order / m;
    for (int j = 2; j <= psi.order; ++j) psi.coeffs.push_back(cs.count(j) ? cs[j] : GaussianRational(0));
    if (!(truncate(g, order) == psi.evaluate(h, order)))
        throw std::logic_error("volume-preserving reduction did not reach psi(h)");
    return {psi, chi};
}

// A with A^T S A = I and det A = 1, S the Gram matrix of q.
Matrix normalize_quadratic(const SparsePoly& q) {
    const auto& ctx = q.context();
    const auto vars = coordinate_variables(*ctx);
    const std::size_t n = vars.size();
    Matrix s(n, Row(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Monomial mono(ctx->size());
            ++mono.exps[vars[i]];
            ++mono.exps[vars[j]];
            s[i][j] = i == j ? q.coefficient(mono) : q.coefficient(mono) * GaussianRational(1, 2);
        }
    Matrix a(n, Row(n));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    // Column operation: col_t += k * col_u on A, congruence on S.
    auto add_col = [&](std::size_t t, std::size_t u, const GaussianRational& k) {
        for (std::size_t r = 0; r < n; ++r) a[r][t] += k * a[r][u];
        for (std::size_t r = 0; r < n; ++r) s[r][t] += k * s[r][u];
        for (std::size_t c = 0; c < n; ++c) s[t][c] += k * s[u][c];
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (s[k][k].is_zero()) {
            for (std::size_t j = k + 1; j < n && s[k][k].is_zero(); ++j)
                if (!s[j][j].is_zero()) add_col(k, j, 1);
            for (std::size_t j = k + 1; j < n && s[k][k].is_zero(); ++j)
                if (!s[k][j].is_zero()) add_col(k, j, 1);
            if (s[k][k].is_zero()) throw std::invalid_argument("degenerate Hessian");
        }
        for (std::size_t j = k + 1; j < n; ++j)
            if (!s[k][j].is_zero()) add_col(j, k, -s[k][j] / s[k][k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto root = gaussian_sqrt(s[k][k]);
        if (!root)
            throw FieldObstruction("quadratic part cannot be normalized over Q(i)", "sqrt(" + s[k][k].to_string() + ")");
        const GaussianRational inv = GaussianRational(1) / *root;
        for (std::size_t r = 0; r < n; ++r) a[r][k] *= inv;
    }
    GaussianRational det = determinant(a);
    if (det == GaussianRational(-1)) {
        for (std::size_t r = 0; r < n; ++r) a[r][0] = -a[r][0];
        det = 1;
    }
    if (!det.is_one())
        throw FieldObstruction("no determinant-one linear map takes the quadratic part to a sum of squares",
                               "determinant " + det.to_string());
    return a;
}

IsochoreResult finish(const SparsePoly& h, const CoordJet& chi, PsiSeries psi) {
    const CoordJet phi = chi.inverse();
    return IsochoreResult{std::move(psi), VolumeJet{phi, unit_jacobian(phi) && unit_jacobian(chi)}, h};
}

}  // namespace

// ---------------------------------------------------------------- PsiSeries

GaussianRational PsiSeries::coefficient(int j) const {
    if (j == 1) return 1;
    if (j < 2 || j - 2 >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[static_cast<std::size_t>(j - 2)];
}

SparsePoly PsiSeries::evaluate(const SparsePoly& h, int max_degree) const {
    SparsePoly out(h.context());
    SparsePoly power = truncate(h, max_degree);
    for (int j = 1; j <= order && !power.is_zero(); ++j) {
        out += power * coefficient(j);
        power = multiply_truncated(power, h, max_degree);
    }
    return out;
}

std::string PsiSeries::to_string() const {
    const auto ctx = Context::free({"t"});
    SparsePoly p(ctx);
    for (int j = 1; j <= order; ++j) {
        Monomial m(1);
        m.exps[0] = j;
        p.add_term(m, coefficient(j));
    }
    return render(p);
}

PsiSeries sign_canonicalize(const PsiSeries& psi) {
    for (int j = 2; j <= psi.order; ++j) {
        const GaussianRational c = psi.coefficient(j);
        if (j % 2 == 1 || c.is_zero()) continue;
        if (canonical_positive(c)) return psi;
        PsiSeries other = psi;
        for (int k = 2; k <= psi.order; ++k)
            if (k % 2 == 0) other.coeffs[static_cast<std::size_t>(k - 2)] = -psi.coefficient(k);
        return other;
    }
    return psi;
}

// ------------------------------------------------------------ vector fields

SparsePoly apply_field(const VectorField& x, const SparsePoly& g) {
    const auto vars = coordinate_variables(*g.context());
    if (x.size() != vars.size()) throw std::invalid_argument("vector field size mismatch");
    SparsePoly out(g.context());
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!x[i].is_zero()) out += x[i] * diff(g, vars[i]);
    return out;
}

SparsePoly divergence(const VectorField& x, const ContextPtr& ctx) {
    const auto vars = coordinate_variables(*ctx);
    if (x.size() != vars.size()) throw std::invalid_argument("vector field size mismatch");
    SparsePoly out(ctx);
    for (std::size_t i = 0; i < vars.size(); ++i) out += diff(x[i], vars[i]);
    return out;
}

DivFreeStep divfree_step(const SparsePoly& r, const SparsePoly& h) {
    require_same_context(r, h);
    const auto& ctx = h.context();
    const auto vars = coordinate_variables(*ctx);
    const WeightVector w = uniform_weights(*ctx);
    DivFreeStep out{VectorField(vars.size(), SparsePoly(ctx)), GaussianRational(0)};
    if (r.is_zero()) return out;
    const int m = h.degree();
    const int l = r.degree();
    if (r.order() != l) throw std::invalid_argument("residual is not homogeneous");
    if (l <= m) throw std::invalid_argument("residual degree must exceed the model degree");
    const int k = l - m + 1;

    std::vector<std::pair<std::size_t, Monomial>> xcols;
    for (std::size_t i = 0; i < vars.size(); ++i)
        for_each_monomial(*ctx, w, k, [&](const Monomial& mono) { xcols.emplace_back(i, mono); });
    const bool power = l % m == 0;
    const std::size_t ncols = xcols.size() + (power ? 1 : 0);

    std::map<Monomial, std::size_t, MonomialLess> eq_rows, div_rows;
    for_each_monomial(*ctx, w, l, [&](const Monomial& mono) { eq_rows.emplace(mono, eq_rows.size()); });
    for_each_monomial(*ctx, w, k - 1, [&](const Monomial& mono) { div_rows.emplace(mono, div_rows.size()); });
    const std::size_t nrows = eq_rows.size() + div_rows.size();
    Matrix a(nrows, Row(ncols));
    for (std::size_t col = 0; col < xcols.size(); ++col) {
        const auto& [i, mono] = xcols[col];
        const SparsePoly image = SparsePoly::monomial(ctx, mono) * diff(h, vars[i]);
        for (const auto& [em, ec] : image.terms()) a[eq_rows.at(em)][col] += ec;
        if (mono.exps[vars[i]] > 0) {
            Monomial dm = mono;
            --dm.exps[vars[i]];
            a[eq_rows.size() + div_rows.at(dm)][col] += GaussianRational(mono.exps[vars[i]]);
        }
    }
    SparsePoly hp(ctx);
    if (power) {
        hp = h.pow(static_cast<unsigned>(l / m));
        for (const auto& [em, ec] : hp.terms()) a[eq_rows.at(em)][xcols.size()] += ec;
    }
    Row b(nrows);
    for (const auto& [em, ec] : r.terms()) b[eq_rows.at(em)] = ec;
    const auto x = solve_linear(a, b, ncols);
    if (!x) throw ModelError("no divergence-free solution at degree " + std::to_string(l));

    for (std::size_t col = 0; col < xcols.size(); ++col)
        if (!(*x)[col].is_zero()) out.field[xcols[col].first].add_term(xcols[col].second, (*x)[col]);
    if (power) out.c = (*x)[xcols.size()];
    if (!divergence(out.field, ctx).is_zero() || !(apply_field(out.field, h) + hp * out.c - r).is_zero())
        throw std::logic_error("divergence-free step failed its verification");
    return out;
}

bool unit_jacobian(const CoordJet& jet) {
    const auto& ctx = jet.context();
    const auto vars = coordinate_variables(*ctx);
    std::vector<std::vector<SparsePoly>> jac;
    for (const auto& c : jet.components()) {
        std::vector<SparsePoly> row;
        for (std::size_t v : vars) row.push_back(diff(c, v));
        jac.push_back(std::move(row));
    }
    const int bound = jet.order() - 1;
    return poly_determinant(std::move(jac), bound) == SparsePoly::constant(ctx, 1);
}

// ---------------------------------------------------------------- reductions

int default_isochore_order(int n) { return 2 * n + 4; }

SparsePoly sum_of_squares(const ContextPtr& ctx) {
    SparsePoly h(ctx);
    for (std::size_t v : coordinate_variables(*ctx)) h += SparsePoly::variable(ctx, v).pow(2);
    return h;
}

SparsePoly coordinate_product(const ContextPtr& ctx, int n) {
    const auto vars = coordinate_variables(*ctx);
    Monomial m(ctx->size());
    for (int i = 0; i < n && static_cast<std::size_t>(i) < vars.size(); ++i) m.exps[vars[static_cast<std::size_t>(i)]] = 1;
    return SparsePoly::monomial(ctx, m);
}

IsochoreResult vey_reduce(const SparsePoly& f, int order) {
    if (!is_holomorphic(f)) throw std::invalid_argument("f must be holomorphic");
    const auto& ctx = f.context();
    if (coordinate_variables(*ctx).size() < 2) throw std::invalid_argument("need at least two variables");
    if (!f.constant_term().is_zero() || !homogeneous_part(f, 1).is_zero())
        throw std::invalid_argument("origin is not a critical point of f");
    const HessianForm hf = hessian_form(f);
    if (!hf.nondegenerate) throw std::invalid_argument("degenerate Hessian");
    const SparsePoly h = sum_of_squares(ctx);
    const WeightVector w = uniform_weights(*ctx);

    const Matrix a = normalize_quadratic(homogeneous_part(f, 2));
    const auto vars = coordinate_variables(*ctx);
    std::vector<SparsePoly> lin;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        SparsePoly c(ctx);
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (!a[i][j].is_zero()) c += SparsePoly::variable(ctx, vars[j]) * a[i][j];
        lin.push_back(std::move(c));
    }
    const CoordJet linear(ctx, w, order, std::move(lin));
    const Reduction red = reduce_to_model(linear.apply(f), h, order);
    return finish(h, linear.compose(red.chi), red.psi);
}

IsochoreResult szawlowski_reduce(const SparsePoly& f, int n, int order) {
    if (!is_holomorphic(f)) throw std::invalid_argument("f must be holomorphic");
    const auto& ctx = f.context();
    if (n < 2 || coordinate_variables(*ctx).size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("product model needs n = number of variables >= 2");
    if (!product_leading_check(f, n)) throw std::invalid_argument("leading part of f is not z1...zn");
    const SparsePoly h = coordinate_product(ctx, n);
    const Reduction red = reduce_to_model(f, h, order);
    return finish(h, red.chi, red.psi);
}

// ---------------------------------------------------------------- pipelines

namespace {

struct Prelude {
    NormalFormReport rep;
    bool stopped = false;
};

Prelude common_checks(const SparsePoly& F, const PipelineOptions& options, const std::string& route) {
    Prelude p;
    p.rep.route = route;
    auto stop = [&](DiagnosticCode code, std::string hyp, std::string detail) {
        p.rep.diagnostics.push_back({code, std::move(hyp), std::move(detail)});
        p.stopped = true;
        return p;
    };
    const auto& ctx = F.context();
    if (!ctx->is_germ()) throw std::invalid_argument("expected a germ in z and zb");
    if (ctx->slots() < 2)
        return stop(DiagnosticCode::WrongDimension, "germ in n >= 2 complex variables", "n = 1");
    if (!reality_check(F)) return stop(DiagnosticCode::NotReal, "F is real-valued", "F differs from its conjugate");
    if (F.is_zero() || !F.constant_term().is_zero())
        return stop(DiagnosticCode::NotReal, "F vanishes at the origin and is not identically zero",
                    "F(0) = " + F.constant_term().to_string());
    LeviOptions lo;
    lo.assert_irreducible = options.assert_irreducible;
    p.rep.levi = leviflat_test(F, lo);
    if (p.rep.levi->kind == LeviVerdictKind::NotLeviFlat)
        return stop(DiagnosticCode::NotLeviFlat, "M = {F = 0} is Levi-flat", p.rep.levi->reason);
    if (p.rep.levi->kind == LeviVerdictKind::Inconclusive)
        p.rep.diagnostics.push_back({DiagnosticCode::Note, "M = {F = 0} is Levi-flat", p.rep.levi->reason});
    return p;
}

// Supplied first integral normalized by U(0), or 2*hol(F) when F is pluriharmonic.
std::optional<SparsePoly> first_integral(const SparsePoly& F, const PipelineOptions& options, NormalFormReport& rep,
                                         bool& failed) {
    failed = false;
    if (options.first_integral) {
        std::string why;
        auto f = normalize_first_integral(*options.first_integral, F, &why);
        if (!f) {
            rep.diagnostics.push_back({DiagnosticCode::NotFirstIntegral, "Re(f) = U * F with U(0) != 0", why});
            failed = true;
        }
        return f;
    }
    const SparsePoly hol2 = holomorphic_part(F) * GaussianRational(2);
    if (F == real_part(hol2)) {
        rep.diagnostics.push_back(
            {DiagnosticCode::Note, "first integral", "F is pluriharmonic; f = 2*hol(F) is used as first integral"});
        return hol2;
    }
    return std::nullopt;
}

void store_psi(NormalFormReport& rep, const IsochoreResult& r) {
    const PsiSeries psi = sign_canonicalize(r.psi);
    std::vector<GaussianRational> coeffs;
    for (int j = 1; j <= psi.order; ++j) coeffs.push_back(psi.coefficient(j));
    rep.psi = coeffs;
    rep.jet = r.volume.jet;
    rep.volume_certified = r.volume.unit_jacobian;
    rep.normal_form_poly = psi.evaluate(r.model, r.volume.jet.order());
    rep.diagnostics.push_back({DiagnosticCode::Note, "sign convention",
                               "psi is the representative of {psi(t), -psi(-t)} whose first even coefficient has "
                               "positive real part (positive imaginary part on a tie)"});
}

}  // namespace

NormalFormReport theorem2_pipeline(const SparsePoly& F, const PipelineOptions& options) {
    Prelude p = common_checks(F, options, "vey");
    NormalFormReport& rep = p.rep;
    if (p.stopped) return rep;
    auto stop = [&](DiagnosticCode code, std::string hyp, std::string detail) {
        rep.diagnostics.push_back({code, std::move(hyp), std::move(detail)});
        return rep;
    };
    const auto& ctx = F.context();
    const int n = ctx->slots();
    const SparsePoly q2 = homogeneous_part(holomorphic_part(F) * GaussianRational(2), 2);
    if (!hessian_form(q2).nondegenerate)
        return stop(DiagnosticCode::DegenerateHessian, "the quadratic part Re(q) has non-degenerate q",
                    "q = " + render(q2));
    const SparsePoly rest = F - real_part(q2);
    if (!rest.is_zero() && rest.order() <= 2)
        return stop(DiagnosticCode::OrderTooLow, "H has vanishing 2-jet", "H has order " + std::to_string(rest.order()));
    const SparsePoly h = sum_of_squares(ctx);
    if (!(q2 == h))
        rep.diagnostics.push_back({DiagnosticCode::Note, "quadratic part",
                                   "q = " + render(q2) + " is brought to " + render(h) + " by a determinant-one map"});
    rep.ws = WeightedStructure{WeightVector::uniform(n), 2};
    rep.principal = h;
    rep.s = 0;
    rep.normal_form = "Re(psi(" + render(h) + "))";

    bool failed = false;
    const auto f = first_integral(F, options, rep, failed);
    if (failed) return rep;
    if (!f) return rep;
    if (!(homogeneous_part(*f, 2) == q2) || !homogeneous_part(*f, 1).is_zero())
        return stop(DiagnosticCode::NotFirstIntegral, "f = q + O(|z|^3)", "quadratic part of f differs from q");
    try {
        const IsochoreResult r = vey_reduce(*f, options.order.value_or(default_isochore_order(n)));
        store_psi(rep, r);
        rep.diagnostics.push_back({DiagnosticCode::Note, "Hessian normalization",
                                   "relative to the Hessian form 2*(" + render(h) +
                                       ") the series is psi1(t) = psi(t/2)"});
    } catch (const FieldObstruction& e) {
        return stop(DiagnosticCode::FieldObstruction, "volume-preserving normalization over Q(i)",
                    std::string(e.what()) + "; needs " + e.extension());
    }
    return rep;
}

NormalFormReport product_pipeline(const SparsePoly& F, const PipelineOptions& options) {
    Prelude p = common_checks(F, options, "szawlowski");
    NormalFormReport& rep = p.rep;
    if (p.stopped) return rep;
    auto stop = [&](DiagnosticCode code, std::string hyp, std::string detail) {
        rep.diagnostics.push_back({code, std::move(hyp), std::move(detail)});
        return rep;
    };
    const auto& ctx = F.context();
    const int n = ctx->slots();
    const SparsePoly h = coordinate_product(ctx, n);
    for (int l = 0; l < n; ++l)
        if (!homogeneous_part(F, l).is_zero())
            return stop(DiagnosticCode::NotProductLeading, "F = Re(z1...zn) + H with vanishing n-jet of H",
                        "F has terms of degree " + std::to_string(l));
    if (!(homogeneous_part(F, n) == real_part(h)))
        return stop(DiagnosticCode::NotProductLeading, "F = Re(z1...zn) + H with vanishing n-jet of H",
                    "degree-" + std::to_string(n) + " part is not Re(" + render(h) + ")");
    if (n >= 3) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = k + 1; l <= n; ++l) {
                        const SingComponent sc = sing_component_check(F, i, j, k, l);
                        if (!sc.in_sing_m || !sc.in_sing_l)
                            return stop(DiagnosticCode::SingularSet,
                                        "each {z_i = z_j = w_k = w_l = 0} lies in Sing(M_C) and Sing(L_C)",
                                        "fails for (i,j,k,l) = (" + std::to_string(i) + "," + std::to_string(j) +
                                            "," + std::to_string(k) + "," + std::to_string(l) + ")");
                    }
    }
    rep.ws = WeightedStructure{WeightVector::uniform(n), n};
    rep.principal = h;
    rep.s = 0;
    rep.normal_form = "Re(psi(" + render(h) + "))";

    bool failed = false;
    auto f = first_integral(F, options, rep, failed);
    if (failed || !f) return rep;
    if (!product_leading_check(*f, n))
        return stop(DiagnosticCode::NotProductLeading, "f = z1...zn + O(|z|^(n+1)) after U(0) = 1",
                    "leading part of f is not " + render(h));
    try {
        store_psi(rep, szawlowski_reduce(*f, n, options.order.value_or(default_isochore_order(n))));
    } catch (const ModelError& e) {
        return stop(DiagnosticCode::NotProductLeading, "f is right equivalent to z1...zn", e.what());
    }
    return rep;
}

NormalFormReport isochore_pipeline(const SparsePoly& F, const PipelineOptions& options) {
    const auto& ctx = F.context();
    if (ctx->is_germ() && ctx->slots() >= 2 && !F.is_zero()) {
        const int n = ctx->slots();
        if (F.order() == n && homogeneous_part(F, n) == real_part(coordinate_product(ctx, n)))
            return product_pipeline(F, options);
    }
    return theorem2_pipeline(F, options);
}

}  // namespace levinorm
