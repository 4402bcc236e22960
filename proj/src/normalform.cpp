#include "levinorm/normalform.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "levinorm/frontend.hpp"

namespace levinorm {

namespace {

std::size_t slot_of(const Context& ctx, std::size_t var) { return static_cast<std::size_t>(ctx.var(var).slot); }

SparsePoly linear_component(const SparsePoly& p) { return homogeneous_part(p, 1); }

SparsePoly apply_matrix_row(const Row& row, const std::vector<SparsePoly>& v, const ContextPtr& ctx) {
    SparsePoly r(ctx);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!row[j].is_zero()) r += v[j] * row[j];
    return r;
}

Matrix invert(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix aug(n, Row(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    const Echelon e = row_reduce(std::move(aug), 2 * n);
    if (e.pivots.size() < n || e.pivots[n - 1] >= n) throw std::invalid_argument("linear part is singular");
    Matrix inv(n, Row(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
    return inv;
}

}  // namespace

// ------------------------------------------------------------------ CoordJet

CoordJet::CoordJet(ContextPtr ctx, WeightVector weights, int order, std::vector<SparsePoly> components)
    : ctx_(std::move(ctx)), weights_(std::move(weights)), order_(order), components_(std::move(components)) {
    const auto vars = coordinate_variables(*ctx_);
    if (components_.size() != vars.size()) throw std::invalid_argument("jet needs one component per coordinate");
    if (weights_.size() != static_cast<std::size_t>(ctx_->slots())) throw std::invalid_argument("weight count mismatch");
    if (order_ < 1) throw std::invalid_argument("jet order must be positive");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto& c = components_[i];
        if (!same_context(c.context(), ctx_)) throw ContextError("jet component context mismatch");
        if (!is_holomorphic(c)) throw std::invalid_argument("jet components must be holomorphic");
        c = truncate_weighted(c, weights_, order_);
        if (!c.constant_term().is_zero()) throw std::invalid_argument("jet component has a constant term");
        const int wi = weights_[slot_of(*ctx_, vars[i])];
        if (!c.is_zero() && weighted_order(c, weights_) < wi)
            throw std::invalid_argument("jet component lowers the weighted filtration");
    }
    det_ = determinant(linear_part());
    if (det_.is_zero()) throw std::invalid_argument("jet linear part is not invertible");
}

CoordJet CoordJet::identity(ContextPtr ctx, WeightVector weights, int order) {
    std::vector<SparsePoly> comps;
    for (std::size_t v : coordinate_variables(*ctx)) comps.push_back(SparsePoly::variable(ctx, v));
    return CoordJet(ctx, std::move(weights), order, std::move(comps));
}

Matrix CoordJet::linear_part() const {
    const auto vars = coordinate_variables(*ctx_);
    Matrix a(vars.size(), Row(vars.size()));
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = 0; j < vars.size(); ++j) {
            Monomial m(ctx_->size());
            m.exps[vars[j]] = 1;
            a[i][j] = components_[i].coefficient(m);
        }
    return a;
}

bool CoordJet::is_identity() const {
    const auto vars = coordinate_variables(*ctx_);
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (!(components_[i] == SparsePoly::variable(ctx_, vars[i]))) return false;
    return true;
}

Substitution CoordJet::as_substitution() const {
    Substitution s = Substitution::identity(ctx_);
    const auto vars = coordinate_variables(*ctx_);
    for (std::size_t i = 0; i < vars.size(); ++i) s.set(vars[i], components_[i]);
    return s;
}

SparsePoly CoordJet::apply(const SparsePoly& f) const {
    return substitute_truncated_weighted(f, as_substitution(), weights_, order_);
}

CoordJet CoordJet::compose(const CoordJet& inner) const {
    if (!same_context(ctx_, inner.ctx_) || !(weights_ == inner.weights_))
        throw std::invalid_argument("jets live over different coordinates");
    const int order = std::min(order_, inner.order_);
    const Substitution s = inner.as_substitution();
    std::vector<SparsePoly> comps;
    for (const auto& c : components_) comps.push_back(substitute_truncated_weighted(c, s, weights_, order));
    return CoordJet(ctx_, weights_, order, std::move(comps));
}

CoordJet CoordJet::inverse() const {
    const auto vars = coordinate_variables(*ctx_);
    const Matrix ainv = invert(linear_part());
    std::vector<SparsePoly> z, nonlinear;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        z.push_back(SparsePoly::variable(ctx_, vars[i]));
        nonlinear.push_back(components_[i] - linear_component(components_[i]));
    }
    // chi = A^{-1} (z - N(chi)); each pass fixes one more total degree.
    std::vector<SparsePoly> chi;
    for (std::size_t i = 0; i < vars.size(); ++i) chi.push_back(apply_matrix_row(ainv[i], z, ctx_));
    for (int pass = 0; pass <= order_ + 1; ++pass) {
        Substitution s = Substitution::identity(ctx_);
        for (std::size_t i = 0; i < vars.size(); ++i) s.set(vars[i], chi[i]);
        std::vector<SparsePoly> rhs;
        for (std::size_t i = 0; i < vars.size(); ++i)
            rhs.push_back(z[i] - substitute_truncated_weighted(nonlinear[i], s, weights_, order_));
        std::vector<SparsePoly> next;
        for (std::size_t i = 0; i < vars.size(); ++i)
            next.push_back(truncate_weighted(apply_matrix_row(ainv[i], rhs, ctx_), weights_, order_));
        if (next == chi) break;
        chi = std::move(next);
    }
    return CoordJet(ctx_, weights_, order_, std::move(chi));
}

// ------------------------------------------------------------------- Arnold

int determinacy_order(int mu, const WeightVector& w) { return (mu + 1) * w.max(); }

ArnoldResult arnold_reduce(const SparsePoly& f, const SparsePoly& q, const WeightedStructure& ws,
                           std::optional<int> order) {
    require_same_context(f, q);
    if (!is_holomorphic(f)) throw std::invalid_argument("f must be holomorphic");
    if (q.is_zero() || !is_quasihomogeneous(q, ws)) throw std::invalid_argument("principal part is not quasihomogeneous");
    const WeightVector& w = ws.weights;
    const int d = ws.degree;
    const SparsePoly tail = f - q;
    if (!tail.is_zero() && weighted_order(tail, w) <= d)
        throw std::invalid_argument("f is not semiquasihomogeneous with the given principal part");
    const MilnorData md = milnor_basis(q, ws);
    if (!md.mu) throw std::invalid_argument("principal part has a non-isolated singularity");

    const auto& ctx = f.context();
    const auto vars = coordinate_variables(*ctx);
    const int bound = order.value_or(determinacy_order(*md.mu, w));
    const std::vector<Monomial> e = basis_above(md, w, *ctx, d);

    std::vector<SparsePoly> partials;
    for (std::size_t v : vars) partials.push_back(diff(q, v));

    SparsePoly g = truncate_weighted(f, w, bound);
    CoordJet psi = CoordJet::identity(ctx, w, bound);
    std::vector<GaussianRational> c(e.size());

    for (int l = d + 1; l <= bound; ++l) {
        const SparsePoly r = graded_part(g, w, l);
        if (r.is_zero()) continue;
        // Unknowns: coefficients of h_i (monomials of weight l - d + w_i), then c_j.
        std::vector<std::pair<std::size_t, Monomial>> hcols;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const int shift = l - d + w[slot_of(*ctx, vars[i])];
            for_each_monomial(*ctx, w, shift, [&](const Monomial& m) { hcols.emplace_back(i, m); });
        }
        std::vector<std::size_t> ecols;
        for (std::size_t j = 0; j < e.size(); ++j)
            if (w.degree(e[j], *ctx) == l) ecols.push_back(j);

        std::map<Monomial, std::size_t, MonomialLess> rows;
        auto row_of = [&](const Monomial& m) { return rows.emplace(m, rows.size()).first->second; };
        std::vector<std::vector<std::pair<std::size_t, GaussianRational>>> columns;
        for (const auto& [i, m] : hcols) {
            std::vector<std::pair<std::size_t, GaussianRational>> col;
            for (const auto& [pm, pc] : partials[i].terms()) col.emplace_back(row_of(pm * m), pc);
            columns.push_back(std::move(col));
        }
        for (std::size_t j : ecols) columns.push_back({{row_of(e[j]), GaussianRational(1)}});
        for (const auto& [m, cf] : r.terms()) row_of(m);

        Matrix a(rows.size(), Row(columns.size()));
        for (std::size_t k = 0; k < columns.size(); ++k)
            for (const auto& [ri, v] : columns[k]) a[ri][k] += v;
        Row b(rows.size());
        for (const auto& [m, cf] : r.terms()) b[rows.at(m)] = cf;
        const auto x = solve_linear(a, b, columns.size());
        if (!x) throw std::logic_error("graded system at weighted degree " + std::to_string(l) + " is inconsistent");

        for (std::size_t k = 0; k < ecols.size(); ++k) c[ecols[k]] = (*x)[hcols.size() + k];

        std::vector<SparsePoly> sigma;
        for (std::size_t v : vars) sigma.push_back(SparsePoly::variable(ctx, v));
        bool moved = false;
        for (std::size_t k = 0; k < hcols.size(); ++k) {
            if ((*x)[k].is_zero()) continue;
            sigma[hcols[k].first] -= SparsePoly::monomial(ctx, hcols[k].second, (*x)[k]);
            moved = true;
        }
        if (!moved) continue;
        const CoordJet step(ctx, w, bound, std::move(sigma));
        g = step.apply(g);
        psi = psi.compose(step);
    }

    SparsePoly nf = q;
    for (std::size_t j = 0; j < e.size(); ++j)
        if (!c[j].is_zero()) nf += SparsePoly::monomial(ctx, e[j], c[j]);
    if (!(truncate_weighted(g, w, bound) == truncate_weighted(nf, w, bound)))
        throw std::logic_error("reduction did not reach the normal form");
    return ArnoldResult{e, c, nf, psi.inverse(), bound};
}

// ----------------------------------------------------------------- checks

HessianForm hessian_form(const SparsePoly& f) {
    const auto& ctx = f.context();
    const auto vars = coordinate_variables(*ctx);
    HessianForm out{SparsePoly(ctx), Matrix(vars.size(), Row(vars.size())), false};
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = 0; j < vars.size(); ++j) {
            const GaussianRational hij = diff(diff(f, vars[i]), vars[j]).constant_term();
            out.matrix[i][j] = hij;
            if (!hij.is_zero())
                out.h += SparsePoly::variable(ctx, vars[i]) * SparsePoly::variable(ctx, vars[j]) * hij;
        }
    out.nondegenerate = !vars.empty() && !determinant(out.matrix).is_zero();
    return out;
}

bool product_leading_check(const SparsePoly& f, int n) {
    const auto& ctx = f.context();
    const auto vars = coordinate_variables(*ctx);
    if (n < 1 || static_cast<std::size_t>(n) > vars.size()) return false;
    for (int l = 0; l < n; ++l)
        if (!homogeneous_part(f, l).is_zero()) return false;
    Monomial m(ctx->size());
    for (int i = 0; i < n; ++i) m.exps[vars[static_cast<std::size_t>(i)]] = 1;
    return homogeneous_part(f, n) == SparsePoly::monomial(ctx, m);
}

// --------------------------------------------------------------- pipeline

std::string to_string(DiagnosticCode code) {
    switch (code) {
    case DiagnosticCode::NotReal: return "NotReal";
    case DiagnosticCode::NotLeviFlat: return "NotLeviFlat";
    case DiagnosticCode::NotQuasihomogeneous: return "NotQuasihomogeneous";
    case DiagnosticCode::NotIsolated: return "NotIsolated";
    case DiagnosticCode::OrderTooLow: return "OrderTooLow";
    case DiagnosticCode::NotFirstIntegral: return "NotFirstIntegral";
    case DiagnosticCode::DegenerateHessian: return "DegenerateHessian";
    case DiagnosticCode::FieldObstruction: return "FieldObstruction";
    case DiagnosticCode::NotProductLeading: return "NotProductLeading";
    case DiagnosticCode::SingularSet: return "SingularSet";
    case DiagnosticCode::WrongDimension: return "WrongDimension";
    case DiagnosticCode::Note: return "Note";
    }
    return "Unknown";
}

const Diagnostic* NormalFormReport::failure() const {
    for (const auto& d : diagnostics)
        if (d.is_failure()) return &d;
    return nullptr;
}

std::string normal_form_template(const SparsePoly& q, const std::vector<Monomial>& e) {
    std::string s = "Re(" + render(q);
    for (std::size_t j = 0; j < e.size(); ++j)
        s += " + c" + std::to_string(j + 1) + "*" + render_monomial(e[j], *q.context());
    return s + ")";
}

SparsePoly holomorphic_part(const SparsePoly& F) {
    const auto& ctx = F.context();
    const auto vars = coordinate_variables(*ctx);
    SparsePoly out(ctx);
    for (const auto& [m, c] : F.terms()) {
        bool pure = m.degree() > 0;
        for (std::size_t v = 0; v < m.exps.size() && pure; ++v)
            if (m.exps[v] && std::find(vars.begin(), vars.end(), v) == vars.end()) pure = false;
        if (pure) out.add_term(m, c);
    }
    return out;
}

SparsePoly real_part(const SparsePoly& f) { return (f + conjugate(f)) * GaussianRational(1, 2); }

std::optional<SparsePoly> normalize_first_integral(const SparsePoly& f, const SparsePoly& F, std::string* why) {
    auto fail = [&](const std::string& msg) -> std::optional<SparsePoly> {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (!is_holomorphic(f)) return fail("f is not holomorphic");
    if (!f.constant_term().is_zero()) return fail("f does not vanish at the origin");
    const DivisionResult qr = divide(real_part(f), F);
    if (!qr.remainder.is_zero()) return fail("Re(f) is not a polynomial multiple of F");
    const GaussianRational u0 = qr.quotient.constant_term();
    if (u0.is_zero()) return fail("the cofactor U vanishes at the origin");
    return f * (GaussianRational(1) / u0);
}

NormalFormReport theorem1_pipeline(const SparsePoly& F, const PipelineOptions& options) {
    NormalFormReport rep;
    rep.route = "quasihomogeneous";
    auto stop = [&](DiagnosticCode code, std::string hyp, std::string detail) {
        rep.diagnostics.push_back({code, std::move(hyp), std::move(detail)});
        return rep;
    };
    const auto& ctx = F.context();
    if (!ctx->is_germ()) throw std::invalid_argument("expected a germ in z and zb");
    if (ctx->slots() != 2)
        return stop(DiagnosticCode::WrongDimension, "germ in two complex variables",
                    "n = " + std::to_string(ctx->slots()));
    if (!reality_check(F)) return stop(DiagnosticCode::NotReal, "F is real-valued", "F differs from its conjugate");
    if (F.is_zero() || !F.constant_term().is_zero())
        return stop(DiagnosticCode::NotReal, "F vanishes at the origin and is not identically zero",
                    "F(0) = " + F.constant_term().to_string());

    LeviOptions lo;
    lo.assert_irreducible = options.assert_irreducible;
    rep.levi = leviflat_test(F, lo);
    if (rep.levi->kind == LeviVerdictKind::NotLeviFlat)
        return stop(DiagnosticCode::NotLeviFlat, "M = {F = 0} is Levi-flat", rep.levi->reason);
    if (rep.levi->kind == LeviVerdictKind::Inconclusive)
        rep.diagnostics.push_back({DiagnosticCode::Note, "M = {F = 0} is Levi-flat", rep.levi->reason});

    const SparsePoly hol2 = holomorphic_part(F) * GaussianRational(2);
    if (hol2.is_zero())
        return stop(DiagnosticCode::NotQuasihomogeneous, "F = Re(Q) + H with Q quasihomogeneous",
                    "F has no purely holomorphic terms");
    const auto pp = options.weights ? principal_part(hol2, *options.weights) : principal_part(hol2);
    if (!pp) {
        const SparsePoly lowest = homogeneous_part(hol2, hol2.order());
        std::optional<WeightedStructure> ws;
        if (options.weights)
            ws = WeightedStructure{*options.weights, weighted_order(hol2, *options.weights)};
        else
            ws = detect_weights(lowest);
        if (ws) {
            const SparsePoly q = graded_part(hol2, ws->weights, ws->degree);
            if (is_quasihomogeneous(q, *ws) && !milnor_basis(q, *ws).mu)
                return stop(DiagnosticCode::NotIsolated, "Q has an isolated singularity at the origin",
                            "Q = " + render(q) + " has infinite Milnor number");
        }
        return stop(DiagnosticCode::NotQuasihomogeneous, "F = Re(Q) + H with Q quasihomogeneous",
                    "no weighting makes the holomorphic part semiquasihomogeneous");
    }
    for (const auto& msg : pp->diagnostics) rep.diagnostics.push_back({DiagnosticCode::Note, "weights", msg});
    rep.ws = pp->ws;
    rep.principal = pp->q;
    const WeightVector& w = pp->ws.weights;
    const int d = pp->ws.degree;

    const SparsePoly rest = F - real_part(pp->q);
    if (!rest.is_zero() && weighted_order(rest, w) <= d)
        return stop(DiagnosticCode::OrderTooLow, "H has weighted order strictly greater than d",
                    "weighted order " + std::to_string(weighted_order(rest, w)) + " <= d = " + std::to_string(d));

    rep.milnor = milnor_basis(pp->q, pp->ws);
    rep.e = basis_above(*rep.milnor, w, *ctx, d);
    rep.s = static_cast<int>(rep.e.size());
    rep.normal_form = normal_form_template(pp->q, rep.e);

    std::optional<SparsePoly> f;
    if (options.first_integral) {
        std::string why;
        f = normalize_first_integral(*options.first_integral, F, &why);
        if (!f) return stop(DiagnosticCode::NotFirstIntegral, "Re(f) = U * F with U(0) != 0", why);
        const SparsePoly tail = *f - pp->q;
        if (!tail.is_zero() && weighted_order(tail, w) <= d)
            return stop(DiagnosticCode::NotFirstIntegral, "f = Q + terms of weighted degree above d",
                        "principal part of f differs from Q");
    } else if (F == real_part(hol2)) {
        f = hol2;
        rep.diagnostics.push_back(
            {DiagnosticCode::Note, "first integral", "F is pluriharmonic; f = 2*hol(F) is used as first integral"});
    }
    if (f) {
        const ArnoldResult ar = arnold_reduce(*f, pp->q, pp->ws, options.order);
        rep.c = ar.c;
        rep.normal_form_poly = ar.normal_form;
        rep.jet = ar.jet;
    }
    return rep;
}

}  // namespace levinorm
