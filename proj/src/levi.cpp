#include "levinorm/levi.hpp"

namespace levinorm {

namespace {

void require_germ(const SparsePoly& f) {
    if (!f.context()->is_germ()) throw ContextError("expected a polynomial over a germ context");
}

Substitution conj_to_w(const ContextPtr& ctx) {
    Substitution s(ctx, ctx);
    for (int i = 0; i < ctx->slots(); ++i) s.set(ctx->conj(i), SparsePoly::variable(ctx, ctx->complexified(i)));
    return s;
}

Substitution w_to_conj(const ContextPtr& ctx) {
    Substitution s(ctx, ctx);
    for (int i = 0; i < ctx->slots(); ++i) s.set(ctx->complexified(i), SparsePoly::variable(ctx, ctx->conj(i)));
    return s;
}

PolyForm partial_d(const SparsePoly& f, VarRole role) {
    return exterior_derivative(PolyForm::function(f), variables_with_role(*f.context(), role));
}

}  // namespace

SparsePoly complexify(const SparsePoly& f) {
    require_germ(f);
    return substitute(f, conj_to_w(f.context()));
}

SparsePoly decomplexify(const SparsePoly& f_c) {
    require_germ(f_c);
    return substitute(f_c, w_to_conj(f_c.context()));
}

bool reality_check(const SparsePoly& f) {
    require_germ(f);
    return conjugate(f) == f;
}

LeviData levi_data(const SparsePoly& f) {
    if (!reality_check(f)) throw NotRealError("Levi data requires a real germ");
    const auto& ctx = f.context();
    const GaussianRational i = GaussianRational::imaginary_unit();
    const PolyForm eta = i * (partial_d(f, VarRole::Holomorphic) - partial_d(f, VarRole::Conjugate));
    const SparsePoly fc = complexify(f);
    LeviData out{eta, pullback(eta, conj_to_w(ctx)), partial_d(fc, VarRole::Holomorphic),
                 partial_d(fc, VarRole::Complexified)};
    return out;
}

PolyForm integrability_form(const SparsePoly& f) {
    const auto& ctx = f.context();
    const auto zs = variables_with_role(*ctx, VarRole::Holomorphic);
    const auto cs = variables_with_role(*ctx, VarRole::Conjugate);
    const PolyForm df = exterior_derivative(PolyForm::function(f), zs);
    const PolyForm dbf = exterior_derivative(PolyForm::function(f), cs);
    const PolyForm ddbf = exterior_derivative(dbf, zs);
    return wedge(wedge(df, dbf), ddbf);
}

const char* to_string(LeviVerdictKind kind) {
    switch (kind) {
        case LeviVerdictKind::LeviFlat: return "LeviFlat";
        case LeviVerdictKind::NotLeviFlat: return "NotLeviFlat";
        case LeviVerdictKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

LeviVerdict leviflat_test(const SparsePoly& f, const LeviOptions& options) {
    require_germ(f);
    if (f.is_zero()) throw std::invalid_argument("the zero germ defines no hypersurface");
    if (!reality_check(f)) throw NotRealError("Levi-flatness test requires a real germ");
    if (!f.constant_term().is_zero()) throw std::invalid_argument("germ must vanish at the origin");

    LeviVerdict verdict;
    verdict.modulo_degree = options.jet_order;
    const SparsePoly fc = complexify(f);
    const PolyForm omega = integrability_form(f);
    for (const auto& [index, coeff] : omega.components()) {
        const DivisionResult div = divide(complexify(coeff), fc);
        if (div.remainder.is_zero()) continue;
        verdict.witness = div.remainder;
        if (options.assert_irreducible) {
            verdict.kind = LeviVerdictKind::NotLeviFlat;
            verdict.reason = "integrability form does not vanish on M_C";
        } else {
            verdict.kind = LeviVerdictKind::Inconclusive;
            verdict.reason = "non-zero remainder modulo F_C; irreducibility of F_C not asserted";
        }
        return verdict;
    }
    verdict.kind = LeviVerdictKind::LeviFlat;
    verdict.reason = "every coefficient of the integrability form is divisible by F_C";
    return verdict;
}

SingComponent sing_component_check(const SparsePoly& f, int i, int j, int k, int l) {
    require_germ(f);
    const auto& ctx = f.context();
    const int n = ctx->slots();
    if (n < 3) throw std::invalid_argument("component z_i=z_j=w_k=w_l=0 is the origin for n < 3");
    auto in_range = [n](int a) { return a >= 1 && a <= n; };
    if (!in_range(i) || !in_range(j) || !in_range(k) || !in_range(l) || i >= j || k >= l)
        throw std::out_of_range("component indices must satisfy 1 <= i < j <= n and 1 <= k < l <= n");

    const std::vector<std::size_t> zero{ctx->holo(i - 1), ctx->holo(j - 1), ctx->complexified(k - 1),
                                        ctx->complexified(l - 1)};
    const SparsePoly fc = complexify(f);
    auto vanishes = [&](const SparsePoly& p) { return restrict_zero(p, zero).is_zero(); };

    SingComponent out;
    out.in_sing_m = vanishes(fc);
    for (int s = 0; s < n && out.in_sing_m; ++s)
        out.in_sing_m = vanishes(diff(fc, ctx->holo(s))) && vanishes(diff(fc, ctx->complexified(s)));

    const LeviData data = levi_data(f);
    bool forms_vanish = true;
    for (const PolyForm* form : {&data.alpha, &data.beta})
        for (const auto& [index, coeff] : form->components()) forms_vanish = forms_vanish && vanishes(coeff);
    out.in_sing_l = out.in_sing_m && forms_vanish;
    return out;
}

}  // namespace levinorm
