#include "levinorm/report.hpp"

#include <sstream>
#include <stdexcept>

#include "levinorm/blowup.hpp"
#include "levinorm/isochore.hpp"
#include "levinorm/levi.hpp"
#include "levinorm/normalform.hpp"
#include "levinorm/quasi.hpp"

namespace levinorm {

namespace {

using nlohmann::ordered_json;

ordered_json skeleton(const std::string& command) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["verdict"] = nullptr;
    j["weights"] = nullptr;
    j["degree"] = nullptr;
    j["milnor"] = nullptr;
    j["basis"] = ordered_json::array();
    j["s"] = nullptr;
    j["normal_form"] = nullptr;
    j["psi"] = nullptr;
    j["charts"] = ordered_json::array();
    j["holonomy"] = nullptr;
    j["diagnostics"] = ordered_json::array();
    return j;
}

ordered_json diagnostic_json(const Diagnostic& d) {
    ordered_json j;
    j["code"] = to_string(d.code);
    j["hypothesis"] = d.hypothesis;
    j["detail"] = d.detail;
    j["failure"] = d.is_failure();
    return j;
}

void add_diagnostic(Report& r, const Diagnostic& d) {
    r.data["diagnostics"].push_back(diagnostic_json(d));
    if (d.is_failure() && !r.failed) {
        r.failed = true;
        r.data["verdict"] = to_string(d.code);
    }
}

ordered_json strings(const std::vector<GaussianRational>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& c : v) a.push_back(c.to_string());
    return a;
}

ordered_json monomials(const std::vector<Monomial>& v, const Context& ctx) {
    ordered_json a = ordered_json::array();
    for (const auto& m : v) a.push_back(render_monomial(m, ctx));
    return a;
}

ordered_json levi_json(const LeviVerdict& v) {
    ordered_json j;
    j["verdict"] = to_string(v.kind);
    j["reason"] = v.reason;
    j["witness"] = v.witness ? ordered_json(render(*v.witness)) : ordered_json(nullptr);
    return j;
}

void set_quasi(ordered_json& j, const WeightedStructure& ws, const SparsePoly& q, const MilnorData& md) {
    j["weights"] = ws.weights.weights();
    j["degree"] = ws.degree;
    j["principal_part"] = render(q);
    j["milnor"] = md.mu ? ordered_json(*md.mu) : ordered_json("infinite");
    j["basis"] = monomials(md.basis, *q.context());
    j["s"] = md.above_d.size();
    j["e"] = monomials(md.above_d, *q.context());
}

PipelineOptions pipeline_options(const GermFile& germ, const ReportOptions& options) {
    PipelineOptions p;
    p.weights = options.weights ? options.weights : germ.weights;
    p.first_integral = germ.first_integral;
    p.assert_irreducible = options.assert_irreducible;
    p.order = options.order;
    return p;
}

Report from_pipeline(const std::string& command, const GermFile& germ, const NormalFormReport& nf) {
    Report r{skeleton(command)};
    r.data["germ"] = render(germ.germ);
    r.data["verdict"] = "ok";
    if (!nf.route.empty()) r.data["route"] = nf.route;
    if (nf.levi) r.data["levi"] = levi_json(*nf.levi);
    if (nf.ws) {
        r.data["weights"] = nf.ws->weights.weights();
        r.data["degree"] = nf.ws->degree;
    }
    if (nf.principal) r.data["principal_part"] = render(*nf.principal);
    if (nf.milnor && nf.principal) {
        r.data["milnor"] = nf.milnor->mu ? ordered_json(*nf.milnor->mu) : ordered_json("infinite");
        r.data["basis"] = monomials(nf.milnor->basis, *nf.principal->context());
        r.data["s"] = nf.s;
        r.data["e"] = monomials(nf.e, *nf.principal->context());
    }
    if (!nf.normal_form.empty()) r.data["normal_form"] = nf.normal_form;
    if (nf.normal_form_poly) r.data["normal_form_exact"] = "Re(" + render(*nf.normal_form_poly) + ")";
    if (!nf.c.empty()) r.data["c"] = strings(nf.c);
    if (nf.jet) {
        ordered_json jet;
        jet["order"] = nf.jet->order();
        ordered_json comps = ordered_json::array();
        for (const auto& c : nf.jet->components()) comps.push_back(render(c));
        jet["components"] = comps;
        r.data["jet"] = jet;
    }
    if (nf.psi) r.data["psi"] = strings(*nf.psi);
    if (nf.volume_certified) r.data["volume_certified"] = *nf.volume_certified;
    for (const auto& d : nf.diagnostics) add_diagnostic(r, d);
    return r;
}

std::vector<std::string> names(const Context& ctx) {
    std::vector<std::string> out;
    for (const auto& v : ctx.vars()) out.push_back(v.name);
    return out;
}

// z_i -> z_i and w_i -> w_i by name; F_C has no conjugate variables.
SparsePoly to_free(const SparsePoly& fc, const ContextPtr& target) {
    const auto& ctx = fc.context();
    Substitution s(ctx, target);
    for (int i = 0; i < ctx->slots(); ++i) {
        s.set(ctx->holo(i), SparsePoly::variable(target, ctx->var(ctx->holo(i)).name));
        s.set(ctx->conj(i), SparsePoly(target));
        s.set(ctx->complexified(i), SparsePoly::variable(target, ctx->var(ctx->complexified(i)).name));
    }
    return substitute(fc, s);
}

PolyForm holomorphic_differential(const SparsePoly& p, int n) {
    PolyForm alpha(p.context(), 1);
    for (int i = 0; i < n; ++i) {
        const auto c = diff(p, static_cast<std::size_t>(i));
        if (!c.is_zero()) alpha.add({static_cast<std::size_t>(i)}, c);
    }
    return alpha;
}

struct ChartStep {
    PulledForm form;
    StrictTransform strict;
};

ordered_json chart_json(const BlowupChart& chart, const ChartStep& step, const std::vector<std::size_t>& exc) {
    ordered_json j;
    j["name"] = chart.name;
    j["source"] = names(*chart.source);
    j["target"] = names(*chart.target);
    ordered_json map = ordered_json::array();
    const auto sub = chart.substitution();
    for (std::size_t i = 0; i < chart.source->size(); ++i)
        map.push_back(chart.source->var(i).name + " = " + render(sub.image(i)));
    j["map"] = map;
    j["exceptional"] = chart.target->var(chart.exceptional).name;
    j["weights"] = chart.weights;
    j["group_order"] = chart.group_order;
    j["action"] = chart.action;
    ordered_json pb;
    pb["exponent"] = step.form.exponent;
    pb["form"] = render_form(step.form.form);
    j["pullback"] = pb;
    ordered_json st;
    st["exponent"] = step.strict.exponent;
    st["poly"] = render(step.strict.poly);
    j["strict_transform"] = st;
    const auto loc = invariant_locus(step.form.form, exc, &step.strict.poly);
    ordered_json il;
    il["divisor_invariant"] = loc.divisor_invariant;
    ordered_json comps = ordered_json::array();
    for (const auto& c : loc.components) comps.push_back(render_component(c));
    il["components"] = comps;
    j["invariant_locus"] = il;
    return j;
}

ChartStep run_chart(const PolyForm& alpha, const SparsePoly& p, const BlowupChart& chart) {
    return {pullback_1form(alpha, chart), strict_transform(p, chart)};
}

}  // namespace

std::string render_form(const PolyForm& form) {
    if (form.is_zero()) return "0";
    std::string out;
    for (const auto& [idx, c] : form.components()) {
        std::string d;
        for (std::size_t v : idx) d += (d.empty() ? "d" : "^d") + form.context()->var(v).name;
        std::string coef;
        if (c == SparsePoly::constant(form.context(), 1))
            coef = "";
        else if (c.size() == 1)
            coef = render(c) + "*";
        else
            coef = "(" + render(c) + ")*";
        if (!out.empty()) out += " + ";
        out += coef + d;
    }
    return out;
}

Report analyze_report(const GermFile& germ, const ReportOptions& options) {
    Report r{skeleton("analyze")};
    const SparsePoly& F = germ.germ;
    r.data["germ"] = render(F);
    r.data["n"] = germ.n;
    if (!reality_check(F)) {
        r.data["real"] = false;
        add_diagnostic(r, {DiagnosticCode::NotReal, "F is real-valued", "F differs from its conjugate"});
        return r;
    }
    r.data["real"] = true;
    LeviOptions lo;
    lo.assert_irreducible = options.assert_irreducible;
    const auto levi = leviflat_test(F, lo);
    r.data["verdict"] = to_string(levi.kind);
    r.data["levi"] = levi_json(levi);
    if (levi.kind == LeviVerdictKind::NotLeviFlat) {
        add_diagnostic(r, {DiagnosticCode::NotLeviFlat, "M = {F = 0} is Levi-flat", levi.reason});
        return r;
    }
    const SparsePoly hol = holomorphic_part(F) * GaussianRational(2);
    const auto weights = options.weights ? options.weights : germ.weights;
    std::optional<PrincipalPart> pp;
    if (!hol.is_zero()) pp = weights ? principal_part(hol, *weights) : principal_part(hol);
    if (!pp) {
        r.data["diagnostics"].push_back(diagnostic_json(
            {DiagnosticCode::Note, "F = Re(Q) + H with Q quasihomogeneous", "no quasihomogeneous principal part found"}));
        return r;
    }
    const auto md = milnor_basis(pp->q, pp->ws);
    set_quasi(r.data, pp->ws, pp->q, md);
    for (const auto& msg : pp->diagnostics)
        r.data["diagnostics"].push_back(diagnostic_json({DiagnosticCode::Note, "weights", msg}));
    if (germ.n == 2) {
        ordered_json s;
        auto fill = [&](const SaitoForm& f) {
            s["mu"] = f.mu.to_string();
            s["m"] = f.m;
            s["n"] = f.n;
            s["p"] = f.p;
            s["q"] = f.q;
            s["k"] = f.k;
            s["roots"] = strings(f.roots);
        };
        try {
            fill(saito_factorize(pp->q));
        } catch (const RootsNotRepresentable& e) {
            fill(e.partial());
            s["residual"] = strings(e.residual());
            s["residual_irreducible"] = e.residual_irreducible();
        } catch (const std::invalid_argument& e) {
            s["error"] = e.what();
        }
        r.data["saito"] = s;
    }
    return r;
}

Report normal_form_report(const GermFile& germ, const ReportOptions& options) {
    return from_pipeline("normal-form", germ, theorem1_pipeline(germ.germ, pipeline_options(germ, options)));
}

Report isochore_report(const GermFile& germ, const ReportOptions& options) {
    return from_pipeline("isochore", germ, isochore_pipeline(germ.germ, pipeline_options(germ, options)));
}

Report blowup_report(const GermFile& germ, const std::string& chart, const ReportOptions& options) {
    Report r{skeleton("blowup")};
    const SparsePoly& F = germ.germ;
    const int n = germ.n;
    r.data["germ"] = render(F);
    r.data["verdict"] = "ok";
    if (!reality_check(F)) {
        add_diagnostic(r, {DiagnosticCode::NotReal, "F is real-valued", "F differs from its conjugate"});
        return r;
    }
    const SparsePoly fc = complexify(F) * GaussianRational(2);
    {
        if (chart == "U3" || chart == "U4") {
            if (n != 2) {
                add_diagnostic(r, {DiagnosticCode::WrongDimension, "germ in two complex variables",
                                   "n = " + std::to_string(n)});
                return r;
            }
            std::optional<WeightVector> w = options.weights ? options.weights : germ.weights;
            if (!w) {
                const auto pp = principal_part(holomorphic_part(F) * GaussianRational(2));
                if (!pp) {
                    add_diagnostic(r, {DiagnosticCode::NotQuasihomogeneous, "F = Re(Q) + H with Q quasihomogeneous",
                                       "no quasihomogeneous principal part found"});
                    return r;
                }
                w = pp->ws.weights;
                r.data["degree"] = pp->ws.degree;
            }
            if (w->size() != 2) throw std::invalid_argument("blowup: two weights expected");
            r.data["weights"] = w->weights();
            const auto src = xyzw_context();
            Substitution to_src(fc.context(), src);
            to_src.set("z1", SparsePoly::variable(src, "x"));
            to_src.set("z2", SparsePoly::variable(src, "y"));
            to_src.set("w1", SparsePoly::variable(src, "z"));
            to_src.set("w2", SparsePoly::variable(src, "w"));
            const SparsePoly p = substitute(fc, to_src);
            const auto c = chart == "U3" ? chart_u3((*w)[0], (*w)[1]) : chart_u4((*w)[0], (*w)[1]);
            r.data["charts"].push_back(chart_json(c, run_chart(holomorphic_differential(p, 2), p, c), {c.exceptional}));
        } else if (chart == "pi1" || chart == "pil") {
            if (n < 3) {
                add_diagnostic(r, {DiagnosticCode::WrongDimension, "germ in at least three complex variables",
                                   "n = " + std::to_string(n)});
                return r;
            }
            const auto c1 = chart_pi1(n);
            const SparsePoly p = to_free(fc, c1.source);
            const auto s1 = run_chart(holomorphic_differential(p, n), p, c1);
            r.data["charts"].push_back(chart_json(c1, s1, {c1.exceptional}));
            if (chart == "pil") {
                const auto c2 = chart_pil(n);
                const auto s2 = run_chart(s1.form.form, s1.strict.poly, c2);
                r.data["charts"].push_back(
                    chart_json(c2, s2, {static_cast<std::size_t>(n), static_cast<std::size_t>(n) + 2}));
            }
        } else if (chart == "ordinary") {
            const auto c = chart_ordinary(zw_context(n));
            const SparsePoly p = to_free(fc, c.source);
            r.data["charts"].push_back(chart_json(c, run_chart(holomorphic_differential(p, n), p, c), {c.exceptional}));
        } else {
            throw std::invalid_argument("unknown chart " + chart + " (expected U3, U4, pi1, pil, ordinary)");
        }
    }
    return r;
}

namespace {

Report table_report(const std::string& label, ordered_json params, const std::vector<HolonomyEntry>& table) {
    Report r{skeleton("holonomy")};
    ordered_json h;
    h["case"] = label;
    h["parameters"] = std::move(params);
    ordered_json entries = ordered_json::array();
    for (const auto& e : table) {
        ordered_json x;
        x["label"] = e.label;
        x["rho"] = e.rotation.to_string();
        x["order"] = e.rotation.order();
        if (!e.note.empty()) x["note"] = e.note;
        entries.push_back(x);
    }
    h["entries"] = entries;
    const bool fi = first_integral_criterion(table);
    h["first_integral"] = fi;
    r.data["holonomy"] = h;
    r.data["verdict"] = fi ? "FirstIntegral" : "NoFirstIntegral";
    for (const auto& e : table)
        if (!e.note.empty())
            r.data["diagnostics"].push_back(diagnostic_json({DiagnosticCode::Note, "generator label", e.note}));
    return r;
}

}  // namespace

Report holonomy_report(int m, int n, int p, int q, int k) {
    ordered_json params;
    params["m"] = m;
    params["n"] = n;
    params["p"] = p;
    params["q"] = q;
    params["k"] = k;
    return table_report(std::to_string(m) + "," + std::to_string(n), params, holonomy_table(m, n, p, q, k));
}

Report product_holonomy_report(int n) {
    ordered_json params;
    params["n"] = n;
    return table_report("product", params, product_holonomy_table(n));
}

std::string emit_json(const Report& report) { return report.data.dump(2) + "\n"; }

namespace {

std::string scalar_text(const ordered_json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_flat(const ordered_json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
        if (x.is_array() || x.is_object()) return false;
    return true;
}

void text_walk(std::ostringstream& os, const ordered_json& v, const std::string& indent) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        const auto& val = it.value();
        os << indent << it.key() << ":";
        if (is_flat(val)) {
            if (val.is_array()) {
                os << " [";
                for (std::size_t i = 0; i < val.size(); ++i) os << (i ? ", " : "") << scalar_text(val[i]);
                os << "]\n";
            } else {
                os << " " << scalar_text(val) << "\n";
            }
        } else if (val.is_object()) {
            os << "\n";
            text_walk(os, val, indent + "  ");
        } else {
            os << "\n";
            for (std::size_t i = 0; i < val.size(); ++i) {
                os << indent << "  - [" << i << "]";
                if (val[i].is_object()) {
                    os << "\n";
                    text_walk(os, val[i], indent + "    ");
                } else {
                    os << " " << val[i].dump() << "\n";
                }
            }
        }
    }
}

}  // namespace

std::string emit_text(const Report& report) {
    std::ostringstream os;
    text_walk(os, report.data, "");
    return os.str();
}

}  // namespace levinorm
