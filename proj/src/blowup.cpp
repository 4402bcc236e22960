#include "levinorm/blowup.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "levinorm/frontend.hpp"

namespace levinorm {

namespace {

SparsePoly divide_by_power(const SparsePoly& p, std::size_t var, int e) {
    SparsePoly out(p.context());
    for (const auto& [m, c] : p.terms()) {
        Monomial q = m;
        q.exps[var] -= e;
        out.add_term(q, c);
    }
    return out;
}

SparsePoly make_monic(const SparsePoly& p) {
    if (p.is_zero()) return p;
    return p * (GaussianRational(1) / p.leading().second);
}

bool is_monomial(const SparsePoly& p) { return p.size() == 1; }

std::string key_of(const SparsePoly& p) { return render(p); }

using Component = std::vector<SparsePoly>;

void split(std::vector<SparsePoly> gens, Component fixed, std::vector<Component>& out) {
    std::vector<SparsePoly> cleaned;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.degree() == 0) return;  // unit ideal
        cleaned.push_back(make_monic(g));
    }
    auto mono = std::find_if(cleaned.begin(), cleaned.end(), is_monomial);
    if (mono == cleaned.end()) {
        for (const auto& g : cleaned) fixed.push_back(g);
        out.push_back(std::move(fixed));
        return;
    }
    const Monomial m = mono->leading().first;
    const auto ctx = mono->context();
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
        if (m.exps[v] == 0) continue;
        std::vector<SparsePoly> next;
        for (const auto& g : cleaned) next.push_back(restrict_zero(g, {v}));
        Component f = fixed;
        f.push_back(SparsePoly::variable(ctx, v));
        split(std::move(next), std::move(f), out);
    }
}

std::vector<std::string> sorted_keys(const Component& c) {
    std::vector<std::string> keys;
    for (const auto& g : c) keys.push_back(key_of(g));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

Substitution BlowupChart::substitution() const {
    Substitution s(source, target);
    for (std::size_t i = 0; i < exponents.size(); ++i)
        s.set(i, SparsePoly::monomial(target, Monomial(exponents[i])));
    return s;
}

BlowupChart monomial_chart(const std::string& name, ContextPtr source, const std::vector<std::string>& target_names,
                           std::vector<std::vector<int>> exponents, std::size_t exceptional) {
    if (exponents.size() != source->size()) throw std::invalid_argument("chart: one image per source variable");
    if (exceptional >= target_names.size()) throw std::invalid_argument("chart: exceptional variable out of range");
    for (const auto& row : exponents) {
        if (row.size() != target_names.size()) throw std::invalid_argument("chart: exponent row length");
        for (int e : row)
            if (e < 0) throw std::invalid_argument("chart: negative exponent");
    }
    BlowupChart c;
    c.name = name;
    c.source = std::move(source);
    c.target = Context::free(target_names);
    c.exponents = std::move(exponents);
    c.exceptional = exceptional;
    c.action.assign(target_names.size(), 0);
    return c;
}

BlowupChart weighted_chart(const std::string& name, ContextPtr source, const std::vector<int>& sigma, std::size_t j,
                           const std::vector<std::string>& target_names) {
    const std::size_t n = source->size();
    if (sigma.size() != n || target_names.size() != n || j >= n)
        throw std::invalid_argument("weighted chart: dimension mismatch");
    for (int s : sigma)
        if (s <= 0) throw std::invalid_argument("weighted chart: weights must be positive");
    std::vector<std::vector<int>> ex(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        ex[i][j] = sigma[i];
        if (i != j) ex[i][i] = 1;
    }
    BlowupChart c = monomial_chart(name, std::move(source), target_names, std::move(ex), j);
    c.weights = sigma;
    c.group_order = sigma[j];
    for (std::size_t i = 0; i < n; ++i)
        if (i != j) c.action[i] = sigma[i] % sigma[j];
    return c;
}

ContextPtr xyzw_context() { return Context::free({"x", "y", "z", "w"}); }

BlowupChart chart_u3(int a, int b) {
    return weighted_chart("U3", xyzw_context(), {a, b, a, b}, 2, {"x1", "y1", "z1", "w1"});
}

BlowupChart chart_u4(int a, int b) {
    return weighted_chart("U4", xyzw_context(), {a, b, a, b}, 3, {"x2", "y2", "z2", "w2"});
}

ContextPtr zw_context(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
    return Context::free(names);
}

BlowupChart chart_pi1(int n) {
    if (n < 2) throw std::invalid_argument("pi1: n >= 2");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("r" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("l" + std::to_string(i));
    const auto N = static_cast<std::size_t>(2 * n);
    return weighted_chart("pi1", zw_context(n), std::vector<int>(N, 1), static_cast<std::size_t>(n), names);
}

BlowupChart chart_pil(int n) {
    if (n < 3) throw std::invalid_argument("pil: n >= 3");
    const auto c1 = chart_pi1(n);
    const auto N = static_cast<std::size_t>(2 * n);
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= N; ++i) names.push_back("x" + std::to_string(i));
    const std::size_t e = static_cast<std::size_t>(n) + 2;  // x_{n+3}
    std::vector<std::vector<int>> ex(N, std::vector<int>(N, 0));
    for (std::size_t i = 0; i < N; ++i) ex[i][i] = 1;
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, static_cast<std::size_t>(n) + 1}) ex[i][e] = 1;
    auto c = monomial_chart("pil", c1.target, names, std::move(ex), e);
    c.weights.assign(N, 0);
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, static_cast<std::size_t>(n) + 1, e}) c.weights[i] = 1;
    return c;
}

BlowupChart chart_ordinary(ContextPtr source) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= source->size(); ++i) names.push_back("x" + std::to_string(i));
    const auto n = source->size();
    return weighted_chart("ordinary", std::move(source), std::vector<int>(n, 1), 0, names);
}

int exceptional_order(const SparsePoly& p, std::size_t var) {
    if (p.is_zero()) return INT_MAX;
    int e = INT_MAX;
    for (const auto& [m, c] : p.terms()) e = std::min(e, m.exps[var]);
    return e;
}

PulledForm pullback_1form(const PolyForm& alpha, const BlowupChart& chart) {
    if (alpha.degree() != 1) throw std::invalid_argument("pullback_1form: expected a 1-form");
    PolyForm in(chart.source, 1);
    for (const auto& [idx, c] : alpha.components()) {
        const auto v = chart.source->index_of(alpha.context()->var(idx[0]).name);
        in.add({v}, rename_into(c, chart.source));
    }
    const PolyForm pulled = pullback(in, chart.substitution());
    if (pulled.is_zero()) throw std::invalid_argument("pullback_1form: zero form");
    int e = INT_MAX;
    for (const auto& [idx, c] : pulled.components()) e = std::min(e, exceptional_order(c, chart.exceptional));
    PulledForm out{e, PolyForm(chart.target, 1)};
    for (const auto& [idx, c] : pulled.components()) out.form.add(idx, divide_by_power(c, chart.exceptional, e));
    return out;
}

StrictTransform strict_transform(const SparsePoly& p, const BlowupChart& chart) {
    const SparsePoly pulled = substitute(rename_into(p, chart.source), chart.substitution());
    if (pulled.is_zero()) throw std::invalid_argument("strict_transform: zero polynomial");
    const int e = exceptional_order(pulled, chart.exceptional);
    return {e, divide_by_power(pulled, chart.exceptional, e)};
}

InvariantLocus invariant_locus(const PolyForm& alpha, const std::vector<std::size_t>& exceptional,
                               const SparsePoly* strict) {
    if (alpha.degree() != 1) throw std::invalid_argument("invariant_locus: expected a 1-form");
    if (exceptional.empty()) throw std::invalid_argument("invariant_locus: no exceptional variable");
    const auto ctx = alpha.context();
    InvariantLocus out;
    out.divisor_invariant = true;
    for (std::size_t e : exceptional)
        for (const auto& [idx, c] : alpha.components())
            if (idx[0] != e && !restrict_zero(c, {e}).is_zero()) out.divisor_invariant = false;

    std::vector<SparsePoly> coeffs;
    for (const auto& [idx, c] : alpha.components()) {
        SparsePoly g = c;
        if (std::find(exceptional.begin(), exceptional.end(), idx[0]) != exceptional.end())
            for (std::size_t e : exceptional)
                if (e != idx[0]) g = divide_by_power(g, e, exceptional_order(g, e));
        g = restrict_zero(g, exceptional);
        if (!g.is_zero()) coeffs.push_back(make_monic(g));
    }
    std::vector<SparsePoly> gens = coeffs;
    if (strict) {
        SparsePoly s = restrict_zero(rename_into(*strict, ctx), exceptional);
        for (const auto& g : coeffs) s = divide(s, g).remainder;
        gens.push_back(s);
    }
    Component base;
    for (std::size_t e : exceptional) base.push_back(SparsePoly::variable(ctx, e));
    std::vector<Component> comps;
    split(gens, base, comps);

    std::vector<std::pair<std::vector<std::string>, Component>> keyed;
    for (auto& c : comps) {
        auto k = sorted_keys(c);
        if (std::none_of(keyed.begin(), keyed.end(), [&](const auto& p) { return p.first == k; }))
            keyed.emplace_back(std::move(k), std::move(c));
    }
    std::vector<bool> drop(keyed.size(), false);
    for (std::size_t a = 0; a < keyed.size(); ++a)
        for (std::size_t b = 0; b < keyed.size(); ++b)
            if (a != b && !drop[b] &&
                std::includes(keyed[a].first.begin(), keyed[a].first.end(), keyed[b].first.begin(),
                              keyed[b].first.end()))
                drop[a] = true;
    std::vector<std::pair<std::vector<std::string>, Component>> kept;
    for (std::size_t a = 0; a < keyed.size(); ++a)
        if (!drop[a]) kept.push_back(std::move(keyed[a]));
    std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [k, c] : kept) {
        Component uniq;
        std::set<std::string> seen;
        for (auto& g : c)
            if (seen.insert(key_of(g)).second) uniq.push_back(std::move(g));
        out.components.push_back(std::move(uniq));
    }
    return out;
}

std::string render_component(const std::vector<SparsePoly>& generators) {
    std::string s = "{";
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (i) s += ", ";
        s += render(generators[i]) + " = 0";
    }
    return s + "}";
}

long RotationNumber::order() const {
    if (irrational) return 0;
    return rho.get_den().get_si();
}

std::string RotationNumber::to_string() const {
    if (irrational) return "irrational";
    return rho.get_str();
}

std::vector<HolonomyEntry> holonomy_table(int m, int n, int p, int q, int k) {
    if ((m != 0 && m != 1) || (n != 0 && n != 1)) throw std::invalid_argument("holonomy: m, n must be 0 or 1");
    if (p <= 0 || q <= 0 || std::gcd(p, q) != 1) throw std::invalid_argument("holonomy: p, q coprime positive");
    if (k < 1) throw std::invalid_argument("holonomy: k >= 1");
    const long D = static_cast<long>(p) + q + static_cast<long>(p) * q * k;
    auto entry = [](std::string label, Rational r, std::string note = {}) {
        return HolonomyEntry{std::move(label), RotationNumber{std::move(r)}, std::move(note)};
    };
    if (m == 1 && n == 1) {
        return {entry("f", -frac(1 + static_cast<long>(q) * k, D)),
                entry("g", -frac(static_cast<long>(p) + static_cast<long>(p) * q * k, static_cast<long>(q) * D)),
                entry("h", Rational(0)), entry("k", -frac(1 + static_cast<long>(p) * k, D))};
    }
    if (m == 0 && n == 1) return {entry("f", -frac(1, p)), entry("g", -frac(1, q)), entry("k", Rational(0))};
    if (m == 1 && n == 0)
        return {entry("f", -frac(1, q)), entry("g", -frac(1, p)), entry("h", Rational(0), "printed label k'")};
    return {entry("f", -frac(1, q)), entry("g", -frac(1, p))};
}

std::vector<HolonomyEntry> product_holonomy_table(int n) {
    if (n < 3) throw std::invalid_argument("product holonomy: n >= 3");
    std::vector<int> js{2};
    for (int j = 4; j <= n; ++j) js.push_back(j);
    std::vector<HolonomyEntry> out;
    for (int i = 1; i <= n; ++i)
        for (int j : js)
            out.push_back({"delta_{" + std::to_string(i) + "," + std::to_string(j) + "}",
                           RotationNumber{-frac(1, n + 2)}, {}});
    return out;
}

bool first_integral_criterion(const std::vector<HolonomyEntry>& table) {
    return std::none_of(table.begin(), table.end(), [](const HolonomyEntry& e) { return e.rotation.irrational; });
}

}  // namespace levinorm
