#include "levinorm/quasi.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "levinorm/linalg.hpp"

namespace levinorm {

namespace {

constexpr int kWeightSearchLimit = 64;

std::vector<int> slot_exponents(const Monomial& m, const Context& ctx) {
    std::vector<int> e(static_cast<std::size_t>(ctx.slots()), 0);
    for (std::size_t v = 0; v < m.exps.size(); ++v)
        if (m.exps[v]) e[static_cast<std::size_t>(ctx.var(v).slot)] += m.exps[v];
    return e;
}

void require_holomorphic(const SparsePoly& p) {
    if (!is_holomorphic(p)) throw std::invalid_argument("expected a polynomial in the coordinate variables only");
}

// ----------------------------------------------------------- Gaussian integers

struct GaussInt {
    mpz_class re, im;
    mpz_class norm() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }
};

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

std::optional<GaussInt> exact_quotient(const GaussInt& z, const GaussInt& d) {
    const mpz_class n = d.norm();
    const mpz_class re = z.re * d.re + z.im * d.im;
    const mpz_class im = z.im * d.re - z.re * d.im;
    if (re % n != 0 || im % n != 0) return std::nullopt;
    return GaussInt{re / n, im / n};
}

std::vector<mpz_class> rational_prime_factors(mpz_class n) {
    std::vector<mpz_class> out;
    if (n < 2) return out;
    for (mpz_class r = 2; r * r <= n; ++r) {
        if (r > 10000000) break;
        if (n % r == 0) {
            out.push_back(r);
            while (n % r == 0) n /= r;
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw std::runtime_error("coefficient norm too large to factor");
        out.push_back(n);
    }
    return out;
}

std::optional<GaussInt> sum_of_two_squares(const mpz_class& r) {
    for (mpz_class x = 1; x * x <= r; ++x) {
        const mpz_class rest = r - x * x;
        const mpz_class y = sqrt(rest);
        if (y * y == rest && y > 0) return GaussInt{x, y};
    }
    return std::nullopt;
}

/// Divisors of z in Z[i] up to units.
std::vector<GaussInt> gaussian_divisors(const GaussInt& z) {
    std::vector<GaussInt> primes;
    for (const mpz_class& r : rational_prime_factors(z.norm())) {
        if (r == 2) {
            primes.push_back({1, 1});
        } else if (r % 4 == 3) {
            primes.push_back({r, 0});
        } else {
            const auto pi = sum_of_two_squares(r);
            if (!pi) throw std::logic_error("prime 1 mod 4 without two-square decomposition");
            primes.push_back(*pi);
            primes.push_back({pi->re, -pi->im});
        }
    }
    std::vector<GaussInt> divisors{{1, 0}};
    GaussInt rest = z;
    for (const GaussInt& pi : primes) {
        int e = 0;
        while (auto q = exact_quotient(rest, pi)) {
            rest = *q;
            ++e;
        }
        const std::size_t base = divisors.size();
        GaussInt power{1, 0};
        for (int j = 1; j <= e; ++j) {
            power = power * pi;
            for (std::size_t t = 0; t < base; ++t) divisors.push_back(divisors[t] * power);
        }
    }
    return divisors;
}

GaussianRational evaluate(const std::vector<GaussianRational>& c, const GaussianRational& t) {
    GaussianRational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
}

/// Divides by (t - root), assuming root is a root.
std::vector<GaussianRational> deflate(const std::vector<GaussianRational>& c, const GaussianRational& root) {
    std::vector<GaussianRational> out(c.size() - 1);
    GaussianRational carry = 0;
    for (std::size_t j = c.size() - 1; j >= 1; --j) {
        carry = carry * root + c[j];
        out[j - 1] = carry;
    }
    return out;
}

bool root_less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

std::optional<std::vector<int>> primitive_positive(const Row& v) {
    mpz_class lcm = 1;
    for (const auto& x : v) lcm = lcm * x.re().get_den() / gcd(lcm, x.re().get_den());
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& x : v) {
        ints.push_back(x.re().get_num() * (lcm / x.re().get_den()));
        g = gcd(g, ints.back());
    }
    if (g == 0) return std::nullopt;
    if (ints.front() < 0) g = -g;
    std::vector<int> out;
    for (auto& x : ints) {
        x /= g;
        if (x <= 0 || !x.fits_sint_p()) return std::nullopt;
        out.push_back(static_cast<int>(x.get_si()));
    }
    return out;
}

}  // namespace

std::vector<std::size_t> coordinate_variables(const Context& ctx) {
    if (ctx.is_germ()) return variables_with_role(ctx, VarRole::Holomorphic);
    std::vector<std::size_t> all(ctx.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

void for_each_monomial(const Context& ctx, const WeightVector& w, int l,
                       const std::function<void(const Monomial&)>& visit) {
    const auto vars = coordinate_variables(ctx);
    Monomial m(ctx.size());
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == vars.size()) {
            const int wi = w[static_cast<std::size_t>(ctx.var(vars[i]).slot)];
            if (left % wi == 0) {
                m.exps[vars[i]] = left / wi;
                visit(m);
                m.exps[vars[i]] = 0;
            }
            return;
        }
        const int wi = w[static_cast<std::size_t>(ctx.var(vars[i]).slot)];
        for (int e = left / wi; e >= 0; --e) {
            m.exps[vars[i]] = e;
            rec(i + 1, left - e * wi);
        }
        m.exps[vars[i]] = 0;
    };
    if (l >= 0 && !vars.empty()) rec(0, l);
}

bool is_holomorphic(const SparsePoly& p) {
    const auto& ctx = *p.context();
    for (std::size_t v = 0; v < ctx.size(); ++v) {
        const VarRole role = ctx.var(v).role;
        if (role != VarRole::Holomorphic && role != VarRole::Free && p.involves(v)) return false;
    }
    return true;
}

bool is_quasihomogeneous(const SparsePoly& p, const WeightedStructure& ws) {
    if (p.is_zero() || !is_holomorphic(p)) return false;
    for (const auto& [m, c] : p.terms())
        if (ws.weights.degree(m, *p.context()) != ws.degree) return false;
    return true;
}

std::optional<WeightedStructure> detect_weights(const SparsePoly& p) {
    require_holomorphic(p);
    if (p.is_zero() || !p.constant_term().is_zero()) return std::nullopt;
    const auto& ctx = *p.context();
    const std::size_t n = static_cast<std::size_t>(ctx.slots());
    std::vector<std::vector<int>> support;
    for (const auto& [m, c] : p.terms()) support.push_back(slot_exponents(m, ctx));

    Matrix rows;
    for (const auto& e : support) {
        Row r;
        for (int x : e) r.emplace_back(x);
        r.emplace_back(-1);
        rows.push_back(std::move(r));
    }
    const Echelon ech = row_reduce(rows, n + 1);
    const std::size_t nullity = n + 1 - ech.pivots.size();

    if (nullity == 1) {
        std::size_t free_col = 0;
        while (std::find(ech.pivots.begin(), ech.pivots.end(), free_col) != ech.pivots.end()) ++free_col;
        Row v(n + 1);
        v[free_col] = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free_col];
        const auto ints = primitive_positive(v);
        if (!ints) return std::nullopt;
        std::vector<int> w(ints->begin(), ints->begin() + static_cast<long>(n));
        const WeightedStructure ws{WeightVector(w), ints->back()};
        return ws;
    }
    if (nullity == 0) return std::nullopt;

    std::vector<int> w(n, 1);
    std::optional<WeightedStructure> found;
    std::function<bool(std::size_t, int)> search = [&](std::size_t i, int left) -> bool {
        if (i + 1 == n) {
            w[i] = left;
            const int d = std::inner_product(w.begin(), w.end(), support.front().begin(), 0);
            for (const auto& e : support)
                if (std::inner_product(w.begin(), w.end(), e.begin(), 0) != d) return false;
            found = WeightedStructure{WeightVector(w), d};
            return true;
        }
        for (int x = 1; x <= left - static_cast<int>(n - i - 1); ++x) {
            w[i] = x;
            if (search(i + 1, left - x)) return true;
        }
        return false;
    };
    for (int total = static_cast<int>(n); total <= kWeightSearchLimit * static_cast<int>(n); ++total)
        if (search(0, total)) return found;
    return std::nullopt;
}

SparsePoly expand(const SaitoForm& form, const ContextPtr& ctx) {
    const auto vars = coordinate_variables(*ctx);
    if (vars.size() != 2) throw std::invalid_argument("Saito forms live in two variables");
    const SparsePoly x = SparsePoly::variable(ctx, vars[0]);
    const SparsePoly y = SparsePoly::variable(ctx, vars[1]);
    SparsePoly out = SparsePoly::constant(ctx, form.mu) * x.pow(static_cast<unsigned>(form.m)) *
                     y.pow(static_cast<unsigned>(form.n));
    const SparsePoly yp = y.pow(static_cast<unsigned>(form.p));
    const SparsePoly xq = x.pow(static_cast<unsigned>(form.q));
    for (const auto& lambda : form.roots) out = out * (yp - lambda * xq);
    return out;
}

RootsNotRepresentable::RootsNotRepresentable(SaitoForm partial, std::vector<GaussianRational> residual,
                                             bool residual_irreducible)
    : std::runtime_error("univariate factor of degree " + std::to_string(residual.size() - 1) +
                         " has roots outside Q(i)"),
      partial_(std::move(partial)),
      residual_(std::move(residual)),
      residual_irreducible_(residual_irreducible) {}

std::vector<GaussianRational> gaussian_rational_roots(const std::vector<GaussianRational>& coeffs,
                                                      std::vector<GaussianRational>* residual) {
    std::vector<GaussianRational> c = coeffs;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) throw std::invalid_argument("zero polynomial has every root");
    std::vector<GaussianRational> roots;
    while (c.size() > 1 && c.front().is_zero()) {
        roots.emplace_back(0);
        c.erase(c.begin());
    }
    if (c.size() > 1) {
        mpz_class lcm = 1;
        for (const auto& x : c)
            for (const Rational* part : {&x.re(), &x.im()}) lcm = lcm * part->get_den() / gcd(lcm, part->get_den());
        auto integral = [&](const GaussianRational& x) {
            return GaussInt{mpz_class(x.re() * lcm), mpz_class(x.im() * lcm)};
        };
        const auto top = gaussian_divisors(integral(c.front()));
        const auto bottom = gaussian_divisors(integral(c.back()));
        const GaussianRational units[] = {GaussianRational(1), GaussianRational::imaginary_unit(), GaussianRational(-1),
                                          -GaussianRational::imaginary_unit()};
        std::vector<GaussianRational> candidates;
        for (const auto& a : top)
            for (const auto& b : bottom)
                for (const auto& u : units)
                    candidates.push_back(u * GaussianRational(Rational(a.re), Rational(a.im)) /
                                         GaussianRational(Rational(b.re), Rational(b.im)));
        std::sort(candidates.begin(), candidates.end(), root_less);
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& t : candidates) {
            while (c.size() > 1 && evaluate(c, t).is_zero()) {
                roots.push_back(t);
                c = deflate(c, t);
            }
            if (c.size() == 1) break;
        }
    }
    if (residual) *residual = c;
    return roots;
}

SaitoForm saito_factorize(const SparsePoly& q) {
    require_holomorphic(q);
    const auto& ctx = *q.context();
    const auto vars = coordinate_variables(ctx);
    if (vars.size() != 2) throw std::invalid_argument("Saito factorization needs exactly two variables");
    const auto ws = detect_weights(q);
    if (!ws) throw std::invalid_argument("polynomial is not quasihomogeneous");
    const int a = ws->weights[0], b = ws->weights[1];

    SaitoForm out;
    out.m = out.n = std::numeric_limits<int>::max();
    for (const auto& [mono, c] : q.terms()) {
        out.m = std::min(out.m, mono.exps[vars[0]]);
        out.n = std::min(out.n, mono.exps[vars[1]]);
    }
    out.p = a;
    out.q = b;
    const int reduced = ws->degree - out.m * a - out.n * b;
    if (reduced % (a * b) != 0) throw std::logic_error("reduced degree not divisible by a*b");
    out.k = reduced / (a * b);

    std::vector<GaussianRational> uni(static_cast<std::size_t>(out.k) + 1);
    for (const auto& [mono, c] : q.terms()) {
        const int i = mono.exps[vars[0]] - out.m, j = mono.exps[vars[1]] - out.n;
        if (j % out.p != 0 || i != out.q * (out.k - j / out.p)) throw std::logic_error("term outside Saito pattern");
        uni[static_cast<std::size_t>(j / out.p)] = c;
    }
    out.mu = uni.back();
    std::vector<GaussianRational> residual;
    out.roots = gaussian_rational_roots(uni, &residual);
    std::sort(out.roots.begin(), out.roots.end(), root_less);
    if (static_cast<int>(out.roots.size()) != out.k) {
        const bool irreducible = residual.size() <= 4;
        throw RootsNotRepresentable(out, residual, irreducible);
    }
    return out;
}

MilnorData milnor_basis(const SparsePoly& q, const WeightedStructure& ws) {
    require_holomorphic(q);
    if (!is_quasihomogeneous(q, ws)) throw std::invalid_argument("polynomial is not quasihomogeneous for the weights");
    const auto& ctx = *q.context();
    const auto vars = coordinate_variables(ctx);
    const WeightVector& w = ws.weights;
    const int d = ws.degree;
    const int n = static_cast<int>(vars.size());
    const int socle = n * d - 2 * w.sum();

    std::vector<SparsePoly> partials;
    std::vector<int> shifts;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        partials.push_back(diff(q, vars[i]));
        shifts.push_back(d - w[static_cast<std::size_t>(ctx.var(vars[i]).slot)]);
    }

    struct LexDesc {
        bool operator()(const Monomial& a, const Monomial& b) const { return a.exps > b.exps; }
    };

    MilnorData out;
    bool infinite = false;
    for (int l = 0; l <= n * d; ++l) {
        std::map<Monomial, std::size_t, LexDesc> cols;
        for_each_monomial(ctx, w, l, [&](const Monomial& m) { cols.emplace(m, 0); });
        if (cols.empty()) continue;
        std::size_t idx = 0;
        for (auto& [m, i] : cols) i = idx++;
        Matrix rows;
        for (std::size_t i = 0; i < partials.size(); ++i) {
            if (partials[i].is_zero()) continue;
            for_each_monomial(ctx, w, l - shifts[i], [&](const Monomial& m) {
                Row r(cols.size());
                for (const auto& [pm, c] : partials[i].terms()) r[cols.at(pm * m)] = c;
                rows.push_back(std::move(r));
            });
        }
        const Echelon e = row_reduce(std::move(rows), cols.size());
        std::vector<bool> pivot(cols.size(), false);
        for (std::size_t pc : e.pivots) pivot[pc] = true;
        std::vector<Monomial> piece;
        for (const auto& [m, i] : cols)
            if (!pivot[i]) piece.push_back(m);
        if (piece.empty()) continue;
        if (l > socle) {
            infinite = true;
            break;
        }
        std::sort(piece.begin(), piece.end(), MonomialLess());
        for (auto& m : piece) {
            out.basis.push_back(m);
            out.basis_degrees.push_back(l);
            if (l > d) out.above_d.push_back(m);
        }
    }
    if (!infinite) out.mu = static_cast<int>(out.basis.size());
    return out;
}

std::vector<Monomial> basis_above(const MilnorData& md, const WeightVector& w, const Context& ctx, int d) {
    if (!md.mu) throw std::invalid_argument("Milnor number is infinite");
    std::vector<std::pair<int, Monomial>> picked;
    for (const auto& m : md.basis) {
        const int deg = w.degree(m, ctx);
        if (deg > d) picked.emplace_back(deg, m);
    }
    std::stable_sort(picked.begin(), picked.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return MonomialLess()(x.second, y.second);
    });
    std::vector<Monomial> out;
    for (auto& [deg, m] : picked) out.push_back(m);
    return out;
}

bool isolated_check(const SparsePoly& q, const WeightedStructure& ws) {
    if (!is_quasihomogeneous(q, ws)) throw std::invalid_argument("polynomial is not quasihomogeneous for the weights");
    if (coordinate_variables(*q.context()).size() == 2) {
        try {
            const SaitoForm s = saito_factorize(q);
            if (s.m > 1 || s.n > 1) return false;
            for (std::size_t i = 1; i < s.roots.size(); ++i)
                if (s.roots[i] == s.roots[i - 1]) return false;
            return true;
        } catch (const RootsNotRepresentable&) {
        }
    }
    return milnor_basis(q, ws).mu.has_value();
}

std::optional<PrincipalPart> principal_part(const SparsePoly& f, const WeightVector& weights) {
    require_holomorphic(f);
    if (f.is_zero() || !f.constant_term().is_zero()) return std::nullopt;
    const int d = weighted_order(f, weights);
    const SparsePoly q = graded_part(f, weights, d);
    const WeightedStructure ws{weights, d};
    if (!milnor_basis(q, ws).mu) return std::nullopt;
    return PrincipalPart{q, ws, {}};
}

std::optional<PrincipalPart> principal_part(const SparsePoly& f) {
    require_holomorphic(f);
    if (f.is_zero() || !f.constant_term().is_zero()) return std::nullopt;
    const auto& ctx = f.context();
    const std::size_t n = coordinate_variables(*ctx).size();
    std::vector<SparsePoly> terms;
    for (const auto& [m, c] : f.terms()) terms.push_back(SparsePoly::monomial(ctx, m, c));

    std::vector<WeightedStructure> tried;
    std::vector<PrincipalPart> accepted;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!chosen.empty()) {
            SparsePoly sub(ctx);
            for (std::size_t i : chosen) sub += terms[i];
            if (const auto ws = detect_weights(sub);
                ws && std::find(tried.begin(), tried.end(), *ws) == tried.end()) {
                tried.push_back(*ws);
                if (weighted_order(f, ws->weights) == ws->degree)
                    if (auto pp = principal_part(f, ws->weights)) accepted.push_back(std::move(*pp));
            }
        }
        if (chosen.size() == n) return;
        for (std::size_t i = start; i < terms.size(); ++i) {
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    if (accepted.empty()) return std::nullopt;
    std::stable_sort(accepted.begin(), accepted.end(), [](const PrincipalPart& a, const PrincipalPart& b) {
        if (a.q.size() != b.q.size()) return a.q.size() > b.q.size();
        if (a.ws.weights.sum() != b.ws.weights.sum()) return a.ws.weights.sum() < b.ws.weights.sum();
        return a.ws.weights.weights() < b.ws.weights.weights();
    });
    PrincipalPart best = accepted.front();
    if (accepted.size() > 1) {
        std::string msg = "several weightings give a semiquasihomogeneous principal part; chose (";
        for (std::size_t i = 0; i < best.ws.weights.size(); ++i)
            msg += (i ? "," : "") + std::to_string(best.ws.weights[i]);
        best.diagnostics.push_back(msg + ")");
    }
    return best;
}

}  // namespace levinorm
