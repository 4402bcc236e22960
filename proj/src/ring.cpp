#include "levinorm/ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace levinorm {

// ---------------------------------------------------------------- coefficients

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational::GaussianRational(long num, long den) : re_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    re_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    const Rational n = o.norm();
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    Rational im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = im_.get_str() + "*i";
    if (sgn(re_) == 0) return imag;
    std::string out = re_.get_str();
    if (sgn(im_) > 0) out += "+";
    return out + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& c) { return os << c.to_string(); }

GaussianRational pow(const GaussianRational& base, unsigned exponent) {
    GaussianRational result = 1;
    GaussianRational b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        b *= b;
        exponent >>= 1u;
    }
    return result;
}

std::optional<Rational> rational_sqrt(const Rational& value) {
    if (sgn(value) < 0) return std::nullopt;
    mpz_class num = value.get_num(), den = value.get_den();
    mpz_class rn = sqrt(num), rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& value) {
    // (x + yi)^2 = a + bi  =>  x^2 = (a + |v|)/2, y^2 = (|v| - a)/2, sign(xy) = sign(b).
    if (value.is_zero()) return GaussianRational(0);
    const auto modulus = rational_sqrt(value.norm());
    if (!modulus) return std::nullopt;
    const auto x = rational_sqrt((value.re() + *modulus) / 2);
    const auto y = rational_sqrt((*modulus - value.re()) / 2);
    if (!x || !y) return std::nullopt;
    Rational im = *y;
    if (sgn(value.im()) < 0) im = -im;
    GaussianRational root(*x, im);
    if (!(root * root == value)) return std::nullopt;
    return root;
}

// ---------------------------------------------------------------- contexts

std::shared_ptr<const Context> Context::germ(int n) {
    if (n <= 0) throw ContextError("germ dimension must be positive");
    auto ctx = std::shared_ptr<Context>(new Context());
    ctx->germ_ = true;
    ctx->slots_ = n;
    for (int i = 0; i < n; ++i) ctx->vars_.push_back({"z" + std::to_string(i + 1), VarRole::Holomorphic, i});
    for (int i = 0; i < n; ++i) ctx->vars_.push_back({"zb" + std::to_string(i + 1), VarRole::Conjugate, i});
    for (int i = 0; i < n; ++i) ctx->vars_.push_back({"w" + std::to_string(i + 1), VarRole::Complexified, i});
    return ctx;
}

std::shared_ptr<const Context> Context::free(const std::vector<std::string>& names) {
    auto ctx = std::shared_ptr<Context>(new Context());
    ctx->slots_ = static_cast<int>(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (std::find(names.begin(), names.begin() + static_cast<long>(i), names[i]) !=
            names.begin() + static_cast<long>(i))
            throw ContextError("duplicate variable name " + names[i]);
        ctx->vars_.push_back({names[i], VarRole::Free, static_cast<int>(i)});
    }
    return ctx;
}

std::optional<std::size_t> Context::find(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Context::index_of(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw ContextError("unknown variable " + name);
    return *idx;
}

std::size_t Context::holo(int i) const {
    if (!germ_ || i < 0 || i >= slots_) throw ContextError("holomorphic index out of range");
    return static_cast<std::size_t>(i);
}

std::size_t Context::conj(int i) const {
    if (!germ_ || i < 0 || i >= slots_) throw ContextError("conjugate index out of range");
    return static_cast<std::size_t>(slots_ + i);
}

std::size_t Context::complexified(int i) const {
    if (!germ_ || i < 0 || i >= slots_) throw ContextError("complexified index out of range");
    return static_cast<std::size_t>(2 * slots_ + i);
}

std::size_t Context::conjugate_partner(std::size_t index) const {
    const Variable& v = var(index);
    if (v.role == VarRole::Holomorphic) return conj(v.slot);
    if (v.role == VarRole::Conjugate) return holo(v.slot);
    return index;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->size() != b->size() || a->slots() != b->slots()) return false;
    for (std::size_t i = 0; i < a->size(); ++i) {
        const Variable &x = a->var(i), &y = b->var(i);
        if (x.name != y.name || x.role != y.role || x.slot != y.slot) return false;
    }
    return true;
}

std::vector<std::size_t> variables_with_role(const Context& ctx, VarRole role) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ctx.size(); ++i)
        if (ctx.var(i).role == role) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------- monomials

int Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > other.exps[i]) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m(a.exps.size());
    for (std::size_t i = 0; i < a.exps.size(); ++i) m.exps[i] = a.exps[i] + b.exps[i];
    return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m(a.exps.size());
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
        m.exps[i] = a.exps[i] - b.exps[i];
        if (m.exps[i] < 0) throw std::domain_error("monomial does not divide");
    }
    return m;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Same degree: a < b when b has the larger exponent at the first difference.
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
    return false;
}

// ---------------------------------------------------------------- weights

WeightVector::WeightVector(std::vector<int> weights) : w_(std::move(weights)) {
    int g = 0;
    for (int x : w_) {
        if (x <= 0) throw std::invalid_argument("weights must be positive integers");
        g = std::gcd(g, x);
    }
    if (g > 1)
        for (int& x : w_) x /= g;
}

int WeightVector::max() const { return w_.empty() ? 0 : *std::max_element(w_.begin(), w_.end()); }

int WeightVector::sum() const { return std::accumulate(w_.begin(), w_.end(), 0); }

int WeightVector::degree(const Monomial& m, const Context& ctx) const {
    if (static_cast<int>(w_.size()) != ctx.slots())
        throw ContextError("weight vector does not match context");
    int d = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i]) d += m.exps[i] * w_[static_cast<std::size_t>(ctx.var(i).slot)];
    return d;
}

// ---------------------------------------------------------------- polynomials

SparsePoly::SparsePoly(ContextPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw ContextError("null context");
}

SparsePoly SparsePoly::constant(ContextPtr ctx, const GaussianRational& c) {
    SparsePoly p(ctx);
    p.add_term(Monomial(ctx->size()), c);
    return p;
}

SparsePoly SparsePoly::variable(ContextPtr ctx, std::size_t index) {
    if (index >= ctx->size()) throw ContextError("variable index out of range");
    Monomial m(ctx->size());
    m.exps[index] = 1;
    return monomial(std::move(ctx), std::move(m));
}

SparsePoly SparsePoly::variable(ContextPtr ctx, const std::string& name) {
    const auto idx = ctx->index_of(name);
    return variable(std::move(ctx), idx);
}

SparsePoly SparsePoly::monomial(ContextPtr ctx, Monomial m, const GaussianRational& c) {
    if (m.exps.size() != ctx->size()) throw ContextError("monomial length does not match context");
    SparsePoly p(std::move(ctx));
    p.add_term(m, c);
    return p;
}

GaussianRational SparsePoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

GaussianRational SparsePoly::constant_term() const { return coefficient(Monomial(ctx_->size())); }

const std::pair<const Monomial, GaussianRational>& SparsePoly::leading() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

int SparsePoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

int SparsePoly::order() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

bool SparsePoly::involves(std::size_t var) const {
    for (const auto& [m, c] : terms_)
        if (m.exps.at(var) > 0) return true;
    return false;
}

void SparsePoly::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    if (m.exps.size() != ctx_->size()) throw ContextError("monomial length does not match context");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void require_same_context(const SparsePoly& a, const SparsePoly& b) {
    if (!same_context(a.context(), b.context())) throw ContextError("polynomials live over different contexts");
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    require_same_context(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    require_same_context(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SparsePoly& SparsePoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    require_same_context(a, b);
    SparsePoly r(a.ctx_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) { return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_; }

SparsePoly SparsePoly::pow(unsigned exponent) const {
    SparsePoly result = constant(ctx_, 1);
    SparsePoly base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

SparsePoly multiply_truncated(const SparsePoly& a, const SparsePoly& b, int max_degree) {
    require_same_context(a, b);
    SparsePoly r(a.context());
    for (const auto& [ma, ca] : a.terms()) {
        const int da = ma.degree();
        if (da > max_degree) break;
        for (const auto& [mb, cb] : b.terms()) {
            if (da + mb.degree() > max_degree) break;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

SparsePoly diff(const SparsePoly& p, std::size_t var) {
    if (var >= p.context()->size()) throw ContextError("differentiation variable not in context");
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms()) {
        const int e = m.exps[var];
        if (e == 0) continue;
        Monomial d = m;
        d.exps[var] -= 1;
        r.add_term(d, c * GaussianRational(e));
    }
    return r;
}

SparsePoly diff(const SparsePoly& p, const std::string& var) { return diff(p, p.context()->index_of(var)); }

// ---------------------------------------------------------------- substitution

Substitution::Substitution(ContextPtr source, ContextPtr target)
    : source_(std::move(source)), target_(std::move(target)), images_(source_->size()) {}

Substitution& Substitution::set(std::size_t source_var, SparsePoly image) {
    if (source_var >= source_->size()) throw ContextError("substitution variable not in source context");
    if (!same_context(image.context(), target_)) throw ContextError("substitution image not in target context");
    images_[source_var] = std::move(image);
    return *this;
}

Substitution& Substitution::set(const std::string& source_var, SparsePoly image) {
    return set(source_->index_of(source_var), std::move(image));
}

SparsePoly Substitution::image(std::size_t source_var) const {
    if (images_.at(source_var)) return *images_[source_var];
    const auto& name = source_->var(source_var).name;
    const auto idx = target_->find(name);
    if (!idx) throw ContextError("substitution has no image for " + name);
    return SparsePoly::variable(target_, *idx);
}

namespace {

template <typename Mul>
SparsePoly substitute_impl(const SparsePoly& p, const Substitution& sigma, Mul mul) {
    if (!same_context(p.context(), sigma.source())) throw ContextError("substitution source context mismatch");
    const auto& target = sigma.target();
    const std::size_t n = p.context()->size();
    std::vector<int> max_exp(n, 0);
    for (const auto& [m, c] : p.terms())
        for (std::size_t i = 0; i < n; ++i) max_exp[i] = std::max(max_exp[i], m.exps[i]);

    // powers[i][e] = image(i)^e
    std::vector<std::vector<SparsePoly>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (max_exp[i] == 0) continue;
        powers[i].push_back(SparsePoly::constant(target, 1));
        const SparsePoly img = sigma.image(i);
        for (int e = 1; e <= max_exp[i]; ++e) powers[i].push_back(mul(powers[i].back(), img));
    }

    // p = sum_e x_i^e * p_e, recursing on the remaining variables.
    std::function<SparsePoly(const std::vector<const std::pair<const Monomial, GaussianRational>*>&, std::size_t)>
        horner = [&](const auto& terms, std::size_t i) -> SparsePoly {
        while (i < n && max_exp[i] == 0) ++i;
        if (i == n) {
            GaussianRational c;
            for (const auto* t : terms) c += t->second;
            return SparsePoly::constant(target, c);
        }
        std::map<int, std::vector<const std::pair<const Monomial, GaussianRational>*>> groups;
        for (const auto* t : terms) groups[t->first.exps[i]].push_back(t);
        SparsePoly out(target);
        for (const auto& [e, sub] : groups) {
            const SparsePoly inner = horner(sub, i + 1);
            if (inner.is_zero()) continue;
            out += e == 0 ? inner : mul(inner, powers[i][static_cast<std::size_t>(e)]);
        }
        return out;
    };
    std::vector<const std::pair<const Monomial, GaussianRational>*> all;
    for (const auto& t : p.terms()) all.push_back(&t);
    return horner(all, 0);
}

}  // namespace

SparsePoly substitute(const SparsePoly& p, const Substitution& sigma) {
    return substitute_impl(p, sigma, [](const SparsePoly& a, const SparsePoly& b) { return a * b; });
}

SparsePoly substitute_truncated(const SparsePoly& p, const Substitution& sigma, int max_degree) {
    return substitute_impl(p, sigma, [max_degree](const SparsePoly& a, const SparsePoly& b) {
        return multiply_truncated(a, b, max_degree);
    });
}

SparsePoly multiply_truncated_weighted(const SparsePoly& a, const SparsePoly& b, const WeightVector& w,
                                       int max_wdeg) {
    require_same_context(a, b);
    const Context& ctx = *a.context();
    std::vector<std::pair<int, const std::pair<const Monomial, GaussianRational>*>> bs;
    for (const auto& t : b.terms()) {
        const int d = w.degree(t.first, ctx);
        if (d <= max_wdeg) bs.emplace_back(d, &t);
    }
    std::stable_sort(bs.begin(), bs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparsePoly r(a.context());
    for (const auto& [ma, ca] : a.terms()) {
        const int da = w.degree(ma, ctx);
        if (da > max_wdeg) continue;
        for (const auto& [db, tb] : bs) {
            if (da + db > max_wdeg) break;
            r.add_term(ma * tb->first, ca * tb->second);
        }
    }
    return r;
}

SparsePoly substitute_truncated_weighted(const SparsePoly& p, const Substitution& sigma, const WeightVector& w,
                                         int max_wdeg) {
    return substitute_impl(p, sigma, [&](const SparsePoly& a, const SparsePoly& b) {
        return multiply_truncated_weighted(a, b, w, max_wdeg);
    });
}

// ---------------------------------------------------------------- gradings

SparsePoly graded_part(const SparsePoly& p, const WeightVector& w, int l) {
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms())
        if (w.degree(m, *p.context()) == l) r.add_term(m, c);
    return r;
}

SparsePoly homogeneous_part(const SparsePoly& p, int l) {
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms())
        if (m.degree() == l) r.add_term(m, c);
    return r;
}

SparsePoly truncate(const SparsePoly& p, int max_degree) {
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() > max_degree) break;
        r.add_term(m, c);
    }
    return r;
}

SparsePoly truncate_weighted(const SparsePoly& p, const WeightVector& w, int max_wdeg) {
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms())
        if (w.degree(m, *p.context()) <= max_wdeg) r.add_term(m, c);
    return r;
}

int weighted_order(const SparsePoly& p, const WeightVector& w) {
    int best = -1;
    for (const auto& [m, c] : p.terms()) {
        const int d = w.degree(m, *p.context());
        if (best < 0 || d < best) best = d;
    }
    return best;
}

int weighted_degree(const SparsePoly& p, const WeightVector& w) {
    int best = -1;
    for (const auto& [m, c] : p.terms()) best = std::max(best, w.degree(m, *p.context()));
    return best;
}

SparsePoly conjugate(const SparsePoly& p) {
    const Context& ctx = *p.context();
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms()) {
        Monomial s(ctx.size());
        for (std::size_t i = 0; i < ctx.size(); ++i) s.exps[ctx.conjugate_partner(i)] += m.exps[i];
        r.add_term(s, c.conj());
    }
    return r;
}

SparsePoly restrict_zero(const SparsePoly& p, const std::vector<std::size_t>& vars) {
    SparsePoly r(p.context());
    for (const auto& [m, c] : p.terms()) {
        bool vanishes = false;
        for (auto v : vars)
            if (m.exps.at(v) > 0) {
                vanishes = true;
                break;
            }
        if (!vanishes) r.add_term(m, c);
    }
    return r;
}

SparsePoly rename_into(const SparsePoly& p, ContextPtr target) {
    const Context& src = *p.context();
    std::vector<std::size_t> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->index_of(src.var(i).name);
    SparsePoly r(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial t(target->size());
        for (std::size_t i = 0; i < src.size(); ++i) t.exps[map[i]] += m.exps[i];
        r.add_term(t, c);
    }
    return r;
}

DivisionResult divide(const SparsePoly& p, const SparsePoly& d) {
    require_same_context(p, d);
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    const auto& [lm, lc] = d.leading();
    SparsePoly q(p.context()), r(p.context()), rest = p;
    while (!rest.is_zero()) {
        const auto [m, c] = rest.leading();
        if (lm.divides(m)) {
            SparsePoly t = SparsePoly::monomial(p.context(), m / lm, c / lc);
            q += t;
            rest -= t * d;
        } else {
            r.add_term(m, c);
            rest.add_term(m, -c);
        }
    }
    return {std::move(q), std::move(r)};
}

// ---------------------------------------------------------------- forms

PolyForm::PolyForm(ContextPtr ctx, std::size_t degree) : ctx_(std::move(ctx)), degree_(degree) {
    if (!ctx_) throw ContextError("null context");
    if (degree_ > ctx_->size()) throw ContextError("form degree exceeds context dimension");
}

PolyForm PolyForm::function(const SparsePoly& p) {
    PolyForm f(p.context(), 0);
    f.add({}, p);
    return f;
}

PolyForm PolyForm::differential(ContextPtr ctx, std::size_t var) {
    PolyForm f(ctx, 1);
    f.add({var}, SparsePoly::constant(ctx, 1));
    return f;
}

SparsePoly PolyForm::coefficient(const FormIndex& index) const {
    auto it = comps_.find(index);
    return it == comps_.end() ? SparsePoly(ctx_) : it->second;
}

void PolyForm::add(FormIndex index, const SparsePoly& c) {
    if (!same_context(c.context(), ctx_)) throw ContextError("form coefficient context mismatch");
    if (index.size() != degree_) throw ContextError("form index has wrong degree");
    if (c.is_zero()) return;
    // Bubble sort to count transpositions.
    bool negative = false;
    for (std::size_t i = 0; i < index.size(); ++i)
        for (std::size_t j = 0; j + 1 < index.size() - i; ++j)
            if (index[j] > index[j + 1]) {
                std::swap(index[j], index[j + 1]);
                negative = !negative;
            }
    for (std::size_t i = 0; i + 1 < index.size(); ++i)
        if (index[i] == index[i + 1]) return;
    for (auto v : index)
        if (v >= ctx_->size()) throw ContextError("form index variable out of range");
    auto [it, inserted] = comps_.try_emplace(index, SparsePoly(ctx_));
    if (negative)
        it->second -= c;
    else
        it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
}

PolyForm PolyForm::operator-() const {
    PolyForm r(ctx_, degree_);
    for (const auto& [idx, c] : comps_) r.comps_.emplace(idx, -c);
    return r;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
    if (!same_context(o.ctx_, ctx_) || o.degree_ != degree_) throw ContextError("form context or degree mismatch");
    for (const auto& [idx, c] : o.comps_) add(idx, c);
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
    if (!same_context(o.ctx_, ctx_) || o.degree_ != degree_) throw ContextError("form context or degree mismatch");
    for (const auto& [idx, c] : o.comps_) add(idx, -c);
    return *this;
}

PolyForm operator*(const SparsePoly& f, const PolyForm& w) {
    if (!same_context(f.context(), w.ctx_)) throw ContextError("form coefficient context mismatch");
    PolyForm r(w.ctx_, w.degree_);
    for (const auto& [idx, c] : w.comps_) r.add(idx, f * c);
    return r;
}

PolyForm operator*(const GaussianRational& c, const PolyForm& w) {
    PolyForm r(w.ctx_, w.degree_);
    for (const auto& [idx, v] : w.comps_) r.add(idx, v * c);
    return r;
}

bool operator==(const PolyForm& a, const PolyForm& b) {
    return same_context(a.ctx_, b.ctx_) && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (!same_context(a.context(), b.context())) throw ContextError("wedge of forms over different contexts");
    const std::size_t deg = a.degree() + b.degree();
    if (deg > a.context()->size()) throw ContextError("wedge degree exceeds context dimension");
    PolyForm r(a.context(), deg);
    for (const auto& [ia, ca] : a.components())
        for (const auto& [ib, cb] : b.components()) {
            FormIndex idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add(std::move(idx), ca * cb);
        }
    return r;
}

PolyForm exterior_derivative(const PolyForm& omega, const std::vector<std::size_t>& vars) {
    const auto& ctx = omega.context();
    PolyForm r(ctx, omega.degree() + 1);
    for (const auto& [idx, c] : omega.components())
        for (auto v : vars) {
            SparsePoly dc = diff(c, v);
            if (dc.is_zero()) continue;
            FormIndex full{v};
            full.insert(full.end(), idx.begin(), idx.end());
            r.add(std::move(full), dc);
        }
    return r;
}

PolyForm exterior_derivative(const PolyForm& omega) {
    std::vector<std::size_t> all(omega.context()->size());
    std::iota(all.begin(), all.end(), 0);
    return exterior_derivative(omega, all);
}

PolyForm pullback(const PolyForm& omega, const Substitution& sigma) {
    if (!same_context(omega.context(), sigma.source())) throw ContextError("pull-back source context mismatch");
    const auto& target = sigma.target();
    std::vector<std::optional<PolyForm>> dimages(sigma.source()->size());
    auto dimage = [&](std::size_t v) -> const PolyForm& {
        if (!dimages[v]) dimages[v] = exterior_derivative(PolyForm::function(sigma.image(v)));
        return *dimages[v];
    };
    PolyForm r(target, omega.degree());
    for (const auto& [idx, c] : omega.components()) {
        PolyForm term = PolyForm::function(substitute(c, sigma));
        for (auto v : idx) term = wedge(term, dimage(v));
        r += term;
    }
    return r;
}

}  // namespace levinorm
