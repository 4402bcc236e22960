#ifndef LEVINORM_RING_HPP
#define LEVINORM_RING_HPP

// Exact-arithmetic kernel: Gaussian-rational coefficients, sparse
// multivariate polynomials over a named variable context, weighted gradings
// and polynomial-coefficient exterior forms.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace levinorm {

using Rational = mpq_class;

/// Thrown when a polynomial, form or substitution mixes variable contexts or
/// names a variable its context does not contain.
class ContextError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// re + im*i with both parts reduced rationals (GMP keeps them canonical).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}
    GaussianRational(Rational re, Rational im = 0);
    GaussianRational(long num, long den);

    static GaussianRational imaginary_unit() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// re^2 + im^2.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Exact text: "3/2", "-1/2*i", "(1+3/2*i)" style without spaces: "1+3/2*i".
    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& c);

/// Power of a Gaussian rational (non-negative exponent).
GaussianRational pow(const GaussianRational& base, unsigned exponent);

/// Square root inside Q(i) when one exists.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& value);

/// Square root of a non-negative rational when it is rational.
std::optional<Rational> rational_sqrt(const Rational& value);

enum class VarRole { Holomorphic, Conjugate, Complexified, Free };

struct Variable {
    std::string name;
    VarRole role = VarRole::Free;
    /// Weight slot: the holomorphic index shared by z_i, zb_i and w_i; the
    /// variable's own index in a free context.
    int slot = 0;
};

/// Ordered list of variables a polynomial lives over. Germ contexts hold
/// z1..zn, their conjugates zb1..zbn and complexified partners w1..wn.
class Context {
public:
    static std::shared_ptr<const Context> germ(int n);
    static std::shared_ptr<const Context> free(const std::vector<std::string>& names);

    std::size_t size() const { return vars_.size(); }
    const Variable& var(std::size_t index) const { return vars_.at(index); }
    const std::vector<Variable>& vars() const { return vars_; }

    /// Number of weight slots (n for a germ context).
    int slots() const { return slots_; }
    bool is_germ() const { return germ_; }

    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;

    // Germ contexts only.
    std::size_t holo(int i) const;
    std::size_t conj(int i) const;
    std::size_t complexified(int i) const;

    /// Conjugation involution on variable indices: z_i <-> zb_i; others fixed.
    std::size_t conjugate_partner(std::size_t index) const;

private:
    Context() = default;
    std::vector<Variable> vars_;
    int slots_ = 0;
    bool germ_ = false;
};

using ContextPtr = std::shared_ptr<const Context>;

/// Structural equality: same variable names, roles and slots in order.
bool same_context(const ContextPtr& a, const ContextPtr& b);

/// Exponent vector indexed by context variables.
struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(std::size_t n) : exps(n, 0) {}
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

    int degree() const;
    bool divides(const Monomial& other) const;
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; requires b | a.
Monomial operator/(const Monomial& a, const Monomial& b);

/// Graded lexicographic: total degree first, then the exponent of the lowest
/// variable index dominates.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Positive integer weights, one per weight slot of a context. Stored in
/// primitive form (gcd 1).
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<int> weights);

    static WeightVector uniform(int slots) { return WeightVector(std::vector<int>(slots, 1)); }

    const std::vector<int>& weights() const { return w_; }
    std::size_t size() const { return w_.size(); }
    int operator[](std::size_t i) const { return w_.at(i); }
    int max() const;
    int sum() const;
    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.w_ == b.w_; }

    /// Weighted degree of a monomial of ctx; conjugate and complexified
    /// variables carry the weight of their holomorphic partner.
    int degree(const Monomial& m, const Context& ctx) const;

private:
    std::vector<int> w_;
};

class SparsePoly {
public:
    using Terms = std::map<Monomial, GaussianRational, MonomialLess>;

    explicit SparsePoly(ContextPtr ctx);

    static SparsePoly constant(ContextPtr ctx, const GaussianRational& c);
    static SparsePoly variable(ContextPtr ctx, std::size_t index);
    static SparsePoly variable(ContextPtr ctx, const std::string& name);
    static SparsePoly monomial(ContextPtr ctx, Monomial m, const GaussianRational& c = 1);

    const ContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    GaussianRational coefficient(const Monomial& m) const;
    GaussianRational constant_term() const;
    /// Largest term under MonomialLess. Requires non-zero.
    const std::pair<const Monomial, GaussianRational>& leading() const;

    /// Maximal total degree; -1 for the zero polynomial.
    int degree() const;
    /// Minimal total degree; -1 for the zero polynomial.
    int order() const;
    /// Whether any term involves the variable.
    bool involves(std::size_t var) const;

    void add_term(const Monomial& m, const GaussianRational& c);

    SparsePoly operator-() const;
    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly& operator*=(const GaussianRational& c);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, const GaussianRational& c) { return a *= c; }
    friend SparsePoly operator*(const GaussianRational& c, SparsePoly a) { return a *= c; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend bool operator==(const SparsePoly& a, const SparsePoly& b);

    SparsePoly pow(unsigned exponent) const;

private:
    ContextPtr ctx_;
    Terms terms_;
};

void require_same_context(const SparsePoly& a, const SparsePoly& b);

/// Product keeping only terms of total degree <= max_degree.
SparsePoly multiply_truncated(const SparsePoly& a, const SparsePoly& b, int max_degree);

SparsePoly diff(const SparsePoly& p, std::size_t var);
SparsePoly diff(const SparsePoly& p, const std::string& var);

/// Variable-wise images for a ring homomorphism from a source context into a
/// target context. Unset entries map a variable to the same-named variable
/// of the target.
class Substitution {
public:
    Substitution(ContextPtr source, ContextPtr target);
    static Substitution identity(ContextPtr ctx) { return Substitution(ctx, ctx); }

    Substitution& set(std::size_t source_var, SparsePoly image);
    Substitution& set(const std::string& source_var, SparsePoly image);

    const ContextPtr& source() const { return source_; }
    const ContextPtr& target() const { return target_; }
    /// Image of a source variable (resolving defaults).
    SparsePoly image(std::size_t source_var) const;

private:
    ContextPtr source_;
    ContextPtr target_;
    std::vector<std::optional<SparsePoly>> images_;
};

SparsePoly substitute(const SparsePoly& p, const Substitution& sigma);
/// Substitution with every intermediate product truncated at total degree max_degree.
SparsePoly substitute_truncated(const SparsePoly& p, const Substitution& sigma, int max_degree);

/// Product keeping only terms of weighted degree <= max_wdeg.
SparsePoly multiply_truncated_weighted(const SparsePoly& a, const SparsePoly& b, const WeightVector& w,
                                       int max_wdeg);
/// Substitution truncated at weighted degree max_wdeg in the target context.
SparsePoly substitute_truncated_weighted(const SparsePoly& p, const Substitution& sigma, const WeightVector& w,
                                         int max_wdeg);

/// Terms of weighted degree exactly l.
SparsePoly graded_part(const SparsePoly& p, const WeightVector& w, int l);
/// Terms of total degree exactly l.
SparsePoly homogeneous_part(const SparsePoly& p, int l);
SparsePoly truncate(const SparsePoly& p, int max_degree);
SparsePoly truncate_weighted(const SparsePoly& p, const WeightVector& w, int max_wdeg);
/// Minimal weighted degree of a term; -1 for zero.
int weighted_order(const SparsePoly& p, const WeightVector& w);
int weighted_degree(const SparsePoly& p, const WeightVector& w);

/// Swap z_i <-> zb_i and conjugate every coefficient.
SparsePoly conjugate(const SparsePoly& p);

/// Set the listed variables to zero.
SparsePoly restrict_zero(const SparsePoly& p, const std::vector<std::size_t>& vars);

/// Re-express a polynomial over another context by variable name.
SparsePoly rename_into(const SparsePoly& p, ContextPtr target);

struct DivisionResult {
    SparsePoly quotient;
    SparsePoly remainder;
};

/// Multivariate division by a single polynomial under MonomialLess. The
/// remainder is zero exactly when d divides p.
DivisionResult divide(const SparsePoly& p, const SparsePoly& d);

/// Differential-form index tuple: strictly increasing context indices.
using FormIndex = std::vector<std::size_t>;

/// Exterior form of fixed degree with polynomial coefficients.
class PolyForm {
public:
    using Components = std::map<FormIndex, SparsePoly>;

    PolyForm(ContextPtr ctx, std::size_t degree);

    static PolyForm function(const SparsePoly& p);
    static PolyForm differential(ContextPtr ctx, std::size_t var);

    const ContextPtr& context() const { return ctx_; }
    std::size_t degree() const { return degree_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    /// Coefficient of the given (sorted) index tuple; zero when absent.
    SparsePoly coefficient(const FormIndex& index) const;

    /// Adds c * dx_{index} after sorting the index with sign bookkeeping.
    void add(FormIndex index, const SparsePoly& c);

    PolyForm operator-() const;
    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(const SparsePoly& f, const PolyForm& w);
    friend PolyForm operator*(const GaussianRational& c, const PolyForm& w);
    friend bool operator==(const PolyForm& a, const PolyForm& b);

private:
    ContextPtr ctx_;
    std::size_t degree_;
    Components comps_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);

/// sum over v in vars of dv ^ d(omega)/dv; with all variables this is d.
PolyForm exterior_derivative(const PolyForm& omega, const std::vector<std::size_t>& vars);
PolyForm exterior_derivative(const PolyForm& omega);

/// Variables of a role in a context.
std::vector<std::size_t> variables_with_role(const Context& ctx, VarRole role);

/// Pull-back of a form along a polynomial map given as a substitution
/// (source coordinates expressed in target coordinates).
PolyForm pullback(const PolyForm& omega, const Substitution& sigma);

}  // namespace levinorm

#endif  // LEVINORM_RING_HPP
