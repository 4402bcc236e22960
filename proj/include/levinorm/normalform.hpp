#ifndef LEVINORM_NORMALFORM_HPP
#define LEVINORM_NORMALFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "levinorm/levi.hpp"
#include "levinorm/linalg.hpp"
#include "levinorm/quasi.hpp"
#include "levinorm/ring.hpp"

namespace levinorm {

/// Polynomial jet of a germ of biholomorphism (C^n,0) -> (C^n,0), one
/// component per coordinate variable, kept modulo weighted degree order+1.
/// Every term of component i has weighted degree at least w_i.
class CoordJet {
public:
    CoordJet(ContextPtr ctx, WeightVector weights, int order, std::vector<SparsePoly> components);

    static CoordJet identity(ContextPtr ctx, WeightVector weights, int order);

    const ContextPtr& context() const { return ctx_; }
    const WeightVector& weights() const { return weights_; }
    int order() const { return order_; }
    const std::vector<SparsePoly>& components() const { return components_; }
    /// Determinant of the linear part.
    const GaussianRational& linear_determinant() const { return det_; }
    Matrix linear_part() const;

    bool is_identity() const;

    Substitution as_substitution() const;
    /// f o phi, truncated.
    SparsePoly apply(const SparsePoly& f) const;
    /// (this o inner)(z) = this(inner(z)).
    CoordJet compose(const CoordJet& inner) const;
    CoordJet inverse() const;

    friend bool operator==(const CoordJet& a, const CoordJet& b) {
        return a.order_ == b.order_ && a.components_ == b.components_;
    }

private:
    ContextPtr ctx_;
    WeightVector weights_;
    int order_;
    std::vector<SparsePoly> components_;
    GaussianRational det_;
};

struct ArnoldResult {
    /// Basis monomials above the principal degree, in basis_above order.
    std::vector<Monomial> e;
    std::vector<GaussianRational> c;
    /// Q + sum c_j e_j.
    SparsePoly normal_form;
    /// phi with f o phi^{-1} = normal_form modulo the truncation.
    CoordJet jet;
    int order;
};

/// Weighted degree of the (mu+1)-jet determinacy bound: (mu+1) * max weight.
int determinacy_order(int mu, const WeightVector& w);

/// Graded right-equivalence reduction of a semiquasihomogeneous f with
/// principal part q. Throws std::invalid_argument when f is not q plus terms of
/// higher weighted degree or mu(q) is infinite, and std::logic_error when a
/// graded system turns out inconsistent.
ArnoldResult arnold_reduce(const SparsePoly& f, const SparsePoly& q, const WeightedStructure& ws,
                           std::optional<int> order = std::nullopt);

struct HessianForm {
    SparsePoly h;
    Matrix matrix;
    bool nondegenerate = false;
};

HessianForm hessian_form(const SparsePoly& f);

/// Lower parts vanish and the degree-n part is exactly z1...zn.
bool product_leading_check(const SparsePoly& f, int n);

enum class DiagnosticCode {
    NotReal,
    NotLeviFlat,
    NotQuasihomogeneous,
    NotIsolated,
    OrderTooLow,
    NotFirstIntegral,
    DegenerateHessian,
    FieldObstruction,
    NotProductLeading,
    SingularSet,
    WrongDimension,
    Note,
};

std::string to_string(DiagnosticCode code);

struct Diagnostic {
    DiagnosticCode code;
    /// The hypothesis in words.
    std::string hypothesis;
    std::string detail;

    bool is_failure() const { return code != DiagnosticCode::Note; }
};

struct NormalFormReport {
    std::optional<LeviVerdict> levi;
    std::optional<WeightedStructure> ws;
    std::optional<SparsePoly> principal;
    std::optional<MilnorData> milnor;
    std::vector<Monomial> e;
    int s = 0;
    /// Target hypersurface with symbolic c_j.
    std::string normal_form;
    /// Q + sum c_j e_j once the c_j are computed.
    std::optional<SparsePoly> normal_form_poly;
    std::vector<GaussianRational> c;
    std::optional<CoordJet> jet;
    /// psi coefficients from t^1 upward for the isochore pipelines.
    std::optional<std::vector<GaussianRational>> psi;
    std::optional<bool> volume_certified;
    std::string route;
    std::vector<Diagnostic> diagnostics;

    /// The failed hypothesis, if any.
    const Diagnostic* failure() const;
};

struct PipelineOptions {
    std::optional<WeightVector> weights;
    /// Holomorphic first integral with Re(f) = unit * F.
    std::optional<SparsePoly> first_integral;
    bool assert_irreducible = false;
    std::optional<int> order;
};

/// Re(Q + c1*e1 + ...) with symbolic c_j.
std::string normal_form_template(const SparsePoly& q, const std::vector<Monomial>& e);

/// Terms of F that involve only the holomorphic coordinates.
SparsePoly holomorphic_part(const SparsePoly& F);

/// (f + conj f) / 2.
SparsePoly real_part(const SparsePoly& f);

/// Checks Re(f) = U * F exactly and returns f / U(0); nullopt when f is not
/// such a first integral.
std::optional<SparsePoly> normalize_first_integral(const SparsePoly& f, const SparsePoly& F, std::string* why);

NormalFormReport theorem1_pipeline(const SparsePoly& F, const PipelineOptions& options = {});

}  // namespace levinorm

#endif  // LEVINORM_NORMALFORM_HPP
