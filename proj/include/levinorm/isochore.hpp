#ifndef LEVINORM_ISOCHORE_HPP
#define LEVINORM_ISOCHORE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "levinorm/normalform.hpp"
#include "levinorm/ring.hpp"

namespace levinorm {

/// The graded system for a volume-preserving step has no solution.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Normalization needs a number outside Q(i).
class FieldObstruction : public std::runtime_error {
public:
    FieldObstruction(const std::string& what, std::string extension)
        : std::runtime_error(what), extension_(std::move(extension)) {}
    const std::string& extension() const { return extension_; }

private:
    std::string extension_;
};

/// psi(t) = t + c_2 t^2 + ... + c_K t^K.
struct PsiSeries {
    /// c_2 .. c_K.
    std::vector<GaussianRational> coeffs;
    int order = 1;

    /// Coefficient of t^j, j >= 1.
    GaussianRational coefficient(int j) const;
    /// psi(h) keeping total degree <= max_degree.
    SparsePoly evaluate(const SparsePoly& h, int max_degree) const;
    /// Text "t + 3/2*t^2 - i*t^3".
    std::string to_string() const;
    friend bool operator==(const PsiSeries& a, const PsiSeries& b) {
        return a.order == b.order && a.coeffs == b.coeffs;
    }
};

/// Representative of {psi(t), -psi(-t)} whose first differing coefficient has
/// positive real part, or zero real part and positive imaginary part.
PsiSeries sign_canonicalize(const PsiSeries& psi);

using VectorField = std::vector<SparsePoly>;

/// X(g) = sum X_i dg/dz_i.
SparsePoly apply_field(const VectorField& x, const SparsePoly& g);
SparsePoly divergence(const VectorField& x, const ContextPtr& ctx);

struct DivFreeStep {
    VectorField field;
    GaussianRational c;
};

/// Solves R = X(h) + c h^{l/deg h} with div X = 0 for homogeneous R of degree
/// l; c = 0 when deg h does not divide l. Throws ModelError when no solution
/// exists.
DivFreeStep divfree_step(const SparsePoly& r, const SparsePoly& h);

/// Exact check det(Jacobian) = 1 modulo degree order.
bool unit_jacobian(const CoordJet& jet);

struct VolumeJet {
    /// phi with f o phi^{-1} = psi(h).
    CoordJet jet;
    bool unit_jacobian = false;
};

struct IsochoreResult {
    PsiSeries psi;
    VolumeJet volume;
    /// The model h.
    SparsePoly model;
};

int default_isochore_order(int n);

SparsePoly sum_of_squares(const ContextPtr& ctx);
SparsePoly coordinate_product(const ContextPtr& ctx, int n);

/// Vey: f o phi^{-1} = psi(z1^2 + ... + zn^2) modulo degree K+1. The quadratic
/// part of f is first brought to z1^2 + ... + zn^2 by a linear map of
/// determinant 1. Throws std::invalid_argument on a degenerate Hessian and
/// FieldObstruction when that map does not exist over Q(i).
IsochoreResult vey_reduce(const SparsePoly& f, int order);

/// Szawlowski: f o phi^{-1} = psi(z1 ... zn) modulo degree K+1 for
/// f = z1 ... zn + higher terms.
IsochoreResult szawlowski_reduce(const SparsePoly& f, int n, int order);

/// Volume-preserving normal form Re(psi(z1^2 + ... + zn^2)).
NormalFormReport theorem2_pipeline(const SparsePoly& F, const PipelineOptions& options = {});

/// Product route: Re(psi(z1 ... zn)).
NormalFormReport product_pipeline(const SparsePoly& F, const PipelineOptions& options = {});

/// Chooses the product route when the leading part of F is Re(z1 ... zn).
NormalFormReport isochore_pipeline(const SparsePoly& F, const PipelineOptions& options = {});

}  // namespace levinorm

#endif  // LEVINORM_ISOCHORE_HPP
