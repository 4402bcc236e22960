#ifndef LEVINORM_QUASI_HPP
#define LEVINORM_QUASI_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levinorm/ring.hpp"

namespace levinorm {

struct WeightedStructure {
    WeightVector weights;
    int degree = 0;
    friend bool operator==(const WeightedStructure& a, const WeightedStructure& b) {
        return a.weights == b.weights && a.degree == b.degree;
    }
};

/// Coordinate variables of a context: z1..zn for germs, every variable otherwise.
std::vector<std::size_t> coordinate_variables(const Context& ctx);

/// Visits the coordinate monomials of weighted degree exactly l.
void for_each_monomial(const Context& ctx, const WeightVector& w, int l,
                       const std::function<void(const Monomial&)>& visit);

/// True when p only involves coordinate variables.
bool is_holomorphic(const SparsePoly& p);

bool is_quasihomogeneous(const SparsePoly& p, const WeightedStructure& ws);

/// Smallest primitive positive weights making p quasihomogeneous. When the
/// support leaves several solutions, the one with minimal weight sum wins,
/// ties broken lexicographically.
std::optional<WeightedStructure> detect_weights(const SparsePoly& p);

/// mu * x^m * y^n * prod_l (y^p - lambda_l x^q) with k = #roots.
struct SaitoForm {
    GaussianRational mu;
    int m = 0;
    int n = 0;
    int p = 1;
    int q = 1;
    int k = 0;
    std::vector<GaussianRational> roots;
};

SparsePoly expand(const SaitoForm& form, const ContextPtr& ctx);

/// The univariate polynomial in t = y^p / x^q does not split over Q(i).
class RootsNotRepresentable : public std::runtime_error {
public:
    RootsNotRepresentable(SaitoForm partial, std::vector<GaussianRational> residual, bool residual_irreducible);

    /// Factorization with the roots that were found; k is the full count.
    const SaitoForm& partial() const { return partial_; }
    /// Root-free cofactor, coefficients from t^0 upward.
    const std::vector<GaussianRational>& residual() const { return residual_; }
    /// The cofactor is known to be irreducible over Q(i) (degree <= 3).
    bool residual_irreducible() const { return residual_irreducible_; }

private:
    SaitoForm partial_;
    std::vector<GaussianRational> residual_;
    bool residual_irreducible_;
};

/// Roots in Q(i) of sum c_j t^j (coefficients from t^0 upward), repeated by
/// multiplicity, in discovery order. The cofactor without such roots is
/// returned through residual when requested.
std::vector<GaussianRational> gaussian_rational_roots(const std::vector<GaussianRational>& coeffs,
                                                      std::vector<GaussianRational>* residual = nullptr);

/// Two-variable quasihomogeneous factorization.
SaitoForm saito_factorize(const SparsePoly& q);

struct MilnorData {
    /// Milnor number; empty when the scan finds the quotient infinite.
    std::optional<int> mu;
    /// Monomial basis of the local algebra sorted by (weighted degree, term order).
    std::vector<Monomial> basis;
    std::vector<int> basis_degrees;
    /// Basis elements of weighted degree above d.
    std::vector<Monomial> above_d;
};

MilnorData milnor_basis(const SparsePoly& q, const WeightedStructure& ws);

/// Basis monomials of weighted degree strictly above d.
std::vector<Monomial> basis_above(const MilnorData& md, const WeightVector& w, const Context& ctx, int d);

bool isolated_check(const SparsePoly& q, const WeightedStructure& ws);

/// Quasihomogeneous part Q of lowest weighted degree d with all other terms
/// of weighted degree above d and mu(Q) finite.
struct PrincipalPart {
    SparsePoly q;
    WeightedStructure ws;
    std::vector<std::string> diagnostics;
};

std::optional<PrincipalPart> principal_part(const SparsePoly& f);
std::optional<PrincipalPart> principal_part(const SparsePoly& f, const WeightVector& weights);

}  // namespace levinorm

#endif  // LEVINORM_QUASI_HPP
