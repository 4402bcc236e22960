#ifndef LEVINORM_BLOWUP_HPP
#define LEVINORM_BLOWUP_HPP

#include <string>
#include <vector>

#include "levinorm/ring.hpp"

namespace levinorm {

/// One affine chart of a (weighted) blow-up: every source variable is sent to
/// a monomial in the chart variables.
struct BlowupChart {
    std::string name;
    ContextPtr source;
    ContextPtr target;
    /// exponents[i][j]: power of target variable j in the image of source variable i.
    std::vector<std::vector<int>> exponents;
    std::size_t exceptional = 0;
    std::vector<int> weights;
    /// Cyclic group Z_order acting by zeta^action[j] on target variable j.
    int group_order = 1;
    std::vector<int> action;

    Substitution substitution() const;
};

/// Chart of the weighted blow-up with weights sigma where source variable j
/// is the exceptional direction: x_i = y_i * y_j^sigma_i, x_j = y_j^sigma_j.
BlowupChart weighted_chart(const std::string& name, ContextPtr source, const std::vector<int>& sigma, std::size_t j,
                           const std::vector<std::string>& target_names);

/// Source context (x, y, z, w) of the quasihomogeneous charts.
ContextPtr xyzw_context();
/// E(x1,y1,z1,w1) = (x1 z1^a, y1 z1^b, z1^a, w1 z1^b).
BlowupChart chart_u3(int a, int b);
/// E(x2,y2,z2,w2) = (x2 w2^a, y2 w2^b, z2 w2^a, w2^b).
BlowupChart chart_u4(int a, int b);
/// Source context (z1..zn, w1..wn).
ContextPtr zw_context(int n);
/// (r, l) -> (l1 r1, ..., l1 rn, l1, l1 l2, ..., l1 ln).
BlowupChart chart_pi1(int n);
/// Blow-up along {r1 = r2 = l2 = l3 = 0} in the chart x1..x2n.
BlowupChart chart_pil(int n);
/// Ordinary blow-up of the origin of C^N in the chart where x1 is exceptional.
BlowupChart chart_ordinary(ContextPtr source);
/// Arbitrary monomial chart; exponents must be non-negative.
BlowupChart monomial_chart(const std::string& name, ContextPtr source, const std::vector<std::string>& target_names,
                           std::vector<std::vector<int>> exponents, std::size_t exceptional);

struct PulledForm {
    int exponent = 0;
    PolyForm form;
};

/// Pull-back of a 1-form with the maximal power of the exceptional variable
/// factored out. Throws std::invalid_argument on the zero form.
PulledForm pullback_1form(const PolyForm& alpha, const BlowupChart& chart);

struct StrictTransform {
    int exponent = 0;
    SparsePoly poly;
};

StrictTransform strict_transform(const SparsePoly& p, const BlowupChart& chart);

/// Largest e with var^e dividing every term.
int exceptional_order(const SparsePoly& p, std::size_t var);

struct InvariantLocus {
    bool divisor_invariant = false;
    /// Each component is a list of ideal generators.
    std::vector<std::vector<SparsePoly>> components;
};

/// Invariance of {exc = 0} for every listed exceptional variable, and the
/// singular locus on their intersection D. Coefficients of d(exc) are first
/// stripped of the other exceptional variables; the strict transform, when
/// given, is restricted to D and reduced by the coefficient generators;
/// monomial generators are split into coordinate components.
InvariantLocus invariant_locus(const PolyForm& alpha, const std::vector<std::size_t>& exceptional,
                               const SparsePoly* strict = nullptr);

std::string render_component(const std::vector<SparsePoly>& generators);

/// Linear holonomy coefficient exp(2 pi i rho).
struct RotationNumber {
    Rational rho;
    /// Marks a synthetic non-rational entry.
    bool irrational = false;

    /// Order of exp(2 pi i rho) as a root of unity; 1 for rho integral.
    long order() const;
    std::string to_string() const;
};

struct HolonomyEntry {
    std::string label;
    RotationNumber rotation;
    std::string note;
};

/// Holonomy linear parts for Q = x^m y^n prod (y^p - lambda x^q). Throws
/// std::invalid_argument when m or n is outside {0, 1} or p, q are not
/// coprime positive.
std::vector<HolonomyEntry> holonomy_table(int m, int n, int p, int q, int k);

/// Generators delta_{i,j} of the product case in n variables.
std::vector<HolonomyEntry> product_holonomy_table(int n);

/// Every non-identity entry is a root of unity.
bool first_integral_criterion(const std::vector<HolonomyEntry>& table);

}  // namespace levinorm

#endif  // LEVINORM_BLOWUP_HPP
