#ifndef LEVINORM_LEVI_HPP
#define LEVINORM_LEVI_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "levinorm/ring.hpp"

namespace levinorm {

/// Raised when an operation requires a real germ (conj(F) = F).
class NotRealError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Replaces every conjugate variable zb_i by w_i.
SparsePoly complexify(const SparsePoly& f);
/// Inverse of complexify: w_i -> zb_i.
SparsePoly decomplexify(const SparsePoly& f_c);

/// True when the conjugation involution fixes F.
bool reality_check(const SparsePoly& f);

/// The Levi 1-form, its complexification and the split dF_C = alpha + beta.
struct LeviData {
    PolyForm eta;    // i(dF - dbarF), in dz and dzb
    PolyForm eta_c;  // in dz and dw
    PolyForm alpha;  // sum dF_C/dz_j dz_j
    PolyForm beta;   // sum dF_C/dw_j dw_j
};

LeviData levi_data(const SparsePoly& f);

/// The 4-form dF ^ dbarF ^ d dbarF whose vanishing on M is Levi-flatness.
PolyForm integrability_form(const SparsePoly& f);

enum class LeviVerdictKind { LeviFlat, NotLeviFlat, Inconclusive };

struct LeviVerdict {
    LeviVerdictKind kind = LeviVerdictKind::Inconclusive;
    /// Complexified remainder that failed to vanish, when there is one.
    std::optional<SparsePoly> witness;
    std::string reason;
    /// Jet order of the input when it is a truncation.
    std::optional<int> modulo_degree;
};

const char* to_string(LeviVerdictKind kind);

struct LeviOptions {
    /// F_C is asserted irreducible, so a non-zero remainder refutes flatness.
    bool assert_irreducible = false;
    std::optional<int> jet_order;
};

LeviVerdict leviflat_test(const SparsePoly& f, const LeviOptions& options = {});

struct SingComponent {
    bool in_sing_m = false;
    bool in_sing_l = false;
};

/// Checks the component {z_i = z_j = w_k = w_l = 0} (1-based, i < j, k < l)
/// against Sing(M_C) and Sing(L_C).
SingComponent sing_component_check(const SparsePoly& f, int i, int j, int k, int l);

}  // namespace levinorm

#endif  // LEVINORM_LEVI_HPP
