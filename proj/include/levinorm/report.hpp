#ifndef LEVINORM_REPORT_HPP
#define LEVINORM_REPORT_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "levinorm/frontend.hpp"
#include "levinorm/ring.hpp"

namespace levinorm {

inline constexpr int kReportSchema = 1;

/// Machine-readable report; keys are emitted in insertion order.
struct Report {
    nlohmann::ordered_json data;
    bool failed = false;

    /// 0 on success, 2 when a hypothesis failed.
    int exit_code() const { return failed ? 2 : 0; }
};

struct ReportOptions {
    std::optional<WeightVector> weights;
    std::optional<int> order;
    bool assert_irreducible = false;
};

Report analyze_report(const GermFile& germ, const ReportOptions& options = {});
Report normal_form_report(const GermFile& germ, const ReportOptions& options = {});
Report isochore_report(const GermFile& germ, const ReportOptions& options = {});
/// Chart names: U3, U4 (two variables, weights of the principal part),
/// pi1, pil (three or more variables), ordinary.
Report blowup_report(const GermFile& germ, const std::string& chart, const ReportOptions& options = {});
Report holonomy_report(int m, int n, int p, int q, int k);
Report product_holonomy_report(int n);

std::string emit_json(const Report& report);
/// Deterministic "key: value" lines.
std::string emit_text(const Report& report);

std::string render_form(const PolyForm& form);

}  // namespace levinorm

#endif  // LEVINORM_REPORT_HPP
