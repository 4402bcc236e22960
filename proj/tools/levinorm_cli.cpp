#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levinorm/levinorm.h"

namespace {

struct Config {
    std::string input;
    int order = 0;
    std::string weights;
    bool assert_irreducible = false;
    std::string format = "text";
    std::string chart;
    std::string case_spec;
    std::string pqk;
};

std::vector<int> parse_ints(const std::string& text, const char* flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw CLI::ValidationError(flag, "expected comma-separated integers");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError(flag, "expected comma-separated integers");
    return out;
}

int finish(lvn_status status, lvn_report* report, const Config& cfg) {
    if (status != LVN_OK) {
        std::cerr << "error: " << lvn_status_string(status) << ": " << lvn_last_error() << "\n";
        return 1;
    }
    char* text = nullptr;
    const lvn_status st = lvn_report_emit(report, cfg.format == "json" ? LVN_FORMAT_JSON : LVN_FORMAT_TEXT, &text);
    if (st != LVN_OK) {
        std::cerr << "error: " << lvn_last_error() << "\n";
        lvn_report_free(report);
        return 1;
    }
    std::fputs(text, stdout);
    lvn_string_free(text);
    const int code = lvn_report_exit_code(report);
    lvn_report_free(report);
    return code;
}

int run_germ_command(const std::string& command, const Config& cfg) {
    lvn_germ* germ = nullptr;
    lvn_status st = lvn_germ_load(cfg.input.c_str(), &germ);
    if (st != LVN_OK) {
        std::cerr << "error: " << lvn_status_string(st) << ": " << lvn_last_error() << "\n";
        return 1;
    }
    std::vector<int> w;
    lvn_options opts;
    lvn_options_init(&opts);
    opts.order = cfg.order;
    opts.assert_irreducible = cfg.assert_irreducible ? 1 : 0;
    if (!cfg.weights.empty()) {
        w = parse_ints(cfg.weights, "--weights");
        for (int x : w)
            if (x <= 0) {
                lvn_germ_free(germ);
                throw CLI::ValidationError("--weights", "weights must be positive");
            }
        opts.weights = w.data();
        opts.n_weights = w.size();
    }
    lvn_report* report = nullptr;
    if (command == "analyze")
        st = lvn_analyze(germ, &opts, &report);
    else if (command == "normal-form")
        st = lvn_normal_form(germ, &opts, &report);
    else if (command == "isochore")
        st = lvn_isochore(germ, &opts, &report);
    else
        st = lvn_blowup(germ, cfg.chart.c_str(), &opts, &report);
    lvn_germ_free(germ);
    return finish(st, report, cfg);
}

int run_holonomy(const Config& cfg) {
    lvn_report* report = nullptr;
    const std::string prefix = "product:";
    if (cfg.case_spec.rfind(prefix, 0) == 0) {
        const auto n = parse_ints(cfg.case_spec.substr(prefix.size()), "--case");
        if (n.size() != 1) throw CLI::ValidationError("--case", "expected product:N");
        const lvn_status st = lvn_holonomy_product(n[0], &report);
        return finish(st, report, cfg);
    }
    const auto mn = parse_ints(cfg.case_spec, "--case");
    if (mn.size() != 2) throw CLI::ValidationError("--case", "expected m,n");
    if (cfg.pqk.empty()) throw CLI::ValidationError("--pqk", "required for the m,n cases");
    const auto pqk = parse_ints(cfg.pqk, "--pqk");
    if (pqk.size() != 3) throw CLI::ValidationError("--pqk", "expected p,q,k");
    const lvn_status st = lvn_holonomy(mn[0], mn[1], pqk[0], pqk[1], pqk[2], &report);
    return finish(st, report, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of singular Levi-flat hypersurface germs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(lvn_version()));
    Config cfg;

    auto add_common = [&](CLI::App* sub, bool germ) {
        if (germ) {
            sub->add_option("--input", cfg.input, "germ file")->required();
            sub->add_option("--order", cfg.order, "truncation order K")->check(CLI::Range(2, 1000));
            sub->add_option("--weights", cfg.weights, "weights a,b,...");
            sub->add_flag("--assert-irreducible", cfg.assert_irreducible, "treat F_C as irreducible");
        }
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto* analyze = app.add_subcommand("analyze", "Levi-flatness and quasihomogeneous data");
    add_common(analyze, true);
    auto* nf = app.add_subcommand("normal-form", "rigid normal form in two variables");
    add_common(nf, true);
    auto* iso = app.add_subcommand("isochore", "volume-preserving normal form");
    add_common(iso, true);
    auto* blow = app.add_subcommand("blowup", "weighted blow-up chart report");
    add_common(blow, true);
    blow->add_option("--chart", cfg.chart, "U3, U4, pi1, pil or ordinary")
        ->required()
        ->check(CLI::IsMember({"U3", "U4", "pi1", "pil", "ordinary"}));
    auto* hol = app.add_subcommand("holonomy", "holonomy linear parts and first-integral criterion");
    add_common(hol, false);
    hol->add_option("--case", cfg.case_spec, "m,n or product:N")->required();
    hol->add_option("--pqk", cfg.pqk, "p,q,k");

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        if (sub == hol) return run_holonomy(cfg);
        return run_germ_command(sub->get_name(), cfg);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 1;
    }
}
