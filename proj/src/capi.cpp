#include "levinorm/levinorm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "levinorm/frontend.hpp"
#include "levinorm/report.hpp"

struct lvn_germ {
    levinorm::GermFile file;
};

struct lvn_report {
    levinorm::Report report;
};

namespace {

thread_local std::string last_error;

lvn_status fail(lvn_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class F>
lvn_status guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const levinorm::ParseError& e) {
        return fail(LVN_ERR_PARSE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LVN_ERR_INTERNAL, "out of memory");
    } catch (const std::invalid_argument& e) {
        return fail(LVN_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(LVN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LVN_ERR_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

levinorm::ReportOptions convert(const lvn_options* o) {
    levinorm::ReportOptions r;
    if (!o) return r;
    if (o->order < 0 || o->order == 1) throw std::invalid_argument("order must be at least 2");
    if (o->order > 0) r.order = o->order;
    if (o->n_weights > 0) {
        if (!o->weights) throw std::invalid_argument("weights pointer is null");
        r.weights = levinorm::WeightVector(std::vector<int>(o->weights, o->weights + o->n_weights));
    }
    r.assert_irreducible = o->assert_irreducible != 0;
    return r;
}

lvn_status wrap(levinorm::Report&& report, lvn_report** out) {
    *out = new lvn_report{std::move(report)};
    return LVN_OK;
}

}  // namespace

extern "C" {

const char* lvn_version(void) { return "1.0.0"; }

const char* lvn_status_string(lvn_status status) {
    switch (status) {
    case LVN_OK: return "ok";
    case LVN_ERR_NULL: return "null argument";
    case LVN_ERR_PARSE: return "parse error";
    case LVN_ERR_IO: return "i/o error";
    case LVN_ERR_ARGUMENT: return "invalid argument";
    case LVN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* lvn_last_error(void) { return last_error.c_str(); }

void lvn_options_init(lvn_options* options) {
    if (!options) return;
    options->order = 0;
    options->weights = nullptr;
    options->n_weights = 0;
    options->assert_irreducible = 0;
}

lvn_status lvn_germ_parse_file_text(const char* text, lvn_germ** out) {
    if (!text || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] {
        *out = new lvn_germ{levinorm::parse_germ_file(text)};
        return LVN_OK;
    });
}

lvn_status lvn_germ_load(const char* path, lvn_germ** out) {
    if (!path || !out) return fail(LVN_ERR_NULL, "null argument");
    if (!std::ifstream(path)) return fail(LVN_ERR_IO, std::string("cannot open germ file '") + path + "'");
    return guarded([&] {
        *out = new lvn_germ{levinorm::load_germ_file(path)};
        return LVN_OK;
    });
}

lvn_status lvn_germ_parse(const char* expression, int n, lvn_germ** out) {
    if (!expression || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] {
        if (n <= 0) throw std::invalid_argument("dimension must be positive");
        levinorm::GermFile f{n, std::nullopt, std::nullopt, levinorm::parse_germ(expression, n)};
        *out = new lvn_germ{std::move(f)};
        return LVN_OK;
    });
}

int lvn_germ_dimension(const lvn_germ* germ) { return germ ? germ->file.n : 0; }

lvn_status lvn_germ_render(const lvn_germ* germ, char** out) {
    if (!germ || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] {
        *out = copy_string(levinorm::render(germ->file.germ));
        return LVN_OK;
    });
}

void lvn_germ_free(lvn_germ* germ) { delete germ; }

lvn_status lvn_analyze(const lvn_germ* germ, const lvn_options* options, lvn_report** out) {
    if (!germ || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] { return wrap(levinorm::analyze_report(germ->file, convert(options)), out); });
}

lvn_status lvn_normal_form(const lvn_germ* germ, const lvn_options* options, lvn_report** out) {
    if (!germ || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] { return wrap(levinorm::normal_form_report(germ->file, convert(options)), out); });
}

lvn_status lvn_isochore(const lvn_germ* germ, const lvn_options* options, lvn_report** out) {
    if (!germ || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] { return wrap(levinorm::isochore_report(germ->file, convert(options)), out); });
}

lvn_status lvn_blowup(const lvn_germ* germ, const char* chart, const lvn_options* options, lvn_report** out) {
    if (!germ || !chart || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] { return wrap(levinorm::blowup_report(germ->file, chart, convert(options)), out); });
}

lvn_status lvn_holonomy(int m, int n, int p, int q, int k, lvn_report** out) {
    if (!out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] { return wrap(levinorm::holonomy_report(m, n, p, q, k), out); });
}

lvn_status lvn_holonomy_product(int n, lvn_report** out) {
    if (!out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] { return wrap(levinorm::product_holonomy_report(n), out); });
}

int lvn_report_exit_code(const lvn_report* report) { return report ? report->report.exit_code() : 1; }

lvn_status lvn_report_emit(const lvn_report* report, lvn_format format, char** out) {
    if (!report || !out) return fail(LVN_ERR_NULL, "null argument");
    return guarded([&] {
        if (format != LVN_FORMAT_TEXT && format != LVN_FORMAT_JSON) throw std::invalid_argument("unknown format");
        *out = copy_string(format == LVN_FORMAT_JSON ? levinorm::emit_json(report->report)
                                                     : levinorm::emit_text(report->report));
        return LVN_OK;
    });
}

void lvn_report_free(lvn_report* report) { delete report; }

void lvn_string_free(char* text) { std::free(text); }

}  // extern "C"
