#ifndef LEVINORM_H
#define LEVINORM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LVN_API __declspec(dllexport)
#else
#define LVN_API __attribute__((visibility("default")))
#endif

typedef enum lvn_status {
    LVN_OK = 0,
    LVN_ERR_NULL = 1,
    LVN_ERR_PARSE = 2,
    LVN_ERR_IO = 3,
    LVN_ERR_ARGUMENT = 4,
    LVN_ERR_INTERNAL = 5
} lvn_status;

typedef enum lvn_format { LVN_FORMAT_TEXT = 0, LVN_FORMAT_JSON = 1 } lvn_format;

/* Opaque handles. */
typedef struct lvn_germ lvn_germ;
typedef struct lvn_report lvn_report;

typedef struct lvn_options {
    /* Truncation order; 0 selects the default. */
    int order;
    /* Weight override; n_weights = 0 means none. */
    const int* weights;
    size_t n_weights;
    int assert_irreducible;
} lvn_options;

LVN_API const char* lvn_version(void);
LVN_API const char* lvn_status_string(lvn_status status);
/* Message of the last failed call on this thread; never NULL. */
LVN_API const char* lvn_last_error(void);

LVN_API void lvn_options_init(lvn_options* options);

/* Germ file text ("n=2\nRe(z1^2 + z2^3)\n"). */
LVN_API lvn_status lvn_germ_parse_file_text(const char* text, lvn_germ** out);
LVN_API lvn_status lvn_germ_load(const char* path, lvn_germ** out);
/* Single expression over n complex variables. */
LVN_API lvn_status lvn_germ_parse(const char* expression, int n, lvn_germ** out);
LVN_API int lvn_germ_dimension(const lvn_germ* germ);
/* Canonical text; release with lvn_string_free. */
LVN_API lvn_status lvn_germ_render(const lvn_germ* germ, char** out);
LVN_API void lvn_germ_free(lvn_germ* germ);

LVN_API lvn_status lvn_analyze(const lvn_germ* germ, const lvn_options* options, lvn_report** out);
LVN_API lvn_status lvn_normal_form(const lvn_germ* germ, const lvn_options* options, lvn_report** out);
LVN_API lvn_status lvn_isochore(const lvn_germ* germ, const lvn_options* options, lvn_report** out);
/* chart: "U3", "U4", "pi1", "pil" or "ordinary". */
LVN_API lvn_status lvn_blowup(const lvn_germ* germ, const char* chart, const lvn_options* options,
                              lvn_report** out);
LVN_API lvn_status lvn_holonomy(int m, int n, int p, int q, int k, lvn_report** out);
LVN_API lvn_status lvn_holonomy_product(int n, lvn_report** out);

/* 0 on success, 2 when a hypothesis failed. */
LVN_API int lvn_report_exit_code(const lvn_report* report);
LVN_API lvn_status lvn_report_emit(const lvn_report* report, lvn_format format, char** out);
LVN_API void lvn_report_free(lvn_report* report);

LVN_API void lvn_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* LEVINORM_H */
