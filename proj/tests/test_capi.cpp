#include <cstdlib>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "levinorm/levinorm.h"

namespace {

std::string emit(lvn_report* r, lvn_format f) {
    char* text = nullptr;
    REQUIRE(lvn_report_emit(r, f, &text) == LVN_OK);
    std::string s(text);
    lvn_string_free(text);
    return s;
}

nlohmann::json json_of(lvn_report* r) { return nlohmann::json::parse(emit(r, LVN_FORMAT_JSON)); }

lvn_germ* germ(const char* text) {
    lvn_germ* g = nullptr;
    REQUIRE(lvn_germ_parse_file_text(text, &g) == LVN_OK);
    return g;
}

}  // namespace

TEST_CASE("status codes and null handling") {
    CHECK(std::strcmp(lvn_status_string(LVN_OK), "ok") == 0);
    lvn_germ* g = nullptr;
    CHECK(lvn_germ_parse(nullptr, 2, &g) == LVN_ERR_NULL);
    CHECK(lvn_germ_parse("z1 +", 2, &g) == LVN_ERR_PARSE);
    CHECK(std::strlen(lvn_last_error()) > 0);
    CHECK(lvn_germ_parse("z1", 0, &g) == LVN_ERR_ARGUMENT);
    CHECK(lvn_germ_load("/nonexistent/file.germ", &g) == LVN_ERR_IO);
    lvn_report* r = nullptr;
    CHECK(lvn_analyze(nullptr, nullptr, &r) == LVN_ERR_NULL);
    CHECK(lvn_holonomy(2, 0, 1, 1, 1, &r) == LVN_ERR_ARGUMENT);
    CHECK(lvn_report_exit_code(nullptr) == 1);
    lvn_germ_free(nullptr);
    lvn_report_free(nullptr);
    lvn_string_free(nullptr);
}

TEST_CASE("germ handles") {
    lvn_germ* g = nullptr;
    REQUIRE(lvn_germ_parse("Re(z1*z2)", 2, &g) == LVN_OK);
    CHECK(lvn_germ_dimension(g) == 2);
    char* text = nullptr;
    REQUIRE(lvn_germ_render(g, &text) == LVN_OK);
    CHECK(std::string(text) == "1/2*z1*z2 + 1/2*zb1*zb2");
    lvn_string_free(text);
    lvn_germ_free(g);
}

TEST_CASE("analyze reports") {
    lvn_germ* g = germ("n=2\nRe(z1*z2)\n");
    lvn_report* r = nullptr;
    REQUIRE(lvn_analyze(g, nullptr, &r) == LVN_OK);
    const auto j = json_of(r);
    CHECK(j["schema"] == 1);
    CHECK(j["verdict"] == "LeviFlat");
    CHECK(j["weights"] == nlohmann::json::array({1, 1}));
    CHECK(j["degree"] == 2);
    CHECK(j["diagnostics"] == nlohmann::json::array());
    for (const char* key : {"verdict", "weights", "degree", "milnor", "basis", "s", "normal_form", "psi", "charts",
                            "holonomy", "diagnostics"})
        CHECK(j.contains(key));
    CHECK(lvn_report_exit_code(r) == 0);
    lvn_report_free(r);
    lvn_germ_free(g);

    lvn_germ* c = germ("n=2\nRe(z1) + z2*zb2\n");
    lvn_options o;
    lvn_options_init(&o);
    o.assert_irreducible = 1;
    REQUIRE(lvn_analyze(c, &o, &r) == LVN_OK);
    CHECK(json_of(r)["verdict"] == "NotLeviFlat");
    CHECK(lvn_report_exit_code(r) == 2);
    lvn_report_free(r);
    REQUIRE(lvn_analyze(c, nullptr, &r) == LVN_OK);
    CHECK(json_of(r)["verdict"] == "Inconclusive");
    lvn_report_free(r);
    lvn_germ_free(c);

    lvn_germ* bad = germ("n=2\nz1\n");
    REQUIRE(lvn_analyze(bad, nullptr, &r) == LVN_OK);
    CHECK(json_of(r)["verdict"] == "NotReal");
    lvn_report_free(r);
    lvn_germ_free(bad);
}

TEST_CASE("normal form reports are deterministic") {
    lvn_germ* g = germ("n=2\nRe(z1^3 + z2^7 + z1*z2^5)\n");
    lvn_report* a = nullptr;
    lvn_report* b = nullptr;
    REQUIRE(lvn_normal_form(g, nullptr, &a) == LVN_OK);
    REQUIRE(lvn_normal_form(g, nullptr, &b) == LVN_OK);
    CHECK(emit(a, LVN_FORMAT_JSON) == emit(b, LVN_FORMAT_JSON));
    CHECK(emit(a, LVN_FORMAT_TEXT) == emit(b, LVN_FORMAT_TEXT));
    const auto j = json_of(a);
    CHECK(j["s"] == 1);
    CHECK(j["e"] == nlohmann::json::array({"z1*z2^5"}));
    CHECK(j["normal_form"] == "Re(z1^3 + z2^7 + c1*z1*z2^5)");
    CHECK(j["c"] == nlohmann::json::array({"1"}));
    lvn_report_free(a);
    lvn_report_free(b);
    lvn_germ_free(g);

    lvn_germ* l = germ("n=2\nRe(z1^2)\n");
    REQUIRE(lvn_normal_form(l, nullptr, &a) == LVN_OK);
    const auto k = json_of(a);
    CHECK(lvn_report_exit_code(a) == 2);
    int failures = 0;
    for (const auto& d : k["diagnostics"])
        if (d["failure"] == true) {
            ++failures;
            CHECK_FALSE(d["hypothesis"].get<std::string>().empty());
        }
    CHECK(failures == 1);
    lvn_report_free(a);
    lvn_germ_free(l);
}

TEST_CASE("isochore and blowup reports") {
    lvn_germ* g = germ("n=2\nRe(z1^2 + z2^2)\n");
    lvn_report* r = nullptr;
    REQUIRE(lvn_isochore(g, nullptr, &r) == LVN_OK);
    auto j = json_of(r);
    CHECK(j["route"] == "vey");
    CHECK(j["psi"][0] == "1");
    lvn_report_free(r);
    lvn_germ_free(g);

    lvn_germ* t2 = germ("n=2\nRe(z1^2 + z2^2 + (z1^2 + z2^2)^2)\n");
    REQUIRE(lvn_isochore(t2, nullptr, &r) == LVN_OK);
    j = json_of(r);
    CHECK(j["psi"][0] == "1");
    CHECK(j["psi"][1] == "1");
    for (std::size_t i = 2; i < j["psi"].size(); ++i) CHECK(j["psi"][i] == "0");
    lvn_report_free(r);
    lvn_germ_free(t2);

    lvn_germ* q = germ("n=2\nRe(z1*z2*(z2 - z1))\n");
    REQUIRE(lvn_blowup(q, "U3", nullptr, &r) == LVN_OK);
    j = json_of(r);
    CHECK(j["charts"][0]["pullback"]["exponent"] == 2);
    CHECK(j["charts"][0]["invariant_locus"]["divisor_invariant"] == true);
    lvn_report_free(r);
    CHECK(lvn_blowup(q, "nope", nullptr, &r) == LVN_ERR_ARGUMENT);
    REQUIRE(lvn_blowup(q, "pi1", nullptr, &r) == LVN_OK);
    CHECK(lvn_report_exit_code(r) == 2);
    lvn_report_free(r);
    lvn_germ_free(q);

    lvn_germ* p = germ("n=3\nRe(z1*z2*z3)\n");
    REQUIRE(lvn_blowup(p, "pil", nullptr, &r) == LVN_OK);
    j = json_of(r);
    REQUIRE(j["charts"].size() == 2);
    CHECK(j["charts"][0]["pullback"]["exponent"] == 2);
    CHECK(j["charts"][0]["strict_transform"]["poly"] == "l2*l3 + r1*r2*r3");
    CHECK(j["charts"][1]["invariant_locus"]["components"].size() == 3);
    lvn_report_free(r);
    lvn_germ_free(p);
}

TEST_CASE("holonomy reports") {
    lvn_report* r = nullptr;
    REQUIRE(lvn_holonomy(1, 1, 1, 1, 1, &r) == LVN_OK);
    const auto j = json_of(r);
    std::vector<std::string> rho;
    for (const auto& e : j["holonomy"]["entries"]) rho.push_back(e["rho"]);
    CHECK(rho == std::vector<std::string>{"-2/3", "-2/3", "0", "-2/3"});
    CHECK(j["holonomy"]["first_integral"] == true);
    lvn_report_free(r);
    REQUIRE(lvn_holonomy_product(5, &r) == LVN_OK);
    CHECK(json_of(r)["holonomy"]["entries"][0]["rho"] == "-1/7");
    lvn_report_free(r);
}
