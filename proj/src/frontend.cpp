#include "levinorm/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace levinorm {

namespace {

constexpr int kMaxExponent = 100000;

class Parser {
public:
    Parser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

    SparsePoly parse() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        SparsePoly result = expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return result;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ == text_.size()) throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    SparsePoly expr() {
        SparsePoly result(ctx_);
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        SparsePoly first = term();
        result += negate ? -first : first;
        for (;;) {
            if (accept('+'))
                result += term();
            else if (accept('-'))
                result -= term();
            else
                break;
        }
        return result;
    }

    SparsePoly term() {
        SparsePoly result = factor();
        while (accept('*')) result = result * factor();
        return result;
    }

    SparsePoly factor() {
        SparsePoly base = atom();
        if (!accept('^')) return base;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", pos_);
        const std::size_t start = pos_;
        const mpz_class e = natural();
        if (e > kMaxExponent) throw ParseError("exponent too large", start);
        return base.pow(static_cast<unsigned>(e.get_ui()));
    }

    mpz_class natural() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected a natural number", start);
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    SparsePoly atom() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            SparsePoly inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const mpz_class num = natural();
            Rational value(num);
            if (accept('/')) {
                const std::size_t at = pos_;
                const mpz_class den = natural();
                if (den == 0) throw ParseError("zero denominator", at);
                value = Rational(num, den);
                value.canonicalize();
            }
            return SparsePoly::constant(ctx_, GaussianRational(value));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (name == "Re" || name == "Im" || name == "conj") {
                expect('(');
                SparsePoly inner = expr();
                expect(')');
                if (!ctx_->is_germ()) throw ParseError(name + "() requires a germ context", start);
                const SparsePoly bar = conjugate(inner);
                if (name == "conj") return bar;
                if (name == "Re") return (inner + bar) * GaussianRational(1, 2);
                return (inner - bar) * GaussianRational(Rational(0), Rational(-1, 2));
            }
            if (name == "i") return SparsePoly::constant(ctx_, GaussianRational::imaginary_unit());
            const auto index = ctx_->find(name);
            if (!index) throw ParseError("undeclared variable '" + name + "'", start);
            return SparsePoly::variable(ctx_, *index);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view text_;
    ContextPtr ctx_;
    std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string coefficient_text(const GaussianRational& c) {
    if (c.is_real() || sgn(c.re()) == 0) return c.to_string();
    return "(" + c.to_string() + ")";
}

}  // namespace

SparsePoly parse_germ(std::string_view text, int n) { return Parser(text, Context::germ(n)).parse(); }

SparsePoly parse_polynomial(std::string_view text, ContextPtr ctx) { return Parser(text, std::move(ctx)).parse(); }

std::string render_monomial(const Monomial& m, const Context& ctx) {
    std::string out;
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
        if (m.exps[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += ctx.var(v).name;
        if (m.exps[v] > 1) out += "^" + std::to_string(m.exps[v]);
    }
    return out.empty() ? "1" : out;
}

std::string render(const SparsePoly& p) {
    if (p.is_zero()) return "0";
    // Ascending total degree; within a degree z1 before z2.
    std::vector<std::pair<Monomial, GaussianRational>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.exps > b.first.exps;
    });
    std::string out;
    for (const auto& [m, c] : terms) {
        GaussianRational coeff = c;
        bool negative = false;
        if (sgn(coeff.re()) < 0 || (sgn(coeff.re()) == 0 && sgn(coeff.im()) < 0)) {
            negative = true;
            coeff = -coeff;
        }
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        const bool constant = m.degree() == 0;
        if (constant) {
            out += coefficient_text(coeff);
        } else {
            if (!coeff.is_one()) out += coefficient_text(coeff) + "*";
            out += render_monomial(m, *p.context());
        }
    }
    return out;
}

GermFile parse_germ_file(std::string_view text) {
    GermFile file{0, std::nullopt, std::nullopt, SparsePoly(Context::germ(1))};
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t offset = 0;
    bool have_n = false;
    std::vector<std::pair<std::string, std::size_t>> body;
    std::optional<std::pair<std::string, std::size_t>> first_integral;
    while (std::getline(in, line)) {
        const std::size_t line_start = offset;
        offset += line.size() + 1;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_n) {
            if (t.rfind("n=", 0) != 0) throw ParseError("germ file must start with n=<dim>", line_start);
            try {
                std::size_t used = 0;
                file.n = std::stoi(t.substr(2), &used);
                if (used != t.size() - 2) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("invalid dimension", line_start);
            }
            if (file.n <= 0) throw ParseError("dimension must be positive", line_start);
            have_n = true;
            continue;
        }
        if (t.rfind("weights=", 0) == 0) {
            if (file.weights || !body.empty()) throw ParseError("weights line out of place", line_start);
            std::vector<int> w;
            std::stringstream items(t.substr(8));
            std::string item;
            while (std::getline(items, item, ',')) {
                try {
                    std::size_t used = 0;
                    const std::string s = trim(item);
                    const int v = std::stoi(s, &used);
                    if (used != s.size() || v <= 0) throw std::invalid_argument("weight");
                    w.push_back(v);
                } catch (const std::exception&) {
                    throw ParseError("weights must be positive integers", line_start);
                }
            }
            if (static_cast<int>(w.size()) != file.n) throw ParseError("expected one weight per variable", line_start);
            file.weights = WeightVector(w);
            continue;
        }
        if (t.rfind("f=", 0) == 0) {
            if (first_integral) throw ParseError("duplicate first-integral line", line_start);
            first_integral = std::make_pair(t.substr(2), line_start + line.find("f=") + 2);
            continue;
        }
        body.emplace_back(t, line_start + line.find_first_not_of(" \t"));
    }
    if (!have_n) throw ParseError("missing n=<dim> line", 0);
    if (body.empty()) throw ParseError("germ file has no expression", offset);
    const ContextPtr ctx = Context::germ(file.n);
    SparsePoly germ(ctx);
    for (const auto& [expr, at] : body) {
        try {
            germ += parse_polynomial(expr, ctx);
        } catch (const ParseError& e) {
            throw ParseError("in germ expression: " + e.message(), at + e.position());
        }
    }
    file.germ = germ;
    if (first_integral) {
        try {
            file.first_integral = parse_polynomial(first_integral->first, ctx);
        } catch (const ParseError& e) {
            throw ParseError("in first integral: " + e.message(), first_integral->second + e.position());
        }
    }
    return file;
}

GermFile load_germ_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open germ file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_germ_file(buffer.str());
}

std::string render_germ_file(const GermFile& file) {
    std::string out = "n=" + std::to_string(file.n) + "\n";
    if (file.weights) {
        out += "weights=";
        for (std::size_t i = 0; i < file.weights->size(); ++i) {
            if (i) out += ",";
            out += std::to_string((*file.weights)[i]);
        }
        out += "\n";
    }
    if (file.first_integral) out += "f=" + render(*file.first_integral) + "\n";
    out += render(file.germ) + "\n";
    return out;
}

}  // namespace levinorm
