#ifndef LEVINORM_FRONTEND_HPP
#define LEVINORM_FRONTEND_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "levinorm/ring.hpp"

namespace levinorm {

/// Parse failure with the byte offset where it was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          message_(message),
          position_(position) {}
    std::size_t position() const { return position_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t position_;
};

/// Parses a germ expression over Context::germ(n).
///
/// Grammar (whitespace ignored):
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := zK | zbK | wK | nat ['/' nat] | 'i'
///           | 'Re(' expr ')' | 'Im(' expr ')' | 'conj(' expr ')' | '(' expr ')'
///
/// Re(E) expands to (E + conj(E))/2 and Im(E) to (E - conj(E))/(2i).
SparsePoly parse_germ(std::string_view text, int n);

/// Same grammar over an arbitrary context; variables are matched by name.
SparsePoly parse_polynomial(std::string_view text, ContextPtr ctx);

/// Canonical text form; parse_germ(render(p), n) == p.
std::string render(const SparsePoly& p);

/// Renders a single monomial ("1" for the empty one).
std::string render_monomial(const Monomial& m, const Context& ctx);

/// A germ file: "n=<dim>", optional "weights=a,b,...", optional
/// "f=<expr>" holomorphic first integral, then expression lines joined by '+'.
struct GermFile {
    int n = 0;
    std::optional<WeightVector> weights;
    std::optional<SparsePoly> first_integral;
    SparsePoly germ;
};

GermFile parse_germ_file(std::string_view text);
GermFile load_germ_file(const std::string& path);
std::string render_germ_file(const GermFile& file);

}  // namespace levinorm

#endif  // LEVINORM_FRONTEND_HPP
