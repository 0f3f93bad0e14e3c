#ifndef DULAC_PARSER_HPP
#define DULAC_PARSER_HPP

#include "dulac/dulac_series.hpp"
#include "dulac/ode_poly.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dulac {

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error("ode_parser", what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Named rational constants bound at parse time (a, b, c, d of Painleve VI...).
using Bindings = std::map<std::string, GaussianRational>;

// Free parameters of resonant orders: order k -> values of the free
// coordinates of p_k, lowest t-degree first.
using ResonanceParams = std::map<int, std::vector<GaussianRational>>;

// Grammar: + - * / ^, parentheses, integer/decimal literals, the imaginary
// unit I, variables x, y0..yn (aliases y, dy, d2y, ...), and bound names.
// Division only by constants; exponents are nonnegative integer literals.
// With allow_log, t (standing for ln x) is also a variable.
OdePolynomial parse_expression(std::string_view text, int order, const Bindings& bindings = {},
                               bool allow_log = false);

struct OdeProblem {
    std::string name;
    OdePolynomial F;
    DulacSeries seed;
    ResonanceParams params;

    int order() const { return F.order(); }
};

// Reads the problem document.  "F" is either the canonical monomial list or
// an expression string (with optional "bindings").
OdeProblem parse_problem(const Json& doc);
// Canonical form (monomial list).
Json problem_to_json(const OdeProblem& p);

Json monomials_to_json(const OdePolynomial& F);
OdePolynomial monomials_from_json(const Json& j, int slots, bool allow_log);

// "k=v" or "k=v1,v2" as used on the command line.
void parse_param_assignment(std::string_view text, ResonanceParams& params);

}  // namespace dulac

#endif  // DULAC_PARSER_HPP
