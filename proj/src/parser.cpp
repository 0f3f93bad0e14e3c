#include "dulac/parser.hpp"

#include <cctype>
#include <regex>

namespace dulac {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        // U+2212 MINUS SIGN
        if (s.substr(i, 3) == "\xE2\x88\x92") {
            out.push_back({Tok::Minus, "-", i});
            i += 3;
            continue;
        }
        if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                    i = j;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                }
            }
            out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default: throw ParseError(i, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        out.push_back({k, std::string(1, static_cast<char>(c)), i});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, int order, const Bindings& bindings, bool allow_log)
        : toks_(tokenize(text)), slots_(order + 1), bindings_(bindings), allow_log_(allow_log) {}

    OdePolynomial run() {
        if (peek().kind == Tok::End) throw ParseError(peek().pos, "empty expression");
        OdePolynomial r = expr();
        if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
        return r;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    OdePolynomial expr() {
        OdePolynomial acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            OdePolynomial rhs = term();
            if (minus)
                acc -= rhs;
            else
                acc += rhs;
        }
        return acc;
    }

    OdePolynomial term() {
        OdePolynomial acc = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = next();
            std::size_t pos = peek().pos;
            OdePolynomial rhs = unary();
            if (op.kind == Tok::Star) {
                acc = acc * rhs;
            } else {
                const auto& ts = rhs.terms();
                bool constant = ts.size() == 1 && ts[0].x_pow == 0 && ts[0].t_pow == 0 && ts[0].y_degree() == 0;
                if (!constant) throw ParseError(pos, "division by a non-constant expression");
                acc *= GaussianRational(1) / ts[0].coeff;
            }
        }
        return acc;
    }

    OdePolynomial unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return -unary();
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    OdePolynomial power() {
        OdePolynomial base = primary();
        if (peek().kind == Tok::Caret) {
            next();
            const Token& e = next();
            if (e.kind != Tok::Number || e.text.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError(e.pos, "exponent must be a nonnegative integer literal");
            if (e.text.size() > 4) throw ParseError(e.pos, "exponent too large");
            base = base.pow(std::stoi(e.text));
        }
        return base;
    }

    OdePolynomial primary() {
        const Token& tok = next();
        switch (tok.kind) {
            case Tok::Number:
                return OdePolynomial::constant(slots_, GaussianRational(parse_rational(tok.text)));
            case Tok::LParen: {
                OdePolynomial inner = expr();
                if (peek().kind != Tok::RParen) throw ParseError(peek().pos, "expected ')'");
                next();
                return inner;
            }
            case Tok::Ident:
                return variable(tok);
            case Tok::End:
                throw ParseError(tok.pos, "unexpected end of expression");
            default:
                throw ParseError(tok.pos, "unexpected '" + tok.text + "'");
        }
    }

    OdePolynomial variable(const Token& tok) {
        const std::string& name = tok.text;
        if (name == "x") return OdePolynomial::x_power(slots_, 1);
        if (name == "I") return OdePolynomial::constant(slots_, GaussianRational(0, 1));
        if (name == "t") {
            if (!allow_log_) throw ParseError(tok.pos, "ln x (t) may not appear in F");
            return OdePolynomial::t_power(slots_, 1);
        }
        if (auto it = bindings_.find(name); it != bindings_.end())
            return OdePolynomial::constant(slots_, it->second);
        static const std::regex yj("y([0-9]+)"), dky("d([0-9]*)y");
        std::smatch m;
        int j = -1;
        if (name == "y") {
            j = 0;
        } else if (std::regex_match(name, m, yj)) {
            j = std::stoi(m[1]);
        } else if (std::regex_match(name, m, dky)) {
            j = m[1].length() == 0 ? 1 : std::stoi(m[1]);
        } else {
            throw ParseError(tok.pos, "unknown variable '" + name + "'");
        }
        if (j >= slots_)
            throw ParseError(tok.pos, "variable '" + name + "' exceeds equation order " + std::to_string(slots_ - 1));
        return OdePolynomial::slot(slots_, j);
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    int slots_;
    const Bindings& bindings_;
    bool allow_log_;
};

int require_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) throw Error("ode_parser", what + " must be an integer");
    return j.get<int>();
}

}  // namespace

OdePolynomial parse_expression(std::string_view text, int order, const Bindings& bindings, bool allow_log) {
    if (order < 0) throw Error("ode_parser", "negative order");
    return ExpressionParser(text, order, bindings, allow_log).run();
}

Json monomials_to_json(const OdePolynomial& F) {
    Json out = Json::array();
    for (const auto& m : F.terms()) {
        Json j;
        j["c"] = format_scalar(m.coeff);
        j["x"] = m.x_pow;
        if (m.t_pow != 0) j["t"] = m.t_pow;
        j["y"] = m.y_pows;
        out.push_back(std::move(j));
    }
    return out;
}

OdePolynomial monomials_from_json(const Json& j, int slots, bool allow_log) {
    if (!j.is_array()) throw Error("ode_parser", "'F' must be an array of monomials or an expression string");
    std::vector<Monomial> terms;
    for (const auto& m : j) {
        if (!m.is_object() || !m.contains("c") || !m.contains("y"))
            throw Error("ode_parser", "monomial needs 'c' and 'y' fields: " + m.dump());
        for (const auto& [key, value] : m.items())
            if (key != "c" && key != "x" && key != "t" && key != "y")
                throw Error("ode_parser", "unknown monomial field '" + key + "'");
        Monomial mono;
        mono.coeff = parse_scalar(m["c"]);
        mono.x_pow = m.contains("x") ? require_int(m["x"], "exponent 'x'") : 0;
        mono.t_pow = m.contains("t") ? require_int(m["t"], "exponent 't'") : 0;
        if (mono.t_pow != 0 && !allow_log) throw Error("ode_parser", "ln x (t) may not appear in F");
        if (!m["y"].is_array()) throw Error("ode_parser", "'y' must be an array of exponents");
        for (const auto& q : m["y"]) mono.y_pows.push_back(require_int(q, "exponent in 'y'"));
        if (static_cast<int>(mono.y_pows.size()) != slots)
            throw Error("ode_parser", "y exponent list has length " + std::to_string(mono.y_pows.size()) +
                                          ", expected order+1 = " + std::to_string(slots));
        terms.push_back(std::move(mono));
    }
    return OdePolynomial(slots, std::move(terms));
}

OdeProblem parse_problem(const Json& doc) {
    if (!doc.is_object()) throw Error("ode_parser", "problem document must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (key != "name" && key != "order" && key != "F" && key != "bindings" && key != "seed" && key != "params")
            throw Error("ode_parser", "unknown problem field '" + key + "'");
    OdeProblem p;
    p.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "unnamed";
    if (!doc.contains("order")) throw Error("ode_parser", "missing 'order'");
    int order = require_int(doc["order"], "'order'");
    if (order < 1) throw Error("ode_parser", "'order' must be at least 1");
    if (!doc.contains("F")) throw Error("ode_parser", "missing 'F'");

    Bindings bindings;
    if (doc.contains("bindings")) {
        if (!doc["bindings"].is_object()) throw Error("ode_parser", "'bindings' must be an object");
        for (const auto& [name, value] : doc["bindings"].items()) bindings[name] = parse_scalar(value);
    }
    if (doc["F"].is_string())
        p.F = parse_expression(doc["F"].get<std::string>(), order, bindings);
    else
        p.F = monomials_from_json(doc["F"], order + 1, false);
    if (p.F.is_zero()) throw Error("ode_parser", "F is identically zero");

    if (doc.contains("seed"))
        p.seed = series_from_json(doc["seed"]);
    else
        p.seed = DulacSeries(0);
    if (p.seed.is_exact()) throw Error("ode_parser", "seed must state its truncation 'trunc'");

    if (doc.contains("params")) {
        if (!doc["params"].is_object()) throw Error("ode_parser", "'params' must be an object");
        for (const auto& [key, value] : doc["params"].items()) {
            int k;
            try {
                k = std::stoi(key);
            } catch (const std::exception&) {
                throw Error("ode_parser", "params key '" + key + "' is not an order");
            }
            std::vector<GaussianRational> values;
            if (value.is_array())
                for (const auto& v : value) values.push_back(parse_scalar(v));
            else
                values.push_back(parse_scalar(value));
            p.params[k] = std::move(values);
        }
    }
    return p;
}

Json problem_to_json(const OdeProblem& p) {
    Json out;
    out["name"] = p.name;
    out["order"] = p.order();
    out["F"] = monomials_to_json(p.F);
    out["seed"] = series_to_json(p.seed);
    if (!p.params.empty()) {
        Json params = Json::object();
        for (const auto& [k, values] : p.params) {
            Json arr = Json::array();
            for (const auto& v : values) arr.push_back(format_scalar(v));
            params[std::to_string(k)] = arr;
        }
        out["params"] = params;
    }
    return out;
}

void parse_param_assignment(std::string_view text, ResonanceParams& params) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos) throw Error("cli", "parameter must look like k=value");
    int k;
    try {
        k = std::stoi(std::string(text.substr(0, eq)));
    } catch (const std::exception&) {
        throw Error("cli", "parameter order in '" + std::string(text) + "' is not an integer");
    }
    std::vector<GaussianRational> values;
    std::string_view rest = text.substr(eq + 1);
    while (true) {
        auto comma = rest.find(',');
        values.emplace_back(parse_rational(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    params[k] = std::move(values);
}

}  // namespace dulac
