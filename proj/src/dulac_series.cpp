#include "dulac/dulac_series.hpp"

namespace dulac {

Json series_to_json(const DulacSeries& s) {
    Json out = Json::object();
    if (!s.is_exact()) out["trunc"] = s.trunc();
    Json terms = Json::array();
    for (const auto& [k, p] : s.terms()) {
        Json coeffs = Json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(format_scalar(c));
        terms.push_back({{"k", k}, {"p", coeffs}});
    }
    out["terms"] = terms;
    return out;
}

DulacSeries series_from_json(const Json& j) {
    if (!j.is_object()) throw Error("dulac_algebra", "series must be a JSON object");
    int trunc = kExactTrunc;
    if (j.contains("trunc")) {
        if (!j["trunc"].is_number_integer() || j["trunc"].get<long>() < 0)
            throw Error("dulac_algebra", "series 'trunc' must be a nonnegative integer");
        trunc = j["trunc"].get<int>();
    }
    DulacSeries s(trunc);
    if (!j.contains("terms") || !j["terms"].is_array()) throw Error("dulac_algebra", "series needs a 'terms' array");
    for (const auto& term : j["terms"]) {
        if (!term.is_object() || !term.contains("k") || !term["k"].is_number_integer() || !term.contains("p") ||
            !term["p"].is_array())
            throw Error("dulac_algebra", "series term must be {\"k\": int, \"p\": [...]}");
        int k = term["k"].get<int>();
        if (k < 0) throw Error("dulac_algebra", "negative series order");
        if (k > trunc) throw Error("dulac_algebra", "series term k=" + std::to_string(k) + " exceeds trunc");
        if (!s.coeff(k).is_zero()) throw Error("dulac_algebra", "duplicate series order " + std::to_string(k));
        std::vector<GaussianRational> coeffs;
        for (const auto& c : term["p"]) coeffs.push_back(parse_scalar(c));
        s.set(k, LogPoly(std::move(coeffs)));
    }
    return s;
}

namespace {

std::string latex_scalar(const GaussianRational& c) {
    auto frac = [](const Rational& q) {
        if (q.get_den() == 1) return q.get_num().get_str();
        return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
    };
    if (c.is_real()) return frac(c.re());
    std::string im = frac(c.im());
    return "\\left(" + frac(c.re()) + (sgn(c.im()) < 0 ? "" : "+") + im + "i\\right)";
}

}  // namespace

std::string log_poly_to_latex(const LogPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const auto& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        bool negative = c.is_real() && sgn(c.re()) < 0;
        std::string mag = latex_scalar(negative ? -c : c);
        std::string power = i == 0 ? "" : (i == 1 ? var : "\\left(" + var + "\\right)^{" + std::to_string(i) + "}");
        std::string body;
        if (power.empty())
            body = mag;
        else
            body = (mag == "1" ? "" : mag + " ") + power;
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out;
}

std::string series_to_latex(const DulacSeries& s) {
    std::string out;
    for (const auto& [k, p] : s.terms()) {
        std::string coeff = log_poly_to_latex(p);
        bool single = p.coeffs().size() == 1 || (std::count_if(p.coeffs().begin(), p.coeffs().end(),
                                                               [](const auto& c) { return !c.is_zero(); }) == 1);
        std::string xpow = k == 0 ? "" : (k == 1 ? "x" : "x^{" + std::to_string(k) + "}");
        std::string term;
        if (xpow.empty())
            term = coeff;
        else if (coeff == "1")
            term = xpow;
        else if (single)
            term = coeff + " " + xpow;
        else
            term = "\\left(" + coeff + "\\right) " + xpow;
        out += out.empty() ? term : " + " + term;
    }
    if (out.empty()) out = "0";
    if (!s.is_exact()) out += " + O\\left(x^{" + std::to_string(s.trunc() + 1) + "}\\right)";
    return out;
}

}  // namespace dulac
