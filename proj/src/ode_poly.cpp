#include "dulac/ode_poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dulac {

namespace {

struct Key {
    int x;
    int t;
    std::vector<int> y;
    friend auto operator<=>(const Key&, const Key&) = default;
};

Key key_of(const Monomial& m) { return {m.x_pow, m.t_pow, m.y_pows}; }

}  // namespace

int Monomial::y_degree() const { return std::accumulate(y_pows.begin(), y_pows.end(), 0); }

OdePolynomial::OdePolynomial(int slots, std::vector<Monomial> terms) : slots_(slots), terms_(std::move(terms)) {
    for (const auto& m : terms_) {
        if (static_cast<int>(m.y_pows.size()) != slots_)
            throw Error("ode_parser", "monomial has " + std::to_string(m.y_pows.size()) + " y exponents, expected " +
                                          std::to_string(slots_));
        if (m.x_pow < 0 || m.t_pow < 0 || std::any_of(m.y_pows.begin(), m.y_pows.end(), [](int q) { return q < 0; }))
            throw Error("ode_parser", "negative exponent in monomial");
    }
    canonicalize();
}

OdePolynomial OdePolynomial::constant(int slots, const GaussianRational& c) {
    return OdePolynomial(slots, {Monomial{c, 0, 0, std::vector<int>(slots, 0)}});
}

OdePolynomial OdePolynomial::x_power(int slots, int p) {
    return OdePolynomial(slots, {Monomial{1, p, 0, std::vector<int>(slots, 0)}});
}

OdePolynomial OdePolynomial::t_power(int slots, int p) {
    return OdePolynomial(slots, {Monomial{1, 0, p, std::vector<int>(slots, 0)}});
}

OdePolynomial OdePolynomial::slot(int slots, int j) {
    std::vector<int> y(slots, 0);
    y.at(j) = 1;
    return OdePolynomial(slots, {Monomial{1, 0, 0, std::move(y)}});
}

void OdePolynomial::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Monomial& a, const Monomial& b) { return key_of(a) < key_of(b); });
    std::vector<Monomial> merged;
    for (auto& m : terms_) {
        if (!merged.empty() && key_of(merged.back()) == key_of(m))
            merged.back().coeff += m.coeff;
        else
            merged.push_back(std::move(m));
    }
    std::erase_if(merged, [](const Monomial& m) { return m.coeff.is_zero(); });
    terms_ = std::move(merged);
}

int OdePolynomial::degree_t() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.t_pow);
    return d;
}

int OdePolynomial::degree_y() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.y_degree());
    return d;
}

int OdePolynomial::min_x_pow() const {
    int d = std::numeric_limits<int>::max();
    for (const auto& m : terms_) d = std::min(d, m.x_pow);
    return d;
}

OdePolynomial& OdePolynomial::operator+=(const OdePolynomial& o) {
    if (o.slots_ != slots_) throw Error("ode_parser", "slot count mismatch");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

OdePolynomial& OdePolynomial::operator-=(const OdePolynomial& o) { return *this += -o; }

OdePolynomial& OdePolynomial::operator*=(const GaussianRational& s) {
    for (auto& m : terms_) m.coeff *= s;
    canonicalize();
    return *this;
}

OdePolynomial OdePolynomial::operator-() const {
    OdePolynomial r = *this;
    for (auto& m : r.terms_) m.coeff = -m.coeff;
    return r;
}

OdePolynomial operator*(const OdePolynomial& a, const OdePolynomial& b) {
    if (a.slots_ != b.slots_) throw Error("ode_parser", "slot count mismatch");
    std::map<Key, GaussianRational> acc;
    for (const auto& ma : a.terms_) {
        for (const auto& mb : b.terms_) {
            Key k{ma.x_pow + mb.x_pow, ma.t_pow + mb.t_pow, ma.y_pows};
            for (std::size_t j = 0; j < k.y.size(); ++j) k.y[j] += mb.y_pows[j];
            acc[k] += ma.coeff * mb.coeff;
        }
    }
    std::vector<Monomial> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.push_back(Monomial{c, k.x, k.t, k.y});
    OdePolynomial r(a.slots_);
    r.terms_ = std::move(out);  // map order is already canonical
    return r;
}

OdePolynomial OdePolynomial::pow(int e) const {
    if (e < 0) throw Error("ode_parser", "negative power");
    OdePolynomial result = constant(slots_, 1);
    OdePolynomial base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

OdePolynomial partial(const OdePolynomial& F, int j) {
    if (j < 0 || j >= F.slots()) throw Error("ode_parser", "partial: index y" + std::to_string(j) + " out of range");
    std::vector<Monomial> out;
    for (const auto& m : F.terms()) {
        int q = m.y_pows[j];
        if (q == 0) continue;
        Monomial d = m;
        d.coeff *= GaussianRational(q);
        d.y_pows[j] -= 1;
        out.push_back(std::move(d));
    }
    return OdePolynomial(F.slots(), std::move(out));
}

OdePolynomial compose(const OdePolynomial& F, const std::vector<OdePolynomial>& images) {
    if (static_cast<int>(images.size()) != F.slots()) throw Error("ode_parser", "compose: wrong number of images");
    const int slots = images.empty() ? 1 : images.front().slots();
    // Power cache per slot.
    std::vector<std::vector<OdePolynomial>> powers(images.size());
    auto power = [&](std::size_t j, int q) -> const OdePolynomial& {
        auto& cache = powers[j];
        if (cache.empty()) cache.push_back(OdePolynomial::constant(slots, 1));
        while (static_cast<int>(cache.size()) <= q) cache.push_back(cache.back() * images[j]);
        return cache[q];
    };
    OdePolynomial result(slots);
    for (const auto& m : F.terms()) {
        OdePolynomial term(slots, {Monomial{m.coeff, m.x_pow, m.t_pow, std::vector<int>(slots, 0)}});
        for (std::size_t j = 0; j < images.size(); ++j)
            if (m.y_pows[j] > 0) term = term * power(j, m.y_pows[j]);
        result += term;
    }
    return result;
}

std::string to_expression(const OdePolynomial& F) {
    if (F.is_zero()) return "0";
    std::string out;
    for (const auto& m : F.terms()) {
        std::vector<std::string> factors;
        auto push = [&](const std::string& name, int p) {
            if (p == 1) factors.push_back(name);
            if (p > 1) factors.push_back(name + "^" + std::to_string(p));
        };
        push("x", m.x_pow);
        push("t", m.t_pow);
        for (std::size_t j = 0; j < m.y_pows.size(); ++j) push("y" + std::to_string(j), m.y_pows[j]);

        std::string c = to_string(m.coeff);
        bool negative = m.coeff.is_real() && sgn(m.coeff.re()) < 0;
        if (negative) c = c.substr(1);
        std::string body;
        if (factors.empty()) {
            body = c;
        } else {
            if (c != "1") body = c + "*";
            for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
        }
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out;
}

}  // namespace dulac
