#ifndef DULAC_DULAC_SERIES_HPP
#define DULAC_DULAC_SERIES_HPP

#include "dulac/log_poly.hpp"
#include "dulac/ode_poly.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

namespace dulac {

// Truncation of a series known exactly (a finite Dulac polynomial).
inline constexpr int kExactTrunc = std::numeric_limits<int>::max() / 4;

inline int saturating_add(int a, int b) {
    long s = static_cast<long>(a) + b;
    return s >= kExactTrunc ? kExactTrunc : static_cast<int>(s);
}

// Valuation of a truncated series.  For a series whose known part is zero the
// valuation is only bounded below ("value >= trunc + 1"); for the exact zero
// series value == kExactTrunc.
struct Valuation {
    int value = 0;
    bool lower_bound = false;

    bool is_infinite() const { return value >= kExactTrunc; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

template <class T>
T from_exact(const GaussianRational& v);
template <>
inline GaussianRational from_exact<GaussianRational>(const GaussianRational& v) {
    return v;
}
template <>
inline Complex from_exact<Complex>(const GaussianRational& v) {
    return to_complex(v);
}

// Sum_{k <= trunc} P_k(t) x^k.  Orders above trunc are unknown.  Zero
// coefficients are never stored.
template <class T>
class DulacSeriesT {
public:
    using Poly = LogPolyT<T>;

    DulacSeriesT() = default;
    explicit DulacSeriesT(int trunc) : trunc_(trunc) {}
    DulacSeriesT(std::map<int, Poly> terms, int trunc) : trunc_(trunc) {
        for (auto& [k, p] : terms) set(k, std::move(p));
    }

    static DulacSeriesT constant(T c, int trunc = kExactTrunc) {
        DulacSeriesT s(trunc);
        s.set(0, Poly::constant(std::move(c)));
        return s;
    }

    int trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExactTrunc; }
    const std::map<int, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient of x^k (zero when absent).  Asking beyond the truncation is
    // a logic error.
    const Poly& coeff(int k) const {
        if (k > trunc_) throw Error("dulac_algebra", "order " + std::to_string(k) + " beyond truncation");
        static const Poly zero;
        auto it = terms_.find(k);
        return it == terms_.end() ? zero : it->second;
    }

    void set(int k, Poly p) {
        if (k < 0) throw Error("dulac_algebra", "negative order");
        if (k > trunc_) throw Error("dulac_algebra", "order " + std::to_string(k) + " beyond truncation");
        if (p.is_zero())
            terms_.erase(k);
        else
            terms_[k] = std::move(p);
    }

    DulacSeriesT truncated(int n) const {
        DulacSeriesT r(std::min(n, trunc_));
        for (const auto& [k, p] : terms_)
            if (k <= r.trunc_) r.terms_.emplace(k, p);
        return r;
    }

    Valuation valuation() const {
        if (!terms_.empty()) return {terms_.begin()->first, false};
        if (is_exact()) return {kExactTrunc, false};
        return {saturating_add(trunc_, 1), true};
    }

    // Largest t-degree among stored coefficients.
    int max_log_degree() const {
        int d = kZeroDegree;
        for (const auto& [k, p] : terms_) d = std::max(d, p.degree());
        return d;
    }

    DulacSeriesT& operator+=(const DulacSeriesT& o) {
        trunc_ = std::min(trunc_, o.trunc_);
        std::erase_if(terms_, [&](const auto& kv) { return kv.first > trunc_; });
        for (const auto& [k, p] : o.terms_)
            if (k <= trunc_) set(k, coeff(k) + p);
        return *this;
    }
    DulacSeriesT& operator-=(const DulacSeriesT& o) { return *this += -o; }
    friend DulacSeriesT operator+(DulacSeriesT a, const DulacSeriesT& b) { return a += b; }
    friend DulacSeriesT operator-(DulacSeriesT a, const DulacSeriesT& b) { return a -= b; }
    DulacSeriesT operator-() const {
        DulacSeriesT r = *this;
        for (auto& [k, p] : r.terms_) p = -p;
        return r;
    }
    DulacSeriesT& operator*=(const T& s) {
        if (dulac::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, p] : terms_) p *= s;
        return *this;
    }

    // Multiplication by x^l.
    DulacSeriesT shifted(int l) const {
        DulacSeriesT r(saturating_add(trunc_, l));
        for (const auto& [k, p] : terms_) r.terms_.emplace(k + l, p);
        return r;
    }

    friend bool operator==(const DulacSeriesT&, const DulacSeriesT&) = default;

private:
    int trunc_ = kExactTrunc;
    std::map<int, Poly> terms_;
};

using DulacSeries = DulacSeriesT<GaussianRational>;

template <class T>
DulacSeriesT<T> operator*(DulacSeriesT<T> a, const T& s) {
    return a *= s;
}

// Lower bound on the valuation used for truncation bookkeeping.
template <class T>
int valuation_bound(const DulacSeriesT<T>& s) {
    return s.valuation().value;
}

// Truncated Cauchy product.  The result asserts every order it reports:
// trunc = min(trunc_a + val(b), trunc_b + val(a)), further capped by max_order.
template <class T>
DulacSeriesT<T> mul(const DulacSeriesT<T>& a, const DulacSeriesT<T>& b, int max_order = kExactTrunc) {
    int trunc = std::min({saturating_add(a.trunc(), valuation_bound(b)),
                          saturating_add(b.trunc(), valuation_bound(a)), max_order});
    DulacSeriesT<T> r(trunc);
    std::map<int, LogPolyT<T>> acc;
    for (const auto& [i, p] : a.terms()) {
        if (i > trunc) break;
        for (const auto& [j, q] : b.terms()) {
            if (i + j > trunc) break;
            acc[i + j] += p * q;
        }
    }
    for (auto& [k, p] : acc) r.set(k, std::move(p));
    return r;
}

template <class T>
DulacSeriesT<T> operator*(const DulacSeriesT<T>& a, const DulacSeriesT<T>& b) {
    return mul(a, b);
}

// delta = x d/dx acts on P_k(ln x) x^k as x^k (k + d/dt) P_k.
template <class T>
DulacSeriesT<T> delta(const DulacSeriesT<T>& s) {
    DulacSeriesT<T> r(s.trunc());
    for (const auto& [k, p] : s.terms()) r.set(k, shift_power(p, T(k), 1));
    return r;
}

template <class T>
DulacSeriesT<T> delta_power(const DulacSeriesT<T>& s, int j) {
    DulacSeriesT<T> r(s.trunc());
    for (const auto& [k, p] : s.terms()) r.set(k, shift_power(p, T(k), j));
    return r;
}

template <class U, class T, class F>
DulacSeriesT<U> map_coeffs(const DulacSeriesT<T>& s, F&& f) {
    DulacSeriesT<U> r(s.trunc());
    for (const auto& [k, p] : s.terms()) r.set(k, map_coeffs<U>(p, f));
    return r;
}

inline DulacSeriesT<Complex> to_complex(const DulacSeries& s) {
    return map_coeffs<Complex>(s, [](const GaussianRational& v) { return to_complex(v); });
}

namespace detail {

template <class T>
DulacSeriesT<T> horner(const std::vector<const Monomial*>& monos, int slot,
                       const std::vector<DulacSeriesT<T>>& tuple, int max_order) {
    if (slot < 0) {
        DulacSeriesT<T> r;
        for (const Monomial* m : monos) {
            if (m->x_pow > max_order) continue;
            DulacSeriesT<T> term;
            term.set(m->x_pow, LogPolyT<T>::monomial(from_exact<T>(m->coeff), m->t_pow));
            r += term;
        }
        return r;
    }
    int top = 0;
    for (const Monomial* m : monos) top = std::max(top, m->y_pows[slot]);
    std::vector<std::vector<const Monomial*>> groups(top + 1);
    for (const Monomial* m : monos) groups[m->y_pows[slot]].push_back(m);
    DulacSeriesT<T> acc = horner(groups[top], slot - 1, tuple, max_order);
    for (int q = top - 1; q >= 0; --q) {
        acc = mul(acc, tuple[slot], max_order);
        if (!groups[q].empty()) acc += horner(groups[q], slot - 1, tuple, max_order);
    }
    return acc;
}

}  // namespace detail

// F evaluated on an explicit tuple (y_0, ..., y_n) of series.
template <class T>
DulacSeriesT<T> substitute_tuple(const OdePolynomial& F, const std::vector<DulacSeriesT<T>>& tuple,
                                 int max_order = kExactTrunc) {
    if (static_cast<int>(tuple.size()) != F.slots())
        throw Error("dulac_algebra", "substitute: F expects " + std::to_string(F.slots()) + " y slots, got " +
                                         std::to_string(tuple.size()));
    std::vector<const Monomial*> monos;
    for (const auto& m : F.terms()) monos.push_back(&m);
    DulacSeriesT<T> r = detail::horner(monos, F.slots() - 1, tuple, max_order);
    if (r.trunc() > max_order) r = r.truncated(max_order);
    return r;
}

// F(x, s, delta s, ..., delta^n s), where the t variable of F (if any) is the
// t of the Dulac coefficients.  Nested Horner evaluation over y_n, ..., y_0.
template <class T>
DulacSeriesT<T> substitute(const OdePolynomial& F, const DulacSeriesT<T>& s, int max_order = kExactTrunc) {
    std::vector<DulacSeriesT<T>> tuple;
    tuple.reserve(F.slots());
    for (int j = 0; j < F.slots(); ++j) tuple.push_back(delta_power(s, j));
    return substitute_tuple(F, tuple, max_order);
}

// JSON form {"trunc": N, "terms": [{"k": k, "p": [c0, c1, ...]}, ...]};
// "trunc" is omitted for exact (finite) series.
Json series_to_json(const DulacSeries& s);
DulacSeries series_from_json(const Json& j);

// Display form, e.g. "1 + \left(-\ln x\right) x^{2} + O\left(x^{3}\right)".
std::string series_to_latex(const DulacSeries& s);
std::string log_poly_to_latex(const LogPoly& p, const std::string& var = "\\ln x");

}  // namespace dulac

#endif  // DULAC_DULAC_SERIES_HPP
