#ifndef DULAC_LOG_POLY_HPP
#define DULAC_LOG_POLY_HPP

#include "dulac/scalar.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace dulac {

// Degree reported for the zero polynomial (stands for -infinity).
inline constexpr int kZeroDegree = -1;

// Dense univariate polynomial c_0 + c_1 t + ... + c_d t^d.  The variable is
// the logarithmic symbol t = ln x (or a rescaled -eps*ln x); the same type
// also holds characteristic polynomials L(xi).  Stored normalized: the last
// coefficient of a nonzero polynomial is nonzero.
template <class T>
class LogPolyT {
public:
    LogPolyT() = default;
    explicit LogPolyT(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static LogPolyT constant(T v) { return LogPolyT(std::vector<T>{std::move(v)}); }
    static LogPolyT monomial(T v, int degree) {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = std::move(v);
        return LogPolyT(std::move(c));
    }
    // The polynomial t.
    static LogPolyT variable() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }

    // Coefficient of t^i; zero outside the stored range.
    T operator[](int i) const {
        if (i < 0 || i > degree()) return T(0);
        return c_[static_cast<std::size_t>(i)];
    }

    LogPolyT& operator+=(const LogPolyT& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    LogPolyT& operator-=(const LogPolyT& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    LogPolyT& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        normalize();
        return *this;
    }

    friend LogPolyT operator+(LogPolyT a, const LogPolyT& b) { return a += b; }
    friend LogPolyT operator-(LogPolyT a, const LogPolyT& b) { return a -= b; }
    friend LogPolyT operator*(LogPolyT a, const T& s) { return a *= s; }
    friend LogPolyT operator*(const T& s, LogPolyT a) { return a *= s; }
    LogPolyT operator-() const {
        LogPolyT r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend LogPolyT operator*(const LogPolyT& a, const LogPolyT& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (dulac::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return LogPolyT(std::move(out));
    }

    friend bool operator==(const LogPolyT& a, const LogPolyT& b) { return a.c_ == b.c_; }

    // Horner evaluation.
    T evaluate(const T& t) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

private:
    void normalize() {
        while (!c_.empty() && dulac::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using LogPoly = LogPolyT<GaussianRational>;

template <class T>
inline bool is_zero(const LogPolyT<T>& p) {
    return p.is_zero();
}

template <class U, class T, class F>
LogPolyT<U> map_coeffs(const LogPolyT<T>& p, F&& f) {
    std::vector<U> out;
    out.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) out.push_back(f(v));
    return LogPolyT<U>(std::move(out));
}

// d/dt.
template <class T>
LogPolyT<T> derive(const LogPolyT<T>& p) {
    if (p.degree() < 1) return {};
    std::vector<T> out;
    out.reserve(p.coeffs().size() - 1);
    for (int i = 1; i <= p.degree(); ++i) out.push_back(p.coeffs()[i] * T(i));
    return LogPolyT<T>(std::move(out));
}

// Coefficients of L(k + z) in powers of z, i.e. L^(i)(k)/i!, by repeated
// synthetic division.
template <class T>
std::vector<T> taylor_coefficients(const LogPolyT<T>& L, const T& k) {
    std::vector<T> c = L.coeffs();
    const int d = L.degree();
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j) c[j] += k * c[j + 1];
    return c;
}

// L(k + s*D) P, where D = d/dt, via the finite Taylor expansion of L at k.
template <class T>
LogPolyT<T> shifted_apply(const LogPolyT<T>& L, const T& k, const T& s, const LogPolyT<T>& P) {
    if (P.is_zero()) return {};
    std::vector<T> taylor = taylor_coefficients(L, k);
    LogPolyT<T> out;
    LogPolyT<T> dp = P;
    T spow(1);
    for (std::size_t i = 0; i < taylor.size() && !dp.is_zero(); ++i) {
        if (!dulac::is_zero(taylor[i])) out += dp * (taylor[i] * spow);
        dp = derive(dp);
        spow *= s;
    }
    return out;
}

// (k + D)^j P.
template <class T>
LogPolyT<T> shift_power(const LogPolyT<T>& P, const T& k, int j) {
    LogPolyT<T> out = P;
    for (int i = 0; i < j; ++i) out = out * k + derive(out);
    return out;
}

// 1-norm of the coefficient column, rounded upward.
inline Real lognorm(const LogPoly& p) {
    Real acc(0);
    for (const auto& c : p.coeffs()) acc = add_up(acc, abs_up(c));
    return acc;
}

// Same norm rounded downward (lower bound).
inline Real lognorm_down(const LogPoly& p) {
    Real acc(0);
    for (const auto& c : p.coeffs()) acc = add_down(acc, abs_down(c));
    return acc;
}

inline Real lognorm(const LogPolyT<UpperReal>& p) {
    Real acc(0);
    for (const auto& c : p.coeffs()) acc = add_up(acc, c.value());
    return acc;
}

inline Real lognorm_down(const LogPolyT<UpperReal>& p) {
    Real acc(0);
    for (const auto& c : p.coeffs()) acc = add_down(acc, c.value());
    return acc;
}

inline LogPolyT<Complex> to_complex(const LogPoly& p) {
    return map_coeffs<Complex>(p, [](const GaussianRational& v) { return to_complex(v); });
}

}  // namespace dulac

#endif  // DULAC_LOG_POLY_HPP
