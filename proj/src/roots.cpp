#include "dulac/roots.hpp"

#include <numeric>

namespace dulac {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly deriv(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q(std::max(0, deg(a) - deg(b) + 1), Rational(0));
    while (!a.empty() && deg(a) >= deg(b)) {
        int shift = deg(a) - deg(b);
        Rational f = a.back() / b.back();
        q[shift] = f;
        for (int i = 0; i <= deg(b); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

QPoly monic(QPoly p) {
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

int sign_at_infinity(const QPoly& p, bool negative) {
    int s = sgn(p.back());
    return (negative && deg(p) % 2 == 1) ? -s : s;
}

// Distinct real roots via a Sturm chain.
int distinct_real_roots(const QPoly& p) {
    if (deg(p) < 1) return 0;
    std::vector<QPoly> chain{p, deriv(p)};
    while (true) {
        QPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    auto variations = [&](bool negative) {
        int v = 0;
        int last = 0;
        for (const auto& q : chain) {
            int s = sign_at_infinity(q, negative);
            if (s != 0 && last != 0 && s != last) ++v;
            if (s != 0) last = s;
        }
        return v;
    };
    return variations(true) - variations(false);
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
    Complex acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

}  // namespace

int real_root_count(const std::vector<Rational>& p_in) {
    QPoly f = p_in;
    trim(f);
    if (deg(f) < 1) return 0;
    // Yun's square-free decomposition: f = prod s_i^i.
    QPoly a0 = gcd(f, deriv(f));
    QPoly b = divmod(f, a0).first;
    QPoly c = divmod(deriv(f), a0).first;
    QPoly d = c;
    {
        QPoly bd = deriv(b);
        d.resize(std::max(d.size(), bd.size()), Rational(0));
        for (std::size_t i = 0; i < bd.size(); ++i) d[i] -= bd[i];
        trim(d);
    }
    int total = 0;
    for (int i = 1; deg(b) >= 1; ++i) {
        QPoly s = gcd(b, d);
        total += i * distinct_real_roots(s);
        b = divmod(b, s).first;
        c = divmod(d, s).first;
        QPoly bd = deriv(b);
        d = c;
        d.resize(std::max(d.size(), bd.size()), Rational(0));
        for (std::size_t k = 0; k < bd.size(); ++k) d[k] -= bd[k];
        trim(d);
    }
    return total;
}

int imaginary_axis_root_count(const LogPoly& q) {
    if (q.is_zero()) throw Error("roots", "zero polynomial has no finite root set");
    // h(y) = q(iy) = A(y) + i B(y); common real roots of A and B are the
    // imaginary-axis roots of q.
    QPoly A, B;
    GaussianRational ipow(1);
    for (const auto& c : q.coeffs()) {
        GaussianRational v = c * ipow;
        A.push_back(v.re());
        B.push_back(v.im());
        ipow *= GaussianRational(0, 1);
    }
    trim(A);
    trim(B);
    QPoly g = A.empty() ? monic(B) : (B.empty() ? monic(A) : gcd(A, B));
    return real_root_count(g);
}

std::vector<RootEnclosure> polynomial_roots(const LogPoly& p) {
    const int n = p.degree();
    if (n < 1) return {};
    std::vector<Complex> c;
    for (const auto& v : p.coeffs()) c.push_back(to_complex(v));
    std::vector<Complex> dc;
    for (int i = 1; i <= n; ++i) dc.push_back(c[i] * Complex(static_cast<long>(i)));

    const unsigned prec = precision_bits();
    const Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(prec) + 8);

    std::vector<Complex> z(n);
    if (n == 1) {
        z[0] = -c[0] / c[1];
    } else {
        Real lead = abs(c[n]);
        Real bound(0);
        for (int i = 0; i < n; ++i) bound = std::max<Real>(bound, abs(c[i]) / lead);
        bound += 1;
        Complex center = -c[n - 1] / (c[n] * Complex(static_cast<long>(n)));
        const Real two_pi = 2 * boost::multiprecision::acos(Real(-1));
        for (int k = 0; k < n; ++k)
            z[k] = center + polar(bound, two_pi * k / n + Real(0.4));
        for (int iter = 0; iter < 2000; ++iter) {
            Real biggest(0);
            for (int i = 0; i < n; ++i) {
                Complex pv = horner(c, z[i]);
                if (is_zero(pv)) continue;
                Complex ratio = pv / horner(dc, z[i]);
                Complex sum(0);
                for (int j = 0; j < n; ++j)
                    if (j != i) sum += Complex(1) / (z[i] - z[j]);
                Complex w = ratio / (Complex(1) - ratio * sum);
                z[i] -= w;
                Real scale = std::max<Real>(Real(1), abs(z[i]));
                biggest = std::max<Real>(biggest, abs(w) / scale);
            }
            if (biggest < eps) break;
        }
    }

    // Inclusion radii, with the evaluation error of p folded in.
    std::vector<RootEnclosure> out(n);
    const Real unit = boost::multiprecision::ldexp(Real(1), -static_cast<int>(prec) + 4);
    const Real lead = abs(c[n]);
    for (int i = 0; i < n; ++i) {
        Real magnitude(0);
        Real zabs = abs(z[i]);
        Real zp(1);
        for (int k = 0; k <= n; ++k) {
            magnitude += abs(c[k]) * zp;
            zp *= zabs;
        }
        Real err = abs(horner(c, z[i])) + unit * (n + 1) * magnitude;
        Real denom = lead;
        for (int j = 0; j < n; ++j)
            if (j != i) denom *= abs(z[i] - z[j]);
        out[i].center = z[i];
        out[i].radius = denom == 0 ? std::numeric_limits<Real>::infinity() : n * err / denom * (1 + unit);
    }

    // Connected components of the disc union.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (abs(out[i].center - out[j].center) <= out[i].radius + out[j].radius) parent[find(i)] = find(j);
    for (int i = 0; i < n; ++i) out[i].component = find(i);
    return out;
}

}  // namespace dulac
