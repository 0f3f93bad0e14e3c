#include "dulac/reducer.hpp"

#include <cmath>

namespace dulac {

namespace {

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational int_power(int base, int e) {
    mpz_class r;
    mpz_class b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(r);
}

long ceil_real(const Real& v) { return boost::multiprecision::ceil(v).convert_to<long>(); }

// A finite Dulac polynomial as an element of the coefficient ring of F.
OdePolynomial as_poly(const DulacSeries& s, int slots) {
    std::vector<Monomial> terms;
    for (const auto& [k, p] : s.terms())
        for (int i = 0; i <= p.degree(); ++i)
            if (!p[i].is_zero()) terms.push_back({p[i], k, i, std::vector<int>(slots, 0)});
    return OdePolynomial(slots, std::move(terms));
}

}  // namespace

LogPoly shifted_characteristic(const std::vector<GaussianRational>& a, int ell) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<GaussianRational> out(a.size(), GaussianRational(0));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i) out[i] += a[j] * GaussianRational(binomial(j, i) * int_power(ell, j - i));
    return LogPoly(std::move(out));
}

EllChoice choose_ell_detailed(const Certificate& cert) {
    if (cert.a.empty() || cert.a.back().is_zero())
        throw Error("reducer", "choose_ell needs a certificate with a_n != 0");
    EllChoice out;
    const int floor_ell = cert.m + 1;
    LogPoly p(cert.a);
    if (p.degree() < 1) {
        out.ell = floor_ell;
        return out;
    }
    out.roots = polynomial_roots(p);
    Real hi = -std::numeric_limits<Real>::infinity();
    for (const auto& r : out.roots) {
        if (!boost::multiprecision::isfinite(r.radius))
            throw Error("reducer", "root enclosures could not be certified; raise the precision");
        hi = std::max<Real>(hi, r.center.re + 2 * r.radius);
    }
    out.max_real_part_upper = hi;
    const long ell_hi = ceil_real(hi);
    out.ell = static_cast<int>(std::max<long>(floor_ell, ell_hi));

    // The guard may overshoot by one when the largest real part is an integer.
    // Accept ell_hi - 1 when every root that could lie at or right of it is
    // proven to sit on the line Re = ell_hi - 1 by an exact count.
    const long cand = ell_hi - 1;
    if (cand < floor_ell) return out;
    std::vector<bool> touches(out.roots.size(), false);
    for (std::size_t i = 0; i < out.roots.size(); ++i)
        touches[i] = out.roots[i].center.re + out.roots[i].radius >= Real(cand);
    int in_components = 0;
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        bool linked = false;
        for (std::size_t j = 0; j < out.roots.size() && !linked; ++j)
            linked = touches[j] && out.roots[j].component == out.roots[i].component;
        if (linked) ++in_components;
    }
    const int on_axis = imaginary_axis_root_count(shifted_characteristic(cert.a, static_cast<int>(cand)));
    if (on_axis == in_components) {
        out.ell = static_cast<int>(cand);
        out.axis_verified = true;
    }
    return out;
}

int choose_ell(const Certificate& cert) { return choose_ell_detailed(cert).ell; }

ReducedProblem reduce(const OdeProblem& problem, const Certificate& cert, int ell) {
    if (cert.verdict != Verdict::Pass) throw Error("reducer", "certificate did not pass: " + cert.reason);
    if (ell <= cert.m) throw Error("reducer", "ell must exceed m = " + std::to_string(cert.m));
    if (problem.seed.trunc() < ell)
        throw Error("reducer", "seed known only through order " + std::to_string(problem.seed.trunc()) +
                                   ", need order " + std::to_string(ell));
    const int n = problem.order();
    const int slots = n + 1;
    const int m = cert.m;
    const DulacSeries phi = problem.seed.truncated(ell);

    // y_j -> delta^j phi_ell + x^ell u_j.
    std::vector<OdePolynomial> images;
    for (int j = 0; j <= n; ++j) {
        OdePolynomial u(slots, {Monomial{GaussianRational(1), ell, 0, [&] {
                                             std::vector<int> e(slots, 0);
                                             e[j] = 1;
                                             return e;
                                         }()}});
        images.push_back(as_poly(delta_power(phi, j), slots) + u);
    }
    const OdePolynomial G = compose(problem.F, images);

    const int base = m + ell;
    std::vector<Monomial> rest;
    for (const auto& mono : G.terms()) {
        const int d = mono.y_degree();
        if (d == 0) {
            if (mono.x_pow <= base)
                throw Error("reducer", "seed inconsistent at order " + std::to_string(mono.x_pow));
        } else if (mono.x_pow < base) {
            throw Error("reducer", "u-dependent term below order " + std::to_string(base) +
                                       "; certificate does not match the seed");
        } else if (mono.x_pow == base) {
            int j = 0;
            while (mono.y_pows[j] == 0) ++j;
            if (d != 1 || mono.t_pow != 0 || !(mono.coeff == cert.a[j]))
                throw Error("reducer", "linear part at order " + std::to_string(base) +
                                           " disagrees with the certificate");
            continue;
        }
        Monomial shifted = mono;
        shifted.x_pow -= base + 1;
        rest.push_back(std::move(shifted));
    }
    // Every a_j with a nonzero value must have appeared; a mismatch means the
    // certificate came from another seed.
    for (int j = 0; j <= n; ++j) {
        if (cert.a[j].is_zero()) continue;
        std::vector<int> e(slots, 0);
        e[j] = 1;
        bool found = false;
        for (const auto& mono : G.terms())
            found = found || (mono.x_pow == base && mono.t_pow == 0 && mono.y_pows == e);
        if (!found) throw Error("reducer", "linear coefficient a_" + std::to_string(j) + " missing at order " +
                                               std::to_string(base));
    }

    // u_j = (delta + ell)^j u = sum_i C(j,i) ell^(j-i) delta^i u.
    std::vector<OdePolynomial> v;
    for (int j = 0; j <= n; ++j) {
        std::vector<Monomial> terms;
        for (int i = 0; i <= j; ++i) {
            std::vector<int> e(slots, 0);
            e[i] = 1;
            terms.push_back({GaussianRational(binomial(j, i) * int_power(ell, j - i)), 0, 0, e});
        }
        v.emplace_back(slots, std::move(terms));
    }

    ReducedProblem out;
    out.ell = ell;
    out.m = m;
    out.a = cert.a;
    out.L = shifted_characteristic(cert.a, ell);
    out.M = -compose(OdePolynomial(slots, std::move(rest)), v);
    out.C = out.M.degree_t();
    return out;
}

Json reduced_to_json(const ReducedProblem& r) {
    Json out;
    out["ell"] = r.ell;
    Json L = Json::array();
    for (const auto& c : r.L.coeffs()) L.push_back(format_scalar(c));
    out["L"] = L;
    Json M = Json::array();
    for (const auto& mono : r.M.terms()) {
        Json j;
        j["c"] = format_scalar(mono.coeff);
        j["x"] = mono.x_pow;
        j["t"] = mono.t_pow;
        j["u"] = mono.y_pows;
        M.push_back(std::move(j));
    }
    out["M"] = M;
    out["C"] = r.C;
    out["m"] = r.m;
    Json a = Json::array();
    for (const auto& c : r.a) a.push_back(format_scalar(c));
    out["a"] = a;
    return out;
}

}  // namespace dulac
