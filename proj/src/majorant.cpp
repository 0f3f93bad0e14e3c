#include "dulac/majorant.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace dulac {

namespace {

namespace mp = boost::multiprecision;

Matrix identity(int size, const GaussianRational& d = GaussianRational(1)) {
    Matrix m(size, std::vector<GaussianRational>(size, GaussianRational(0)));
    for (int i = 0; i < size; ++i) m[i][i] = d;
    return m;
}

bool all_real(const Matrix& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (!v.is_real()) return false;
    return true;
}

Rational matrix_norm1_exact(const Matrix& a) {
    Rational best(0);
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (std::size_t j = 0; j < cols; ++j) {
        Rational s(0);
        for (const auto& row : a) s += abs(row[j].re());
        if (s > best) best = s;
    }
    return best;
}

Rational rational_power(const Rational& b, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Real pow_up(const Real& b, int e) {
    Real r(1);
    for (int i = 0; i < e; ++i) r = mul_up(r, b);
    return r;
}

// One-ulp-scale inflation for transcendental operations without directed
// rounding.
Real inflate(const Real& v) {
    const Real u = mp::ldexp(Real(1), -static_cast<int>(precision_bits()) + 8);
    return v >= 0 ? mul_up(v, add_up(Real(1), u)) : mul_up(v, add_down(Real(1), -u));
}

UpperPoly apply_inverse_shift(const UpperPoly& Q, const UpperReal& eps_over_k, const UpperReal& inv_k) {
    // (k - eps D)^{-1} Q = (1/k) sum_i (eps/k)^i D^i Q.
    UpperPoly out;
    UpperPoly term = Q;
    UpperReal scale = inv_k;
    while (!term.is_zero()) {
        out += term * scale;
        term = derive(term);
        scale = scale * eps_over_k;
    }
    return out;
}

}  // namespace

Matrix nilpotent_matrix(int nu, const Rational& eps) {
    Matrix m = identity(nu + 1, GaussianRational(0));
    for (int i = 0; i < nu; ++i) m[i][i + 1] = GaussianRational(eps * (i + 1));
    return m;
}

Matrix matrix_product(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    const std::size_t p = b.empty() ? 0 : b.front().size();
    Matrix out(n, std::vector<GaussianRational>(p, GaussianRational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Matrix matrix_polynomial(const LogPoly& L, int k, const Matrix& N) {
    const int size = static_cast<int>(N.size());
    Matrix shift = identity(size, GaussianRational(k));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) shift[i][j] -= N[i][j];
    Matrix acc = identity(size, L[L.degree()]);
    for (int i = L.degree() - 1; i >= 0; --i) {
        acc = matrix_product(acc, shift);
        for (int d = 0; d < size; ++d) acc[d][d] += L[i];
    }
    return acc;
}

Matrix upper_triangular_inverse(const Matrix& a) {
    const int n = static_cast<int>(a.size());
    Matrix inv = identity(n, GaussianRational(0));
    for (int i = 0; i < n; ++i)
        if (a[i][i].is_zero()) throw Error("majorant", "singular triangular matrix");
    for (int j = 0; j < n; ++j) {
        inv[j][j] = GaussianRational(1) / a[j][j];
        for (int i = j - 1; i >= 0; --i) {
            GaussianRational s(0);
            for (int l = i + 1; l <= j; ++l) s += a[i][l] * inv[l][j];
            inv[i][j] = -s / a[i][i];
        }
    }
    return inv;
}

Real matrix_norm1_up(const Matrix& a) {
    Real best(0);
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (std::size_t j = 0; j < cols; ++j) {
        Real s(0);
        for (const auto& row : a) s = add_up(s, abs_up(row[j]));
        best = std::max(best, s);
    }
    return best;
}

ShiftOperatorBounds shift_operator_bounds(const LogPoly& L, int k, int nu, const Rational& eps_scale) {
    if (k < 1 || nu < 0) throw Error("majorant", "shift_operator_bounds needs k >= 1 and nu >= 0");
    ShiftOperatorBounds out;
    out.eps_eff = eps_scale * nu / k;
    if (out.eps_eff >= 1) throw Error("majorant", "nu * eps must stay below k");
    const int n = L.degree();
    const GaussianRational Lk = L.evaluate(GaussianRational(k));
    if (Lk.is_zero()) throw Error("majorant", "L vanishes at k = " + std::to_string(k));

    const Matrix A = matrix_polynomial(L, k, nilpotent_matrix(nu, eps_scale));
    const Matrix Ainv = upper_triangular_inverse(A);
    out.norm_L = matrix_norm1_up(A);
    out.norm_inv = matrix_norm1_up(Ainv);

    const Rational up_factor = rational_power(1 + out.eps_eff, n);
    const Rational down_factor = rational_power(1 - out.eps_eff, n);
    out.bound_L = mul_down(rational_down(up_factor), abs_down(Lk));
    out.bound_inv = div_down(Real(1), mul_up(rational_up(down_factor), abs_up(Lk)));

    if (nu == 0) {
        // 1x1 matrices: both sides are |L(k)|^{+-1} exactly.
        out.holds = true;
    } else if (all_real(A)) {
        const Rational absLk = abs(Lk.re());
        out.holds = matrix_norm1_exact(A) <= up_factor * absLk &&
                    matrix_norm1_exact(Ainv) * down_factor * absLk <= 1;
    } else {
        out.holds = out.norm_L <= out.bound_L && out.norm_inv <= out.bound_inv;
    }
    return out;
}

Rational eps_scale(const MajorantConfig& cfg, int C) {
    if (cfg.eps_bar <= 0 || cfg.eps_bar >= 1) throw Error("majorant", "eps_bar must lie in (0, 1)");
    return C > 0 ? Rational(cfg.eps_bar / C) : cfg.eps_bar;
}

MajorantConstants compute_sigma(const LogPoly& L, int n, const Rational& eps_bar, int probe_orders) {
    if (eps_bar <= 0 || eps_bar >= 1) throw Error("majorant", "eps_bar must lie in (0, 1)");
    if (L.degree() != n) throw Error("majorant", "L must have degree n");
    MajorantConstants out;
    out.c = pow_up(div_up(rational_up(1 + eps_bar), rational_down(1 - eps_bar)), n);

    for (const auto& root : polynomial_roots(L)) {
        if (root.center.re - root.radius > 0)
            throw Error("majorant", "L has a root in the open right half-plane");
        out.lambda.push_back(-root.center);
    }

    // With Re lambda_j >= 0, |k + lambda_j| >= k, so c k^n/|L(k)| never
    // exceeds its limit c/|a_n|; the finite probe only locates where the
    // supremum is approached.
    const Real limit = div_up(out.c, abs_down(L[n]));
    Real finite_max(0);
    int argmax = 0;
    for (int k = 1; k <= probe_orders; ++k) {
        const GaussianRational Lk = L.evaluate(GaussianRational(k));
        Real v = div_up(mul_up(out.c, pow_up(Real(k), n)), abs_down(Lk));
        if (v > finite_max) {
            finite_max = v;
            argmax = k;
        }
    }
    out.inv_sigma = std::max(limit, finite_max);
    out.sup_argmax = finite_max >= limit ? argmax : 0;
    return out;
}

std::vector<MajorantTerm> build_majorant_poly(const OdePolynomial& M, const Rational& eps,
                                              const MajorantConstants& consts) {
    std::map<std::tuple<int, int, int>, UpperReal> merged;
    const Rational inv_eps = 1 / eps;
    for (const auto& mono : M.terms()) {
        const int q = mono.y_degree();
        Real v = mul_up(abs_up(mono.coeff), rational_up(rational_power(inv_eps, mono.t_pow)));
        v = mul_up(v, pow_up(consts.c, q));
        auto key = std::make_tuple(mono.x_pow, mono.t_pow, q);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, UpperReal(v));
        else
            it->second += UpperReal(v);
    }
    std::vector<MajorantTerm> out;
    for (const auto& [key, coeff] : merged) {
        auto [mu, nu, q] = key;
        out.push_back({coeff, mu, nu, {q}});
    }
    return out;
}

MajorantTail majorant_tail(const std::vector<MajorantTerm>& Mt, const Real& inv_sigma, int n, const Rational& eps,
                           int N) {
    for (const auto& term : Mt)
        if (term.coeff.value() < 0) throw Error("majorant", "internal: negative majorant coefficient");
    MajorantTail out;
    out.Q.assign(N + 1, UpperPoly());
    out.P.assign(N + 1, UpperPoly());
    const UpperReal inv_s(inv_sigma);
    OnlineEvaluator<UpperReal> eval(1, Mt, [&](int, int r) { return out.Q[r] * inv_s; });
    const Real eps_up = rational_up(eps);
    for (int k = 1; k <= N; ++k) {
        out.Q[k] = eval.coefficient(k - 1);
        for (const auto& c : out.Q[k].coeffs())
            if (c.value() < 0) throw Error("majorant", "internal: negative coefficient in Q~");
        const UpperReal inv_k(div_up(Real(1), Real(k)));
        const UpperReal eps_over_k(div_up(eps_up, Real(k)));
        UpperPoly P = out.Q[k] * inv_s;
        for (int i = 0; i < n; ++i) P = apply_inverse_shift(P, eps_over_k, inv_k);
        out.P[k] = std::move(P);
    }
    return out;
}

Real rescaled_norm(const LogPoly& p, const Rational& eps) {
    Real acc(0);
    const Rational inv_eps = 1 / eps;
    Rational scale(1);
    for (int i = 0; i <= p.degree(); ++i) {
        acc = add_up(acc, mul_up(abs_up(p[i]), rational_up(scale)));
        scale *= inv_eps;
    }
    return acc;
}

std::vector<bool> check_domination(const TailSolution& tail, const std::vector<UpperPoly>& P, const Rational& eps) {
    const int N = tail.order();
    if (static_cast<int>(P.size()) != N + 1) throw Error("majorant", "solver and majorant lengths differ");
    std::vector<bool> out(N + 1, true);
    for (int k = 1; k <= N; ++k) out[k] = rescaled_norm(tail.tail.coeff(k), eps) <= lognorm_down(P[k]);
    return out;
}

std::optional<Real> empirical_radius(const std::vector<Real>& norms) {
    const int N = static_cast<int>(norms.size()) - 1;
    if (N < 8) throw Error("majorant", "radius estimate needs at least 8 orders");
    auto collect = [&](int from) {
        std::vector<std::pair<Real, Real>> pts;
        for (int k = from; k <= N; ++k)
            if (norms[k] > 0) pts.emplace_back(Real(k), mp::log(norms[k]));
        return pts;
    };
    auto pts = collect(N / 2 + 1);
    if (pts.size() < 2) pts = collect(1);
    if (pts.size() < 2) return std::nullopt;
    Real sx(0), sy(0), sxx(0), sxy(0);
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const Real cnt(static_cast<long>(pts.size()));
    const Real slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return mp::exp(-slope);
}

bool in_admissible_sector(const Real& modulus, const Real& arg, const Rational& eps, int r) {
    const Real lnabs = mp::log(modulus);
    const Real lhs = rational_up(eps) * mp::sqrt(lnabs * lnabs + arg * arg);
    return lhs < mp::pow(modulus, Real(-1) / r);
}

RadiusEstimate estimate_radius(const std::vector<Real>& norms, const std::vector<MajorantTerm>& Mt,
                               const Real& inv_sigma, int C, int r, const Rational& eps) {
    if (r <= C) throw Error("majorant", "r must exceed C");
    RadiusEstimate out;
    out.r = r;
    out.eps = eps;
    out.sector_rule = "|" + format_rational(eps) + "*ln x| < |x|^(-1/" + std::to_string(r) + ")";
    out.rho_emp = empirical_radius(norms);

    // Fixed point sigma U = x M~(x, x^{-1/r}, U) at |x| = rho: coefficients
    // A_q of U^q after the substitution.
    std::map<int, std::vector<std::pair<Real, Real>>> by_degree;  // q -> (coeff, exponent)
    for (const auto& term : Mt)
        by_degree[term.pows[0]].emplace_back(term.coeff.value(),
                                             Real(1 + term.x_pow) - Real(term.t_pow) / Real(r));
    const Real step = mp::pow(Real(2), Real(-1) / 8);
    Real rho(1);
    for (int j = 0; j <= 400; ++j, rho *= step) {
        std::vector<std::pair<int, Real>> A;
        for (const auto& [q, list] : by_degree) {
            Real s(0);
            for (const auto& [coeff, e] : list) s = add_up(s, mul_up(coeff, inflate(mp::pow(rho, e))));
            A.emplace_back(q, mul_up(s, inv_sigma));
        }
        std::optional<Real> witness;
        for (int b = 100; b >= -400 && !witness; --b) {
            const Real B = mp::ldexp(Real(1), b);
            Real phi(0), dphi(0);
            for (const auto& [q, a] : A) {
                phi = add_up(phi, mul_up(a, pow_up(B, q)));
                if (q > 0) dphi = add_up(dphi, mul_up(mul_up(a, Real(q)), pow_up(B, q - 1)));
            }
            if (phi <= B && dphi < 1) witness = B;
        }
        if (witness) {
            out.rho_cert = rho;
            out.witness_B = *witness;
            out.x_radius = mp::pow(rho, Real(r) / Real(r - C));
            break;
        }
    }
    return out;
}

bool MajorantReport::dominated() const {
    for (std::size_t k = 1; k < domination.size(); ++k)
        if (!domination[k]) return false;
    return true;
}

MajorantReport run_majorant(const ReducedProblem& red, const TailSolution& tail, const MajorantConfig& cfg) {
    MajorantReport rep;
    rep.C = red.C;
    rep.n = red.order();
    rep.eps_bar = cfg.eps_bar;
    rep.eps = eps_scale(cfg, red.C);
    const int r = cfg.r < 0 ? red.C + 1 : cfg.r;
    if (r <= red.C) throw Error("majorant", "r must exceed C = " + std::to_string(red.C));
    const int N = tail.order();
    for (int k = 1; k <= N; ++k)
        if (tail.degrees[k] > k * red.C)
            throw Error("majorant", "degree bound violated at order " + std::to_string(k));

    rep.consts = compute_sigma(red.L, rep.n, cfg.eps_bar);
    rep.Mt = build_majorant_poly(red.M, rep.eps, rep.consts);
    rep.tail = majorant_tail(rep.Mt, rep.consts.inv_sigma, rep.n, rep.eps, N);
    rep.domination = check_domination(tail, rep.tail.P, rep.eps);
    rep.solver_norms.assign(N + 1, Real(0));
    rep.majorant_norms.assign(N + 1, Real(0));
    for (int k = 1; k <= N; ++k) {
        rep.solver_norms[k] = rescaled_norm(tail.tail.coeff(k), rep.eps);
        rep.majorant_norms[k] = lognorm_down(rep.tail.P[k]);
    }
    rep.radius.r = r;
    rep.radius.eps = rep.eps;
    if (N >= 8) {
        rep.radius = estimate_radius(rep.majorant_norms, rep.Mt, rep.consts.inv_sigma, red.C, r, rep.eps);
    } else {
        rep.radius.sector_rule =
            "|" + format_rational(rep.eps) + "*ln x| < |x|^(-1/" + std::to_string(r) + ")";
    }
    return rep;
}

Json majorant_to_json(const MajorantReport& rep) {
    Json out;
    out["eps_bar"] = format_rational(rep.eps_bar);
    out["eps"] = format_rational(rep.eps);
    out["C"] = rep.C;
    out["n"] = rep.n;
    Json consts;
    consts["inv_sigma"] = format_real(rep.consts.inv_sigma);
    consts["c"] = format_real(rep.consts.c);
    consts["sup_argmax"] = rep.consts.sup_argmax == 0 ? Json("limit") : Json(rep.consts.sup_argmax);
    Json lambda = Json::array();
    for (const auto& l : rep.consts.lambda)
        lambda.push_back(Json{{"re", format_real(l.re)}, {"im", format_real(l.im)}});
    consts["lambda"] = lambda;
    out["constants"] = consts;
    Json mt = Json::array();
    for (const auto& term : rep.Mt)
        mt.push_back(Json{{"c", format_real(term.coeff.value())}, {"x", term.x_pow}, {"t", term.t_pow},
                          {"U", term.pows[0]}});
    out["M_tilde"] = mt;
    Json orders = Json::array();
    for (std::size_t k = 1; k < rep.domination.size(); ++k) {
        Json o;
        o["k"] = static_cast<int>(k);
        o["norm_P"] = format_real(rep.solver_norms[k]);
        o["norm_P_tilde"] = format_real(rep.majorant_norms[k]);
        o["dominated"] = static_cast<bool>(rep.domination[k]);
        orders.push_back(std::move(o));
    }
    out["orders"] = orders;
    out["dominated"] = rep.dominated();
    Json radius;
    radius["rho_emp"] = rep.radius.rho_emp ? Json(format_real(*rep.radius.rho_emp)) : Json("inf");
    radius["rho_cert"] = rep.radius.rho_cert ? Json(format_real(*rep.radius.rho_cert)) : Json(nullptr);
    if (rep.radius.rho_cert) {
        radius["witness_B"] = format_real(rep.radius.witness_B);
        radius["x_radius"] = format_real(*rep.radius.x_radius);
    }
    radius["r"] = rep.radius.r;
    radius["sector_rule"] = rep.radius.sector_rule;
    out["radius"] = radius;
    return out;
}

}  // namespace dulac
