#include "dulac/solver.hpp"

#include "dulac/online_eval.hpp"

namespace dulac {

LogPoly solve_poly_linear_ode(const LogPoly& L, int k, const LogPoly& R) {
    const std::vector<GaussianRational> c = taylor_coefficients(L, GaussianRational(k));
    if (c.empty() || c[0].is_zero()) throw Error("solver", "resonant order " + std::to_string(k));
    if (R.is_zero()) return {};
    const int d = R.degree();
    std::vector<GaussianRational> p(d + 1, GaussianRational(0));
    // Coefficient of t^e in sum_i c_i D^i P is sum_i c_i p_{e+i} (e+i)!/e!.
    for (int e = d; e >= 0; --e) {
        GaussianRational acc = R[e];
        Rational falling(1);
        for (int i = 1; e + i <= d && i < static_cast<int>(c.size()); ++i) {
            falling *= e + i;
            if (!c[i].is_zero()) acc -= c[i] * p[e + i] * GaussianRational(falling);
        }
        p[e] = acc / c[0];
    }
    return LogPoly(std::move(p));
}

TailSolution solve_tail(const ReducedProblem& red, int N) {
    if (N < 1) throw Error("solver", "N must be at least 1");
    const int slots = red.M.slots();
    TailSolution out;
    out.C = red.C;
    out.tail = DulacSeries(N);
    out.rhs.assign(N + 1, LogPoly());
    out.degrees.assign(N + 1, kZeroDegree);

    std::vector<OnlineTerm<GaussianRational>> terms;
    for (const auto& mono : red.M.terms()) terms.push_back({mono.coeff, mono.x_pow, mono.t_pow, mono.y_pows});
    // Slot i holds delta^i psi, whose order r coefficient is (r + D)^i P_r.
    std::vector<std::vector<LogPoly>> leaves(slots, std::vector<LogPoly>(N + 1));
    OnlineEvaluator<GaussianRational> eval(
        slots, std::move(terms), [&](int slot, int r) -> LogPoly { return leaves[slot][r]; });

    for (int k = 1; k <= N; ++k) {
        // x M contributes M's order k-1 coefficient at order k.
        LogPoly R = eval.coefficient(k - 1);
        LogPoly P = solve_poly_linear_ode(red.L, k, R);
        out.degrees[k] = P.degree();
        out.rhs[k] = std::move(R);
        for (int i = 0; i < slots; ++i) leaves[i][k] = shift_power(P, GaussianRational(k), i);
        out.tail.set(k, std::move(P));
    }
    return out;
}

DulacSeries recompose(const DulacSeries& seed, int ell, const TailSolution& tail) {
    if (seed.trunc() < ell)
        throw Error("solver", "seed known only through order " + std::to_string(seed.trunc()));
    const int top = saturating_add(ell, tail.order());
    DulacSeries out(top);
    for (const auto& [k, p] : seed.terms())
        if (k <= ell) out.set(k, p);
    for (const auto& [k, p] : tail.tail.terms()) out.set(ell + k, p);
    for (int k = ell + 1; k <= std::min(seed.trunc(), top); ++k)
        if (!(seed.coeff(k) == out.coeff(k)))
            throw Error("solver", "seed disagrees with the computed tail at order " + std::to_string(k));
    return out;
}

namespace {

// Reduced row echelon form of [A | b] over Gaussian rationals, columns
// scanned left to right.  False when the system is inconsistent.
bool row_reduce(std::vector<std::vector<GaussianRational>>& a, int cols, std::vector<int>& pivots) {
    int r = 0;
    const int nrows = static_cast<int>(a.size());
    for (int c = 0; c < cols && r < nrows; ++c) {
        int sel = -1;
        for (int i = r; i < nrows; ++i)
            if (!a[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[r], a[sel]);
        GaussianRational inv = GaussianRational(1) / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            GaussianRational f = a[i][c];
            for (int j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    for (int i = r; i < nrows; ++i)
        if (!a[i][cols].is_zero()) return false;
    return true;
}

DulacSeries exact_copy(const DulacSeries& s) {
    DulacSeries out;
    for (const auto& [k, p] : s.terms()) out.set(k, p);
    return out;
}

LogPoly order_coeff(const OdePolynomial& F, const DulacSeries& s, int order) {
    DulacSeries r = substitute(F, s, order);
    return r.coeff(order);
}

}  // namespace

DulacSeries seed_extend_oracle(const OdeProblem& problem, int K, const ResonanceParams& params, int c_guess) {
    const DulacSeries& seed = problem.seed;
    const int s0 = seed.trunc();
    if (K <= s0) return seed.truncated(K);
    const int n = problem.order();

    int m = kExactTrunc;
    for (int j = 0; j <= n; ++j) {
        DulacSeries d = substitute(partial(problem.F, j), seed, s0);
        if (!d.is_zero()) m = std::min(m, d.valuation().value);
    }
    if (m == kExactTrunc || m > s0)
        throw Error("solver", "seed too short to fix the linearization order");

    DulacSeries phi = exact_copy(seed);
    {
        DulacSeries r = substitute(problem.F, phi, s0 + m);
        if (!r.is_zero())
            throw Error("solver", "no Dulac solution extending seed at order " +
                                      std::to_string(r.terms().begin()->first - m));
    }

    if (c_guess < 0) c_guess = std::max({1, seed.max_log_degree(), problem.F.degree_t()});
    for (int k = s0 + 1; k <= K; ++k) {
        const int order = k + m;
        const LogPoly r0 = order_coeff(problem.F, phi, order);
        // A polynomial solution has degree at most deg r0 + n.
        const int budget = std::max(k * c_guess, std::max(r0.degree(), 0) + n);
        std::vector<LogPoly> cols;
        int rows = r0.degree() + 1;
        for (int i = 0; i <= budget; ++i) {
            DulacSeries trial = phi;
            trial.set(k, LogPoly::monomial(GaussianRational(1), i));
            LogPoly col = order_coeff(problem.F, trial, order) - r0;
            rows = std::max(rows, col.degree() + 1);
            cols.push_back(std::move(col));
        }
        const int ncols = budget + 1;
        std::vector<std::vector<GaussianRational>> a(rows, std::vector<GaussianRational>(ncols + 1));
        for (int e = 0; e < rows; ++e) {
            for (int i = 0; i < ncols; ++i) a[e][i] = cols[i][e];
            a[e][ncols] = -r0[e];
        }
        std::vector<int> pivots;
        if (!row_reduce(a, ncols, pivots))
            throw Error("solver", "no Dulac solution extending seed at order " + std::to_string(k));

        std::vector<bool> is_pivot(ncols, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<int> free_cols;
        for (int c = 0; c < ncols; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        std::vector<GaussianRational> values(ncols, GaussianRational(0));
        auto given = params.find(k);
        if (!free_cols.empty()) {
            if (given == params.end() || given->second.size() < free_cols.size())
                throw Error("solver", "resonance at order " + std::to_string(k) + ", parameter required (" +
                                          std::to_string(free_cols.size()) + " free coordinate" +
                                          (free_cols.size() > 1 ? "s" : "") + ")");
            if (given->second.size() > free_cols.size())
                throw Error("solver", "too many parameters at order " + std::to_string(k));
            for (std::size_t i = 0; i < free_cols.size(); ++i) values[free_cols[i]] = given->second[i];
        } else if (given != params.end()) {
            throw Error("solver", "parameter given for order " + std::to_string(k) + ", which is not resonant");
        }
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            GaussianRational v = a[r][ncols];
            for (int c : free_cols) v -= a[r][c] * values[c];
            values[pivots[r]] = v;
        }
        phi.set(k, LogPoly(std::move(values)));
    }
    DulacSeries out(K);
    for (const auto& [k, p] : phi.terms()) out.set(k, p);
    return out;
}

}  // namespace dulac
