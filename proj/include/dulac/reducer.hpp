#ifndef DULAC_REDUCER_HPP
#define DULAC_REDUCER_HPP

#include "dulac/certifier.hpp"
#include "dulac/roots.hpp"

#include <vector>

namespace dulac {

// L(delta) u = x M(x, t, u, delta u, ..., delta^n u) obtained from
// y = phi_ell + x^ell u.  Slot i of M is delta^i u.
struct ReducedProblem {
    int ell = 0;
    LogPoly L;  // coefficients in xi, lowest first
    OdePolynomial M{1};
    int C = 0;  // degree of M in t
    int m = 0;
    std::vector<GaussianRational> a;

    int order() const { return L.degree(); }
};

// Diagnostics behind the choice of ell.
struct EllChoice {
    int ell = 0;
    std::vector<RootEnclosure> roots;  // roots of sum a_j mu^j
    Real max_real_part_upper{0};       // max(Re z_i + 2 r_i)
    bool axis_verified = false;        // ell sits on a root real part, checked exactly
};

EllChoice choose_ell_detailed(const Certificate& cert);
int choose_ell(const Certificate& cert);

// sum_j a_j (xi + ell)^j expanded in xi.
LogPoly shifted_characteristic(const std::vector<GaussianRational>& a, int ell);

ReducedProblem reduce(const OdeProblem& problem, const Certificate& cert, int ell);

Json reduced_to_json(const ReducedProblem& r);

}  // namespace dulac

#endif  // DULAC_REDUCER_HPP
