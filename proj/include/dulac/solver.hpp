#ifndef DULAC_SOLVER_HPP
#define DULAC_SOLVER_HPP

#include "dulac/reducer.hpp"

#include <vector>

namespace dulac {

// psi = sum_{k=1..N} P_k(t) x^k solving the reduced equation.  Index k of
// rhs and degrees is order k (index 0 unused).
struct TailSolution {
    DulacSeries tail{0};
    std::vector<LogPoly> rhs;
    std::vector<int> degrees;
    int C = 0;

    int order() const { return tail.trunc(); }
};

// The unique polynomial P with L(k + d/dt) P = R.
LogPoly solve_poly_linear_ode(const LogPoly& L, int k, const LogPoly& R);

TailSolution solve_tail(const ReducedProblem& red, int N);

// phi_ell + x^ell psi, truncated at ell + N.
DulacSeries recompose(const DulacSeries& seed, int ell, const TailSolution& tail);

// Independent extension of the seed through order K by undetermined
// coefficients and direct substitution.  c_guess < 0 picks a default log
// degree budget per order.
DulacSeries seed_extend_oracle(const OdeProblem& problem, int K, const ResonanceParams& params,
                               int c_guess = -1);

}  // namespace dulac

#endif  // DULAC_SOLVER_HPP
