#ifndef DULAC_MAJORANT_HPP
#define DULAC_MAJORANT_HPP

#include "dulac/online_eval.hpp"
#include "dulac/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dulac {

using Matrix = std::vector<std::vector<GaussianRational>>;

// Superdiagonal (eps, 2 eps, ..., nu eps): d/dt scaled by eps on the
// coefficient column of a degree-nu polynomial.
Matrix nilpotent_matrix(int nu, const Rational& eps);
Matrix matrix_product(const Matrix& a, const Matrix& b);
// L(k I - N) by Horner over matrices.
Matrix matrix_polynomial(const LogPoly& L, int k, const Matrix& N);
// Inverse of an upper triangular matrix with nonzero diagonal.
Matrix upper_triangular_inverse(const Matrix& a);
// Maximum absolute column sum, rounded upward.
Real matrix_norm1_up(const Matrix& a);

struct ShiftOperatorBounds {
    Rational eps_eff;     // nu * eps / k
    Real bound_L;         // (1 + eps_eff)^n |L(k)|, rounded down
    Real bound_inv;       // 1 / ((1 - eps_eff)^n |L(k)|), rounded down
    Real norm_L;          // true ||L(kI - N_k)||, rounded up
    Real norm_inv;        // true ||L(kI - N_k)^{-1}||, rounded up
    bool holds = false;   // both inequalities verified
};

ShiftOperatorBounds shift_operator_bounds(const LogPoly& L, int k, int nu, const Rational& eps_scale);

struct MajorantConfig {
    Rational eps_bar{1, 2};
    int r = -1;  // defaults to C + 1
};

// eps_bar / C, or eps_bar when M carries no logarithm.
Rational eps_scale(const MajorantConfig& cfg, int C);

struct MajorantConstants {
    Real inv_sigma;            // 1/sigma, rounded up
    Real c;                    // ((1 + eps_bar)/(1 - eps_bar))^n, rounded up
    int sup_argmax = 0;        // order attaining the finite maximum; 0 means the k -> inf limit
    std::vector<Complex> lambda;  // L(xi) = a_n prod (xi + lambda_j)
};

MajorantConstants compute_sigma(const LogPoly& L, int n, const Rational& eps_bar, int probe_orders = 64);

using MajorantTerm = OnlineTerm<UpperReal>;
using UpperPoly = LogPolyT<UpperReal>;

// |alpha (-1/eps)^nu| c^{q_0+...+q_n} x^mu t^nu U^{q_0+...+q_n}, merged.
std::vector<MajorantTerm> build_majorant_poly(const OdePolynomial& M, const Rational& eps,
                                              const MajorantConstants& consts);

struct MajorantTail {
    std::vector<UpperPoly> Q;  // index k, 0 unused
    std::vector<UpperPoly> P;
};

MajorantTail majorant_tail(const std::vector<MajorantTerm>& Mt, const Real& inv_sigma, int n, const Rational& eps,
                           int N);

// Norm of P_k after the substitution t -> -t/eps, rounded up.
Real rescaled_norm(const LogPoly& p, const Rational& eps);

std::vector<bool> check_domination(const TailSolution& tail, const std::vector<UpperPoly>& P, const Rational& eps);

struct RadiusEstimate {
    std::optional<Real> rho_emp;  // empty means +infinity
    std::optional<Real> rho_cert;
    Real witness_B{0};
    int r = 0;
    Rational eps;
    std::string sector_rule;
    std::optional<Real> x_radius;  // rho_cert^{r/(r-C)}
};

// rho_emp from norms[k] (index 0 unused).
std::optional<Real> empirical_radius(const std::vector<Real>& norms);

RadiusEstimate estimate_radius(const std::vector<Real>& norms, const std::vector<MajorantTerm>& Mt,
                               const Real& inv_sigma, int C, int r, const Rational& eps);

// |eps ln x| < |x|^{-1/r} at a point given by modulus and argument.
bool in_admissible_sector(const Real& modulus, const Real& arg, const Rational& eps, int r);

struct MajorantReport {
    Rational eps_bar;
    Rational eps;
    int C = 0;
    int n = 0;
    MajorantConstants consts;
    std::vector<MajorantTerm> Mt;
    MajorantTail tail;
    std::vector<Real> solver_norms;    // rescaled ||P_k||, rounded up
    std::vector<Real> majorant_norms;  // ||P~_k||, rounded down
    std::vector<bool> domination;
    RadiusEstimate radius;

    bool dominated() const;
};

MajorantReport run_majorant(const ReducedProblem& red, const TailSolution& tail, const MajorantConfig& cfg);

Json majorant_to_json(const MajorantReport& rep);

}  // namespace dulac

#endif  // DULAC_MAJORANT_HPP
