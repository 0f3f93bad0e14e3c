#ifndef DULAC_EVALUATOR_HPP
#define DULAC_EVALUATOR_HPP

#include "dulac/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dulac {

// {x : 0 < |x| < rho0, theta_min < arg x < theta_max}.
struct Sector {
    Real theta_min{0};
    Real theta_max{0};
    Real rho0{0};

    Real opening() const { return theta_max - theta_min; }
    Real bisector() const { return (theta_min + theta_max) / 2; }
    void validate() const;
};

// "a:b" in radians; either bound may carry a "pi" suffix.
Sector parse_sector(std::string_view text, const Real& rho0);

// x = modulus * e^{i arg} with ln x = ln(modulus) + i arg; the argument
// carries the branch.
struct SectorPoint {
    Real modulus;
    Real arg;
};

// Branch of ln x continuous on the sector: arg taken within pi of the bisector.
SectorPoint to_sector_point(const Complex& x, const Sector& sector);

Complex eval_truncated(const DulacSeries& s, const SectorPoint& x);
// Principal branch.
Complex eval_truncated(const DulacSeries& s, const Complex& x);

Complex residual(const OdeProblem& problem, const DulacSeries& s, const SectorPoint& x);
Complex residual(const OdeProblem& problem, const DulacSeries& s, const Complex& x);

struct ResidualSample {
    int ray = 0;
    SectorPoint x;
    Real abs_residual;
};

struct DecayDiagnostics {
    std::vector<Real> ray_args;
    std::vector<std::optional<Real>> ray_slopes;  // empty: no usable points (underflow)
    std::optional<Real> slope;                    // min over rays; empty means +inf
    Real spread{0};
    Real threshold{0};
    Real eta{0};
    int N = 0;
    bool pass = false;
    std::vector<ResidualSample> samples;
    std::string note;
};

DecayDiagnostics decay_exponent(const OdeProblem& problem, const DulacSeries& s, const Sector& sector,
                                int samples, const Real& eta = Real(0.5));

Json decay_to_json(const DecayDiagnostics& d);

}  // namespace dulac

#endif  // DULAC_EVALUATOR_HPP
