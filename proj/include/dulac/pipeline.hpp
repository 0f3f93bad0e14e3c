#ifndef DULAC_PIPELINE_HPP
#define DULAC_PIPELINE_HPP

#include "dulac/evaluator.hpp"
#include "dulac/majorant.hpp"

#include <optional>
#include <string>

namespace dulac {

inline constexpr const char* kToolVersion = "0.1.0";

struct PipelineOptions {
    int N = 20;                // tail orders past ell
    std::optional<int> ell;    // override of the computed ell'
    ResonanceParams params;    // merged over the problem's own params
    Rational eps_bar{1, 2};
    int r = -1;
    unsigned prec = kDefaultPrecisionBits;
    std::string sector = "-0.95pi:0.95pi";
    std::string rho = "0.05";
    int samples = 24;
    std::string eta = "0.5";
    int max_extension = 8;     // extra orders tried when the certificate is inconclusive
};

// Problem, certificate and ell after the seed has been extended as far as
// the reduction needs.
struct Prepared {
    OdeProblem problem;  // seed reaches at least ell
    Certificate cert;
    EllChoice ell_choice;
    int ell = 0;
};

// Certifies on the seed (extending it through the oracle while the verdict is
// inconclusive), picks ell and extends the seed to ell.  Stops after the
// certificate when it does not pass.
Prepared prepare(const OdeProblem& problem, const PipelineOptions& opts);

struct Solved {
    Prepared prep;
    ReducedProblem red;
    TailSolution tail;
    DulacSeries phi;
};

Solved solve_problem(const OdeProblem& problem, const PipelineOptions& opts);

enum class Overall { CertifiedConvergent, CriterionFailed, Inconclusive };

std::string to_string(Overall v);

struct PipelineReport {
    OdeProblem problem;
    std::string digest;
    PipelineOptions options;
    std::optional<Certificate> cert;
    std::optional<EllChoice> ell_choice;
    std::optional<ReducedProblem> red;
    std::optional<TailSolution> tail;
    std::optional<DulacSeries> phi;
    std::optional<MajorantReport> majorant;
    std::optional<DecayDiagnostics> decay;
    Overall verdict = Overall::Inconclusive;
    std::string error_stage;
    std::string error;

    int exit_code() const;
};

PipelineReport run_report(const Json& problem_doc, const PipelineOptions& opts);

Json report_to_json(const PipelineReport& r);

// FNV-1a of the canonical problem JSON, hex.
std::string problem_digest(const OdeProblem& p);

}  // namespace dulac

#endif  // DULAC_PIPELINE_HPP
