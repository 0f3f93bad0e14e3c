#ifndef DULAC_CERTIFIER_HPP
#define DULAC_CERTIFIER_HPP

#include "dulac/parser.hpp"

#include <string>
#include <vector>

namespace dulac {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

// Leading behaviour of dF/dy_j along the prefix.
struct PartialWitness {
    int j = 0;
    Valuation valuation;
    // The partial derivative series truncated at order m+1 (where known).
    DulacSeries leading;
    // Whether this partial fits the required shape a_j x^m + O(x^{m+1}).
    bool ok = true;
    std::string note;
};

// Outcome of the convergence criterion on a series prefix: every
// dF/dy_j(x, Phi) = a_j x^m + b_j(ln x) x^{m+1} + ..., with a_j constants
// and a_n != 0.
struct Certificate {
    int m = -1;
    std::vector<GaussianRational> a;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<PartialWitness> witnesses;
    int prefix_order = 0;
    std::string reason;
    // Exact arithmetic: zero tolerance on the constant-coefficient test.
    std::string tolerance = "0";

    const GaussianRational& leading() const { return a.back(); }
};

// Checks the criterion on `prefix` using orders up to n_cert.  Throws when the
// prefix is not a formal solution through n_cert.
Certificate certify(const OdeProblem& problem, const DulacSeries& prefix, int n_cert);

Json certificate_to_json(const Certificate& c);

}  // namespace dulac

#endif  // DULAC_CERTIFIER_HPP
