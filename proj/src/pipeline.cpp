#include "dulac/pipeline.hpp"

#include <cstdint>
#include <cstdio>

namespace dulac {

namespace {

ResonanceParams merged_params(const OdeProblem& problem, const PipelineOptions& opts) {
    ResonanceParams out = problem.params;
    for (const auto& [k, v] : opts.params) out[k] = v;
    return out;
}

}  // namespace

Prepared prepare(const OdeProblem& problem, const PipelineOptions& opts) {
    Prepared prep;
    prep.problem = problem;
    prep.problem.params = merged_params(problem, opts);
    const ResonanceParams& params = prep.problem.params;

    int extra = 0;
    while (true) {
        prep.cert = certify(prep.problem, prep.problem.seed, prep.problem.seed.trunc());
        if (prep.cert.verdict != Verdict::Inconclusive || extra >= opts.max_extension) break;
        try {
            prep.problem.seed = seed_extend_oracle(prep.problem, prep.problem.seed.trunc() + 1, params);
        } catch (const Error&) {
            break;
        }
        ++extra;
    }
    if (prep.cert.verdict != Verdict::Pass) return prep;

    prep.ell_choice = choose_ell_detailed(prep.cert);
    prep.ell = prep.ell_choice.ell;
    if (opts.ell) {
        if (*opts.ell < prep.ell)
            throw Error("reducer", "requested ell = " + std::to_string(*opts.ell) + " is below ell' = " +
                                       std::to_string(prep.ell));
        prep.ell = *opts.ell;
    }
    if (prep.problem.seed.trunc() < prep.ell) {
        prep.problem.seed = seed_extend_oracle(prep.problem, prep.ell, params);
        prep.cert = certify(prep.problem, prep.problem.seed, prep.problem.seed.trunc());
    }
    return prep;
}

Solved solve_problem(const OdeProblem& problem, const PipelineOptions& opts) {
    Solved s;
    s.prep = prepare(problem, opts);
    if (s.prep.cert.verdict != Verdict::Pass)
        throw Error("certifier", "cannot reduce: " + s.prep.cert.reason);
    s.red = reduce(s.prep.problem, s.prep.cert, s.prep.ell);
    s.tail = solve_tail(s.red, opts.N);
    s.phi = recompose(s.prep.problem.seed, s.prep.ell, s.tail);
    return s;
}

std::string to_string(Overall v) {
    switch (v) {
        case Overall::CertifiedConvergent: return "certified-convergent";
        case Overall::CriterionFailed: return "criterion-failed";
        case Overall::Inconclusive: return "inconclusive";
    }
    return "?";
}

int PipelineReport::exit_code() const {
    if (!error.empty()) return 1;
    switch (verdict) {
        case Overall::CertifiedConvergent: return 0;
        case Overall::CriterionFailed: return 2;
        case Overall::Inconclusive: return 3;
    }
    return 1;
}

std::string problem_digest(const OdeProblem& p) {
    const std::string text = problem_to_json(p).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

PipelineReport run_report(const Json& problem_doc, const PipelineOptions& opts) {
    PrecisionScope scope(opts.prec);
    PipelineReport rep;
    rep.options = opts;
    std::string stage = "ode_parser";
    try {
        rep.problem = parse_problem(problem_doc);
        rep.digest = problem_digest(rep.problem);

        stage = "certifier";
        Prepared prep = prepare(rep.problem, opts);
        rep.cert = prep.cert;
        if (prep.cert.verdict == Verdict::Fail) {
            rep.verdict = Overall::CriterionFailed;
            return rep;
        }
        if (prep.cert.verdict == Verdict::Inconclusive) {
            rep.verdict = Overall::Inconclusive;
            return rep;
        }
        rep.ell_choice = prep.ell_choice;

        stage = "reducer";
        rep.red = reduce(prep.problem, prep.cert, prep.ell);
        stage = "solver";
        rep.tail = solve_tail(*rep.red, opts.N);
        rep.phi = recompose(prep.problem.seed, prep.ell, *rep.tail);

        // Certificate on the ell' + 2 prefix of the full series.
        stage = "certifier";
        rep.cert = certify(prep.problem, *rep.phi, std::min(prep.ell + 2, rep.phi->trunc()));

        stage = "majorant";
        MajorantConfig cfg;
        cfg.eps_bar = opts.eps_bar;
        cfg.r = opts.r;
        rep.majorant = run_majorant(*rep.red, *rep.tail, cfg);

        stage = "evaluator";
        Sector sector = parse_sector(opts.sector, Real(opts.rho));
        rep.decay = decay_exponent(prep.problem, *rep.phi, sector, opts.samples, Real(opts.eta));

        const bool ok = rep.cert->verdict == Verdict::Pass && rep.majorant->dominated() && rep.decay->pass;
        rep.verdict = ok ? Overall::CertifiedConvergent : Overall::Inconclusive;
    } catch (const Error& e) {
        rep.error_stage = e.stage();
        rep.error = e.what();
        rep.verdict = Overall::Inconclusive;
    } catch (const std::exception& e) {
        rep.error_stage = stage;
        rep.error = e.what();
        rep.verdict = Overall::Inconclusive;
    }
    return rep;
}

Json report_to_json(const PipelineReport& r) {
    Json out;
    out["tool"] = "dulac";
    out["version"] = kToolVersion;
    out["problem"] = Json{{"name", r.problem.name}, {"digest", r.digest}};
    Json opts;
    opts["N"] = r.options.N;
    opts["ell"] = r.options.ell ? Json(*r.options.ell) : Json(nullptr);
    opts["eps_bar"] = format_rational(r.options.eps_bar);
    opts["r"] = r.options.r < 0 ? Json("C+1") : Json(r.options.r);
    opts["prec"] = r.options.prec;
    opts["sector"] = r.options.sector;
    opts["rho"] = r.options.rho;
    opts["samples"] = r.options.samples;
    Json params = Json::object();
    for (const auto& [k, values] : r.options.params) {
        Json arr = Json::array();
        for (const auto& v : values) arr.push_back(format_scalar(v));
        params[std::to_string(k)] = arr;
    }
    opts["params"] = params;
    out["options"] = opts;
    out["verdict"] = to_string(r.verdict);
    out["exit_code"] = r.exit_code();
    if (!r.error.empty()) out["error"] = Json{{"stage", r.error_stage}, {"message", r.error}};
    if (r.cert) out["certificate"] = certificate_to_json(*r.cert);
    if (r.red) {
        Json red = reduced_to_json(*r.red);
        red.erase("M");
        red["axis_verified"] = r.ell_choice ? r.ell_choice->axis_verified : false;
        out["reduced"] = red;
    }
    if (r.tail) {
        Json degrees = Json::array();
        for (int k = 1; k <= r.tail->order(); ++k) degrees.push_back(r.tail->degrees[k]);
        out["tail"] = Json{{"N", r.tail->order()}, {"C", r.tail->C}, {"degrees", degrees}};
    }
    if (r.phi) out["series"] = series_to_json(*r.phi);
    if (r.majorant) out["majorant"] = majorant_to_json(*r.majorant);
    if (r.decay) out["residual"] = decay_to_json(*r.decay);
    Json tol;
    tol["certificate"] = "0";
    tol["decay_eta"] = r.options.eta;
    tol["rounding"] = "majorant upward, domination right side downward";
    out["tolerances"] = tol;
    return out;
}

}  // namespace dulac
