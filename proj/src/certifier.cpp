#include "dulac/certifier.hpp"

namespace dulac {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Certificate certify(const OdeProblem& problem, const DulacSeries& prefix, int n_cert) {
    if (n_cert < 0) throw Error("certifier", "N_cert must be nonnegative");
    if (n_cert > prefix.trunc())
        throw Error("certifier", "prefix known only through order " + std::to_string(prefix.trunc()) +
                                     ", N_cert = " + std::to_string(n_cert));
    const DulacSeries phi = prefix.truncated(n_cert);
    const int n = problem.order();

    DulacSeries residual = substitute(problem.F, phi, n_cert);
    if (!residual.is_zero())
        throw Error("certifier", "not a formal solution at order " + std::to_string(residual.terms().begin()->first));

    Certificate cert;
    cert.prefix_order = n_cert;
    std::vector<DulacSeries> partials;
    for (int j = 0; j <= n; ++j) partials.push_back(substitute(partial(problem.F, j), phi, n_cert));

    int m = kExactTrunc;
    for (const auto& d : partials)
        if (!d.is_zero()) m = std::min(m, d.valuation().value);
    if (m == kExactTrunc) {
        cert.reason = "all partial derivatives vanish through order " + std::to_string(n_cert) + "; raise N_cert";
        for (int j = 0; j <= n; ++j)
            cert.witnesses.push_back({j, partials[j].valuation(), partials[j], true, "zero within truncation"});
        return cert;
    }
    cert.m = m;
    cert.a.assign(n + 1, GaussianRational(0));

    bool inconclusive = false;
    bool failed = false;
    for (int j = 0; j <= n; ++j) {
        const DulacSeries& d = partials[j];
        PartialWitness w;
        w.j = j;
        w.valuation = d.valuation();
        w.leading = d.truncated(m + 1);
        if (d.trunc() < m) {
            // The x^m coefficient is not determined by the prefix.
            w.ok = false;
            w.note = "x^" + std::to_string(m) + " coefficient beyond truncation " + std::to_string(d.trunc());
            inconclusive = true;
        } else {
            const LogPoly& c = d.coeff(m);
            if (c.degree() > 0) {
                w.ok = false;
                w.note = "x^" + std::to_string(m) + " coefficient depends on ln x";
                failed = true;
            } else {
                cert.a[j] = c[0];
            }
        }
        cert.witnesses.push_back(std::move(w));
    }

    if (failed) {
        cert.verdict = Verdict::Fail;
        cert.reason = "criterion not satisfied: a leading coefficient depends on ln x";
    } else if (inconclusive) {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = "prefix too short to determine every x^m coefficient";
    } else if (cert.a[n].is_zero()) {
        cert.verdict = Verdict::Fail;
        cert.witnesses[n].ok = false;
        cert.witnesses[n].note = "a_n = 0";
        cert.reason = "criterion not satisfied: a_n = 0";
    } else {
        cert.verdict = Verdict::Pass;
    }
    return cert;
}

Json certificate_to_json(const Certificate& c) {
    Json out;
    out["verdict"] = to_string(c.verdict);
    out["m"] = c.m;
    Json a = Json::array();
    for (const auto& v : c.a) a.push_back(format_scalar(v));
    out["a"] = a;
    out["prefix_order"] = c.prefix_order;
    out["tolerance"] = c.tolerance;
    if (!c.reason.empty()) out["reason"] = c.reason;
    Json ws = Json::array();
    for (const auto& w : c.witnesses) {
        Json j;
        j["j"] = w.j;
        j["valuation"] = w.valuation.is_infinite() ? Json("inf") : Json(w.valuation.value);
        if (w.valuation.lower_bound) j["valuation_is_lower_bound"] = true;
        j["ok"] = w.ok;
        j["leading"] = series_to_json(w.leading);
        if (!w.note.empty()) j["note"] = w.note;
        ws.push_back(std::move(j));
    }
    out["witnesses"] = ws;
    return out;
}

}  // namespace dulac
