// Command-line front end: one subcommand per pipeline stage plus `report`.

#include "dulac/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dulac;

namespace {

struct Common {
    std::string problem_path;
    std::string out;
    std::string format = "json";
    unsigned prec = kDefaultPrecisionBits;
    std::vector<std::string> params;
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cli", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("cli", path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error("cli", "cannot write " + out);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void add_common(CLI::App* cmd, Common& c, bool with_params = true) {
    cmd->add_option("problem", c.problem_path, "problem JSON file")->required();
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--format", c.format, "json, latex or text")
        ->check(CLI::IsMember({"json", "latex", "text"}));
    cmd->add_option("--prec", c.prec, "working precision in bits")->check(CLI::Range(32u, 1u << 20));
    if (with_params)
        cmd->add_option("--param", c.params, "resonance parameter k=value[,value...], repeatable")
            ->allow_extra_args(false);
}

PipelineOptions options_from(const Common& c) {
    PipelineOptions o;
    o.prec = c.prec;
    for (const auto& p : c.params) parse_param_assignment(p, o.params);
    return o;
}

std::string series_text(const DulacSeries& s) {
    std::ostringstream os;
    for (const auto& [k, p] : s.terms()) {
        os << "x^" << k << ":";
        for (const auto& c : p.coeffs()) os << " " << to_string(c);
        os << "\n";
    }
    if (!s.is_exact()) os << "O(x^" << s.trunc() + 1 << ")\n";
    return os.str();
}

std::string certificate_latex(const Certificate& c) {
    std::ostringstream os;
    os << "\\begin{tabular}{ccl}\n$j$ & $a_j$ & note \\\\\n\\hline\n";
    for (const auto& w : c.witnesses) {
        os << w.j << " & $";
        if (c.m >= 0 && w.j < static_cast<int>(c.a.size())) os << log_poly_to_latex(LogPoly::constant(c.a[w.j]));
        os << "$ & " << (w.ok ? "ok" : w.note) << " \\\\\n";
    }
    os << "\\end{tabular}\n% m = " << c.m << ", verdict: " << to_string(c.verdict) << "\n";
    return os.str();
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 2;
        case Verdict::Inconclusive: return 3;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dulac series solutions of algebraic ODEs: certificates, tails, majorants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Common c;
    int N = -1;
    int ell = -1;
    std::string eps_bar = "1/2";
    int r = -1;
    std::string series_path;
    std::string sector = "-0.95pi:0.95pi";
    std::string rho = "0.05";
    int samples = 24;
    std::string eta = "0.5";

    auto* parse_cmd = app.add_subcommand("parse", "validate a problem and print its canonical form");
    add_common(parse_cmd, c, false);

    auto* certify_cmd = app.add_subcommand("certify", "check the convergence criterion on a prefix");
    add_common(certify_cmd, c);
    certify_cmd->add_option("-N", N, "prefix order N_cert (default: seed truncation)");

    auto* reduce_cmd = app.add_subcommand("reduce", "split off the seed and print L and M");
    add_common(reduce_cmd, c);
    reduce_cmd->add_option("--ell", ell, "shift ell (default: computed ell')");

    auto* solve_cmd = app.add_subcommand("solve", "compute the series through ell + N");
    add_common(solve_cmd, c);
    solve_cmd->add_option("-N", N, "tail orders (default 20)");
    solve_cmd->add_option("--ell", ell, "shift ell (default: computed ell')");

    auto* maj_cmd = app.add_subcommand("majorant", "majorant tail, domination check and radius estimate");
    add_common(maj_cmd, c);
    maj_cmd->add_option("-N", N, "tail orders (default 30)");
    maj_cmd->add_option("--ell", ell, "shift ell");
    maj_cmd->add_option("--epsbar", eps_bar, "epsilon bar in (0,1), rational");
    maj_cmd->add_option("--r", r, "integer r > C (default C+1)");

    auto* res_cmd = app.add_subcommand("residual", "residual decay of a truncated series on a sector");
    add_common(res_cmd, c);
    res_cmd->add_option("--series", series_path, "series JSON (default: solve with -N)");
    res_cmd->add_option("-N", N, "tail orders when solving (default 20)");
    res_cmd->add_option("--sector", sector, "theta_min:theta_max, radians or with a pi suffix");
    res_cmd->add_option("--rho", rho, "sector radius");
    res_cmd->add_option("--samples", samples, "number of sample points (>= 6)");
    res_cmd->add_option("--eta", eta, "slack below N+1 in the decay threshold");

    auto* report_cmd = app.add_subcommand("report", "run the whole pipeline");
    add_common(report_cmd, c);
    report_cmd->add_option("-N", N, "tail orders (default 20)");
    report_cmd->add_option("--ell", ell, "shift ell");
    report_cmd->add_option("--epsbar", eps_bar, "epsilon bar in (0,1)");
    report_cmd->add_option("--r", r, "integer r > C");
    report_cmd->add_option("--sector", sector, "theta_min:theta_max");
    report_cmd->add_option("--rho", rho, "sector radius");
    report_cmd->add_option("--samples", samples, "residual sample count");
    report_cmd->add_option("--eta", eta, "decay slack");

    CLI11_PARSE(app, argc, argv);

    try {
        PrecisionScope scope(c.prec);
        const Json doc = read_json(c.problem_path);
        PipelineOptions opts = options_from(c);
        if (ell >= 0) opts.ell = ell;
        opts.eps_bar = parse_rational(eps_bar);
        opts.r = r;
        opts.sector = sector;
        opts.rho = rho;
        opts.samples = samples;
        opts.eta = eta;

        if (*parse_cmd) {
            OdeProblem p = parse_problem(doc);
            if (c.format == "json") emit(dump(problem_to_json(p)), c.out);
            else if (c.format == "text") emit("F = " + to_expression(p.F) + "\nseed:\n" + series_text(p.seed), c.out);
            else emit("F = " + to_expression(p.F) + "\n\\[" + series_to_latex(p.seed) + "\\]\n", c.out);
            return 0;
        }

        OdeProblem problem = parse_problem(doc);
        for (const auto& [k, v] : opts.params) problem.params[k] = v;

        if (*certify_cmd) {
            DulacSeries prefix = problem.seed;
            const int n_cert = N >= 0 ? N : prefix.trunc();
            if (n_cert > prefix.trunc()) prefix = seed_extend_oracle(problem, n_cert, problem.params);
            Certificate cert = certify(problem, prefix, n_cert);
            emit(c.format == "latex" ? certificate_latex(cert) : dump(certificate_to_json(cert)), c.out);
            return exit_for(cert.verdict);
        }
        if (*reduce_cmd) {
            Prepared prep = prepare(problem, opts);
            if (prep.cert.verdict != Verdict::Pass) {
                std::cerr << "criterion not satisfied or inconclusive: " << prep.cert.reason << "\n";
                return exit_for(prep.cert.verdict);
            }
            ReducedProblem red = reduce(prep.problem, prep.cert, prep.ell);
            if (c.format == "json") {
                emit(dump(reduced_to_json(red)), c.out);
            } else {
                std::ostringstream os;
                os << "ell = " << red.ell << "\nL(xi) =";
                for (int i = 0; i <= red.L.degree(); ++i) os << " + (" << to_string(red.L[i]) << ") xi^" << i;
                os << "\nM = " << to_expression(red.M) << "   (y_i stands for delta^i u)\nC = " << red.C << "\n";
                emit(os.str(), c.out);
            }
            return 0;
        }
        if (*solve_cmd) {
            opts.N = N >= 0 ? N : 20;
            Solved s = solve_problem(problem, opts);
            if (c.format == "json") emit(dump(series_to_json(s.phi)), c.out);
            else if (c.format == "latex") emit(series_to_latex(s.phi) + "\n", c.out);
            else emit(series_text(s.phi), c.out);
            return 0;
        }
        if (*maj_cmd) {
            opts.N = N >= 0 ? N : 30;
            Solved s = solve_problem(problem, opts);
            MajorantConfig cfg;
            cfg.eps_bar = opts.eps_bar;
            cfg.r = opts.r;
            MajorantReport rep = run_majorant(s.red, s.tail, cfg);
            emit(dump(majorant_to_json(rep)), c.out);
            return rep.dominated() ? 0 : 3;
        }
        if (*res_cmd) {
            DulacSeries series;
            if (!series_path.empty()) {
                series = series_from_json(read_json(series_path));
            } else {
                opts.N = N >= 0 ? N : 20;
                series = solve_problem(problem, opts).phi;
            }
            Sector sec = parse_sector(sector, Real(rho));
            DecayDiagnostics d = decay_exponent(problem, series, sec, samples, Real(eta));
            emit(dump(decay_to_json(d)), c.out);
            return d.pass ? 0 : 3;
        }
        if (*report_cmd) {
            opts.N = N >= 0 ? N : 20;
            PipelineReport rep = run_report(doc, opts);
            emit(dump(report_to_json(rep)), c.out);
            if (!rep.error.empty()) std::cerr << "error [" << rep.error_stage << "]: " << rep.error << "\n";
            return rep.exit_code();
        }
    } catch (const Error& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
