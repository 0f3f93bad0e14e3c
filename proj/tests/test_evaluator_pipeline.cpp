#include "test_util.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace dulac;
using namespace dulac::test;

namespace mp = boost::multiprecision;

TEST_SUITE("evaluator") {
    TEST_CASE("truncated evaluation") {
        CHECK(to_double(eval_truncated(series({{0, poly({"1"})}}), Complex(Real("0.3"))).re) == 1.0);
        Complex v = eval_truncated(series({{1, poly({"0", "1"})}}), Complex(Real("0.1")));
        CHECK(to_double(v.re) == doctest::Approx(-0.230258509).epsilon(1e-8));
        CHECK(to_double(v.im) == 0.0);
        CHECK_THROWS_AS(eval_truncated(series({{0, poly({"1"})}}), Complex(0)), Error);
    }

    TEST_CASE("residuals") {
        OdeProblem p;
        p.F = parse_expression("y0 - 1", 1);
        CHECK(to_double(residual(p, DulacSeries(4), Complex(Real("0.2"))).re) == -1.0);
        OdeProblem e = load_corpus("euler_log_linear");
        DulacSeries exact = series({{0, poly({"1"})}, {1, poly({"0", "1"})}}, 10);
        CHECK(abs(residual(e, exact, Complex(Real("0.03"), Real("0.02")))) < Real("1e-60"));
    }

    TEST_CASE("delta agrees with a finite difference") {
        DulacSeries s = series({{1, poly({"1", "-2"})}, {2, poly({"0", "0", "3"})}});
        const Real x("0.07"), h("1e-30");
        Complex a = eval_truncated(s, Complex(x + h)), b = eval_truncated(s, Complex(x - h));
        Real fd = x * (a.re - b.re) / (2 * h);
        Real exact = eval_truncated(delta(s), Complex(x)).re;
        CHECK(to_double(mp::abs(fd - exact)) < 1e-20);
    }

    TEST_CASE("branch continuity across the negative axis") {
        Sector sec = parse_sector("0.1:6.18", Real("0.05"));
        DulacSeries s = series({{1, poly({"0", "1"})}});
        const Real r("0.01"), pi = mp::acos(Real(-1));
        Complex below = eval_truncated(s, SectorPoint{r, pi - Real("1e-20")});
        Complex above = eval_truncated(s, SectorPoint{r, pi + Real("1e-20")});
        CHECK(to_double(abs(below - above)) < 1e-15);
        SectorPoint p = to_sector_point(Complex(Real(-1) / 100, Real("-1e-3")), sec);
        CHECK(p.arg > pi);
    }

    TEST_CASE("sector parsing") {
        Sector s = parse_sector("-0.95pi:0.95pi", Real("0.05"));
        CHECK(to_double(s.opening()) == doctest::Approx(1.9 * M_PI));
        CHECK_THROWS_AS(parse_sector("1:0", Real(1)), Error);
        CHECK_THROWS_AS(parse_sector("0:7", Real(1)), Error);
        CHECK_THROWS_AS(parse_sector("0:1", Real(0)), Error);
        CHECK_THROWS_AS(parse_sector("abc", Real(1)), Error);
    }

    TEST_CASE("decay of the Abel residual") {
        OdeProblem p = abel("0");
        PipelineOptions opts;
        opts.N = 4;
        Solved s = solve_problem(p, opts);
        Sector sec = parse_sector("-0.95pi:0.95pi", Real("0.05"));
        DecayDiagnostics d = decay_exponent(p, s.phi, sec, 24);
        CHECK(d.N == 6);
        CHECK(d.pass);
        REQUIRE(d.slope.has_value());
        CHECK(*d.slope >= Real("6.5"));

        // Wrong top coefficient: residual only drops like x^N.
        DulacSeries wrong = s.phi;
        wrong.set(6, s.phi.coeff(6) + poly({"1"}));
        DecayDiagnostics w = decay_exponent(p, wrong, sec, 24);
        CHECK(!w.pass);
        CHECK(to_double(*w.slope) == doctest::Approx(6.0).epsilon(0.1));
    }

    TEST_CASE("exact solution reports the infinite sentinel") {
        OdeProblem e = load_corpus("euler_log_linear");
        DulacSeries exact = series({{0, poly({"1"})}, {1, poly({"0", "1"})}}, 6);
        DecayDiagnostics d = decay_exponent(e, exact, parse_sector("-0.95pi:0.95pi", Real("0.05")), 24);
        CHECK(d.pass);
        CHECK(!d.slope.has_value());
        CHECK(decay_to_json(d)["slope"] == "inf");
    }

    TEST_CASE("argument checks") {
        OdeProblem e = load_corpus("euler_log_linear");
        Sector sec = parse_sector("0:1", Real("0.05"));
        CHECK_THROWS_AS(decay_exponent(e, DulacSeries(3), sec, 3), Error);
        CHECK_THROWS_AS(decay_exponent(e, series({{0, poly({"1"})}}), sec, 24), Error);
    }
}

TEST_SUITE("pipeline") {
    TEST_CASE("Painleve VI is certified") {
        PipelineOptions opts;
        opts.N = 9;
        PipelineReport rep = run_report(load_corpus_doc("painleve6"), opts);
        CHECK(rep.error.empty());
        CHECK(rep.verdict == Overall::CertifiedConvergent);
        CHECK(rep.exit_code() == 0);
    }

    TEST_CASE("Abel at N = 10 is certified") {
        PipelineOptions opts;
        opts.N = 10;
        PipelineReport rep = run_report(load_corpus_doc("abel_c1"), opts);
        CHECK(rep.verdict == Overall::CertifiedConvergent);
    }

    TEST_CASE("criterion failure") {
        PipelineReport rep = run_report(load_corpus_doc("euler_divergent"), PipelineOptions{});
        CHECK(rep.verdict == Overall::CriterionFailed);
        CHECK(rep.exit_code() == 2);
        REQUIRE(rep.cert.has_value());
        CHECK(!rep.cert->witnesses.empty());
    }

    TEST_CASE("errors are attributed to a stage") {
        Json doc = load_corpus_doc("abel_c0");
        doc["F"] = "y0 +";
        PipelineReport rep = run_report(doc, PipelineOptions{});
        CHECK(rep.exit_code() == 1);
        CHECK(rep.error_stage == "ode_parser");

        PipelineOptions low;
        low.ell = 1;
        PipelineReport r2 = run_report(load_corpus_doc("abel_c0"), low);
        CHECK(r2.exit_code() == 1);
        CHECK(r2.error_stage == "reducer");
    }

    TEST_CASE("ell override gives the same series") {
        PipelineOptions a, b;
        a.N = 11;
        b.N = 10;
        b.ell = 3;
        OdeProblem p = abel("1");
        CHECK(solve_problem(p, a).phi == solve_problem(p, b).phi);
    }

    TEST_CASE("reports are deterministic and round trip") {
        PipelineOptions opts;
        opts.N = 8;
        Json doc = load_corpus_doc("abel_cm12");
        std::string r1 = report_to_json(run_report(doc, opts)).dump(2);
        std::string r2 = report_to_json(run_report(doc, opts)).dump(2);
        CHECK(r1 == r2);
        CHECK(Json::parse(r1).dump(2) == r1);
    }

    TEST_CASE("golden reports match and satisfy the schema") {
        std::ifstream sf(std::string(DULAC_SOURCE_DIR) + "/schema/report.schema.json");
        REQUIRE(sf);
        const Json schema = Json::parse(sf);
        for (const char* name : {"abel_c0", "abel_c1", "abel_cm12", "painleve6", "logistic_log", "euler_log_linear",
                                 "euler_divergent"}) {
            CAPTURE(name);
            std::ifstream gf(std::string(DULAC_CORPUS_DIR) + "/golden/" + name + ".report.json");
            REQUIRE(gf);
            std::stringstream golden;
            golden << gf.rdbuf();
            const Json report = report_to_json(run_report(load_corpus_doc(name), PipelineOptions{}));
            CHECK(report.dump(2) + "\n" == golden.str());
            for (const auto& key : schema["required"]) CHECK(report.contains(key.get<std::string>()));
            for (const auto& [key, sub] : schema["properties"].items()) {
                if (!report.contains(key) || !sub.contains("required")) continue;
                for (const auto& k : sub["required"]) CHECK(report[key].contains(k.get<std::string>()));
            }
            const auto& verdicts = schema["properties"]["verdict"]["enum"];
            CHECK(std::find(verdicts.begin(), verdicts.end(), report["verdict"]) != verdicts.end());
        }
    }
}
