#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace dulac;
using namespace dulac::test;

TEST_SUITE("coeff_field") {
    TEST_CASE("lognorm") {
        CHECK(lognorm(poly({"-1", "1"})) == 2);
        CHECK(lognorm(LogPoly()) == 0);
        const LogPoly sq = poly({"1", "2", "1"});
        CHECK(lognorm(sq) == 4);
        CHECK(lognorm(poly({"1", "1"}) * poly({"1", "1"})) == lognorm(poly({"1", "1"})) * lognorm(poly({"1", "1"})));
        CHECK(lognorm_down(sq) == 4);
    }

    TEST_CASE("lognorm of complex coefficients brackets the modulus") {
        LogPoly p(std::vector<GaussianRational>{GaussianRational(1, 1)});
        CHECK(lognorm_down(p) <= lognorm(p));
        CHECK(to_double(lognorm(p)) == doctest::Approx(std::sqrt(2.0)));
    }

    TEST_CASE("derive") {
        CHECK(derive(poly({"0", "0", "1"})) == poly({"0", "2"}));
        CHECK(derive(poly({"5"})).is_zero());
        CHECK(derive(poly({"0", "-1", "0", "1"})) == poly({"-1", "0", "3"}));
    }

    TEST_CASE("shifted_apply") {
        CHECK(shifted_apply(poly({"0", "1"}), q("1"), q("1"), poly({"-1", "1"})) == poly({"0", "1"}));
        CHECK(shifted_apply(poly({"0", "1"}), q("3"), q("2"), LogPoly()).is_zero());
        // (2 - eps D)^2 t = 4t - 4 eps.
        const GaussianRational eps = q("1/3");
        CHECK(shifted_apply(poly({"0", "0", "1"}), q("2"), -eps, poly({"0", "1"})) ==
              LogPoly(std::vector<GaussianRational>{q("-4") * eps, q("4")}));
    }

    TEST_CASE("taylor coefficients reproduce L(k + z)") {
        const LogPoly L = poly({"2", "-3", "1"});
        auto c = taylor_coefficients(L, q("5"));
        // L(5 + z) = 12 + 7 z + z^2.
        CHECK(c == std::vector<GaussianRational>{q("12"), q("7"), q("1")});
    }

    TEST_CASE("rational parsing is exact") {
        CHECK(parse_rational("0.1") == Rational(1, 10));
        CHECK(parse_rational("-3/4") == Rational(-3, 4));
        CHECK(parse_rational("1e-3") == Rational(1, 1000));
        CHECK_THROWS_AS(parse_rational("1/0"), Error);
        CHECK_THROWS_AS(parse_rational("abc"), Error);
    }

    TEST_CASE("directed rounding brackets the exact value") {
        PrecisionScope scope(64);
        const Rational third(1, 3);
        CHECK(rational_down(third) < rational_up(third));
        CHECK(add_down(Real(1), rational_down(third)) <= add_up(Real(1), rational_up(third)));
        CHECK(div_down(Real(1), Real(3)) < div_up(Real(1), Real(3)));
        UpperReal u(1);
        u /= UpperReal(3);
        CHECK(u.value() * 3 >= 1);
    }
}

TEST_SUITE("dulac_algebra") {
    TEST_CASE("delta") {
        CHECK(delta(series({{1, poly({"0", "1"})}})) == series({{1, poly({"1", "1"})}}));
        CHECK(delta(series({{0, poly({"7"})}})).is_zero());
        // delta((C - t) x^2) = (2C - 1 - 2t) x^2.
        for (const char* C : {"0", "1", "-1/2"}) {
            const GaussianRational c = q(C);
            DulacSeries s = series({{2, LogPoly(std::vector<GaussianRational>{c, q("-1")})}});
            CHECK(delta(s) == series({{2, LogPoly(std::vector<GaussianRational>{q("2") * c - q("1"), q("-2")})}}));
        }
    }

    TEST_CASE("products") {
        const DulacSeries s = series({{1, poly({"1", "2"})}, {3, poly({"0", "0", "1"})}});
        CHECK(series({{0, poly({"1"})}}) * s == s);
        CHECK(series({{1, poly({"0", "1"})}}) * series({{1, poly({"0", "1"})}}) == series({{2, poly({"0", "0", "1"})}}));
        const GaussianRational C = q("5/7");
        DulacSeries a = series({{0, poly({"1"})}, {2, LogPoly(std::vector<GaussianRational>{C, q("-1")})}});
        DulacSeries sq = a * a;
        CHECK(sq.coeff(0) == poly({"1"}));
        CHECK(sq.coeff(2) == LogPoly(std::vector<GaussianRational>{q("2") * C, q("-2")}));
        CHECK(sq.coeff(4) == LogPoly(std::vector<GaussianRational>{C * C, q("-2") * C, q("1")}));
    }

    TEST_CASE("truncated product only reports known orders") {
        DulacSeries a = series({{0, poly({"1"})}, {1, poly({"1"})}}, 3);
        DulacSeries b = series({{2, poly({"1"})}}, 4);
        DulacSeries p = a * b;
        CHECK(p.trunc() == 4);  // min(3 + 2, 4 + 0)
        CHECK(p.coeff(3) == poly({"1"}));
    }

    TEST_CASE("valuation") {
        CHECK(series({{3, poly({"0", "0", "1"})}}).valuation().value == 3);
        auto v = DulacSeries(10).valuation();
        CHECK(v.lower_bound);
        CHECK(v.value == 11);
        CHECK(delta(series({{0, poly({"5"})}, {2, poly({"1"})}})).valuation().value == 2);
    }

    TEST_CASE("substitute") {
        OdePolynomial y0 = parse_expression("y0", 0);
        DulacSeries s = series({{0, poly({"2"})}, {4, poly({"1", "1"})}});
        CHECK(substitute(y0, s) == s);
        OdePolynomial F = parse_expression("y1 - y0", 1);
        CHECK(substitute(F, series({{1, poly({"1"})}})).is_zero());
        // Abel residual on its seed vanishes through order 2 for any C.
        for (const char* C : {"0", "1", "-1/2"}) {
            OdeProblem p = abel(C);
            DulacSeries seed = p.seed;
            DulacSeries padded(3);
            for (const auto& [k, c] : seed.terms()) padded.set(k, c);
            DulacSeries r = substitute(p.F, padded);
            CHECK(r.trunc() >= 2);
            for (int k = 0; k <= 2; ++k) CHECK(r.coeff(k).is_zero());
        }
    }

    TEST_CASE("delta is a derivation on products") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> coef(-5, 5);
        for (int trial = 0; trial < 30; ++trial) {
            auto random_series = [&] {
                DulacSeries s;
                for (int k = 0; k < 4; ++k) {
                    std::vector<GaussianRational> c;
                    for (int i = 0; i < 3; ++i) c.push_back(GaussianRational(coef(rng)));
                    s.set(k, LogPoly(c));
                }
                return s;
            };
            DulacSeries a = random_series(), b = random_series();
            CHECK(delta(a * b) == delta(a) * b + a * delta(b));
        }
    }

    TEST_CASE("series JSON round trip") {
        DulacSeries s = series({{0, poly({"1"})}, {2, poly({"1/3", "-1"})}}, 5);
        Json j = series_to_json(s);
        CHECK(series_from_json(j) == s);
        CHECK(series_to_json(series_from_json(j)).dump() == j.dump());
        Json bad = j;
        bad["terms"].push_back(Json{{"k", 9}, {"p", {"1"}}});
        CHECK_THROWS_AS(series_from_json(bad), Error);
    }

    TEST_CASE("coefficient beyond truncation is an error") {
        DulacSeries s(2);
        CHECK_THROWS_AS(s.coeff(3), Error);
        CHECK_THROWS_AS(s.set(3, poly({"1"})), Error);
    }
}
