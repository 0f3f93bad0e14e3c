#include "dulac/evaluator.hpp"

namespace dulac {

namespace {

namespace mp = boost::multiprecision;

Real pi() { return mp::acos(Real(-1)); }

struct Evaluated {
    Complex value;
    Real scale;  // sum of absolute term values, for the noise floor
};

Complex eval_at(const DulacSeries& s, const Complex& x, const Complex& lnx) {
    Complex acc(0);
    Complex xpow(1);
    int k = 0;
    for (const auto& [order, p] : s.terms()) {
        for (; k < order; ++k) xpow *= x;
        Complex v(0);
        for (int i = p.degree(); i >= 0; --i) v = v * lnx + to_complex(p[i]);
        acc += v * xpow;
    }
    return acc;
}

Evaluated residual_at(const OdeProblem& problem, const DulacSeries& s, const Complex& x, const Complex& lnx) {
    const int slots = problem.F.slots();
    std::vector<Complex> phi;
    for (int j = 0; j < slots; ++j) phi.push_back(eval_at(delta_power(s, j), x, lnx));
    Evaluated out{Complex(0), Real(0)};
    for (const auto& m : problem.F.terms()) {
        Complex term = to_complex(m.coeff);
        for (int i = 0; i < m.x_pow; ++i) term *= x;
        for (int i = 0; i < m.t_pow; ++i) term *= lnx;
        for (int j = 0; j < slots; ++j)
            for (int q = 0; q < m.y_pows[j]; ++q) term *= phi[j];
        out.scale += abs(term);
        out.value += term;
    }
    return out;
}

unsigned eval_bits() { return 2 * precision_bits(); }

Complex point(const SectorPoint& p) { return polar(p.modulus, p.arg); }

Complex log_of(const SectorPoint& p) { return {mp::log(p.modulus), p.arg}; }

void check_point(const SectorPoint& p) {
    if (!(p.modulus > 0)) throw Error("evaluator", "evaluation at x = 0");
}

Complex round_back(const Complex& z, unsigned bits) {
    PrecisionScope scope(bits);
    return {Real(z.re), Real(z.im)};
}

}  // namespace

void Sector::validate() const {
    if (!(rho0 > 0)) throw Error("evaluator", "sector radius must be positive");
    if (!(theta_max > theta_min)) throw Error("evaluator", "sector needs theta_min < theta_max");
    if (!(opening() < 2 * pi())) throw Error("evaluator", "sector opening must be less than 2*pi");
}

Sector parse_sector(std::string_view text, const Real& rho0) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw Error("evaluator", "sector must look like theta_min:theta_max");
    // Angles are decimals, optionally with a "pi" suffix ("-0.95pi").
    auto angle = [](std::string_view a) {
        std::string str(a);
        bool times_pi = str.size() >= 2 && str.compare(str.size() - 2, 2, "pi") == 0;
        if (times_pi) str.resize(str.size() - 2);
        if (str.empty() || str == "-" || str == "+") str += "1";
        Real v(str);
        return times_pi ? Real(v * pi()) : v;
    };
    Sector s;
    try {
        s.theta_min = angle(text.substr(0, colon));
        s.theta_max = angle(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw Error("evaluator", "bad sector angles '" + std::string(text) + "'");
    }
    s.rho0 = rho0;
    s.validate();
    return s;
}

SectorPoint to_sector_point(const Complex& x, const Sector& sector) {
    if (is_zero(x)) throw Error("evaluator", "evaluation at x = 0");
    Real arg = mp::atan2(x.im, x.re);
    const Real two_pi = 2 * pi();
    const Real c = sector.bisector();
    while (arg - c > pi()) arg -= two_pi;
    while (arg - c <= -pi()) arg += two_pi;
    return {abs(x), arg};
}

Complex eval_truncated(const DulacSeries& s, const SectorPoint& x) {
    check_point(x);
    const unsigned bits = precision_bits();
    Complex v;
    {
        PrecisionScope scope(eval_bits());
        SectorPoint p{Real(x.modulus), Real(x.arg)};
        v = eval_at(s, point(p), log_of(p));
    }
    return round_back(v, bits);
}

Complex eval_truncated(const DulacSeries& s, const Complex& x) {
    if (is_zero(x)) throw Error("evaluator", "evaluation at x = 0");
    return eval_truncated(s, SectorPoint{abs(x), mp::atan2(x.im, x.re)});
}

Complex residual(const OdeProblem& problem, const DulacSeries& s, const SectorPoint& x) {
    check_point(x);
    const unsigned bits = precision_bits();
    Complex v;
    {
        PrecisionScope scope(eval_bits());
        SectorPoint p{Real(x.modulus), Real(x.arg)};
        v = residual_at(problem, s, point(p), log_of(p)).value;
    }
    return round_back(v, bits);
}

Complex residual(const OdeProblem& problem, const DulacSeries& s, const Complex& x) {
    if (is_zero(x)) throw Error("evaluator", "evaluation at x = 0");
    return residual(problem, s, SectorPoint{abs(x), mp::atan2(x.im, x.re)});
}

DecayDiagnostics decay_exponent(const OdeProblem& problem, const DulacSeries& s, const Sector& sector,
                                int samples, const Real& eta) {
    sector.validate();
    if (samples < 6) throw Error("evaluator", "need at least 6 samples");
    if (s.is_exact()) throw Error("evaluator", "decay test needs a truncated series");
    DecayDiagnostics d;
    d.N = s.trunc();
    d.eta = eta;
    d.threshold = Real(d.N + 1) - eta;
    const Real inset = sector.opening() / 20;
    d.ray_args = {sector.bisector(), sector.theta_min + inset, sector.theta_max - inset};
    const int per_ray = samples / 3;

    const unsigned bits = precision_bits();
    const unsigned ebits = eval_bits();
    std::vector<Real> slopes;
    bool any_underflow = false;
    for (std::size_t ray = 0; ray < d.ray_args.size(); ++ray) {
        std::vector<std::pair<Real, Real>> pts;  // (log|x|, log|res|)
        Real modulus = sector.rho0;
        for (int i = 0; i < per_ray; ++i, modulus /= 2) {
            SectorPoint p{modulus, d.ray_args[ray]};
            Real absres;
            bool usable;
            {
                PrecisionScope scope(ebits);
                SectorPoint q{Real(p.modulus), Real(p.arg)};
                Evaluated e = residual_at(problem, s, point(q), log_of(q));
                Real a = abs(e.value);
                const Real floor = mp::ldexp(Real(1), -static_cast<int>(ebits) + 16) * std::max(e.scale, Real(1));
                usable = a > floor;
                absres = a;
            }
            {
                PrecisionScope scope(bits);
                absres = Real(absres);
            }
            d.samples.push_back({static_cast<int>(ray), p, absres});
            if (usable)
                pts.emplace_back(mp::log(modulus), mp::log(absres));
            else
                any_underflow = true;
        }
        if (pts.size() < 2) {
            d.ray_slopes.emplace_back(std::nullopt);
            continue;
        }
        Real sx(0), sy(0), sxx(0), sxy(0);
        for (const auto& [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const Real cnt(static_cast<long>(pts.size()));
        const Real slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        d.ray_slopes.emplace_back(slope);
        slopes.push_back(slope);
    }
    if (slopes.empty()) {
        d.pass = true;
        d.note = "residual below the precision floor at every sample";
        return d;
    }
    d.slope = *std::min_element(slopes.begin(), slopes.end());
    d.spread = *std::max_element(slopes.begin(), slopes.end()) - *d.slope;
    d.pass = *d.slope >= d.threshold;
    if (any_underflow) d.note = "some samples were below the precision floor and left out of the fit";
    return d;
}

Json decay_to_json(const DecayDiagnostics& d) {
    Json out;
    out["N"] = d.N;
    out["eta"] = format_real(d.eta, 6);
    out["threshold"] = format_real(d.threshold, 10);
    out["slope"] = d.slope ? Json(format_real(*d.slope, 10)) : Json("inf");
    out["spread"] = format_real(d.spread, 6);
    Json rays = Json::array();
    for (std::size_t i = 0; i < d.ray_args.size(); ++i)
        rays.push_back(Json{{"arg", format_real(d.ray_args[i], 10)},
                            {"slope", d.ray_slopes[i] ? Json(format_real(*d.ray_slopes[i], 10)) : Json("inf")}});
    out["rays"] = rays;
    Json pts = Json::array();
    for (const auto& s : d.samples)
        pts.push_back(Json{{"ray", s.ray},
                           {"modulus", format_real(s.x.modulus, 10)},
                           {"arg", format_real(s.x.arg, 10)},
                           {"abs_residual", format_real(s.abs_residual, 10)}});
    out["samples"] = pts;
    out["pass"] = d.pass;
    if (!d.note.empty()) out["note"] = d.note;
    return out;
}

}  // namespace dulac
