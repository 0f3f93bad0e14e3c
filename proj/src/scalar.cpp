#include "dulac/scalar.hpp"

#include <boost/multiprecision/detail/digits.hpp>

#include <cctype>
#include <sstream>

namespace dulac {

namespace {

mpfr_ptr raw(Real& v) { return v.backend().data(); }
mpfr_srcptr raw(const Real& v) { return v.backend().data(); }

}  // namespace

unsigned precision_bits() {
    Real probe;
    return static_cast<unsigned>(mpfr_get_prec(raw(probe)));
}

void set_precision_bits(unsigned bits) {
    Real::default_precision(boost::multiprecision::detail::digits2_2_10(bits));
}

namespace {
// Library default working precision, in place before main runs.
const bool kPrecisionInitialized = (set_precision_bits(kDefaultPrecisionBits), true);
}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
    set_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw Error("coeff_field", "division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    Rational d = o.norm2();
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    Rational i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

// ---------------------------------------------------------------------------
// Complex

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    if (d == 0) throw Error("coeff_field", "complex division by zero");
    Real r = (re * o.re + im * o.im) / d;
    Real i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Complex exp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex log_principal(const Complex& z) {
    if (is_zero(z)) throw Error("coeff_field", "logarithm of zero");
    return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}

Complex polar(const Real& r, const Real& theta) {
    return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
}

// ---------------------------------------------------------------------------
// Directed rounding

Real add_up(const Real& a, const Real& b) {
    Real r;
    mpfr_add(raw(r), raw(a), raw(b), MPFR_RNDU);
    return r;
}

Real add_down(const Real& a, const Real& b) {
    Real r;
    mpfr_add(raw(r), raw(a), raw(b), MPFR_RNDD);
    return r;
}

Real mul_up(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(raw(r), raw(a), raw(b), MPFR_RNDU);
    return r;
}

Real mul_down(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(raw(r), raw(a), raw(b), MPFR_RNDD);
    return r;
}

Real div_up(const Real& a, const Real& b) {
    Real r;
    mpfr_div(raw(r), raw(a), raw(b), MPFR_RNDU);
    return r;
}

Real div_down(const Real& a, const Real& b) {
    Real r;
    mpfr_div(raw(r), raw(a), raw(b), MPFR_RNDD);
    return r;
}

Real rational_up(const Rational& q) {
    Real r;
    mpfr_set_q(raw(r), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Real rational_down(const Rational& q) {
    Real r;
    mpfr_set_q(raw(r), q.get_mpq_t(), MPFR_RNDD);
    return r;
}

Real abs_up(const GaussianRational& z) {
    if (z.is_real()) return rational_up(abs(z.re()));
    Real n2 = rational_up(z.norm2());
    Real r;
    mpfr_sqrt(raw(r), raw(n2), MPFR_RNDU);
    return r;
}

Real abs_down(const GaussianRational& z) {
    if (z.is_real()) return rational_down(abs(z.re()));
    Real n2 = rational_down(z.norm2());
    Real r;
    mpfr_sqrt(raw(r), raw(n2), MPFR_RNDD);
    return r;
}

Complex to_complex(const GaussianRational& z) {
    Real re, im;
    mpfr_set_q(raw(re), z.re().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(raw(im), z.im().get_mpq_t(), MPFR_RNDN);
    return {re, im};
}

// ---------------------------------------------------------------------------
// UpperReal

UpperReal::UpperReal(long v) : v_(v) {}

UpperReal& UpperReal::operator+=(const UpperReal& o) {
    v_ = add_up(v_, o.v_);
    return *this;
}

UpperReal& UpperReal::operator*=(const UpperReal& o) {
    v_ = mul_up(v_, o.v_);
    return *this;
}

UpperReal& UpperReal::operator/=(const UpperReal& o) {
    v_ = div_up(v_, o.v_);
    return *this;
}

// ---------------------------------------------------------------------------
// Text syntax

Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Error {
        return Error("coeff_field", "malformed scalar '" + std::string(text) + "'");
    };
    std::size_t i = 0;
    auto at = [&](std::size_t p) { return p < text.size() ? text[p] : '\0'; };
    bool negative = false;
    if (at(i) == '+' || at(i) == '-') {
        negative = at(i) == '-';
        ++i;
    }
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(at(i)))) digits += text[i++];
    Rational value;
    if (at(i) == '/') {
        ++i;
        std::string den;
        while (std::isdigit(static_cast<unsigned char>(at(i)))) den += text[i++];
        if (digits.empty() || den.empty() || i != text.size()) throw fail();
        mpz_class d(den, 10);
        if (d == 0) throw Error("coeff_field", "zero denominator in '" + std::string(text) + "'");
        value = Rational(mpz_class(digits, 10), d);
        value.canonicalize();
    } else {
        std::string frac;
        if (at(i) == '.') {
            ++i;
            while (std::isdigit(static_cast<unsigned char>(at(i)))) frac += text[i++];
        }
        if (digits.empty() && frac.empty()) throw fail();
        long exponent = 0;
        if (at(i) == 'e' || at(i) == 'E') {
            ++i;
            bool eneg = false;
            if (at(i) == '+' || at(i) == '-') {
                eneg = at(i) == '-';
                ++i;
            }
            std::string ed;
            while (std::isdigit(static_cast<unsigned char>(at(i)))) ed += text[i++];
            if (ed.empty() || ed.size() > 6) throw fail();
            exponent = std::stol(ed) * (eneg ? -1 : 1);
        }
        if (i != text.size()) throw fail();
        mpz_class mantissa(digits + frac, 10);
        exponent -= static_cast<long>(frac.size());
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
        value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
        value.canonicalize();
    }
    return negative ? Rational(-value) : value;
}

GaussianRational parse_scalar(const Json& j) {
    if (j.is_string()) return {parse_rational(j.get<std::string>())};
    if (j.is_number_integer()) return {Rational(j.get<long>())};
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im") || j.size() != 2)
            throw Error("coeff_field", "complex scalar must have exactly 're' and 'im'");
        if (!j["re"].is_string() || !j["im"].is_string())
            throw Error("coeff_field", "complex scalar parts must be strings");
        return {parse_rational(j["re"].get<std::string>()), parse_rational(j["im"].get<std::string>())};
    }
    throw Error("coeff_field", "malformed scalar " + j.dump());
}

std::string format_rational(const Rational& q) { return q.get_str(); }

Json format_scalar(const GaussianRational& z) {
    if (z.is_real()) return format_rational(z.re());
    return {{"re", format_rational(z.re())}, {"im", format_rational(z.im())}};
}

std::string to_string(const GaussianRational& z) {
    if (z.is_real()) return format_rational(z.re());
    if (sgn(z.re()) == 0) return format_rational(z.im()) + "*I";
    std::string im = format_rational(z.im());
    return "(" + format_rational(z.re()) + (im[0] == '-' ? "" : "+") + im + "*I)";
}

std::string format_real(const Real& v, int digits) {
    if (boost::multiprecision::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v.str(digits, std::ios_base::scientific);
}

}  // namespace dulac
