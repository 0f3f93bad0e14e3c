#ifndef DULAC_SCALAR_HPP
#define DULAC_SCALAR_HPP

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dulac {

// Errors raised by every stage carry a short stage tag so the CLI can
// attribute failures in reports.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

using Json = nlohmann::ordered_json;
using Rational = mpq_class;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

// Working precision of newly constructed Real values, in bits.
unsigned precision_bits();
void set_precision_bits(unsigned bits);

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// Exact complex number with rational real and imaginary parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im = 0);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussianRational conj() const { return {re_, -im_}; }
    // |z|^2, exact.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_zero(const GaussianRational& v) { return v.is_zero(); }

// Complex big-float; precision is that of the Real parts.
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
    Complex(long v) : re(v), im(0) {}                                          // NOLINT

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    Complex operator-() const { return {-re, -im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

inline bool is_zero(const Complex& v) { return v.re == 0 && v.im == 0; }
Real abs(const Complex& z);
Complex exp(const Complex& z);
Complex log_principal(const Complex& z);
Complex polar(const Real& r, const Real& theta);

// Nonnegative real that is rounded upward by every operation, so a chain of
// +, *, / over nonnegative inputs yields an upper bound of the exact value.
class UpperReal {
public:
    UpperReal() = default;
    UpperReal(long v);  // NOLINT(google-explicit-constructor)
    explicit UpperReal(Real v) : v_(std::move(v)) {}

    const Real& value() const { return v_; }

    UpperReal& operator+=(const UpperReal& o);
    UpperReal& operator*=(const UpperReal& o);
    UpperReal& operator/=(const UpperReal& o);
    friend UpperReal operator+(UpperReal a, const UpperReal& b) { return a += b; }
    friend UpperReal operator*(UpperReal a, const UpperReal& b) { return a *= b; }
    friend UpperReal operator/(UpperReal a, const UpperReal& b) { return a /= b; }
    friend bool operator==(const UpperReal& a, const UpperReal& b) { return a.v_ == b.v_; }

private:
    Real v_{0};
};

inline bool is_zero(const UpperReal& v) { return v.value() == 0; }

// Directed-rounding helpers.
Real add_up(const Real& a, const Real& b);
Real add_down(const Real& a, const Real& b);
Real mul_up(const Real& a, const Real& b);
Real mul_down(const Real& a, const Real& b);
Real div_up(const Real& a, const Real& b);
Real div_down(const Real& a, const Real& b);
Real rational_up(const Rational& q);
Real rational_down(const Rational& q);
// Bounds on |z|.
Real abs_up(const GaussianRational& z);
Real abs_down(const GaussianRational& z);

Complex to_complex(const GaussianRational& z);

// Scalar text syntax: integers, "p/q", and decimals with an optional
// exponent ("-1.25e-3"), all read exactly.
Rational parse_rational(std::string_view text);
GaussianRational parse_scalar(const Json& j);
std::string format_rational(const Rational& q);
Json format_scalar(const GaussianRational& z);
std::string to_string(const GaussianRational& z);

// Decimal rendering of a big float with `digits` significant digits.
std::string format_real(const Real& v, int digits = 20);

}  // namespace dulac

#endif  // DULAC_SCALAR_HPP
