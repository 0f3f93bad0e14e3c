#ifndef DULAC_ODE_POLY_HPP
#define DULAC_ODE_POLY_HPP

#include "dulac/scalar.hpp"

#include <string>
#include <vector>

namespace dulac {

// alpha * x^mu * t^nu * y_0^q_0 ... y_n^q_n.  y_j stands for delta^j y (or
// delta^j u after reduction); t stands for ln x and is zero for raw problems.
struct Monomial {
    GaussianRational coeff;
    int x_pow = 0;
    int t_pow = 0;
    std::vector<int> y_pows;

    int y_degree() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Polynomial in x, t and a fixed number of y slots, kept canonical: merged,
// without zero terms, sorted lexicographically by (x_pow, t_pow, y_pows).
class OdePolynomial {
public:
    explicit OdePolynomial(int slots = 1) : slots_(slots) {}
    OdePolynomial(int slots, std::vector<Monomial> terms);

    static OdePolynomial constant(int slots, const GaussianRational& c);
    static OdePolynomial x_power(int slots, int p);
    static OdePolynomial t_power(int slots, int p);
    static OdePolynomial slot(int slots, int j);

    int slots() const { return slots_; }
    // ODE order n = slots - 1.
    int order() const { return slots_ - 1; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree_t() const;
    int degree_y() const;
    int min_x_pow() const;

    OdePolynomial& operator+=(const OdePolynomial& o);
    OdePolynomial& operator-=(const OdePolynomial& o);
    OdePolynomial& operator*=(const GaussianRational& s);
    friend OdePolynomial operator+(OdePolynomial a, const OdePolynomial& b) { return a += b; }
    friend OdePolynomial operator-(OdePolynomial a, const OdePolynomial& b) { return a -= b; }
    friend OdePolynomial operator*(OdePolynomial a, const GaussianRational& s) { return a *= s; }
    friend OdePolynomial operator*(const OdePolynomial& a, const OdePolynomial& b);
    OdePolynomial operator-() const;
    OdePolynomial pow(int e) const;

    friend bool operator==(const OdePolynomial&, const OdePolynomial&) = default;

private:
    void canonicalize();

    int slots_;
    std::vector<Monomial> terms_;
};

// Formal partial derivative with respect to y_j.
OdePolynomial partial(const OdePolynomial& F, int j);

// Replaces every y_j by images[j] (all images share one slot count).
OdePolynomial compose(const OdePolynomial& F, const std::vector<OdePolynomial>& images);

// Text form understood by the expression parser ("2*x*y1 - y0^2 + 1").
// Variables are x, t, y0..yn.
std::string to_expression(const OdePolynomial& F);

}  // namespace dulac

#endif  // DULAC_ODE_POLY_HPP
