#ifndef DULAC_ROOTS_HPP
#define DULAC_ROOTS_HPP

#include "dulac/log_poly.hpp"

#include <vector>

namespace dulac {

// Approximate root with an inclusion radius.  The union of all discs
// contains every root, and a connected component made of m discs contains
// exactly m roots (counted with multiplicity).
struct RootEnclosure {
    Complex center;
    Real radius;
    int component = 0;
};

// Aberth-Ehrlich iteration at the current working precision followed by
// a posteriori inclusion radii n |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|.
std::vector<RootEnclosure> polynomial_roots(const LogPoly& p);

// Number of roots (with multiplicity) of q on the imaginary axis, exactly.
int imaginary_axis_root_count(const LogPoly& q);

// Exact real root count (with multiplicity) of a rational polynomial,
// coefficients lowest degree first.
int real_root_count(const std::vector<Rational>& p);

}  // namespace dulac

#endif  // DULAC_ROOTS_HPP
