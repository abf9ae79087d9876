#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pottszero/polynomial.hpp"

namespace pottszero {

using Complex = std::complex<double>;

struct RootOptions {
    int max_iterations = 1000;
    double tolerance = 1e-13;  // relative to 1 + |root|
};

struct RootFinderResult {
    std::vector<Complex> roots;
    bool used_fallback = false;
    int iterations = 0;
};

// All complex roots with multiplicity, coefficients indexed by power. Leading
// zeros of the coefficient list are ignored; roots at zero are split off exactly.
// Aberth-Ehrlich iteration, with the companion-matrix eigenvalues as fallback.
RootFinderResult find_roots(std::span<const double> coeffs, const RootOptions& options = {});
// The exact version splits p into square-free parts first, so repeated roots are
// found as simple roots of a factor and repeated with their multiplicity.
RootFinderResult find_roots(const WPolynomial& p, const RootOptions& options = {});

// |p(z)| with z converted exactly to a Gaussian rational and evaluated in rationals.
double exact_residual(const WPolynomial& p, Complex z);

// Euclidean distance from z to the real segment [0,1].
double distance_to_unit_interval(Complex z);

}  // namespace pottszero
