#pragma once

#include <complex>

#include "matings/errors.hpp"

namespace matings {

using cplx = std::complex<double>;

/// Coefficients of the bicritical normal form z -> (A z^d + 1)/(B z^d + 1),
/// critical points 0 and infinity, f(0) = 1.
struct BicriticalCoefficients {
    cplx A{0.0, 0.0};
    cplx B{0.0, 0.0};
    int degree = 2;
};

/// Point on the Riemann sphere: finite value or infinity.
struct ExtComplex {
    cplx z{0.0, 0.0};
    bool inf = false;

    static ExtComplex infinity() { return ExtComplex{cplx{0.0, 0.0}, true}; }
    static ExtComplex finite(cplx v) { return ExtComplex{v, false}; }
};

/// Chordal metric on the sphere (bounded by 2), used wherever infinity can occur.
double chordal(const ExtComplex& a, const ExtComplex& b);

/// Map evaluation, infinity-aware.
ExtComplex apply_map(const BicriticalCoefficients& f, const ExtComplex& p);

void validate_coefficients(const BicriticalCoefficients& f);

} // namespace matings
