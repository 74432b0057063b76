#pragma once

#include <vector>

#include "matings/bicritical.hpp"

namespace matings {

/// Multiplier multisets at fixed and period-two points; Moebius-conjugacy
/// invariant up to numerical tolerance.
struct MultiplierSpectrum {
    std::vector<cplx> fixedPointMultipliers;   ///< d+1 entries, multiplicity included
    std::vector<cplx> periodTwoMultipliers;    ///< d^2-d entries (one per point)
};

MultiplierSpectrum spectrum(const BicriticalCoefficients& coeffs);

/// Spectrum of the unicritical polynomial z^d + c (infinity contributes a
/// fixed point of multiplier zero).
MultiplierSpectrum polynomial_spectrum(int degree, cplx c);

/// Largest matched-pair distance under the optimal (min total absolute cost)
/// assignment between the two spectra. Infinite when sizes differ.
double spectrum_distance(const MultiplierSpectrum& a, const MultiplierSpectrum& b);

/// Thurston-equivalence surrogate for labelled bicritical maps in normal
/// form: multiplier spectra must match as multisets and the coefficients
/// must be related by the residual scaling symmetry lambda^(d-1) = 1.
bool equivalent(const BicriticalCoefficients& c1, const BicriticalCoefficients& c2, double tol = 1e-6);

/// Min-total-cost assignment between equal-sized complex multisets; returns
/// the per-pair distances of the optimal matching.
std::vector<double> optimal_assignment_distances(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace matings
