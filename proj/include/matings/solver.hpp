#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "matings/itinerary.hpp"

namespace matings {

using cplx = std::complex<double>;

/// A unicritical polynomial z^d + c with superattracting orbit of the given
/// period at the stored parameter.
struct PolySpec {
    int degree = 2;
    long period = 1;
    cplx parameter{0.0, 0.0};
    std::optional<CharPair> sourcePair;
};

struct CenterSolveResult {
    PolySpec spec;
    double residual = 0.0;
    long iterations = 0;
    std::vector<double> residualHistory;
};

/// Newton iteration on g(c) = f_c^period(0) from the seed; the derivative is
/// accumulated by the forward recurrence alongside the orbit.
CenterSolveResult center_solve(int degree, long period, cplx seed, double tol = 1e-12,
                               long maxIterations = 200);

/// |f_c^period(0)|, plus a period-minimality check: every shorter iterate of
/// the critical point must stay away from zero.
double verify_parameter(const PolySpec& spec, double minimalityTol = 1e-6);

/// Escape-time classification followed by Newton polish on a parameter grid;
/// returns deduplicated centers found inside the box.
std::vector<PolySpec> grid_scan_centers(int degree, long period, cplx boxCenter, double boxWidth,
                                        int gridResolution);

/// Approximate landing point of the dynamical external ray at a periodic
/// angle, by potential descent with Newton pullback along the ray ladder.
cplx trace_external_ray(int degree, cplx c, const Angle& theta, int levels = 60, int stepsPerLevel = 8);

/// Newton refinement of an approximate period-p point of z^d + c; throws
/// RootFindingFailure when the seed is not in a basin.
cplx polish_periodic_point(int degree, cplx c, cplx seed, long period);

/// The center of the hyperbolic component whose characteristic angle pair is
/// the one given: candidates come from a parameter grid scan, and the match
/// is certified by the rays of the pair co-landing at a point of the correct
/// period on the boundary of the critical value component.
PolySpec match_center(const CharPair& pair, int degree);

} // namespace matings
