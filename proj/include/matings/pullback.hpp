#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matings/bicritical.hpp"
#include "matings/combinatorics.hpp"

namespace matings {

/// Finite set of labeled sphere points carrying the postcritical dynamics:
/// sigma maps each label to the label of its image point. Pinned labels hold
/// 0, infinity and 1 (the critical value of 0) exactly at every iteration.
struct MarkedConfiguration {
    int degree = 2;
    std::vector<std::string> labels;
    std::vector<ExtComplex> pos;
    std::vector<int> sigma;
    std::vector<int> localDegree;
    std::vector<int> pinnedZero; ///< label indices held at 0
    std::vector<int> pinnedInf;  ///< label indices held at infinity
    int pinnedValue = -1;        ///< label renormalized to 1 after each step
    std::vector<std::pair<int, int>> coincidentOk; ///< pairs exempt from collision detection

    int index_of(const std::string& label) const;
    bool is_pinned_zero(int i) const;
    bool is_pinned_inf(int i) const;
};

struct PullbackTrace {
    long iterations = 0;
    std::vector<double> maxMove; ///< chordal, one entry per iteration
    bool converged = false;
    std::optional<std::pair<std::string, std::string>> collision;
};

/// Standard formal-mating placement: the polynomial carrying the first
/// critical point goes inside the unit disk (critical point at 0), the other
/// outside (critical point at infinity); postcritical points sit at their
/// component footprint midpoints, outer-plane angles negated.
MarkedConfiguration initial_configuration(const MatingSpec& spec);

/// Least-squares solve of the mapping conditions, linear in (A, B):
/// z^d A - w z^d B = w - 1 for finite pairs, A = w B at infinity.
BicriticalCoefficients solve_coefficients(const MarkedConfiguration& config);

/// One pullback: every free label moves to the d-th-root preimage of its
/// image point nearest the label's previous position, then the configuration
/// is renormalized so the pinned labels sit at 0, infinity, 1.
MarkedConfiguration pullback_step(const MarkedConfiguration& config, const BicriticalCoefficients& coeffs);

/// Alternates solve and pullback until the maximum chordal displacement is
/// at most tol. Throws Obstructed on a persistent marked-point collision,
/// NoConvergence when maxIter is exhausted; traceOut (when given) is filled
/// even on failure.
BicriticalCoefficients run_pullback(MarkedConfiguration& config, double tol, long maxIter,
                                    PullbackTrace* traceOut);

std::pair<BicriticalCoefficients, PullbackTrace> realize_mating(const MatingSpec& spec, double tol = 1e-12,
                                                                long maxIter = 500);

/// Max over labels of chordal(f(pos), pos of sigma-image); zero at the fixed point.
double forward_consistency(const MarkedConfiguration& config, const BicriticalCoefficients& coeffs);

} // namespace matings
