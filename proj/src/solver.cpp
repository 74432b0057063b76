#include "matings/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "matings/errors.hpp"

namespace matings {

namespace {

cplx ipow(cplx z, int k) {
    cplx out{1.0, 0.0};
    while (k > 0) {
        if (k & 1) out *= z;
        z *= z;
        k >>= 1;
    }
    return out;
}

// g(c) = f_c^period(0) and dg/dc by the forward recurrence
// z_{k+1} = z_k^d + c,  w_{k+1} = d z_k^{d-1} w_k + 1.
std::pair<cplx, cplx> critical_orbit_value(int degree, long period, cplx c) {
    cplx z{0.0, 0.0}, w{0.0, 0.0};
    for (long k = 0; k < period; ++k) {
        w = static_cast<double>(degree) * ipow(z, degree - 1) * w + 1.0;
        z = ipow(z, degree) + c;
    }
    return {z, w};
}

} // namespace

CenterSolveResult center_solve(int degree, long period, cplx seed, double tol, long maxIterations) {
    if (degree < 2) throw InvalidInput("degree must be >= 2");
    if (period < 1) throw InvalidInput("period must be >= 1");

    CenterSolveResult out;
    cplx c = seed;
    for (long it = 0; it < maxIterations; ++it) {
        auto [g, dg] = critical_orbit_value(degree, period, c);
        double r = std::abs(g);
        out.residualHistory.push_back(r);
        if (r <= tol) {
            out.spec = PolySpec{degree, period, c, std::nullopt};
            out.residual = r;
            out.iterations = it;
            return out;
        }
        if (std::abs(dg) < 1e-300)
            throw DerivativeVanished("Newton derivative vanished at c = " + std::to_string(c.real()) +
                                     " + " + std::to_string(c.imag()) + "i");
        c -= g / dg;
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NoConvergence("Newton iterate diverged");
    }
    throw NoConvergence("center solve did not reach tolerance in " + std::to_string(maxIterations) +
                        " iterations");
}

double verify_parameter(const PolySpec& spec, double minimalityTol) {
    cplx z{0.0, 0.0};
    double residual = 0.0;
    for (long k = 1; k <= spec.period; ++k) {
        z = ipow(z, spec.degree) + spec.parameter;
        if (k < spec.period && std::abs(z) < minimalityTol)
            throw InvalidInput("parameter has a superattracting orbit of smaller period " +
                               std::to_string(k));
        if (k == spec.period) residual = std::abs(z);
    }
    return residual;
}

cplx trace_external_ray(int degree, cplx c, const Angle& theta, int levels, int stepsPerLevel) {
    if (!is_periodic(theta, degree)) throw InvalidInput("ray tracing requires a periodic angle");
    const int d = degree;
    const int rungs = 120;
    double t = std::log(4.0);
    std::vector<double> ang;
    Angle a = theta;
    for (int k = 0; k < rungs; ++k) {
        ang.push_back(a.value());
        a = a.mapped(d);
    }
    // ladder: x[k] approximates a point on the ray of angle d^k * theta; each
    // sweep pulls the ladder one preimage step toward the landing point, with
    // the far anchor held on the reference circle.
    std::vector<cplx> x(ang.size());
    for (size_t k = 0; k < x.size(); ++k)
        x[k] = std::exp(t) * std::polar(1.0, 2.0 * std::numbers::pi * ang[k]);
    for (int sweep = 0; sweep < levels * stepsPerLevel; ++sweep) {
        std::vector<cplx> y(x.size());
        for (size_t k = 0; k + 1 < x.size(); ++k) {
            cplx z = x[k];
            for (int it = 0; it < 30; ++it) {
                cplx zd1 = ipow(z, d - 1);
                cplx fz = zd1 * z + c - x[k + 1];
                cplx dfz = static_cast<double>(d) * zd1;
                if (std::abs(dfz) < 1e-30) break;
                cplx step = fz / dfz;
                z -= step;
                if (std::abs(step) < 1e-15) break;
            }
            y[k] = z;
        }
        y[x.size() - 1] = std::exp(t) * std::polar(1.0, 2.0 * std::numbers::pi * ang[x.size() - 1]);
        x = y;
    }
    return x[0];
}

cplx polish_periodic_point(int degree, cplx c, cplx seed, long period) {
    cplx z = seed;
    for (int it = 0; it < 60; ++it) {
        // F(z) = f^p(z) - z, F' by the chain rule
        cplx w = z, dw{1.0, 0.0};
        for (long j = 0; j < period; ++j) {
            dw *= static_cast<double>(degree) * ipow(w, degree - 1);
            w = ipow(w, degree) + c;
        }
        cplx F = w - z, dF = dw - 1.0;
        if (std::abs(dF) < 1e-30) break;
        cplx step = F / dF;
        z -= step;
        if (std::abs(step) < 1e-14) break;
    }
    cplx w = z;
    for (long j = 0; j < period; ++j) w = ipow(w, degree) + c;
    if (std::abs(w - z) > 1e-9)
        throw RootFindingFailure("periodic point polish did not converge");
    return z;
}

namespace {

long minimal_period(int degree, cplx c, cplx x, long maxPeriod) {
    cplx z = x;
    for (long j = 1; j <= maxPeriod; ++j) {
        z = ipow(z, degree) + c;
        if (std::abs(z - x) < 1e-7) return j;
    }
    return -1;
}

// Probe just inside from x toward the critical value: for the root of the
// critical value component the probe's return orbit comes back to the value.
bool on_value_component(int degree, cplx c, cplx x, long period) {
    cplx y = x + 0.02 * (c - x);
    for (int m = 0; m < 500; ++m) {
        for (long j = 0; j < period; ++j) y = ipow(y, degree) + c;
        if (std::abs(y - c) < 1e-9) return true;
        if (std::abs(y) > 1e6) return false;
    }
    return false;
}

} // namespace

PolySpec match_center(const CharPair& pair, int degree) {
    CutPartition part(pair, degree);
    const long n = part.period();

    // period of the root point = return time of the characteristic class
    int cls0 = part.theta_class_of(part.pair().lo);
    long clsPeriod = 0;
    Angle t = part.pair().lo;
    for (long j = 1; j <= n; ++j) {
        t = t.mapped(degree);
        if (part.theta_class_of(t) == cls0) {
            clsPeriod = j;
            break;
        }
    }

    for (const PolySpec& cand : grid_scan_centers(degree, n, cplx{0.0, 0.0}, 4.0, 60)) {
        try {
            cplx la = trace_external_ray(degree, cand.parameter, part.pair().lo);
            cplx lb = trace_external_ray(degree, cand.parameter, part.pair().hi);
            cplx pa = polish_periodic_point(degree, cand.parameter, la, clsPeriod);
            cplx pb = polish_periodic_point(degree, cand.parameter, lb, clsPeriod);
            if (std::abs(pa - pb) > 1e-8) continue;
            if (std::abs(pa - la) > 0.2 || std::abs(pb - lb) > 0.2) continue;
            if (minimal_period(degree, cand.parameter, pa, n) != clsPeriod) continue;
            if (!on_value_component(degree, cand.parameter, pa, n)) continue;
            PolySpec out = cand;
            out.sourcePair = part.pair();
            return out;
        } catch (const Error&) {
            continue;
        }
    }
    throw NoConvergence("no center of degree " + std::to_string(degree) + ", period " + std::to_string(n) +
                        " matches the characteristic pair (" + pair.lo.str() + ", " + pair.hi.str() + ")");
}

std::vector<PolySpec> grid_scan_centers(int degree, long period, cplx boxCenter, double boxWidth,
                                        int gridResolution) {
    if (gridResolution < 2) throw InvalidInput("grid resolution must be >= 2");
    std::vector<PolySpec> found;
    const double step = boxWidth / (gridResolution - 1);
    for (int i = 0; i < gridResolution; ++i) {
        for (int j = 0; j < gridResolution; ++j) {
            cplx c = boxCenter + cplx(-boxWidth / 2 + i * step, -boxWidth / 2 + j * step);
            // escape-time reject: parameters escaping quickly are nowhere near
            // a superattracting parameter.
            cplx z{0.0, 0.0};
            bool escaped = false;
            for (long k = 0; k < 8 * period && !escaped; ++k) {
                z = ipow(z, degree) + c;
                if (std::norm(z) > 16.0) escaped = true;
            }
            if (escaped) continue;
            try {
                CenterSolveResult r = center_solve(degree, period, c, 1e-12, 60);
                verify_parameter(r.spec);
                bool dup = false;
                for (const auto& s : found)
                    if (std::abs(s.parameter - r.spec.parameter) < 1e-8) dup = true;
                if (!dup && std::abs(r.spec.parameter - boxCenter) <= boxWidth) found.push_back(r.spec);
            } catch (const Error&) {
                // grid point did not converge to a center of this period
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const PolySpec& a, const PolySpec& b) {
        if (a.parameter.real() != b.parameter.real()) return a.parameter.real() < b.parameter.real();
        return a.parameter.imag() < b.parameter.imag();
    });
    return found;
}

} // namespace matings
