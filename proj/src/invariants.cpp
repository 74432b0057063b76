#include "matings/invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "matings/polynomial.hpp"

namespace matings {

double chordal(const ExtComplex& a, const ExtComplex& b) {
    auto lift = [](const ExtComplex& p) {
        if (p.inf) return std::array<double, 3>{0.0, 0.0, 1.0};
        double n = std::norm(p.z);
        double s = 1.0 / (1.0 + n);
        return std::array<double, 3>{2.0 * p.z.real() * s, 2.0 * p.z.imag() * s, (n - 1.0) * s};
    };
    auto pa = lift(a), pb = lift(b);
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) d2 += (pa[i] - pb[i]) * (pa[i] - pb[i]);
    return std::sqrt(d2);
}

ExtComplex apply_map(const BicriticalCoefficients& f, const ExtComplex& p) {
    if (p.inf) {
        if (std::abs(f.B) == 0.0) return ExtComplex::infinity();
        return ExtComplex::finite(f.A / f.B);
    }
    cplx zd{1.0, 0.0};
    for (int k = 0; k < f.degree; ++k) zd *= p.z;
    cplx num = f.A * zd + 1.0;
    cplx den = f.B * zd + 1.0;
    if (std::abs(den) < 1e-300) {
        if (std::abs(num) < 1e-300) return ExtComplex::finite(f.A / f.B); // removable only when A == B; guarded elsewhere
        return ExtComplex::infinity();
    }
    return ExtComplex::finite(num / den);
}

void validate_coefficients(const BicriticalCoefficients& f) {
    if (f.degree < 2) throw InvalidInput("degree must be >= 2");
    if (std::abs(f.A - f.B) == 0.0) throw InvalidInput("A = B gives a constant map");
}

namespace {

bool polynomial_case(const BicriticalCoefficients& f) {
    return std::abs(f.B) <= 1e-12 * std::max(1.0, std::abs(f.A));
}

cplx map_derivative(const BicriticalCoefficients& f, cplx z) {
    cplx zd1{1.0, 0.0};
    for (int k = 0; k < f.degree - 1; ++k) zd1 *= z;
    if (polynomial_case(f)) return static_cast<double>(f.degree) * f.A * zd1;
    cplx den = f.B * zd1 * z + 1.0;
    return static_cast<double>(f.degree) * (f.A - f.B) * zd1 / (den * den);
}

cplx map_apply_finite(const BicriticalCoefficients& f, cplx z) {
    cplx zd{1.0, 0.0};
    for (int k = 0; k < f.degree; ++k) zd *= z;
    return (f.A * zd + 1.0) / (f.B * zd + 1.0);
}

// Numerator of f(z) - z and of f(f(z)) - z as polynomials.
struct MapPolys {
    Poly N, D;      // f = N/D
    Poly fixed;     // N - z D
    Poly period2;   // (A N^d + D^d - z (B N^d + D^d)) / fixed
};

MapPolys build_polys(const BicriticalCoefficients& f) {
    const int d = f.degree;
    MapPolys mp;
    mp.N.assign(static_cast<size_t>(d + 1), cplx{0.0, 0.0});
    mp.D.assign(static_cast<size_t>(d + 1), cplx{0.0, 0.0});
    mp.N[0] = 1.0;
    mp.N[static_cast<size_t>(d)] = f.A;
    mp.D[0] = 1.0;
    mp.D[static_cast<size_t>(d)] = f.B;

    Poly zShift{cplx{0.0, 0.0}, cplx{1.0, 0.0}}; // z
    mp.fixed = poly_trim(poly_sub(mp.N, poly_mul(zShift, mp.D)), 0.0);

    Poly Nd = poly_pow(mp.N, d);
    Poly Dd = poly_pow(mp.D, d);
    Poly num2 = poly_sub(poly_add(poly_scale(Nd, f.A), Dd),
                         poly_mul(zShift, poly_add(poly_scale(Nd, f.B), Dd)));
    mp.period2 = poly_trim(poly_divide(num2, mp.fixed), 0.0);
    return mp;
}

} // namespace

MultiplierSpectrum spectrum(const BicriticalCoefficients& coeffs) {
    validate_coefficients(coeffs);
    MultiplierSpectrum out;
    MapPolys mp = build_polys(coeffs);

    std::vector<cplx> fixedPts = poly_roots(mp.fixed);
    for (cplx z : fixedPts) out.fixedPointMultipliers.push_back(map_derivative(coeffs, z));
    if (polynomial_case(coeffs)) out.fixedPointMultipliers.push_back(cplx{0.0, 0.0}); // infinity

    std::vector<cplx> per2 = poly_roots(mp.period2);
    for (cplx z : per2) {
        cplx w = map_apply_finite(coeffs, z);
        out.periodTwoMultipliers.push_back(map_derivative(coeffs, z) * map_derivative(coeffs, w));
    }

    auto sortKey = [](std::vector<cplx>& v) {
        std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
    };
    sortKey(out.fixedPointMultipliers);
    sortKey(out.periodTwoMultipliers);
    return out;
}

MultiplierSpectrum polynomial_spectrum(int degree, cplx c) {
    if (degree < 2) throw InvalidInput("degree must be >= 2");
    MultiplierSpectrum out;
    const int d = degree;
    Poly f(static_cast<size_t>(d + 1), cplx{0.0, 0.0});
    f[0] = c;
    f[static_cast<size_t>(d)] = 1.0;
    Poly zShift{cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    Poly fixed = poly_sub(f, zShift);
    auto dz = [&](cplx z) {
        cplx zd1{1.0, 0.0};
        for (int k = 0; k < d - 1; ++k) zd1 *= z;
        return static_cast<double>(d) * zd1;
    };
    for (cplx z : poly_roots(fixed)) out.fixedPointMultipliers.push_back(dz(z));
    out.fixedPointMultipliers.push_back(cplx{0.0, 0.0}); // infinity

    Poly f2(static_cast<size_t>(1), cplx{0.0, 0.0});
    f2 = poly_pow(f, d);
    f2[0] += c;
    Poly per2 = poly_divide(poly_sub(f2, zShift), fixed);
    for (cplx z : poly_roots(per2)) {
        cplx w = poly_eval(f, z);
        out.periodTwoMultipliers.push_back(dz(z) * dz(w));
    }
    auto sortKey = [](std::vector<cplx>& v) {
        std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
    };
    sortKey(out.fixedPointMultipliers);
    sortKey(out.periodTwoMultipliers);
    return out;
}

std::vector<double> optimal_assignment_distances(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw InvalidInput("assignment requires equal multiset sizes");
    const int n = static_cast<int>(a.size());
    if (n == 0) return {};
    const double INF = std::numeric_limits<double>::infinity();

    // Kuhn-Munkres with potentials; cost[i][j] = |a_i - b_j|.
    std::vector<double> u(static_cast<size_t>(n + 1)), v(static_cast<size_t>(n + 1));
    std::vector<int> p(static_cast<size_t>(n + 1)), way(static_cast<size_t>(n + 1));
    auto cost = [&](int i, int j) { return std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(j)]); };
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<size_t>(n + 1), INF);
        std::vector<char> used(static_cast<size_t>(n + 1), 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            int i0 = p[static_cast<size_t>(j0)], j1 = -1;
            double delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                double cur = cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<size_t>(j0)];
            p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0);
    }
    std::vector<double> dist;
    dist.reserve(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) dist.push_back(cost(p[static_cast<size_t>(j)] - 1, j - 1));
    return dist;
}

double spectrum_distance(const MultiplierSpectrum& a, const MultiplierSpectrum& b) {
    if (a.fixedPointMultipliers.size() != b.fixedPointMultipliers.size() ||
        a.periodTwoMultipliers.size() != b.periodTwoMultipliers.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (double d : optimal_assignment_distances(a.fixedPointMultipliers, b.fixedPointMultipliers))
        worst = std::max(worst, d);
    for (double d : optimal_assignment_distances(a.periodTwoMultipliers, b.periodTwoMultipliers))
        worst = std::max(worst, d);
    return worst;
}

bool equivalent(const BicriticalCoefficients& c1, const BicriticalCoefficients& c2, double tol) {
    if (c1.degree != c2.degree) return false;
    MultiplierSpectrum s1, s2;
    try {
        s1 = spectrum(c1);
        s2 = spectrum(c2);
    } catch (const Error&) {
        return false;
    }
    if (spectrum_distance(s1, s2) > tol) return false;

    // Residual label-preserving symmetry of the normal form.
    const int m = c1.degree - 1;
    double scale = std::max({1.0, std::abs(c1.A), std::abs(c1.B)});
    double ctol = std::max(tol, 1e-6) * scale;
    for (int k = 0; k < m; ++k) {
        double ang = 2.0 * std::numbers::pi * k / m;
        cplx lambda{std::cos(ang), std::sin(ang)};
        if (std::abs(c2.A - lambda * c1.A) <= ctol && std::abs(c2.B - lambda * c1.B) <= ctol) return true;
    }
    return false;
}

} // namespace matings
