#include "matings/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "matings/solver.hpp"

namespace matings {

int MarkedConfiguration::index_of(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw InvalidInput("unknown label '" + label + "'");
}

bool MarkedConfiguration::is_pinned_zero(int i) const {
    return std::find(pinnedZero.begin(), pinnedZero.end(), i) != pinnedZero.end();
}

bool MarkedConfiguration::is_pinned_inf(int i) const {
    return std::find(pinnedInf.begin(), pinnedInf.end(), i) != pinnedInf.end();
}

namespace {

void validate_configuration(const MarkedConfiguration& c) {
    const size_t n = c.labels.size();
    if (c.pos.size() != n || c.sigma.size() != n || c.localDegree.size() != n)
        throw MalformedConfiguration("configuration arrays disagree in length");
    for (int s : c.sigma)
        if (s < 0 || static_cast<size_t>(s) >= n) throw MalformedConfiguration("sigma image out of range");
    if (c.pinnedValue < 0 || static_cast<size_t>(c.pinnedValue) >= n)
        throw MalformedConfiguration("pinned value label missing");
}

cplx nth_root_candidate(cplx q, int d, int k) {
    double r = std::pow(std::abs(q), 1.0 / d);
    double ang = (std::arg(q) + 2.0 * std::numbers::pi * k) / d;
    return std::polar(r, ang);
}

// Preimage of target under z -> (A z^d + 1)/(B z^d + 1) nearest to prev.
ExtComplex nearest_preimage(const BicriticalCoefficients& f, const ExtComplex& target,
                            const ExtComplex& prev, const std::string& label) {
    const int d = f.degree;
    cplx q;
    if (target.inf) {
        if (std::abs(f.B) == 0.0)
            throw DegenerateImage("label '" + label + "': infinity has no finite-degree preimage (B = 0)");
        q = -1.0 / f.B;
    } else {
        cplx den = f.A - target.z * f.B;
        double scale = std::max({1.0, std::abs(f.A), std::abs(f.B) * std::abs(target.z)});
        if (std::abs(den) <= 1e-12 * scale)
            throw DegenerateImage("label '" + label + "': target " + std::to_string(target.z.real()) +
                                  "+" + std::to_string(target.z.imag()) + "i is the critical value of infinity");
        q = (target.z - 1.0) / den;
    }

    const bool uChart = prev.inf || std::abs(prev.z) > 1.5;
    if (!uChart && std::abs(q) == 0.0) return ExtComplex::finite(cplx{0.0, 0.0}); // all branches coincide at 0
    if (uChart && std::abs(q) == 0.0)
        throw DegenerateImage("label '" + label + "': preimage collapses to the critical point");
    cplx ref = prev.inf ? cplx{0.0, 0.0} : (uChart ? 1.0 / prev.z : prev.z);

    std::vector<std::pair<double, cplx>> candidates;
    candidates.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        cplx root = uChart ? nth_root_candidate(1.0 / q, d, k) : nth_root_candidate(q, d, k);
        candidates.emplace_back(std::abs(root - ref), root);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (d > 1 && std::abs(candidates[0].first - candidates[1].first) <= 1e-9 &&
        std::abs(candidates[0].second - candidates[1].second) > 1e-9)
        throw BranchAmbiguity("label '" + label +
                              "': two preimage branches are equidistant from the previous position");
    cplx bestRoot = candidates[0].second;
    if (uChart) {
        if (std::abs(bestRoot) == 0.0) return ExtComplex::infinity();
        return ExtComplex::finite(1.0 / bestRoot);
    }
    return ExtComplex::finite(bestRoot);
}

} // namespace

BicriticalCoefficients solve_coefficients(const MarkedConfiguration& config) {
    validate_configuration(config);
    // Accumulate normal equations of the overdetermined linear system.
    cplx m00{0.0, 0.0}, m01{0.0, 0.0}, m11{0.0, 0.0}, r0{0.0, 0.0}, r1{0.0, 0.0};
    long rows = 0;
    auto add_row = [&](cplx a, cplx b, cplx rhs) {
        m00 += std::conj(a) * a;
        m01 += std::conj(a) * b;
        m11 += std::conj(b) * b;
        r0 += std::conj(a) * rhs;
        r1 += std::conj(b) * rhs;
        ++rows;
    };

    const int d = config.degree;
    for (size_t i = 0; i < config.labels.size(); ++i) {
        if (config.is_pinned_zero(static_cast<int>(i))) continue; // f(0) = 1 is built into the form
        const ExtComplex& z = config.pos[i];
        const ExtComplex& w = config.pos[static_cast<size_t>(config.sigma[i])];
        if (z.inf) {
            if (w.inf)
                add_row(cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}); // B = 0
            else
                add_row(cplx{1.0, 0.0}, -w.z, cplx{0.0, 0.0}); // A - w B = 0
            continue;
        }
        cplx zd{1.0, 0.0};
        for (int k = 0; k < d; ++k) zd *= z.z;
        if (std::abs(zd) == 0.0) continue;
        if (w.inf)
            add_row(cplx{0.0, 0.0}, zd, cplx{-1.0, 0.0}); // B z^d = -1
        else
            add_row(zd, -w.z * zd, w.z - 1.0);
    }
    if (rows < 2) throw SingularSystem("fewer than two independent mapping conditions");

    cplx det = m00 * m11 - m01 * std::conj(m01);
    double scale = std::max(std::abs(m00), std::abs(m11));
    if (std::abs(det) <= 1e-10 * scale * scale)
        throw SingularSystem("normal equations are rank-deficient");
    BicriticalCoefficients out;
    out.degree = d;
    out.A = (r0 * m11 - m01 * r1) / det;
    out.B = (m00 * r1 - std::conj(m01) * r0) / det;
    return out;
}

MarkedConfiguration pullback_step(const MarkedConfiguration& config, const BicriticalCoefficients& coeffs) {
    validate_configuration(config);
    validate_coefficients(coeffs);
    MarkedConfiguration next = config;

    for (size_t i = 0; i < config.labels.size(); ++i) {
        const int ii = static_cast<int>(i);
        if (config.is_pinned_zero(ii)) {
            next.pos[i] = ExtComplex::finite(cplx{0.0, 0.0});
            continue;
        }
        if (config.is_pinned_inf(ii)) {
            next.pos[i] = ExtComplex::infinity();
            continue;
        }
        const ExtComplex& target = config.pos[static_cast<size_t>(config.sigma[i])];
        next.pos[i] = nearest_preimage(coeffs, target, config.pos[i], config.labels[i]);
    }

    // Re-pin by post-composing with the Moebius normalization z -> z / pos(pinnedValue).
    const ExtComplex& lambda = next.pos[static_cast<size_t>(next.pinnedValue)];
    if (lambda.inf || std::abs(lambda.z) == 0.0)
        throw DegenerateImage("normalization label left the finite plane");
    for (size_t i = 0; i < next.pos.size(); ++i) {
        if (next.pos[i].inf) continue;
        next.pos[i].z /= lambda.z;
    }
    next.pos[static_cast<size_t>(next.pinnedValue)] = ExtComplex::finite(cplx{1.0, 0.0});
    return next;
}

namespace {

// Position models for the two orbits. The faithful model embeds the actual
// polynomial critical orbits through the formal-mating charts (inner plane
// scaled into the disk, outer plane through 1/z, which negates external
// angles); the schematic model falls back to footprint-midpoint circles.
struct PlacementModel {
    std::vector<cplx> inner, outer; // positions for p1..p(n-1), q1..q(n-1); critical entries omitted
};

PlacementModel faithful_placement(const MatingSpec& inner, long n) {
    PolySpec w = match_center(inner.white, inner.degree);
    PolySpec b = match_center(inner.black, inner.degree);
    std::vector<cplx> ow, ob;
    cplx z{0.0, 0.0};
    double mw = 0.0, mb = 0.0;
    for (long k = 1; k < n; ++k) {
        cplx zd{1.0, 0.0};
        for (int i = 0; i < inner.degree; ++i) zd *= z;
        z = zd + w.parameter;
        ow.push_back(z);
        mw = std::max(mw, std::abs(z));
    }
    z = cplx{0.0, 0.0};
    for (long k = 1; k < n; ++k) {
        cplx zd{1.0, 0.0};
        for (int i = 0; i < inner.degree; ++i) zd *= z;
        z = zd + b.parameter;
        ob.push_back(z);
        mb = std::max(mb, std::abs(z));
    }
    PlacementModel m;
    const double sw = 1.3 * mw, sb = 1.2 * mb;
    for (cplx v : ow) m.inner.push_back(v / sw);
    for (cplx v : ob) m.outer.push_back(sb / v);
    return m;
}

PlacementModel schematic_placement(const CutPartition& in, const CutPartition& out, long n) {
    PlacementModel m;
    auto fp_mid = [](const CutPartition& part, int comp) {
        auto fp = part.footprint(comp);
        return arc_midpoint(fp.first, fp.second);
    };
    for (long k = 1; k < n; ++k)
        m.inner.push_back(std::polar(0.8, 2.0 * std::numbers::pi * fp_mid(in, static_cast<int>(k)).value()));
    for (long k = 1; k < n; ++k)
        m.outer.push_back(std::polar(1.25, -2.0 * std::numbers::pi * fp_mid(out, static_cast<int>(k)).value()));
    return m;
}

} // namespace

MarkedConfiguration initial_configuration(const MatingSpec& spec) {
    LevyReport levy = levy_check(spec);
    if (levy.obstructed) throw Obstructed("mating is obstructed: " + levy.witness);

    // The polynomial carrying the first critical point goes inside.
    MatingSpec inner = spec;
    if (spec.firstCritical == Plane::Black) {
        std::swap(inner.white, inner.black);
        inner.firstCritical = Plane::White;
    }
    CutPartition in(inner.white, inner.degree);
    CutPartition out(inner.black, inner.degree);
    const long n = in.period();

    PlacementModel model;
    try {
        model = faithful_placement(inner, n);
    } catch (const Error&) {
        model = schematic_placement(in, out, n);
    }

    MarkedConfiguration c;
    c.degree = inner.degree;
    auto add = [&](const std::string& label, ExtComplex p, int deg) {
        c.labels.push_back(label);
        c.pos.push_back(p);
        c.localDegree.push_back(deg);
        c.sigma.push_back(-1);
        return static_cast<int>(c.labels.size()) - 1;
    };

    int c0 = add("crit0", ExtComplex::finite(cplx{0.0, 0.0}), inner.degree);
    int cInf = add("critInf", ExtComplex::infinity(), inner.degree);
    std::vector<int> p(static_cast<size_t>(n)), q(static_cast<size_t>(n));
    for (long k = 1; k <= n; ++k) {
        ExtComplex posn = (k == n) ? ExtComplex::finite(cplx{0.0, 0.0})
                                   : ExtComplex::finite(model.inner[static_cast<size_t>(k - 1)]);
        p[static_cast<size_t>(k - 1)] = add("p" + std::to_string(k), posn, k == n ? inner.degree : 1);
    }
    for (long k = 1; k <= n; ++k) {
        ExtComplex posn = (k == n) ? ExtComplex::infinity()
                                   : ExtComplex::finite(model.outer[static_cast<size_t>(k - 1)]);
        q[static_cast<size_t>(k - 1)] = add("q" + std::to_string(k), posn, k == n ? inner.degree : 1);
    }

    c.sigma[static_cast<size_t>(c0)] = p[0];
    c.sigma[static_cast<size_t>(cInf)] = q[0];
    for (long k = 1; k <= n; ++k) {
        c.sigma[static_cast<size_t>(p[static_cast<size_t>(k - 1)])] = p[static_cast<size_t>(k % n)];
        c.sigma[static_cast<size_t>(q[static_cast<size_t>(k - 1)])] = q[static_cast<size_t>(k % n)];
    }

    c.pinnedZero = {c0, p[static_cast<size_t>(n - 1)]};
    c.pinnedInf = {cInf, q[static_cast<size_t>(n - 1)]};
    c.pinnedValue = p[0];
    c.coincidentOk = {{c0, p[static_cast<size_t>(n - 1)]}, {cInf, q[static_cast<size_t>(n - 1)]}};

    // Normalize the initial layout so the pinned critical value starts at 1.
    cplx lambda = c.pos[static_cast<size_t>(p[0])].z;
    for (auto& posn : c.pos)
        if (!posn.inf) posn.z /= lambda;
    c.pos[static_cast<size_t>(p[0])] = ExtComplex::finite(cplx{1.0, 0.0});
    return c;
}

BicriticalCoefficients run_pullback(MarkedConfiguration& config, double tol, long maxIter,
                                    PullbackTrace* traceOut) {
    validate_configuration(config);
    PullbackTrace trace;
    std::map<std::pair<int, int>, int> collisionStreak;
    auto exempt = [&](int i, int j) {
        for (const auto& pr : config.coincidentOk)
            if ((pr.first == i && pr.second == j) || (pr.first == j && pr.second == i)) return true;
        return false;
    };

    BicriticalCoefficients coeffs;
    bool done = false;
    for (long it = 0; it < maxIter && !done; ++it) {
        coeffs = solve_coefficients(config);
        MarkedConfiguration next = pullback_step(config, coeffs);

        double maxMove = 0.0;
        for (size_t i = 0; i < config.pos.size(); ++i)
            maxMove = std::max(maxMove, chordal(config.pos[i], next.pos[i]));
        trace.maxMove.push_back(maxMove);
        trace.iterations = it + 1;
        config = std::move(next);

        for (size_t i = 0; i < config.pos.size(); ++i) {
            for (size_t j = i + 1; j < config.pos.size(); ++j) {
                if (exempt(static_cast<int>(i), static_cast<int>(j))) continue;
                auto key = std::make_pair(static_cast<int>(i), static_cast<int>(j));
                if (chordal(config.pos[i], config.pos[j]) < 1e-8) {
                    if (++collisionStreak[key] >= 5) {
                        trace.collision = {config.labels[i], config.labels[j]};
                        if (traceOut) *traceOut = trace;
                        throw Obstructed("marked points '" + config.labels[i] + "' and '" +
                                         config.labels[j] + "' collided during the pullback iteration");
                    }
                } else {
                    collisionStreak[key] = 0;
                }
            }
        }

        if (maxMove <= tol) done = true;
    }
    if (!done) {
        if (traceOut) *traceOut = trace;
        throw NoConvergence("pullback did not reach tolerance in " + std::to_string(maxIter) +
                            " iterations");
    }
    trace.converged = true;
    coeffs = solve_coefficients(config);
    validate_coefficients(coeffs);
    if (traceOut) *traceOut = trace;
    return coeffs;
}

std::pair<BicriticalCoefficients, PullbackTrace> realize_mating(const MatingSpec& spec, double tol,
                                                                long maxIter) {
    MarkedConfiguration config = initial_configuration(spec);
    PullbackTrace trace;
    BicriticalCoefficients coeffs = run_pullback(config, tol, maxIter, &trace);
    return {coeffs, trace};
}

double forward_consistency(const MarkedConfiguration& config, const BicriticalCoefficients& coeffs) {
    double worst = 0.0;
    for (size_t i = 0; i < config.labels.size(); ++i) {
        ExtComplex image = apply_map(coeffs, config.pos[i]);
        worst = std::max(worst, chordal(image, config.pos[static_cast<size_t>(config.sigma[i])]));
    }
    return worst;
}

} // namespace matings
