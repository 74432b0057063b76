#include "matings/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "matings/errors.hpp"

namespace matings {

Poly poly_trim(Poly p, double tol) {
    while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
    if (p.empty()) p.push_back(cplx{0.0, 0.0});
    return p;
}

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), cplx{0.0, 0.0});
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), cplx{0.0, 0.0});
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, cplx{0.0, 0.0});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_pow(const Poly& a, int k) {
    Poly out{cplx{1.0, 0.0}};
    Poly base = a;
    while (k > 0) {
        if (k & 1) out = poly_mul(out, base);
        if (k >>= 1) base = poly_mul(base, base);
    }
    return out;
}

Poly poly_scale(const Poly& a, cplx s) {
    Poly out = a;
    for (auto& c : out) c *= s;
    return out;
}

cplx poly_eval(const Poly& p, cplx z) {
    cplx out{0.0, 0.0};
    for (size_t i = p.size(); i-- > 0;) out = out * z + p[i];
    return out;
}

cplx poly_eval_derivative(const Poly& p, cplx z) {
    cplx out{0.0, 0.0};
    for (size_t i = p.size(); i-- > 1;) out = out * z + static_cast<double>(i) * p[i];
    return out;
}

Poly poly_divide(const Poly& num, const Poly& den) {
    Poly n = poly_trim(num, 0.0), d = poly_trim(den, 0.0);
    if (poly_degree(d) < 0 || (d.size() == 1 && d[0] == cplx{0.0, 0.0}))
        throw InvalidInput("polynomial division by zero");
    if (n.size() < d.size()) return {cplx{0.0, 0.0}};
    Poly q(n.size() - d.size() + 1, cplx{0.0, 0.0});
    for (size_t i = q.size(); i-- > 0;) {
        cplx coef = n[i + d.size() - 1] / d.back();
        q[i] = coef;
        for (size_t j = 0; j < d.size(); ++j) n[i + j] -= coef * d[j];
    }
    return q;
}

std::vector<cplx> poly_roots(const Poly& p, double tol) {
    Poly q = poly_trim(p, 0.0);
    // tolerate a numerically-zero leading coefficient relative to the rest
    double scale = 0.0;
    for (const auto& c : q) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw RootFindingFailure("zero polynomial has no isolated roots");
    q = poly_trim(q, scale * 1e-14);

    int n = poly_degree(q);
    if (n <= 0) return {};
    if (n == 1) return {-q[0] / q[1]};

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -q[static_cast<size_t>(i)] / q[static_cast<size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw RootFindingFailure("companion eigenvalue solve failed");

    std::vector<cplx> roots;
    roots.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        cplx r = solver.eigenvalues()(i);
        cplx d = poly_eval_derivative(q, r);
        if (std::abs(d) > 1e-14) r -= poly_eval(q, r) / d; // one Newton polish step
        roots.push_back(r);
    }
    for (const cplx& r : roots) {
        double denom = scale * std::max(1.0, std::pow(std::abs(r), n));
        if (std::abs(poly_eval(q, r)) > tol * denom)
            throw RootFindingFailure("root residual exceeded tolerance");
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace matings
