#pragma once

#include <complex>
#include <vector>

namespace matings {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficients ascending by degree.
using Poly = std::vector<cplx>;

Poly poly_trim(Poly p, double tol = 0.0);
int poly_degree(const Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, int k);
Poly poly_scale(const Poly& a, cplx s);
cplx poly_eval(const Poly& p, cplx z);
cplx poly_eval_derivative(const Poly& p, cplx z);
/// Quotient of exact polynomial division (remainder discarded; used to strip
/// known factors such as the fixed-point polynomial).
Poly poly_divide(const Poly& num, const Poly& den);

/// All roots via companion-matrix eigenvalues, each polished with one Newton
/// step. Throws RootFindingFailure if any polished residual exceeds tol
/// relative to the coefficient scale.
std::vector<cplx> poly_roots(const Poly& p, double tol = 1e-8);

} // namespace matings
