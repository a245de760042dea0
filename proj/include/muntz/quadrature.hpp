#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "muntz/errors.hpp"

namespace muntz::quad {

using cplx = std::complex<double>;

struct Result {
  cplx value{0.0, 0.0};
  double error = 0.0; // estimated absolute error
  long evals = 0;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of a complex-valued
/// integrand over a finite interval, to a requested absolute tolerance.
/// Throws convergence_error if the subdivision budget runs out before the
/// tolerance is met.
Result integrate(const std::function<cplx(double)>& f, double a, double b,
                 double abs_tol, int max_intervals = 20000);

/// Same, but failure returns the achieved estimate instead of throwing.
Result integrate_no_throw(const std::function<cplx(double)>& f, double a,
                          double b, double abs_tol, int max_intervals = 20000);

/// Adaptive integration with caller-supplied initial breakpoints (one shared
/// error budget across all pieces).
Result integrate_segmented(const std::function<cplx(double)>& f,
                           const std::vector<double>& breakpoints,
                           double abs_tol, int max_intervals = 40000,
                           bool may_throw = true);

/// The 15 Kronrod nodes and weights mapped to [a, b], for building fixed
/// (non-adaptive) composite rules whose nodes can be cached.
void kronrod15_nodes(double a, double b, double* xs, double* ws);

} // namespace muntz::quad
