#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "muntz/errors.hpp"
#include "muntz/specfun.hpp"

namespace muntz::contour {

using cplx = std::complex<double>;

/// Pointwise bound |F(sigma+it)| <= C * envelope(sigma,t)^zeta_power / |t|^k
/// used to pick truncation heights. C comes from
/// mellin::decay_bound_constant, the envelope from specfun.
struct DecayModel {
  int k = 2;
  double C = 1.0;
  int zeta_power = 0;
};

struct LineIntegralSpec {
  double sigma = 2.0;
  double x = 1.0;
  double tol = 1e-8;
  double T_max = 1e5;
  DecayModel decay{};
  bool conjugate_symmetric = false; // opt-in: caller asserts F(conj s)=conj F(s)
};

struct LineIntegral {
  cplx value{0.0, 0.0};
  double tail_estimate = 0.0;
  double quad_error = 0.0;
  double T = 0.0;
  long evals = 0;
};

/// (1/2pi i) * integral of F(s) x^{-s} over Re s = sigma, truncated at a
/// height T where the decay-model tail bound drops below tol/2.
/// Throws convergence_error if no admissible T <= T_max exists.
LineIntegral vertical_line_integral(const std::function<cplx(cplx)>& F,
                                    const LineIntegralSpec& spec);

struct PoleSpec {
  cplx location;
  cplx residue; // residue of F(s) x^{-s} at the location
};

struct ShiftReport {
  cplx integral_left;   // at Re s = a
  cplx integral_right;  // at Re s = b
  cplx residue_sum;
  double gap = 0.0;     // |(right - left) - residue_sum|
  double tolerance = 0.0;
  bool horizontal_decay_ok = true;
  bool pass = false;
};

/// Checks integral(b) - integral(a) = sum of residues for F(s) x^{-s}, with
/// decay models supplied per line. Horizontal decay of |F| is sampled at
/// heights 100 and 1000 across [a, b]; failure only flags the report.
ShiftReport shift_line(const std::function<cplx(cplx)>& F,
                       const LineIntegralSpec& at_a,
                       const LineIntegralSpec& at_b,
                       const std::vector<PoleSpec>& poles);

/// (1/2pi i) * closed circle integral of F around the center, by trapezoid
/// with node doubling from 64 until two stages agree within tol.
/// Throws convergence_error past 2^14 nodes.
cplx circle_residue(const std::function<cplx(cplx)>& F, cplx center,
                    double radius = 0.25, double tol = 1e-10);

/// Laurent coefficients a_1..a_order of F at the center (a_i multiplies
/// (s-center)^{-i}), each from a circle integral of F(s)(s-center)^{i-1}.
std::vector<cplx> laurent_coefficients(const std::function<cplx(cplx)>& F,
                                       cplx center, int order,
                                       double radius = 0.25,
                                       double tol = 1e-10);

} // namespace muntz::contour
