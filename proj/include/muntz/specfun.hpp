#pragma once

#include <complex>

#include "muntz/errors.hpp"

namespace muntz::specfun {

using cplx = std::complex<double>;

namespace constants {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Glaisher-Kinkelin constant A. Cross-validated in tests against
/// exp(1/12 - zeta'(-1)).
inline constexpr double glaisher = 1.28242712910062263687534256887;

/// pi^2 / 6 = zeta(2).
inline constexpr double pi_sq_over_6 = 1.64493406684822643647241516665;

inline constexpr double pi = 3.14159265358979323846264338328;

} // namespace constants

/// Gamma function for complex arguments. Lanczos approximation with
/// reflection for Re s < 0.5.
/// Throws domain_error within 1e-12 of a non-positive integer.
cplx gamma(cplx s);

/// Digamma function psi(s) = Gamma'(s)/Gamma(s).
cplx digamma(cplx s);

/// Riemann zeta function. Euler-Maclaurin summation for Re s >= -0.5,
/// functional equation below. Throws domain_error within 1e-10 of s = 1.
cplx zeta(cplx s);

/// zeta(1 - 2n) = -B_{2n} / (2n), exact via stored Bernoulli numbers.
/// Valid for 1 <= n <= 20.
double zeta_neg_odd(int n);

/// Bernoulli number B_{2n} for 1 <= n <= 20.
double bernoulli_2n(int n);

/// zeta'(2), via the closed form (pi^2/6)(gamma + ln(2*pi/A^12)).
double zeta_prime_2();

/// zeta'(2) by Richardson-extrapolated central differences of zeta at 2.
/// Kept as an internal consistency route against the closed form.
double zeta_prime_2_numeric();

/// sin(pi * z) with exact argument reduction, so it vanishes exactly at
/// integers.
cplx sin_pi(cplx z);

/// The four-branch vertical-line growth bound on |zeta(sigma +- i t)|.
struct ZetaGrowthEnvelope {
  double M;  // envelope constant, > 0
  double t0; // threshold height, > 1

  ZetaGrowthEnvelope(double M_, double t0_) : M(M_), t0(t0_) {
    if (!(t0 > 1.0) || !(M > 0.0))
      throw domain_error("ZetaGrowthEnvelope requires t0 > 1 and M > 0");
  }

  /// Bound on |zeta(sigma +- i t)| for t >= t0. The log factor is clamped
  /// below at 1 so the bound is non-increasing in sigma for every t >= t0.
  double operator()(double sigma, double t) const;
};

/// Envelope with M calibrated empirically at t0 = 2: sweep |zeta| over a
/// sigma/t grid, take max ratio against the branch shapes, multiply by a
/// safety factor of 2. Computed once, cached.
const ZetaGrowthEnvelope& calibrated_envelope();

} // namespace muntz::specfun
