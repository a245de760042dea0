#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "muntz/contour.hpp"
#include "muntz/errors.hpp"

namespace muntz::mellin {

using cplx = std::complex<double>;

/// A catalog entry for a function in the class M_{alpha,k}: analytic
/// derivative evaluators up to k_max, exact derivative values at 0, decay
/// data for tail bounds, and an optional closed-form transform.
struct TestFunction {
  std::string name;
  double alpha = 0.0; // decay exponent: f^{(j)}(x) = O(x^{-alpha-j})
  int k_max = 0;      // smoothness budget

  std::function<double(int j, double x)> deriv;   // j <= k_max
  std::function<double(int j)> deriv_at_zero;     // j <= k_max
  std::function<cplx(cplx)> exact_transform;      // may be empty
  std::function<cplx(cplx)> exact_transform_deriv;

  // |f(y)| <= tail_const * y^{-alpha} for y >= tail_from
  double tail_const = 1.0;
  double tail_from = 1.0;
  // f vanishes identically beyond this point (infinity if not compactly
  // supported)
  double support_end = 0.0;

  bool compact() const { return support_end < 1e300; }
};

/// Catalog lookup by CLI name: exp, gaussian, power3, power5, bump.
/// Throws domain_error for unknown names.
const TestFunction& catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// Rising factorial (s)_n.
cplx pochhammer(cplx s, int n);

/// Mellin transform by adaptive quadrature, split at x=1 with
/// endpoint-taming substitutions. Requires 0 < Re s < alpha.
cplx transform(const TestFunction& f, cplx s, double tol = 1e-10);

/// Analytic continuation via n integrations by parts:
/// (-1)^n/(s)_n * integral of f^{(n)}(x) x^{s+n-1}.
/// Requires -n < Re s < alpha, n <= k_max, s not in {0,-1,...,-(n-1)}.
cplx transform_continued(const TestFunction& f, cplx s, int n,
                         double tol = 1e-10);

/// Continuation with n chosen from Re s; prefers the exact closed form
/// when the catalog provides one.
cplx transform_any(const TestFunction& f, cplx s, double tol = 1e-10);

struct Residue {
  double value = 0.0;
  bool removable = false;
};

/// Residue of f* at s = -n: f^{(n)}(0)/n!.
Residue residue_at_negative(const TestFunction& f, int n);

/// C(sigma) with |f*(sigma+it)| <= C(sigma)/|t|^k, from
/// integral of |f^{(k)}(x)| x^{sigma+k-1}. k defaults to k_max.
double decay_bound_constant(const TestFunction& f, double sigma, int k = -1,
                            double tol = 1e-10);

/// Truncated inversion (1/2pi i) integral of F(s) x^{-s} on Re s = sigma.
cplx inverse_transform(const std::function<cplx(cplx)>& F, double x,
                       double sigma, double tol,
                       const contour::DecayModel& decay);

/// Round-trip convenience: inverts the transform of a catalog function with
/// an automatically sized decay model.
cplx inverse_transform(const TestFunction& f, double x, double sigma,
                       double tol = 1e-8);

struct ClassCheckEntry {
  int j = 0;
  double slope = 0.0;
  double required = 0.0; // pass iff slope <= required
  bool pass = false;
};

struct ClassCheckReport {
  std::vector<ClassCheckEntry> entries;
  bool pass = true;
};

/// Log-log regression of each |f^{(j)}| on x in [100, 1e4]; asserts
/// slope <= -(alpha + j) + 0.1.
ClassCheckReport class_check(const TestFunction& f);

} // namespace muntz::mellin
