#pragma once

#include <complex>
#include <string>
#include <vector>

#include "muntz/arith.hpp"
#include "muntz/errors.hpp"
#include "muntz/mellin.hpp"

namespace muntz::formulas {

using cplx = std::complex<double>;

enum class Family {
  Critical, // zeta^k, strip (0,1)
  Quotient, // zeta^k/zeta(2s), strip (1/2,1)
  LeftStrip,// zeta^k, strip (-1,0), constant term restored
  FarLeft,  // zeta^k, strip (-2m-1,-2m+1), odd Taylor terms removed
};

struct FormulaCase {
  std::string id;
  Family family = Family::Critical;
  int k = 1;
  int m = 0; // far-left depth
  arith::SeriesId series = arith::SeriesId::one();
  double strip_lo = 0.0;
  double strip_hi = 1.0;
  double min_class = 1.0; // required k_max (theorem hypothesis, enforced)
};

/// Case registry: muntz-k1..muntz-k4, muntz-zeta2, quot-k1..quot-k4,
/// left-k1, left-k2, farleft-k1-m1, farleft-k2-m1.
const FormulaCase& find_case(const std::string& id);
std::vector<std::string> case_ids();

/// Gamma-zeta preset ids (the fixed f = exp representations):
/// zg-crit-k1, zg-crit-k2, zg-quot-k1, zg-quot-k2, zg-left-k1, zg-left-k2,
/// zg-far-k1, zg-far-k2.
std::vector<std::string> preset_ids();
const FormulaCase& preset_case(const std::string& rep_id);

struct SeriesValue {
  double value = 0.0;
  double tail = 0.0;
  long n_used = 0;
};

/// Partial sum of phi(n) f(n x) with a rigorous decay-based tail bound.
/// Throws convergence_error when x < 1e-4 or the sieve limit is hit.
SeriesValue series_side(const arith::ArithmeticTable& table,
                        arith::SeriesId id, const mellin::TestFunction& f,
                        double x, double tol);

/// Residue-at-1 correction of zeta^k(s) f*(s) x^{-s} in closed form,
/// k in {1, 2}.
double polynomial_correction(const mellin::TestFunction& f, int k, double x);

/// Residue-at-1 correction of zeta^k(s) f*(s) x^{-s} / zeta(2s):
/// closed forms for k = 1, 2; circular contour for k = 3, 4.
double quotient_residue(const mellin::TestFunction& f, int k, double x,
                        double tol = 1e-10);

/// Laurent coefficients a_1..a_k (a_i on (s-1)^{-i}) of the case's
/// zeta-expression times f* at s = 1; closed form for k <= 2, circle
/// integrals otherwise. The residue of (...) x^{-s} then equals
/// (1/x) sum a_i (-ln x)^{i-1}/(i-1)!.
std::vector<double> residue_laurent(const FormulaCase& c,
                                    const mellin::TestFunction& f,
                                    double tol = 1e-10);

/// The bracketed integrand of the case at x.
double bracket(const arith::ArithmeticTable& table, const FormulaCase& c,
               const mellin::TestFunction& f, double x, double tol = 1e-10);

/// The case's zeta-expression times f*(s); removable far-left points
/// (negative even integers) are evaluated as limits.
cplx lhs_value(const FormulaCase& c, const mellin::TestFunction& f, cplx s);

std::vector<cplx> default_samples(const FormulaCase& c);

struct PointResult {
  cplx s;
  cplx lhs;
  cplx rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

struct Budget {
  double series_tail = 0.0;
  double inner_quad = 0.0;
  double outer_quad = 0.0;
  double residue_err = 0.0;
  double model_err = 0.0;
};

struct VerificationReport {
  std::string case_id;
  std::string function;
  std::vector<PointResult> points;
  Budget budget;
  double tolerance = 0.0;
  bool pass = false;
};

/// Checks LHS = RHS at the sample points; RHS is the outer Mellin integral
/// of the bracket, assembled from an analytic small-x model, an adaptive
/// middle band, and closed-form tails.
VerificationReport verify(const arith::ArithmeticTable& table,
                          const FormulaCase& c, const mellin::TestFunction& f,
                          const std::vector<cplx>& samples, double tol);

/// Section-5 style representation check: `verify` with f fixed to exp.
VerificationReport gamma_zeta_preset(const arith::ArithmeticTable& table,
                                     const std::string& rep_id, cplx s,
                                     double tol);

std::string report_json(const std::vector<VerificationReport>& reports);
std::string report_csv(const std::vector<VerificationReport>& reports);

} // namespace muntz::formulas
