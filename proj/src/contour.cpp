#include "muntz/contour.hpp"

#include <algorithm>
#include <cmath>

#include "muntz/quadrature.hpp"

namespace muntz::contour {

namespace {

// integral over [T, infinity) of C * env(sigma,t)^zp / t^k dt, by mapping
// t = T/u onto (0,1]
double tail_integral(const DecayModel& m, double sigma, double T) {
  const auto& env = specfun::calibrated_envelope();
  auto g = [&](double t) -> cplx {
    double e = 1.0;
    for (int i = 0; i < m.zeta_power; ++i)
      e *= env(sigma, t);
    return m.C * e / std::pow(t, m.k);
  };
  auto mapped = [&](double u) -> cplx {
    double t = T / u;
    return g(t) * (T / (u * u));
  };
  auto r = quad::integrate_no_throw(mapped, 1e-8, 1.0, 1e-16, 4000);
  return std::abs(r.value) + r.error;
}

std::vector<double> line_breakpoints(double T) {
  // geometric panels away from t=0 where the integrand peaks
  std::vector<double> b{0.0};
  double h = 1.0;
  double t = 0.0;
  while (t < T) {
    t = std::min(T, t + h);
    b.push_back(t);
    h = std::min(2.0 * h, 8.0);
  }
  return b;
}

} // namespace

LineIntegral vertical_line_integral(const std::function<cplx(cplx)>& F,
                                    const LineIntegralSpec& spec) {
  if (spec.x <= 0.0)
    throw domain_error("vertical_line_integral: x must be positive");
  if (spec.decay.k < 2)
    throw domain_error("vertical_line_integral: decay model needs k >= 2");
  const double x_factor = std::pow(spec.x, -spec.sigma);
  double T = 16.0;
  double tail = tail_integral(spec.decay, spec.sigma, T) * x_factor / M_PI;
  while (tail > 0.5 * spec.tol) {
    if (T >= spec.T_max)
      throw convergence_error(
          "vertical_line_integral: tail bound not met by T_max", tail);
    T = std::min(2.0 * T, spec.T_max);
    tail = tail_integral(spec.decay, spec.sigma, T) * x_factor / M_PI;
  }

  const double lx = std::log(spec.x);
  LineIntegral out;
  out.T = T;
  out.tail_estimate = tail;
  const double quad_tol = 0.5 * spec.tol;
  if (spec.conjugate_symmetric) {
    auto integrand = [&](double t) -> cplx {
      cplx s(spec.sigma, t);
      return F(s) * std::exp(cplx(0.0, -t * lx));
    };
    auto r = quad::integrate_segmented(integrand, line_breakpoints(T),
                                       quad_tol * M_PI / x_factor);
    out.value = x_factor * r.value.real() / M_PI;
    out.quad_error = x_factor * r.error / M_PI;
    out.evals = r.evals;
  } else {
    auto integrand = [&](double t) -> cplx {
      cplx s(spec.sigma, t);
      return F(s) * std::exp(cplx(0.0, -t * lx));
    };
    std::vector<double> right = line_breakpoints(T);
    std::vector<double> breaks(right.rbegin(), right.rend());
    for (double& v : breaks)
      v = -v;
    breaks.insert(breaks.end(), right.begin() + 1, right.end());
    auto r = quad::integrate_segmented(integrand, breaks,
                                       2.0 * quad_tol * M_PI / x_factor);
    out.value = x_factor * r.value / (2.0 * M_PI);
    out.quad_error = x_factor * r.error / (2.0 * M_PI);
    out.evals = r.evals;
  }
  return out;
}

ShiftReport shift_line(const std::function<cplx(cplx)>& F,
                       const LineIntegralSpec& at_a,
                       const LineIntegralSpec& at_b,
                       const std::vector<PoleSpec>& poles) {
  if (!(at_a.sigma < at_b.sigma))
    throw domain_error("shift_line: requires a < b");
  if (at_a.x != at_b.x)
    throw domain_error("shift_line: both lines must share x");

  ShiftReport rep;
  LineIntegral ia = vertical_line_integral(F, at_a);
  LineIntegral ib = vertical_line_integral(F, at_b);
  rep.integral_left = ia.value;
  rep.integral_right = ib.value;
  rep.residue_sum = 0.0;
  for (const auto& p : poles)
    rep.residue_sum += p.residue;
  rep.gap = std::abs((ib.value - ia.value) - rep.residue_sum);
  rep.tolerance = ia.tail_estimate + ia.quad_error + ib.tail_estimate +
                  ib.quad_error + 0.5 * (at_a.tol + at_b.tol);

  auto row_max = [&](double height) {
    double m = 0.0;
    for (int i = 0; i <= 4; ++i) {
      double u = at_a.sigma + (at_b.sigma - at_a.sigma) * i / 4.0;
      m = std::max(m, std::abs(F(cplx(u, height))));
    }
    return m;
  };
  rep.horizontal_decay_ok = row_max(1000.0) < row_max(100.0);
  rep.pass = rep.gap <= rep.tolerance && rep.horizontal_decay_ok;
  return rep;
}

cplx circle_residue(const std::function<cplx(cplx)>& F, cplx center,
                    double radius, double tol) {
  if (radius <= 0.0)
    throw domain_error("circle_residue: radius must be positive");
  auto stage = [&](int n) -> cplx {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      double theta = 2.0 * M_PI * j / n;
      cplx e(std::cos(theta), std::sin(theta));
      cplx s = center + radius * e;
      acc += F(s) * (radius * e);
    }
    return acc / static_cast<double>(n);
  };
  cplx prev = stage(64);
  for (int n = 128; n <= 16384; n *= 2) {
    cplx cur = stage(n);
    if (std::abs(cur - prev) < tol)
      return cur;
    prev = cur;
  }
  throw convergence_error("circle_residue: trapezoid did not converge",
                          std::abs(prev));
}

std::vector<cplx> laurent_coefficients(const std::function<cplx(cplx)>& F,
                                       cplx center, int order, double radius,
                                       double tol) {
  std::vector<cplx> a(static_cast<std::size_t>(order));
  for (int i = 1; i <= order; ++i) {
    auto g = [&](cplx s) -> cplx {
      cplx p = 1.0;
      for (int j = 0; j < i - 1; ++j)
        p *= (s - center);
      return F(s) * p;
    };
    a[static_cast<std::size_t>(i - 1)] = circle_residue(g, center, radius, tol);
  }
  return a;
}

} // namespace muntz::contour
