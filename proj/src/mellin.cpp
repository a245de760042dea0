#include "muntz/mellin.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "muntz/quadrature.hpp"
#include "muntz/specfun.hpp"

namespace muntz::mellin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rising(double s, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i)
    v *= s + i;
  return v;
}

double factorial(int n) {
  double v = 1.0;
  for (int i = 2; i <= n; ++i)
    v *= i;
  return v;
}

// d^j/dx^j e^{-x^2} = (-1)^j H_j(x) e^{-x^2}, Hermite recurrence
double gaussian_deriv(int j, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  if (j == 0)
    h1 = 1.0;
  double h = (j == 0) ? h0 : h1;
  for (int n = 1; n < j; ++n) {
    double h2 = 2.0 * x * h1 - 2.0 * n * h0;
    h0 = h1;
    h1 = h2;
    h = h2;
  }
  double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * h * std::exp(-x * x);
}

double power_law_deriv(int m, int j, double x) {
  double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * rising(m, j) * std::pow(1.0 + x, -(m + j));
}

// bump supported on (0.25, 2.75): f = exp(g), g = 1 - 1/(1-t^2),
// t = (x - 1.5)/1.25
double bump_deriv(int j, double x) {
  const double scale = 1.25;
  double t = (x - 1.5) / scale;
  if (std::abs(t) >= 1.0 - 1e-14)
    return 0.0;
  // g^{(r)} in x for r = 1..j via partial fractions of 1/(1-t^2)
  std::vector<double> gx(static_cast<std::size_t>(j) + 1, 0.0);
  double am = 1.0 / (1.0 - t); // grows powers of (1-t)^{-1}
  double ap = 1.0 / (1.0 + t);
  double r_fact = 1.0;
  double pm = am, pp = ap;
  for (int r = 1; r <= j; ++r) {
    r_fact *= r;
    pm *= am;
    pp *= ap;
    double sign = (r % 2 == 0) ? 1.0 : -1.0;
    gx[static_cast<std::size_t>(r)] =
        -0.5 * r_fact * (pm + sign * pp) / std::pow(scale, r);
  }
  double g = 1.0 - 0.5 * (am + ap);
  // f^{(o)} = sum C(o-1,i) f^{(i)} g^{(o-i)}  (Leibniz on f' = f g')
  std::vector<double> fd(static_cast<std::size_t>(j) + 1, 0.0);
  fd[0] = std::exp(g);
  for (int o = 1; o <= j; ++o) {
    double acc = 0.0;
    double binom = 1.0;
    for (int i = o - 1; i >= 0; --i) {
      acc += binom * fd[static_cast<std::size_t>(i)] *
             gx[static_cast<std::size_t>(o - i)];
      binom = binom * i / (o - i);
    }
    fd[static_cast<std::size_t>(o)] = acc;
  }
  return fd[static_cast<std::size_t>(j)];
}

TestFunction make_exp() {
  TestFunction f;
  f.name = "exp";
  f.alpha = 12.0;
  f.k_max = 8;
  f.deriv = [](int j, double x) {
    return ((j % 2 == 0) ? 1.0 : -1.0) * std::exp(-x);
  };
  f.deriv_at_zero = [](int j) { return (j % 2 == 0) ? 1.0 : -1.0; };
  f.exact_transform = [](cplx s) { return specfun::gamma(s); };
  f.exact_transform_deriv = [](cplx s) {
    return specfun::gamma(s) * specfun::digamma(s);
  };
  f.tail_const = std::pow(12.0, 12.0) * std::exp(-12.0); // max of y^12 e^{-y}
  f.tail_from = 0.5;
  f.support_end = kInf;
  return f;
}

TestFunction make_gaussian() {
  TestFunction f;
  f.name = "gaussian";
  f.alpha = 12.0;
  f.k_max = 8;
  f.deriv = gaussian_deriv;
  f.deriv_at_zero = [](int j) { return gaussian_deriv(j, 0.0); };
  f.exact_transform = [](cplx s) { return 0.5 * specfun::gamma(0.5 * s); };
  f.exact_transform_deriv = [](cplx s) {
    return 0.25 * specfun::gamma(0.5 * s) * specfun::digamma(0.5 * s);
  };
  f.tail_const = std::pow(6.0, 6.0) * std::exp(-6.0); // max of y^12 e^{-y^2}
  f.tail_from = 0.5;
  f.support_end = kInf;
  return f;
}

TestFunction make_power(int m, int k_max) {
  TestFunction f;
  f.name = "power" + std::to_string(m);
  f.alpha = m;
  f.k_max = k_max;
  f.deriv = [m](int j, double x) { return power_law_deriv(m, j, x); };
  f.deriv_at_zero = [m](int j) {
    return ((j % 2 == 0) ? 1.0 : -1.0) * rising(m, j);
  };
  double gm = factorial(m - 1);
  f.exact_transform = [m, gm](cplx s) {
    return specfun::gamma(s) * specfun::gamma(static_cast<double>(m) - s) / gm;
  };
  f.exact_transform_deriv = [m, gm](cplx s) {
    cplx fs = specfun::gamma(s) * specfun::gamma(static_cast<double>(m) - s) / gm;
    return fs * (specfun::digamma(s) -
                 specfun::digamma(static_cast<double>(m) - s));
  };
  f.tail_const = 1.0; // (1+x)^{-m} <= x^{-m}
  f.tail_from = 0.5;
  f.support_end = kInf;
  return f;
}

TestFunction make_bump() {
  TestFunction f;
  f.name = "bump";
  f.alpha = 4.0;
  f.k_max = 4;
  f.deriv = bump_deriv;
  f.deriv_at_zero = [](int) { return 0.0; };
  f.tail_const = 0.0; // identically zero past the support
  f.tail_from = 2.75;
  f.support_end = 2.75;
  return f;
}

// integral of f^{(n)}(x) x^{w-1} dx over (0, infinity), Re w > 0, with
// endpoint-taming power substitutions on both halves; with
// best_effort the achieved error is added onto the result so it stays a
// valid upper bound for |.| integrands
cplx mellin_integral(const TestFunction& f, int n, cplx w, double tol,
                     bool use_abs, double* achieved = nullptr) {
  const double rw = w.real();
  if (!(rw > 0.0))
    throw domain_error("mellin integral: Re(s)+n must be positive");
  auto fn = [&](double x) {
    double v = f.deriv(n, x);
    return use_abs ? std::abs(v) : v;
  };
  if (achieved)
    *achieved = 0.0;
  auto piece = [&](const std::function<cplx(double)>& g, double a,
                   double b) -> cplx {
    if (achieved) {
      auto r = quad::integrate_no_throw(g, a, b, 0.5 * tol, 40000);
      *achieved += r.error;
      return r.value;
    }
    return quad::integrate(g, a, b, 0.5 * tol).value;
  };

  // (0, 1]: x = u^p
  int p = (rw >= 2.0) ? 1 : static_cast<int>(std::ceil(2.0 / rw));
  cplx pw = static_cast<double>(p) * w;
  auto lower = [&](double u) -> cplx {
    double x = std::pow(u, p);
    return static_cast<double>(p) * fn(x) * std::exp((pw - 1.0) * std::log(u));
  };
  cplx total = piece(lower, 0.0, 1.0);

  // [1, infinity)
  if (f.compact()) {
    auto upper = [&](double x) -> cplx {
      return fn(x) * std::exp((w - 1.0) * std::log(x));
    };
    total += piece(upper, 1.0, f.support_end);
    return total;
  }
  double gap = f.alpha + n - rw; // decay margin of the mapped integrand
  if (!(gap > 0.0))
    throw domain_error("mellin integral: Re s must stay below alpha");
  int q = (gap >= 2.0) ? 1 : static_cast<int>(std::ceil(2.0 / gap));
  cplx qw = static_cast<double>(q) * w;
  auto upper = [&](double v) -> cplx {
    double x = std::pow(v, -q);
    return static_cast<double>(q) * fn(x) * std::exp((-qw - 1.0) * std::log(v));
  };
  total += piece(upper, 0.0, 1.0);
  return total;
}

} // namespace

const TestFunction& catalog(const std::string& name) {
  static const std::map<std::string, TestFunction> cat = [] {
    std::map<std::string, TestFunction> m;
    m["exp"] = make_exp();
    m["gaussian"] = make_gaussian();
    m["power3"] = make_power(3, 2);
    m["power5"] = make_power(5, 8);
    m["bump"] = make_bump();
    return m;
  }();
  auto it = cat.find(name);
  if (it == cat.end())
    throw domain_error("unknown catalog function: " + name);
  return it->second;
}

std::vector<std::string> catalog_names() {
  return {"exp", "gaussian", "power3", "power5", "bump"};
}

cplx pochhammer(cplx s, int n) {
  cplx v = 1.0;
  for (int i = 0; i < n; ++i)
    v *= s + static_cast<double>(i);
  return v;
}

cplx transform(const TestFunction& f, cplx s, double tol) {
  if (!(s.real() > 0.0 && s.real() < f.alpha))
    throw domain_error("transform: s outside the base strip (0, alpha)");
  return mellin_integral(f, 0, s, tol, false);
}

cplx transform_continued(const TestFunction& f, cplx s, int n, double tol) {
  if (n < 0 || n > f.k_max)
    throw class_violation("transform_continued: n outside [0, k_max]");
  if (!(s.real() > -static_cast<double>(n) && s.real() < f.alpha))
    throw domain_error("transform_continued: s outside the strip (-n, alpha)");
  for (int j = 0; j < n; ++j)
    if (std::abs(s + static_cast<double>(j)) < 1e-9)
      throw domain_error("transform_continued: s at a puncture point");
  double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign / pochhammer(s, n) *
         mellin_integral(f, n, s + static_cast<double>(n), tol, false);
}

cplx transform_any(const TestFunction& f, cplx s, double tol) {
  if (f.exact_transform)
    return f.exact_transform(s);
  int n = 0;
  if (s.real() <= 0.1)
    n = static_cast<int>(std::floor(-s.real())) + 2;
  if (n > f.k_max)
    throw domain_error("transform_any: s too far left for k_max");
  return transform_continued(f, s, n, tol);
}

Residue residue_at_negative(const TestFunction& f, int n) {
  if (n < 0 || n >= f.k_max)
    throw domain_error("residue_at_negative: n outside [0, k_max)");
  double v = f.deriv_at_zero(n) / factorial(n);
  return {v, v == 0.0};
}

double decay_bound_constant(const TestFunction& f, double sigma, int k,
                            double tol) {
  if (k < 0)
    k = f.k_max;
  if (k > f.k_max)
    throw domain_error("decay_bound_constant: k exceeds k_max");
  if (!(sigma > -static_cast<double>(k) && sigma < f.alpha))
    throw domain_error("decay_bound_constant: sigma outside (-k, alpha)");
  // upper-bound constant: quadrature error is added, never subtracted
  double err = 0.0;
  cplx v = mellin_integral(f, k, cplx(sigma + k, 0.0), tol, true, &err);
  return std::abs(v.real()) + err;
}

cplx inverse_transform(const std::function<cplx(cplx)>& F, double x,
                       double sigma, double tol,
                       const contour::DecayModel& decay) {
  contour::LineIntegralSpec spec;
  spec.sigma = sigma;
  spec.x = x;
  spec.tol = tol;
  spec.decay = decay;
  return contour::vertical_line_integral(F, spec).value;
}

cplx inverse_transform(const TestFunction& f, double x, double sigma,
                       double tol) {
  contour::DecayModel model;
  model.k = f.k_max;
  model.C = decay_bound_constant(f, sigma);
  model.zeta_power = 0;
  auto F = [&f, tol](cplx s) { return transform_any(f, s, 0.01 * tol); };
  contour::LineIntegralSpec spec;
  spec.sigma = sigma;
  spec.x = x;
  spec.tol = tol;
  spec.decay = model;
  spec.conjugate_symmetric = true; // catalog functions are real-valued
  return contour::vertical_line_integral(F, spec).value;
}

ClassCheckReport class_check(const TestFunction& f) {
  ClassCheckReport report;
  const int samples = 25;
  for (int j = 0; j <= f.k_max; ++j) {
    std::vector<double> lx, ly;
    for (int i = 0; i < samples; ++i) {
      double x = std::pow(10.0, 2.0 + 2.0 * i / (samples - 1));
      double y = std::abs(f.deriv(j, x));
      if (y > 1e-280) {
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
      }
    }
    ClassCheckEntry entry;
    entry.j = j;
    entry.required = -(f.alpha + j) + 0.1;
    if (lx.size() < 2) {
      // decayed below measurable range: faster than any power
      entry.slope = -kInf;
      entry.pass = true;
    } else {
      double n = static_cast<double>(lx.size());
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
      }
      entry.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      entry.pass = entry.slope <= entry.required;
    }
    report.pass = report.pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

} // namespace muntz::mellin
