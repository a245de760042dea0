#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "muntz/arith.hpp"
#include "muntz/contour.hpp"
#include "muntz/formulas.hpp"
#include "muntz/mellin.hpp"
#include "muntz/specfun.hpp"

using namespace muntz;
using cplx = std::complex<double>;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(int n, bool pass, const std::string& what, double secs) {
  std::printf("criterion %d: %s (%s) [%.1fs]\n", n, pass ? "PASS" : "FAIL",
              what.c_str(), secs);
  std::fflush(stdout);
  if (!pass)
    ++g_failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool verify_points(const arith::ArithmeticTable& table, const char* case_id,
                   const char* fn, const std::vector<cplx>& pts, double tol) {
  auto rep = formulas::verify(table, formulas::find_case(case_id),
                              mellin::catalog(fn), pts, tol);
  if (!rep.pass)
    for (const auto& p : rep.points)
      if (p.rel_err > tol)
        std::fprintf(stderr, "  %s/%s s=(%g,%g) rel_err=%.3e > %.1e\n",
                     case_id, fn, p.s.real(), p.s.imag(), p.rel_err, tol);
  return rep.pass;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_1() {
  auto t0 = clock_type::now();
  bool ok = true;
  ok &= close(specfun::zeta(2.0).real(), specfun::constants::pi_sq_over_6,
              1e-12);
  ok &= close(specfun::zeta(0.0).real(), -0.5, 1e-12);
  for (int n = 1; n <= 10; ++n)
    ok &= std::abs(specfun::zeta(-2.0 * n)) <= 1e-10;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> re(0.1, 10.0);
  std::uniform_real_distribution<double> im(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    cplx s(re(rng), im(rng));
    cplx lhs = specfun::gamma(s + 1.0);
    ok &= std::abs(lhs - s * specfun::gamma(s)) / std::abs(lhs) <= 1e-10;
  }
  double secs = seconds_since(t0);
  ok &= secs < 5.0;
  report(1, ok, "special values and gamma recurrence", secs);
}

void criterion_2(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  const arith::SeriesId ids[] = {
      arith::SeriesId::mu(),          arith::SeriesId::dk(2),
      arith::SeriesId::abs_mu(),      arith::SeriesId::two_omega(),
      arith::SeriesId::d_square_arg(), arith::SeriesId::d_squared()};
  for (const auto& id : ids) {
    for (cplx s : {cplx(2.0, 0.0), cplx(3.0, 0.0), cplx(2.0, 5.0)}) {
      auto part = arith::dirichlet_partial(table, id, s, 100000);
      cplx closed = arith::closed_form(id, s);
      ok &= std::abs(part.value - closed) <= part.tail_bound;
    }
    auto at3 = arith::dirichlet_partial(table, id, cplx(3.0, 0.0), 100000);
    cplx closed3 = arith::closed_form(id, cplx(3.0, 0.0));
    ok &= std::abs(at3.value - closed3) / std::abs(closed3) <= 1e-6;
  }
  double secs = seconds_since(t0);
  ok &= secs < 10.0;
  report(2, ok, "Dirichlet partial sums vs closed forms", secs);
}

void criterion_3() {
  auto t0 = clock_type::now();
  bool ok = true;
  const auto& fexp = mellin::catalog("exp");
  for (double re : {0.5, 1.5, 2.5, 3.5, 4.5})
    for (double im : {0.0, 1.0, 3.0, 7.0}) {
      cplx s(re, im);
      ok &= std::abs(mellin::transform(fexp, s, 1e-12) - specfun::gamma(s)) <=
            1e-9;
    }
  cplx cont = mellin::transform_continued(fexp, cplx(-0.5, 0.0), 1, 1e-11);
  ok &= std::abs(cont - cplx(-2.0 * std::sqrt(specfun::constants::pi))) <=
        1e-8;
  for (const char* name : {"exp", "power5"}) {
    const auto& f = mellin::catalog(name);
    for (int n = 0; n <= 2; ++n) {
      auto res = mellin::residue_at_negative(f, n);
      cplx circ = contour::circle_residue(
          [&](cplx s) { return mellin::transform_any(f, s, 1e-12); },
          cplx(-double(n), 0.0), 0.25, 1e-9);
      ok &= std::abs(circ - cplx(res.value)) <= 1e-6;
    }
  }
  report(3, ok, "transform, continuation, residue limits", seconds_since(t0));
}

void criterion_4(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  const std::vector<cplx> pts = {{0.25, 0.0}, {0.5, 0.0}, {0.75, 0.0},
                                 {0.25, 2.0}, {0.5, 2.0}, {0.75, 2.0}};
  for (const char* fn : {"exp", "gaussian", "power5"})
    ok &= verify_points(table, "muntz-k1", fn, pts, 1e-6);
  double secs = seconds_since(t0);
  ok &= secs < 60.0;
  report(4, ok, "classical summation formula", secs);
}

void criterion_5(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  const std::vector<cplx> pts = {{0.5, 0.0}, {0.75, 0.0}, {0.9, 0.0}};
  for (const char* cs : {"muntz-k2", "muntz-zeta2"})
    for (const char* fn : {"exp", "gaussian"})
      ok &= verify_points(table, cs, fn, pts, 1e-5);
  report(5, ok, "squared-zeta pair", seconds_since(t0));
}

void criterion_6(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  const std::vector<cplx> pts = {{0.6, 0.0}, {0.75, 0.0}, {0.9, 0.0}};
  ok &= verify_points(table, "quot-k3", "exp", pts, 1e-5);
  ok &= verify_points(table, "quot-k4", "exp", pts, 1e-5);
  const auto& f = mellin::catalog("exp");
  for (int k : {3, 4}) {
    auto F = [&](cplx s) {
      cplx v = specfun::gamma(s);
      for (int i = 0; i < k; ++i)
        v *= specfun::zeta(s);
      return v / specfun::zeta(2.0 * s);
    };
    cplx a = contour::circle_residue(F, cplx(1.0, 0.0), 0.2, 1e-11);
    cplx b = contour::circle_residue(F, cplx(1.0, 0.0), 0.3, 1e-11);
    ok &= std::abs(a - b) <= 1e-8;
    ok &= std::abs(a.real() - formulas::quotient_residue(f, k, 1.0)) <= 1e-8;
  }
  report(6, ok, "quotient cases and residue stability", seconds_since(t0));
}

void criterion_7(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  const std::vector<cplx> left = {{-0.75, 0.0}, {-0.5, 0.0}, {-0.25, 0.0}};
  ok &= verify_points(table, "left-k1", "exp", left, 1e-6);
  ok &= verify_points(table, "left-k2", "exp", left, 1e-6);
  const std::vector<cplx> far = {{-2.5, 0.0}, {-1.5, 0.0}};
  ok &= verify_points(table, "farleft-k1-m1", "exp", far, 1e-5);
  ok &= verify_points(table, "farleft-k2-m1", "exp", far, 1e-5);
  report(7, ok, "left and far-left strips", seconds_since(t0));
}

void criterion_8(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  struct Row {
    const char* id;
    cplx s;
  };
  const Row rows[] = {
      {"zg-crit-k1", {0.5, 0.0}}, {"zg-crit-k2", {0.5, 0.0}},
      {"zg-quot-k1", {0.75, 0.0}}, {"zg-quot-k2", {0.75, 0.0}},
      {"zg-left-k1", {-0.5, 0.0}}, {"zg-left-k2", {-0.5, 0.0}},
      {"zg-far-k1", {-2.0, 0.0}},  {"zg-far-k2", {-2.0, 0.0}},
  };
  for (const auto& r : rows) {
    auto rep = formulas::gamma_zeta_preset(table, r.id, r.s, 1e-6);
    if (!rep.pass)
      std::fprintf(stderr, "  preset %s rel_err=%.3e\n", r.id,
                   rep.points[0].rel_err);
    ok &= rep.pass;
  }
  report(8, ok, "gamma-zeta representation presets", seconds_since(t0));
}

void criterion_9(const arith::ArithmeticTable& table) {
  auto t0 = clock_type::now();
  bool ok = true;
  auto F = [](cplx s) { return specfun::gamma(s) * specfun::zeta(s); };
  auto spec_at = [](double sigma, double x) {
    contour::LineIntegralSpec spec;
    spec.sigma = sigma;
    spec.x = x;
    spec.tol = 1e-9;
    spec.decay.k = 6;
    spec.decay.C =
        mellin::decay_bound_constant(mellin::catalog("exp"), sigma, 6);
    spec.decay.zeta_power = 1;
    return spec;
  };
  double x = 0.7;
  auto cross1 = contour::shift_line(
      F, spec_at(0.5, x), spec_at(2.0, x),
      {{cplx(1.0, 0.0), cplx(1.0 / x, 0.0)}});
  ok &= cross1.pass && cross1.gap <= cross1.tolerance;
  auto cross0 = contour::shift_line(F, spec_at(-0.5, x), spec_at(0.5, x),
                                    {{cplx(0.0, 0.0), cplx(-0.5, 0.0)}});
  ok &= cross0.pass && cross0.gap <= cross0.tolerance;

  const arith::SeriesId ids[] = {
      arith::SeriesId::mu(),          arith::SeriesId::dk(2),
      arith::SeriesId::abs_mu(),      arith::SeriesId::two_omega(),
      arith::SeriesId::d_square_arg(), arith::SeriesId::d_squared()};
  double C =
      10.0 * mellin::decay_bound_constant(mellin::catalog("exp"), 2.0, 8);
  for (const auto& id : ids)
    for (double xv : {0.5, 1.0, 2.0}) {
      contour::LineIntegralSpec spec;
      spec.sigma = 2.0;
      spec.x = xv;
      spec.tol = 1e-10;
      spec.decay.k = 8;
      spec.decay.C = C;
      spec.conjugate_symmetric = true;
      auto r = contour::vertical_line_integral(
          [&](cplx s) { return arith::closed_form(id, s) * specfun::gamma(s); },
          spec);
      double series = 0.0;
      for (std::int64_t n = 1; n <= 200; ++n)
        series += arith::coeff(table, id, n) * std::exp(-double(n) * xv);
      ok &= std::abs(r.value.real() - series) / std::abs(series) <= 1e-7;
    }
  report(9, ok, "line shifting and cross-route identity", seconds_since(t0));
}

void criterion_10(const std::string& cli) {
  auto t0 = clock_type::now();
  bool ok = true;
  std::string out1 = "acceptance_run1.json";
  std::string out2 = "acceptance_run2.json";
  for (int i = 0; i < 2; ++i) {
    std::string cmd = "\"" + cli + "\" verify --all --out " +
                      (i == 0 ? out1 : out2);
    int rc = std::system(cmd.c_str());
    ok &= (rc != -1) && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
  }
  std::string a = slurp(out1), b = slurp(out2);
  ok &= !a.empty() && a == b;
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  double secs = seconds_since(t0);
  ok &= secs < 600.0;
  report(10, ok, "full verification run: exit code and determinism", secs);
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
    return 2;
  }
  criterion_1();
  auto small = arith::ArithmeticTable::build(100000);
  criterion_2(small);
  criterion_3();
  auto table = arith::ArithmeticTable::build(1000000);
  criterion_4(table);
  criterion_5(table);
  criterion_6(table);
  criterion_7(table);
  criterion_8(table);
  criterion_9(table);
  criterion_10(argv[1]);
  if (g_failures)
    std::printf("%d criteria failed\n", g_failures);
  else
    std::printf("all criteria passed\n");
  return g_failures ? 1 : 0;
}
