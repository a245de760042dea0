#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "muntz/contour.hpp"
#include "muntz/formulas.hpp"
#include "muntz/specfun.hpp"

using namespace muntz;
using cplx = std::complex<double>;

namespace {

const arith::ArithmeticTable& table() {
  static auto t = arith::ArithmeticTable::build(1000000);
  return t;
}

constexpr double kGamma = specfun::constants::euler_gamma;

} // namespace

TEST_CASE("case registry") {
  auto ids = formulas::case_ids();
  CHECK(ids.size() == 13);
  for (const char* id :
       {"muntz-k1", "muntz-k4", "muntz-zeta2", "quot-k1", "quot-k4", "left-k1",
        "left-k2", "farleft-k1-m1", "farleft-k2-m1"})
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  CHECK_THROWS_AS((void)formulas::find_case("nosuch"), domain_error);

  auto presets = formulas::preset_ids();
  CHECK(presets.size() == 8);
  CHECK(formulas::preset_case("zg-quot-k2").id == "quot-k2");
  CHECK_THROWS_AS((void)formulas::preset_case("zg-nope"), domain_error);
}

TEST_CASE("strips and hypotheses") {
  const auto& quot = formulas::find_case("quot-k1");
  CHECK(quot.strip_lo == doctest::Approx(0.5));
  CHECK(quot.strip_hi == doctest::Approx(1.0));
  const auto& far = formulas::find_case("farleft-k1-m1");
  CHECK(far.strip_lo == doctest::Approx(-3.0));
  CHECK(far.strip_hi == doctest::Approx(-1.0));
  // power3 is too rough for the far-left cases
  CHECK_THROWS_AS((void)formulas::verify(table(), far,
                                         mellin::catalog("power3"),
                                         {cplx(-2.5, 0.0)}, 1e-6),
                  class_violation);
  CHECK_THROWS_AS((void)formulas::verify(table(), quot, mellin::catalog("exp"),
                                         {cplx(0.51, 0.0)}, 1e-6),
                  domain_error); // too close to the strip edge
}

TEST_CASE("series side against geometric closed forms") {
  const auto& f = mellin::catalog("exp");
  auto one = formulas::series_side(table(), arith::SeriesId::one(), f, 1.0,
                                   1e-12);
  double expected = 1.0 / (std::exp(1.0) - 1.0); // 0.581976706869326424
  CHECK(std::abs(one.value - expected) <= one.tail + 1e-13);
  CHECK(std::abs(one.value - 0.581976706869326424) < 1e-12);

  auto d2 = formulas::series_side(table(), arith::SeriesId::dk(2), f, 1.0,
                                  1e-12);
  CHECK(std::abs(d2.value - 0.82025951154241682326) < 1e-12);

  CHECK_THROWS_AS((void)formulas::series_side(table(), arith::SeriesId::one(),
                                              f, 5e-5, 1e-10),
                  convergence_error);
}

TEST_CASE("residue corrections in closed form") {
  const auto& f = mellin::catalog("exp");
  CHECK(std::abs(formulas::polynomial_correction(f, 1, 2.0) - 0.5) < 1e-12);
  CHECK(std::abs(formulas::polynomial_correction(f, 2, 1.0) - kGamma) < 1e-12);
  for (double x : {0.5, 1.0, 3.0}) {
    for (int k : {1, 2}) {
      auto F = [&](cplx s) {
        cplx v = specfun::gamma(s) * std::pow(cplx(x), -s);
        for (int i = 0; i < k; ++i)
          v *= specfun::zeta(s);
        return v;
      };
      cplx circ = contour::circle_residue(F, cplx(1.0, 0.0), 0.25, 1e-12);
      CHECK(std::abs(circ.real() - formulas::polynomial_correction(f, k, x)) <
            1e-10);
    }
  }
}

TEST_CASE("quotient residues: closed forms and radius stability") {
  const auto& f = mellin::catalog("exp");
  for (double x : {0.5, 1.0, 2.0})
    for (int k : {1, 2}) {
      auto F = [&](cplx s) {
        cplx v = specfun::gamma(s) * std::pow(cplx(x), -s);
        for (int i = 0; i < k; ++i)
          v *= specfun::zeta(s);
        return v / specfun::zeta(2.0 * s);
      };
      cplx circ = contour::circle_residue(F, cplx(1.0, 0.0), 0.25, 1e-12);
      CHECK(std::abs(circ.real() - formulas::quotient_residue(f, k, x)) <
            1e-10);
    }
  // k = 3 has no closed form; the circle route must be radius independent
  auto F3 = [&](cplx s) {
    cplx z = specfun::zeta(s);
    return z * z * z * specfun::gamma(s) / specfun::zeta(2.0 * s);
  };
  cplx a = contour::circle_residue(F3, cplx(1.0, 0.0), 0.2, 1e-11);
  cplx b = contour::circle_residue(F3, cplx(1.0, 0.0), 0.3, 1e-11);
  CHECK(std::abs(a - b) <= 1e-8);
  CHECK(std::abs(a.real() - formulas::quotient_residue(f, 3, 1.0)) < 1e-8);
}

TEST_CASE("Laurent data matches direct circle integrals") {
  const auto& f = mellin::catalog("gaussian");
  const auto& c = formulas::find_case("quot-k2");
  auto a = formulas::residue_laurent(c, f, 1e-11);
  auto direct = contour::laurent_coefficients(
      [&](cplx s) {
        cplx z = specfun::zeta(s);
        return z * z * f.exact_transform(s) / specfun::zeta(2.0 * s);
      },
      cplx(1.0, 0.0), 2, 0.25, 1e-11);
  REQUIRE(a.size() == 2);
  CHECK(std::abs(a[0] - direct[0].real()) < 1e-9);
  CHECK(std::abs(a[1] - direct[1].real()) < 1e-9);
}

TEST_CASE("bracket small-x route agrees with the direct series route") {
  const auto& f = mellin::catalog("exp");
  const auto& c = formulas::find_case("quot-k1");
  double x = 0.04; // below the switch point: bracket uses its line route
  double via_line = formulas::bracket(table(), c, f, x, 1e-10);
  auto sv = formulas::series_side(table(), c.series, f, x, 1e-13);
  double direct = sv.value - formulas::quotient_residue(f, 1, x);
  CHECK(std::abs(via_line - direct) < 1e-8);
}

TEST_CASE("far-left removable points") {
  const auto& f = mellin::catalog("exp");
  const auto& c1 = formulas::find_case("farleft-k1-m1");
  // zeta'(-2) = -zeta(3)/(4 pi^2); lhs at s = -2 is zeta'(-2) f''(0)/2
  double zp = -1.20205690315959428540 /
              (4.0 * specfun::constants::pi * specfun::constants::pi);
  cplx at = formulas::lhs_value(c1, f, cplx(-2.0, 0.0));
  CHECK(std::abs(at.real() - zp * f.deriv(2, 0.0) / 2.0) < 1e-10);
  // continuity of the limit
  cplx near = formulas::lhs_value(c1, f, cplx(-2.0 + 1e-6, 0.0));
  CHECK(std::abs(near - at) < 1e-4);
  // k >= 2 vanishes to second order
  const auto& c2 = formulas::find_case("farleft-k2-m1");
  CHECK(formulas::lhs_value(c2, f, cplx(-2.0, 0.0)) == cplx(0.0, 0.0));
}

TEST_CASE("default samples sit inside each strip") {
  for (const auto& id : formulas::case_ids()) {
    const auto& c = formulas::find_case(id);
    auto pts = formulas::default_samples(c);
    CHECK(!pts.empty());
    for (const auto& s : pts) {
      CHECK(s.real() > c.strip_lo);
      CHECK(s.real() < c.strip_hi);
    }
  }
}

TEST_CASE("verify representative cases") {
  struct Row {
    const char* case_id;
    const char* fn;
    cplx s;
  };
  const Row rows[] = {
      {"muntz-k1", "exp", {0.5, 0.0}},
      {"muntz-k1", "gaussian", {0.25, 2.0}},
      {"muntz-zeta2", "exp", {0.75, 0.0}},
      {"quot-k1", "exp", {0.75, 0.0}},
      {"quot-k4", "gaussian", {0.6, 0.0}},
      {"left-k1", "exp", {-0.5, 0.0}},
      {"farleft-k1-m1", "exp", {-2.5, 0.0}},
  };
  for (const auto& r : rows) {
    auto rep = formulas::verify(table(), formulas::find_case(r.case_id),
                                mellin::catalog(r.fn), {r.s}, 1e-6);
    CHECK(rep.pass);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].rel_err <= 1e-6);
  }
}

TEST_CASE("verify is independent of the evaluation strip point") {
  // the same representation must hold across its strip
  const auto& c = formulas::find_case("left-k2");
  const auto& f = mellin::catalog("gaussian");
  for (double re : {-0.75, -0.5, -0.25}) {
    auto rep = formulas::verify(table(), c, f, {cplx(re, 0.0)}, 1e-6);
    CHECK(rep.pass);
  }
}

TEST_CASE("gamma zeta presets") {
  auto rep = formulas::gamma_zeta_preset(table(), "zg-left-k1",
                                         cplx(-0.5, 0.0), 1e-6);
  CHECK(rep.pass);
  CHECK(rep.function == "exp");
  CHECK_THROWS_AS(
      (void)formulas::gamma_zeta_preset(table(), "bad", cplx(0.5, 0.0), 1e-6),
      domain_error);
}

TEST_CASE("report serialization is deterministic") {
  auto rep = formulas::verify(table(), formulas::find_case("muntz-k1"),
                              mellin::catalog("exp"), {cplx(0.5, 0.0)}, 1e-6);
  std::vector<formulas::VerificationReport> reports{rep};
  std::string j1 = formulas::report_json(reports);
  std::string j2 = formulas::report_json(reports);
  CHECK(j1 == j2);
  CHECK(j1.find("\"schema\": 1") != std::string::npos);
  CHECK(j1.find("\"verdict\": \"pass\"") != std::string::npos);
  std::string csv = formulas::report_csv(reports);
  CHECK(csv.find("case,function,") == 0);
  CHECK(csv.find("muntz-k1,exp,") != std::string::npos);
}
