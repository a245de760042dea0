#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>

#include "doctest.h"
#include "muntz/arith.hpp"
#include "muntz/specfun.hpp"

using namespace muntz;
using cplx = std::complex<double>;

namespace {

// brute-force reference values from trial division
struct Ref {
  int mu = 1;
  int omega = 0;
  std::int64_t d = 1;
};

Ref factor_ref(std::int64_t n) {
  Ref r;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p)
      continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    ++r.omega;
    r.d *= e + 1;
    r.mu = (e > 1) ? 0 : -r.mu;
  }
  if (m > 1) {
    ++r.omega;
    r.d *= 2;
    r.mu = -r.mu;
  }
  return r;
}

const arith::ArithmeticTable& table() {
  static auto t = arith::ArithmeticTable::build(200000);
  return t;
}

} // namespace

TEST_CASE("sieve matches trial division") {
  for (std::int64_t n = 1; n <= 2000; ++n) {
    Ref r = factor_ref(n);
    CHECK(table().mu(n) == r.mu);
    CHECK(table().omega(n) == r.omega);
    CHECK(table().d(n) == r.d);
  }
}

TEST_CASE("d_k by direct convolution") {
  // d3(n) = sum over a*b*c = n of 1; count ordered triples directly
  for (std::int64_t n = 1; n <= 120; ++n) {
    std::int64_t d3 = 0, d4 = 0;
    for (std::int64_t a = 1; a <= n; ++a) {
      if (n % a)
        continue;
      for (std::int64_t b = 1; b * a <= n; ++b) {
        if ((n / a) % b)
          continue;
        ++d3;
        std::int64_t rem = n / (a * b);
        d4 += static_cast<std::int64_t>(factor_ref(rem).d);
      }
    }
    CHECK(table().dk(3, n) == d3);
    CHECK(table().dk(4, n) == d4);
  }
  CHECK(table().dk(1, 60) == 1);
  CHECK(table().dk(2, 60) == table().d(60));
}

TEST_CASE("d of square from factorization") {
  for (std::int64_t n = 1; n <= 500; ++n)
    CHECK(table().d_of_square(n) == factor_ref(n * n).d);
  // beyond the sieve square range
  CHECK(table().d_of_square(104729) == 3); // prime^2
}

TEST_CASE("coefficient streams") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    Ref r = factor_ref(n);
    CHECK(arith::coeff(table(), arith::SeriesId::one(), n) == 1.0);
    CHECK(arith::coeff(table(), arith::SeriesId::mu(), n) == r.mu);
    CHECK(arith::coeff(table(), arith::SeriesId::abs_mu(), n) ==
          std::abs(r.mu));
    CHECK(arith::coeff(table(), arith::SeriesId::two_omega(), n) ==
          std::pow(2.0, r.omega));
    CHECK(arith::coeff(table(), arith::SeriesId::d_squared(), n) ==
          double(r.d) * double(r.d));
    CHECK(arith::coeff(table(), arith::SeriesId::d_square_arg(), n) ==
          double(factor_ref(n * n).d));
  }
}

TEST_CASE("divisor summatory function satisfies the Voronoi-type bound") {
  double D = 0.0;
  const double g2m1 = 2.0 * specfun::constants::euler_gamma - 1.0;
  for (std::int64_t n = 1; n <= 100000; ++n) {
    D += double(table().d(n));
    double main = n * std::log(double(n)) + g2m1 * n;
    CHECK(std::abs(D - main) <= 2.5 * std::cbrt(double(n)));
  }
}

TEST_CASE("phi envelopes dominate the streams") {
  const arith::SeriesId ids[] = {
      arith::SeriesId::one(),        arith::SeriesId::mu(),
      arith::SeriesId::dk(2),        arith::SeriesId::dk(4),
      arith::SeriesId::abs_mu(),     arith::SeriesId::two_omega(),
      arith::SeriesId::d_square_arg(), arith::SeriesId::d_squared()};
  for (const auto& id : ids) {
    arith::Envelope env = arith::phi_envelope(id, 1.5);
    for (std::int64_t n = 1; n <= 100000; n += (n < 1000 ? 1 : 97))
      CHECK(std::abs(arith::coeff(table(), id, n)) <=
            env.C * std::pow(double(n), env.e));
  }
}

TEST_CASE("divisor envelope constant is valid pointwise") {
  double C3 = arith::divisor_envelope_constant(3.0);
  for (std::int64_t n = 1; n <= 100000; ++n)
    CHECK(double(table().d(n)) <= C3 * std::cbrt(double(n)));
}

TEST_CASE("partial sums against closed forms") {
  const arith::SeriesId ids[] = {
      arith::SeriesId::mu(),          arith::SeriesId::dk(2),
      arith::SeriesId::abs_mu(),      arith::SeriesId::two_omega(),
      arith::SeriesId::d_square_arg(), arith::SeriesId::d_squared()};
  for (const auto& id : ids)
    for (cplx s : {cplx(2.0, 0.0), cplx(3.0, 0.0), cplx(2.0, 5.0)}) {
      auto part = arith::dirichlet_partial(table(), id, s, 100000);
      cplx closed = arith::closed_form(id, s);
      CHECK(std::abs(part.value - closed) <= part.tail_bound);
    }
}

TEST_CASE("closed forms at s = 2") {
  const double z2 = specfun::constants::pi_sq_over_6;
  double z4 = std::pow(specfun::constants::pi, 4) / 90.0;
  CHECK(std::abs(arith::closed_form(arith::SeriesId::mu(), 2.0) - 1.0 / z2) <
        1e-13);
  CHECK(std::abs(arith::closed_form(arith::SeriesId::abs_mu(), 2.0) -
                 z2 / z4) < 1e-13);
  CHECK(std::abs(arith::closed_form(arith::SeriesId::dk(2), 2.0) - z2 * z2) <
        1e-13);
  CHECK(std::abs(arith::closed_form(arith::SeriesId::two_omega(), 2.0) -
                 z2 * z2 / z4) < 1e-13);
}

TEST_CASE("divergence and domain guards") {
  CHECK_THROWS_AS(
      (void)arith::dirichlet_partial(table(), arith::SeriesId::dk(2),
                                     cplx(0.9, 0.0), 1000),
      domain_error);
  CHECK_THROWS_AS(
      (void)arith::dirichlet_partial(table(), arith::SeriesId::dk(2),
                                     cplx(1.0, 5.0), 1000),
      domain_error);
  CHECK_THROWS_AS((void)arith::closed_form(arith::SeriesId::dk(2), 1.0),
                  domain_error);
  CHECK_THROWS_AS((void)arith::ArithmeticTable::build(0), domain_error);
  CHECK_THROWS_AS((void)table().mu(0), domain_error);
  CHECK_THROWS_AS((void)table().d(200001), domain_error);
}

TEST_CASE("csv export shape") {
  std::ostringstream os;
  table().export_csv(os, 10);
  std::string text = os.str();
  int lines = 0;
  for (char ch : text)
    lines += (ch == '\n');
  CHECK(lines == 11); // header + 10 rows
  CHECK(text.substr(0, 1) == "n");
}
