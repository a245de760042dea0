#include "muntz/specfun.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace muntz::specfun {

namespace {

using constants::pi;

// Bernoulli numbers B_{2n}, n = 1..20, as exact rational quotients.
const std::array<double, 21> kBernoulli2n = {
    1.0, // unused slot (n = 0 would be B_0 = 1)
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

// Godfrey's 15-coefficient Lanczos set, g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
const std::array<double, 15> kLanczosC = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool near_nonpositive_integer(cplx s, double radius) {
  if (s.real() > 0.5)
    return false;
  double r = std::round(s.real());
  if (r > 0.0)
    return false;
  return std::abs(s - cplx(r, 0.0)) <= radius;
}

// Lanczos sum for Re z >= 0.5.
cplx gamma_positive_half(cplx z) {
  cplx zm1 = z - 1.0;
  cplx acc = kLanczosC[0];
  for (int k = 1; k < 15; ++k)
    acc += kLanczosC[k] / (zm1 + static_cast<double>(k));
  cplx t = zm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * acc;
}

// log Gamma for Re z >= 0.5; keeps reflection-formula factors finite when
// the direct products would overflow.
cplx log_gamma_positive_half(cplx z) {
  cplx zm1 = z - 1.0;
  cplx acc = kLanczosC[0];
  for (int k = 1; k < 15; ++k)
    acc += kLanczosC[k] / (zm1 + static_cast<double>(k));
  cplx t = zm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t +
         std::log(acc);
}

// log sin(pi z), stable for large |Im z| where sin itself overflows:
// sin pi(r+iy) = (e^{pi|y|}/2) [sin(pi r)(1+q) + i sgn(y) cos(pi r)(1-q)],
// q = e^{-2 pi |y|}.
cplx log_sin_pi_stable(cplx z) {
  double n = std::round(z.real());
  double r = z.real() - n;
  double y = z.imag();
  double ay = std::abs(y);
  cplx lg;
  if (ay > 20.0) {
    double q = std::exp(-2.0 * pi * ay);
    cplx w(std::sin(pi * r) * (1.0 + q),
           (y > 0.0 ? 1.0 : -1.0) * std::cos(pi * r) * (1.0 - q));
    lg = cplx(pi * ay - std::log(2.0), 0.0) + std::log(w);
  } else {
    cplx v(std::sin(pi * r) * std::cosh(pi * y),
           std::cos(pi * r) * std::sinh(pi * y));
    lg = std::log(v);
  }
  if (std::fmod(std::abs(n), 2.0) != 0.0)
    lg += cplx(0.0, pi);
  return lg;
}

// B_{2j} / (2j)! for the Euler-Maclaurin correction terms, j = 1..15.
const std::array<double, 16>& bern_over_fact() {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> t{};
    double fact = 1.0;
    int n = 0;
    for (int j = 1; j <= 15; ++j) {
      while (n < 2 * j) {
        ++n;
        fact *= n;
      }
      t[j] = kBernoulli2n[j] / fact;
    }
    return t;
  }();
  return table;
}

// Euler-Maclaurin evaluation, reliable for Re s >= -0.5 in the test box.
cplx zeta_euler_maclaurin(cplx s) {
  const int N = std::max(20, static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))) + 10);
  const int J = 15;
  cplx sum = 0.0;
  for (int n = 1; n < N; ++n)
    sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double dN = static_cast<double>(N);
  cplx npow = std::pow(dN, 1.0 - s); // N^{1-s}
  sum += npow / (s - 1.0);
  npow /= dN; // N^{-s}
  sum += 0.5 * npow;
  npow /= dN; // N^{-s-1}
  cplx poch = s; // (s)_1
  const auto& bf = bern_over_fact();
  for (int j = 1; j <= J; ++j) {
    sum += bf[j] * poch * npow;
    poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    npow /= dN * dN;
  }
  return sum;
}

} // namespace

cplx sin_pi(cplx z) {
  double n = std::round(z.real());
  double r = z.real() - n;
  double y = z.imag();
  cplx v(std::sin(pi * r) * std::cosh(pi * y), std::cos(pi * r) * std::sinh(pi * y));
  if (std::fmod(std::abs(n), 2.0) != 0.0)
    v = -v;
  return v;
}

cplx gamma(cplx s) {
  if (near_nonpositive_integer(s, 1e-12))
    throw domain_error("gamma: pole at non-positive integer");
  if (s.real() >= 0.5)
    return gamma_positive_half(s);
  // Reflection formula; in log form once the factors would overflow.
  if (std::abs(s.imag()) > 20.0)
    return std::exp(std::log(pi) - log_sin_pi_stable(s) -
                    log_gamma_positive_half(1.0 - s));
  return pi / (sin_pi(s) * gamma_positive_half(1.0 - s));
}

cplx digamma(cplx s) {
  if (near_nonpositive_integer(s, 1e-12))
    throw domain_error("digamma: pole at non-positive integer");
  if (s.real() < 0.5) {
    // Reflection: psi(1-z) - psi(z) = pi cot(pi z).
    cplx z = 1.0 - s;
    cplx cot;
    if (std::abs(s.imag()) > 20.0) {
      // cot(pi z) -> -i sgn(Im z); u is the exponentially small remainder
      cplx sc = (s.imag() > 0.0) ? s : std::conj(s);
      cplx u = std::exp(cplx(0.0, 2.0 * pi) * sc);
      cplx c = cplx(0.0, -1.0) * (1.0 + u) / (1.0 - u);
      cot = pi * ((s.imag() > 0.0) ? c : std::conj(c));
    } else {
      cot = std::cos(pi * s) / sin_pi(s) * pi;
    }
    return digamma(z) - cot;
  }
  cplx acc = 0.0;
  cplx z = s;
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cplx inv = 1.0 / z;
  cplx inv2 = inv * inv;
  cplx v = std::log(z) - 0.5 * inv;
  cplx p = inv2;
  for (int n = 1; n <= 7; ++n) {
    v -= kBernoulli2n[n] / (2.0 * n) * p;
    p *= inv2;
  }
  return acc + v;
}

cplx zeta(cplx s) {
  if (std::abs(s - cplx(1.0, 0.0)) <= 1e-10)
    throw domain_error("zeta: pole at s = 1");
  if (s.real() >= -0.5)
    return zeta_euler_maclaurin(s);
  // Functional equation; 1-s lands in the Euler-Maclaurin region.
  cplx w = 1.0 - s;
  if (std::abs(s.imag()) > 20.0)
    return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi) +
                    log_sin_pi_stable(s / 2.0) + log_gamma_positive_half(w)) *
           zeta_euler_maclaurin(w);
  return std::pow(2.0, s) * std::pow(pi, s - 1.0) * sin_pi(s / 2.0) *
         gamma_positive_half(w) * zeta_euler_maclaurin(w);
}

double bernoulli_2n(int n) {
  if (n < 1 || n > 20)
    throw domain_error("bernoulli_2n: n must be in 1..20");
  return kBernoulli2n[static_cast<size_t>(n)];
}

double zeta_neg_odd(int n) {
  if (n < 1 || n > 20)
    throw domain_error("zeta_neg_odd: n must be in 1..20");
  return -kBernoulli2n[static_cast<size_t>(n)] / (2.0 * n);
}

double zeta_prime_2() {
  const double A = constants::glaisher;
  return constants::pi_sq_over_6 *
         (constants::euler_gamma + std::log(2.0 * pi) - 12.0 * std::log(A));
}

double zeta_prime_2_numeric() {
  auto central = [](double h) {
    return (zeta(cplx(2.0 + h, 0.0)).real() - zeta(cplx(2.0 - h, 0.0)).real()) / (2.0 * h);
  };
  double h = 1e-5;
  double d1 = central(h);
  double d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0; // Richardson
}

double ZetaGrowthEnvelope::operator()(double sigma, double t) const {
  if (t < t0)
    throw domain_error("growth envelope: t below threshold t0");
  double lg = std::max(1.0, std::log(t));
  if (sigma >= 2.0)
    return M;
  if (sigma >= 1.0)
    return M * lg;
  if (sigma >= 0.0)
    return M * std::pow(t, 0.5 * (1.0 - sigma)) * lg;
  return M * std::pow(t, 0.5 - sigma) * lg;
}

const ZetaGrowthEnvelope& calibrated_envelope() {
  static const ZetaGrowthEnvelope env = [] {
    ZetaGrowthEnvelope shape(1.0, 2.0);
    const double sigmas[] = {-2.0, -1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    double max_ratio = 0.0;
    for (double sigma : sigmas) {
      for (double t = 2.0; t <= 200.0; t += 0.5) {
        double z = std::abs(zeta(cplx(sigma, t)));
        max_ratio = std::max(max_ratio, z / shape(sigma, t));
      }
    }
    return ZetaGrowthEnvelope(2.0 * max_ratio, 2.0);
  }();
  return env;
}

} // namespace muntz::specfun
