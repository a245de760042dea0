#include "muntz/arith.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "muntz/specfun.hpp"

namespace muntz::arith {

ArithmeticTable::ArithmeticTable(std::int64_t limit)
    : limit_(limit),
      spf_(static_cast<std::size_t>(limit) + 1, 0),
      mu_(static_cast<std::size_t>(limit) + 1, 0),
      omega_(static_cast<std::size_t>(limit) + 1, 0),
      d_(static_cast<std::size_t>(limit) + 1, 0),
      dk_(5) {}

ArithmeticTable ArithmeticTable::build(std::int64_t limit) {
  if (limit < 1 || limit > 100'000'000)
    throw domain_error("sieve limit must be in [1, 1e8]");
  ArithmeticTable t(limit);
  auto& spf = t.spf_;
  // smallest prime factor sieve
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::int64_t j = i; j <= limit; j += i)
        if (spf[j] == 0)
          spf[j] = static_cast<std::int32_t>(i);
    }
  }
  spf[1] = 1;
  t.mu_[1] = 1;
  t.omega_[1] = 0;
  t.d_[1] = 1;
  // multiplicative fill via spf factorization of each n
  for (std::int64_t n = 2; n <= limit; ++n) {
    std::int64_t p = spf[n];
    std::int64_t m = n / p;
    if (m % p == 0) {
      // p^2 | n
      t.mu_[n] = 0;
      t.omega_[n] = t.omega_[m];
      // divisor count: find exponent of p in n
      int e = 1;
      std::int64_t q = m;
      while (q % p == 0) {
        q /= p;
        ++e;
      }
      t.d_[n] = static_cast<std::int32_t>(
          static_cast<std::int64_t>(t.d_[q]) * (e + 1));
    } else {
      t.mu_[n] = static_cast<std::int8_t>(-t.mu_[m]);
      t.omega_[n] = static_cast<std::int8_t>(t.omega_[m] + 1);
      t.d_[n] = t.d_[m] * 2;
    }
  }
  return t;
}

std::int64_t ArithmeticTable::d_of_square(std::int64_t n) const {
  check(n);
  std::int64_t result = 1;
  while (n > 1) {
    std::int64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result *= 2 * e + 1;
  }
  return result;
}

void ArithmeticTable::ensure_dk(int k) const {
  if (k < 3 || k > 4)
    throw domain_error("dk cache only holds k in {3,4}");
  if (!dk_[static_cast<std::size_t>(k)].empty())
    return;
  if (k == 4)
    ensure_dk(3);
  const std::size_t n = static_cast<std::size_t>(limit_);
  std::vector<std::int64_t> out(n + 1, 0);
  // one Dirichlet-convolution pass: d_k = d_{k-1} * 1
  for (std::int64_t a = 1; a <= limit_; ++a) {
    std::int64_t da = (k == 3) ? d_[static_cast<std::size_t>(a)]
                               : dk_[3][static_cast<std::size_t>(a)];
    for (std::int64_t m = a; m <= limit_; m += a)
      out[static_cast<std::size_t>(m)] += da;
  }
  dk_[static_cast<std::size_t>(k)] = std::move(out);
}

std::int64_t ArithmeticTable::dk(int k, std::int64_t n) const {
  check(n);
  if (k < 1)
    throw domain_error("dk: k must be >= 1");
  if (k == 1)
    return 1;
  if (k == 2)
    return d_[static_cast<std::size_t>(n)];
  if (k <= 4) {
    ensure_dk(k);
    return dk_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
  }
  // general k: recurse on the factorization, d_k multiplicative with
  // d_k(p^e) = C(e+k-1, k-1)
  std::int64_t m = n;
  std::int64_t result = 1;
  while (m > 1) {
    std::int64_t p = spf_[m];
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    // binomial C(e+k-1, k-1)
    std::int64_t b = 1;
    for (int i = 1; i <= e; ++i)
      b = b * (k - 1 + i) / i;
    result *= b;
  }
  return result;
}

void ArithmeticTable::export_csv(std::ostream& os, std::int64_t up_to) const {
  check(up_to);
  os << "n,mu,omega,d,d3,d4\n";
  for (std::int64_t n = 1; n <= up_to; ++n)
    os << n << ',' << mu(n) << ',' << omega(n) << ',' << d(n) << ','
       << dk(3, n) << ',' << dk(4, n) << '\n';
}

SeriesId SeriesId::dk(int k) {
  if (k < 1)
    throw domain_error("SeriesId::dk requires k >= 1");
  return {SeriesTag::Dk, k};
}

std::string SeriesId::name() const {
  switch (tag) {
  case SeriesTag::One:
    return "one";
  case SeriesTag::Mu:
    return "mu";
  case SeriesTag::Dk:
    return "d" + std::to_string(k);
  case SeriesTag::AbsMu:
    return "abs-mu";
  case SeriesTag::TwoOmega:
    return "two-omega";
  case SeriesTag::DSquareArg:
    return "d-of-square";
  case SeriesTag::DSquared:
    return "d-squared";
  }
  return "?";
}

double coeff(const ArithmeticTable& table, SeriesId id, std::int64_t n) {
  switch (id.tag) {
  case SeriesTag::One:
    return 1.0;
  case SeriesTag::Mu:
    return table.mu(n);
  case SeriesTag::Dk:
    return static_cast<double>(table.dk(id.k, n));
  case SeriesTag::AbsMu:
    return std::abs(table.mu(n));
  case SeriesTag::TwoOmega:
    return std::ldexp(1.0, table.omega(n));
  case SeriesTag::DSquareArg:
    return static_cast<double>(table.d_of_square(n));
  case SeriesTag::DSquared: {
    double d = static_cast<double>(table.d(n));
    return d * d;
  }
  }
  return 0.0;
}

double divisor_envelope_constant(double inv_eps) {
  // d(n) <= prod_p max_e (e+1) p^{-e/inv_eps} * n^{1/inv_eps}; the factor for
  // prime p exceeds 1 only when 2 > p^{1/inv_eps}, i.e. p < 2^{inv_eps}.
  double C = 1.0;
  double p_cut = std::pow(2.0, inv_eps);
  // walk primes by trial division; p_cut is small (<= 4096 for inv_eps=12)
  for (std::int64_t p = 2; static_cast<double>(p) < p_cut; ++p) {
    bool prime = p >= 2;
    for (std::int64_t q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (!prime)
      continue;
    double best = 1.0;
    double pe = 1.0;
    for (int e = 1; e <= 64; ++e) {
      pe *= static_cast<double>(p);
      best = std::max(best, (e + 1) / std::pow(pe, 1.0 / inv_eps));
    }
    C *= best;
  }
  return C;
}

namespace {

// divisor-power part of the stream envelope: |phi(n)| <= d(n)^j * extra
int divisor_power(SeriesId id) {
  switch (id.tag) {
  case SeriesTag::One:
  case SeriesTag::Mu:
  case SeriesTag::AbsMu:
    return 0;
  case SeriesTag::Dk:
    return id.k - 1; // d_k(n) <= d(n)^{k-1}
  case SeriesTag::TwoOmega:
    return 1; // 2^omega <= d
  case SeriesTag::DSquareArg:
  case SeriesTag::DSquared:
    return 2; // d(n^2) <= d(n)^2
  }
  return 0;
}

} // namespace

Envelope phi_envelope(SeriesId id, double sigma) {
  int j = divisor_power(id);
  if (j == 0)
    return {1.0, 0.0};
  Envelope best{0.0, 0.0};
  double best_margin = -1.0;
  for (double inv_eps : {3.0, 6.0, 12.0}) {
    double e = j / inv_eps;
    double margin = sigma - e - 1.0; // tail converges when > 0
    double C = std::pow(divisor_envelope_constant(inv_eps), j);
    if (best_margin < 0.0 || (margin > 0.0 && best_margin <= 0.0) ||
        (margin > 0.0 && best_margin > 0.0 && C < best.C)) {
      // prefer any convergent envelope; among convergent ones, smaller C
      best = {C, e};
      best_margin = margin;
    }
  }
  return best;
}

PartialSum dirichlet_partial(const ArithmeticTable& table, SeriesId id, cplx s,
                             std::int64_t N) {
  if (!(s.real() > 1.0))
    throw domain_error("dirichlet_partial: requires Re s > 1");
  if (N > table.limit())
    throw domain_error("dirichlet_partial: N exceeds table limit");
  cplx sum = 0.0;
  for (std::int64_t n = 1; n <= N; ++n)
    sum += coeff(table, id, n) *
           std::exp(-s * std::log(static_cast<double>(n)));
  Envelope env = phi_envelope(id, s.real());
  double gap = s.real() - env.e - 1.0;
  double tail;
  if (gap > 0.0)
    tail = env.C * std::pow(static_cast<double>(N), -gap) / gap;
  else
    tail = std::numeric_limits<double>::infinity();
  return {sum, tail};
}

cplx closed_form(SeriesId id, cplx s) {
  using specfun::zeta;
  if (std::abs(s - cplx(1.0, 0.0)) <= 1e-10)
    throw domain_error("closed_form: zeta pole at s = 1");
  auto quotient = [&](int k) {
    cplx z2 = zeta(2.0 * s);
    if (std::abs(z2) < 1e-12)
      throw domain_error("closed_form: |zeta(2s)| too small for division");
    cplx z = zeta(s);
    cplx num = 1.0;
    for (int i = 0; i < k; ++i)
      num *= z;
    return num / z2;
  };
  switch (id.tag) {
  case SeriesTag::One:
    return zeta(s);
  case SeriesTag::Mu:
    return 1.0 / zeta(s);
  case SeriesTag::Dk: {
    cplx z = zeta(s);
    cplx v = 1.0;
    for (int i = 0; i < id.k; ++i)
      v *= z;
    return v;
  }
  case SeriesTag::AbsMu:
    return quotient(1);
  case SeriesTag::TwoOmega:
    return quotient(2);
  case SeriesTag::DSquareArg:
    return quotient(3);
  case SeriesTag::DSquared:
    return quotient(4);
  }
  throw domain_error("closed_form: unknown series");
}

} // namespace muntz::arith
