#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "muntz/errors.hpp"

namespace muntz::arith {

using cplx = std::complex<double>;

/// Sieve-built table of the arithmetic functions used by the Dirichlet
/// series: smallest prime factor, Moebius mu, distinct-prime count omega,
/// divisor count d. Immutable after construction; reads are thread-safe.
class ArithmeticTable {
public:
  /// Builds the table for all n <= limit. O(N log log N).
  /// Throws domain_error if limit is outside [1, 1e8].
  static ArithmeticTable build(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  std::int32_t spf(std::int64_t n) const { return spf_[check(n)]; }
  int mu(std::int64_t n) const { return mu_[check(n)]; }
  int omega(std::int64_t n) const { return omega_[check(n)]; }
  std::int64_t d(std::int64_t n) const { return d_[check(n)]; }

  /// d(n^2) = prod (2 e_i + 1), from the factorization of n (never from a
  /// sieve up to n^2).
  std::int64_t d_of_square(std::int64_t n) const;

  /// d_k(n): ordered k-factorization count, by repeated Dirichlet
  /// convolution. Results for k <= 4 are cached on first use per table.
  std::int64_t dk(int k, std::int64_t n) const;

  /// Writes columns n, mu, omega, d, d3, d4 as CSV.
  void export_csv(std::ostream& os, std::int64_t up_to) const;

private:
  explicit ArithmeticTable(std::int64_t limit);
  std::size_t check(std::int64_t n) const {
    if (n < 1 || n > limit_)
      throw domain_error("ArithmeticTable: index out of range");
    return static_cast<std::size_t>(n);
  }
  void ensure_dk(int k) const;

  std::int64_t limit_;
  std::vector<std::int32_t> spf_;
  std::vector<std::int8_t> mu_;
  std::vector<std::int8_t> omega_;
  std::vector<std::int32_t> d_;
  mutable std::vector<std::vector<std::int64_t>> dk_; // dk_[k] for k=3,4 lazily
};

/// The coefficient streams of the six Dirichlet series.
enum class SeriesTag {
  One,       // phi(n) = 1,        zeta(s)
  Mu,        // mu(n),             1/zeta(s)
  Dk,        // d_k(n),            zeta^k(s)
  AbsMu,     // |mu(n)|,           zeta(s)/zeta(2s)
  TwoOmega,  // 2^omega(n),        zeta^2(s)/zeta(2s)
  DSquareArg,// d(n^2),            zeta^3(s)/zeta(2s)
  DSquared,  // d(n)^2,            zeta^4(s)/zeta(2s)
};

struct SeriesId {
  SeriesTag tag;
  int k = 1; // only meaningful for Dk

  static SeriesId one() { return {SeriesTag::One, 1}; }
  static SeriesId mu() { return {SeriesTag::Mu, 1}; }
  static SeriesId dk(int k);
  static SeriesId abs_mu() { return {SeriesTag::AbsMu, 1}; }
  static SeriesId two_omega() { return {SeriesTag::TwoOmega, 1}; }
  static SeriesId d_square_arg() { return {SeriesTag::DSquareArg, 1}; }
  static SeriesId d_squared() { return {SeriesTag::DSquared, 1}; }

  std::string name() const;
};

/// phi(n) for the selected stream.
double coeff(const ArithmeticTable& table, SeriesId id, std::int64_t n);

/// Explicit envelope |phi(n)| <= C * n^e, valid for all n >= 1 (not just the
/// sieved range). Divisor-power envelopes come from the per-prime bound
/// d(n) <= C(eps) n^eps with C(eps) = prod_p max_e (e+1) p^{-e*eps}.
struct Envelope {
  double C;
  double e;
};

/// Envelope for the stream, choosing the divisor exponent eps from
/// {1/3, 1/6, 1/12} as the tightest one that still makes the tail converge
/// at the given real part sigma (largest exponent gap wins).
Envelope phi_envelope(SeriesId id, double sigma);

/// C(eps) with eps = 1/inv_eps: explicit constant with d(n) <= C n^{eps}.
double divisor_envelope_constant(double inv_eps);

struct PartialSum {
  cplx value;
  double tail_bound;
};

/// Partial sum of the Dirichlet series with a rigorous tail bound.
/// Throws domain_error if Re s <= 1 (divergence guard) or N > table limit.
PartialSum dirichlet_partial(const ArithmeticTable& table, SeriesId id, cplx s,
                             std::int64_t N);

/// The zeta-expression closed form of the series (built on specfun::zeta).
/// Throws domain_error at s = 1 and when |zeta(2s)| < 1e-12 for the
/// quotient streams.
cplx closed_form(SeriesId id, cplx s);

} // namespace muntz::arith
