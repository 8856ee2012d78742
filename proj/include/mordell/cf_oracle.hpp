#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/bigint.hpp"

// Independent continued-fraction route to fundamental units. Nothing here
// shares code with the certificate verifier; agreement between the two is the
// point of the cross-checks in the test suite.

namespace mordell {

struct CfExpansion {
  Int d;
  Int a0;                   // floor(sqrt(d))
  std::vector<Int> period;  // partial quotients of one full period of sqrt(d)
};

// sqrt(d) = [a0; period repeated]. The surd state (P, Q) starts at
// (a0, d - a0^2), which is also the state the cycle returns to.
inline CfExpansion cf_expand(const Int& d) {
  if (d < 2) throw std::invalid_argument("cf_expand: d must be >= 2");
  Int a0 = isqrt(d);
  if (a0 * a0 == d)
    throw std::domain_error("cf_expand: " + to_decimal(d) + " is a perfect square");
  CfExpansion out;
  out.d = d;
  out.a0 = a0;
  Int P = a0, Q = d - a0 * a0;
  const Int firstP = P, firstQ = Q;
  while (true) {
    Int an = (P + a0) / Q;  // P, Q > 0 throughout the cycle
    out.period.push_back(an);
    P = an * Q - P;
    Q = (d - P * P) / Q;
    if (P == firstP && Q == firstQ) return out;
  }
}

// One convergent step of sqrt(d): steps[i] holds a_i, the convergent h_i/k_i,
// and the surd state (P_{i+1}, Q_{i+1}) after the step, so that
// h_i^2 - d*k_i^2 = (-1)^{i+1} * Q_{i+1} is directly checkable.
struct SurdStep {
  Int P, Q;  // state after the step
  Int a;     // partial quotient consumed
  Int h, k;  // convergent numerator / denominator
};

inline std::vector<SurdStep> cf_steps(const Int& d, std::size_t count) {
  if (d < 2) throw std::invalid_argument("cf_steps: d must be >= 2");
  Int a0 = isqrt(d);
  if (a0 * a0 == d)
    throw std::domain_error("cf_steps: " + to_decimal(d) + " is a perfect square");
  std::vector<SurdStep> steps;
  if (count == 0) return steps;
  Int hm1 = 1, h = a0, km1 = 0, k = 1;
  Int P = a0, Q = d - a0 * a0;
  steps.push_back({P, Q, a0, h, k});
  while (steps.size() < count) {
    Int an = (P + a0) / Q;
    Int hn = an * h + hm1;
    Int kn = an * k + km1;
    hm1 = h;
    h = hn;
    km1 = k;
    k = kn;
    P = an * Q - P;
    Q = (d - P * P) / Q;
    steps.push_back({P, Q, an, h, k});
  }
  return steps;
}

enum class OmegaForm { SQRT_D, HALF_ONE_PLUS_SQRT_D };

// eps = x + y*omega where omega is sqrt(d) or (1+sqrt(d))/2 by d mod 4
struct FundamentalUnit {
  Int d;
  Int x, y;
  int norm_sign = 0;  // +1 or -1
  OmegaForm form = OmegaForm::SQRT_D;
  std::uint64_t period_length = 0;
};

// Continued fraction of omega itself; the unit is the convergent one short of
// the period closing, eps = h_{l-1} + ... in the usual way. Self-checks that
// the norm is +-1 and matches the period parity before returning.
inline FundamentalUnit fundamental_unit(const Int& d) {
  if (d < 2) throw std::invalid_argument("fundamental_unit: d must be >= 2");
  if (d >= 1000000000)
    throw std::domain_error("fundamental_unit: d = " + to_decimal(d) +
                            " is out of range (must be < 10^9)");
  for (Int i = 2; i * i <= d; ++i)
    if (d % (i * i) == 0)
      throw std::domain_error("fundamental_unit: d = " + to_decimal(d) +
                              " has square factor " + to_decimal(i));

  Int a0 = isqrt(d);
  const bool half_form = (d % 4 == 1);
  Int Pc = half_form ? 1 : 0;
  Int Qc = half_form ? 2 : 1;
  Int a = (Pc + a0) / Qc;
  Int hm1 = 1, h = a, km1 = 0, k = 1;
  Int Pv = a * Qc - Pc;
  Int Qv = (d - Pv * Pv) / Qc;
  const Int firstP = Pv, firstQ = Qv;
  std::uint64_t ell = 0;
  Int xh = h, xk = k;  // h_{l-1}, k_{l-1} trackers
  while (true) {
    ++ell;
    Int an = (Pv + a0) / Qv;
    Int hn = an * h + hm1;
    Int kn = an * k + km1;
    hm1 = h;
    h = hn;
    km1 = k;
    k = kn;
    Int Pn = an * Qv - Pv;
    Int Qn = (d - Pn * Pn) / Qv;
    Pv = Pn;
    Qv = Qn;
    if (Pv == firstP && Qv == firstQ) break;
    xh = h;
    xk = k;
  }

  FundamentalUnit u;
  u.d = d;
  u.period_length = ell;
  Int nrm;
  if (half_form) {
    u.x = xh - xk;
    u.y = xk;
    u.form = OmegaForm::HALF_ONE_PLUS_SQRT_D;
    nrm = u.x * u.x + u.x * u.y - u.y * u.y * ((d - 1) / 4);
  } else {
    u.x = xh;
    u.y = xk;
    u.form = OmegaForm::SQRT_D;
    nrm = u.x * u.x - d * u.y * u.y;
  }
  if (nrm != 1 && nrm != -1)
    throw std::logic_error("fundamental_unit: self-check failed for d = " + to_decimal(d) +
                           ", norm " + to_decimal(nrm));
  u.norm_sign = (nrm == 1) ? 1 : -1;
  if (((ell % 2 == 0) ? 1 : -1) != u.norm_sign)
    throw std::logic_error("fundamental_unit: period parity does not match norm for d = " +
                           to_decimal(d));
  return u;
}

inline bool divides_y(const FundamentalUnit& u) { return u.y % u.d == 0; }

struct ScanHit {
  std::uint64_t d = 0;
  bool is_prime = false;
  int mod4 = 0;
};

namespace cf_detail {

// Same omega recurrence with the convergent denominator reduced mod d. Only
// divisibility of y is wanted, so the full-size convergents never appear.
// All intermediates fit in int64 for d < 10^7: partial quotients are at most
// 2*sqrt(d), so an*k + km1 < 2*sqrt(d)*d + d < 2^63.
inline bool unit_y_divisible(std::uint64_t d64) {
  const std::int64_t d = static_cast<std::int64_t>(d64);
  std::int64_t a0 = static_cast<std::int64_t>(isqrt(Int(d)).convert_to<std::int64_t>());
  std::int64_t Pc = (d % 4 == 1) ? 1 : 0;
  std::int64_t Qc = (d % 4 == 1) ? 2 : 1;
  std::int64_t a = (Pc + a0) / Qc;
  std::int64_t km1 = 0, k = 1;
  std::int64_t Pv = a * Qc - Pc;
  std::int64_t Qv = (d - Pv * Pv) / Qc;
  const std::int64_t firstP = Pv, firstQ = Qv;
  std::int64_t xk = k;
  while (true) {
    std::int64_t an = (Pv + a0) / Qv;
    std::int64_t kn = (an * k + km1) % d;
    km1 = k;
    k = kn;
    std::int64_t Pn = an * Qv - Pv;
    std::int64_t Qn = (d - Pn * Pn) / Qv;
    Pv = Pn;
    Qv = Qn;
    if (Pv == firstP && Qv == firstQ) break;
    xk = k;
  }
  return xk % d == 0;
}

inline bool trial_prime_u64(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  if (n < 2) return false;
  for (std::uint64_t p : primes) {
    if (p * p > n) break;
    if (n % p == 0) return n == p;
  }
  return true;
}

}  // namespace cf_detail

// Every squarefree d in [lo, hi] whose fundamental unit has d | y. Bounds are
// inclusive; results ascend regardless of worker count.
inline std::vector<ScanHit> scan(std::uint64_t lo, std::uint64_t hi, unsigned workers = 0) {
  if (hi >= 10000000)
    throw std::domain_error("scan: upper bound " + std::to_string(hi) +
                            " is out of range (must be < 10^7)");
  if (lo < 2) lo = 2;
  if (hi < lo) return {};

  std::uint64_t root = isqrt(Int(hi)).convert_to<std::uint64_t>();
  std::vector<std::uint64_t> small_primes = primes_up_to(root < 2 ? 2 : root);

  // squarefree sieve over the window: strike multiples of p^2
  std::vector<char> sf(hi - lo + 1, 1);
  for (std::uint64_t p : small_primes) {
    std::uint64_t sq = p * p;
    std::uint64_t start = ((lo + sq - 1) / sq) * sq;
    for (std::uint64_t m = start; m <= hi; m += sq) sf[m - lo] = 0;
  }

  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }
  std::uint64_t span = hi - lo + 1;
  if (workers > span) workers = static_cast<unsigned>(span);

  std::vector<std::vector<ScanHit>> parts(workers);
  auto run_chunk = [&](unsigned w, std::uint64_t from, std::uint64_t to) {
    for (std::uint64_t d = from; d <= to; ++d) {
      if (!sf[d - lo]) continue;
      if (!cf_detail::unit_y_divisible(d)) continue;
      parts[w].push_back(
          {d, cf_detail::trial_prime_u64(d, small_primes), static_cast<int>(d % 4)});
    }
  };

  if (workers == 1) {
    run_chunk(0, lo, hi);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = span / workers, extra = span % workers, from = lo;
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t len = chunk + (w < extra ? 1 : 0);
      std::uint64_t to = from + len - 1;
      pool.emplace_back(run_chunk, w, from, to);
      from = to + 1;
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<ScanHit> out;
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace mordell
