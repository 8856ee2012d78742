#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mordell/bigint.hpp"
#include "mordell/cost.hpp"

namespace mordell {

// ---------------------------------------------------------------- binary digits

// bits of n, most significant first; n >= 1
inline std::vector<int> binary_digits(const Int& n) {
  if (n < 1) throw std::invalid_argument("binary_digits: n must be >= 1");
  unsigned len = bit_length(n);
  std::vector<int> bits(len);
  for (unsigned i = 0; i < len; ++i)
    bits[i] = boost::multiprecision::bit_test(n, len - 1 - i) ? 1 : 0;
  return bits;
}

inline std::string binary_string(const Int& n) {
  std::string s;
  for (int b : binary_digits(n)) s += char('0' + b);
  return s;
}

// ---------------------------------------------------------------- traced pow-mod

// One square-and-multiply step. The running exponent prefix obeys
// prefix = 2*prefix_prev + bit, and the residue identity
// base^bit * (previous residue)^2 = quotient*modulus + residue holds exactly,
// with 0 <= residue < modulus. The first step starts from prefix 0, residue 1.
struct LadderStep {
  int bit_index = 0;  // power-of-two position of this bit (counts down to 0)
  int bit = 0;
  Int prefix_prev;
  Int prefix;
  Int quotient;
  Int residue;

  bool operator==(const LadderStep&) const = default;
};

struct LadderTrace {
  std::vector<LadderStep> steps;
  Int reconstructed_exponent;        // sum of bit << bit_index over steps
  std::string reconstructed_binary;  // same bits as a string

  bool operator==(const LadderTrace&) const = default;
};

struct PowMod {
  Int residue;
  LadderTrace trace;
  CostTally costs;
};

// base^exponent mod modulus by the left-to-right binary ladder, recording one
// step per exponent bit (the leading bit included). exponent >= 1, modulus >= 2.
inline PowMod pow_mod_traced(const Int& base, const Int& exponent, const Int& modulus) {
  if (exponent < 1) throw std::invalid_argument("pow_mod_traced: exponent must be >= 1");
  if (modulus < 2) throw std::invalid_argument("pow_mod_traced: modulus must be >= 2");

  PowMod out;
  Int b = mod_floor(base, modulus);
  std::vector<int> bits = binary_digits(exponent);
  Int prefix = 0, h = 1;
  out.trace.steps.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    int bit = bits[i];
    out.costs.mul(2, prefix);
    if (bit) out.costs.add(2 * prefix, 1);
    Int prefix_next = 2 * prefix + bit;

    out.costs.mul(h, h);
    Int x = h * h;
    if (bit) {
      out.costs.mul(b, x);
      x *= b;
    }
    auto [q, r] = divmod_floor(x, modulus);
    if (q != 0) {
      out.costs.mul(q, modulus);
      out.costs.add(q * modulus, r);
    }
    out.trace.steps.push_back(
        {static_cast<int>(bits.size() - 1 - i), bit, prefix, prefix_next, q, r});
    prefix = prefix_next;
    h = r;
    out.trace.reconstructed_binary += char('0' + bit);
  }
  out.trace.reconstructed_exponent = prefix;
  out.residue = h;
  return out;
}

// ---------------------------------------------------------------- extended gcd

struct ExtGcd {
  Int g, u, v;  // u*a + v*b == g == gcd(a, b) >= 1
};

// Self-verifying: the Bezout identity is re-checked exactly before returning.
inline ExtGcd ext_gcd(const Int& a, const Int& b) {
  if (a == 0 && b == 0) throw std::invalid_argument("ext_gcd: gcd(0, 0) undefined");
  Int old_r = a, r = b;
  Int old_u = 1, u = 0;
  Int old_v = 0, v = 1;
  while (r != 0) {
    Int q = old_r / r;  // truncated division keeps the invariants exact
    Int t;
    t = old_r - q * r; old_r = r; r = t;
    t = old_u - q * u; old_u = u; u = t;
    t = old_v - q * v; old_v = v; v = t;
  }
  if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
  if (old_u * a + old_v * b != old_r)
    throw std::logic_error("ext_gcd: Bezout identity self-check failed");
  return {old_r, old_u, old_v};
}

// ---------------------------------------------------------------- integer sqrt

// floor(sqrt(n)) by Newton iteration, with a final exact correction
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input");
  if (n < 2) return n;
  Int x = Int(1) << ((bit_length(n) + 1) / 2);  // x >= sqrt(n)
  while (true) {
    Int y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  return x;
}

// ---------------------------------------------------------------- trial division

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t k = i * i; k <= n; k += i) composite[k] = true;
  }
  return out;
}

struct TrialRow {
  Int divisor, quotient, remainder;  // n == quotient*divisor + remainder

  bool operator==(const TrialRow&) const = default;
};

struct TrialDivision {
  bool is_prime = false;
  std::vector<TrialRow> witnesses;
};

// Primality by trial division over all primes t with t^2 <= n, in ascending
// order, recording the division identity for every tested t. On a composite
// the list stops at the first t that divides n. Desk-scale only: n < 2^64.
inline TrialDivision trial_division_prime(const Int& n) {
  if (n < 2) throw std::invalid_argument("trial_division_prime: n must be >= 2");
  if (n >= (Int(1) << 64))
    throw std::domain_error("trial_division_prime: n >= 2^64, use a Pocklington certificate");
  TrialDivision out;
  Int root = isqrt(n);
  out.is_prime = true;
  for (std::uint64_t t : primes_up_to(root.convert_to<std::uint64_t>())) {
    auto [q, r] = divmod_floor(n, Int(t));
    out.witnesses.push_back({Int(t), q, r});
    if (r == 0) {
      out.is_prime = false;
      break;
    }
  }
  return out;
}

}  // namespace mordell
