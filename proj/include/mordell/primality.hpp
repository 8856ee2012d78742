#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/bigint.hpp"
#include "mordell/cost.hpp"
#include "mordell/failure.hpp"

namespace mordell {

// Explicit Bezout certificate that gcd(residue - 1, c) = 1, where residue is
// the base^((c-1)/p) cofactor residue: multiplier*(residue-1) = quotient*c + sign.
struct CoprimeWitness {
  Int p;
  Int multiplier;
  Int quotient;
  int sign = 1;  // +1 or -1

  bool operator==(const CoprimeWitness&) const = default;
};

struct PocklingtonWitness {
  Int c;                                        // the integer to certify prime
  std::vector<std::pair<Int, Int>> factored_part;  // (prime, multiplicity); product is a
  Int base;
  std::vector<CoprimeWitness> coprime_witnesses;   // optional, any subset of primes

  bool operator==(const PocklingtonWitness&) const = default;
};

struct PocklingtonReport {
  bool pass = false;
  std::vector<Failure> failures;
  Int factored_part_value;                  // a
  std::vector<TrialDivision> factor_checks;  // parallel to factored_part
  PowMod fermat;                            // base^(c-1) mod c
  std::vector<Int> cofactor_exponents;      // (c-1)/p per factored prime
  std::vector<PowMod> cofactor_ladders;     // parallel to factored_part
  CostTally costs;                          // ladders + witness product identities
};

namespace detail {
inline void pock_fail(PocklingtonReport& rep, FailCode code, std::string where,
                      std::string detail) {
  rep.failures.push_back({code, std::move(where), std::move(detail)});
}
}  // namespace detail

// Checks the hypotheses: every factored-part prime is prime by trial division,
// a^2 > c, a | c-1, base^(c-1) = 1 mod c, and gcd(base^((c-1)/p) - 1, c) = 1
// for each p (via the supplied Bezout witness when present, ext_gcd otherwise).
// Passing certifies c prime. Failure paths are relative to the witness object.
inline PocklingtonReport pocklington_verify(const PocklingtonWitness& w) {
  PocklingtonReport rep;

  // structural rejection before any mathematics
  bool malformed = false;
  auto bad = [&](std::string where, std::string detail) {
    detail::pock_fail(rep, FailCode::MALFORMED, std::move(where), std::move(detail));
    malformed = true;
  };
  if (w.c < 3) bad("/c", "c must be >= 3");
  if (w.factored_part.empty()) bad("/factored_part", "factored part is empty (a = 1)");
  {
    std::set<Int> seen;
    for (std::size_t i = 0; i < w.factored_part.size(); ++i) {
      const auto& [p, k] = w.factored_part[i];
      std::string where = "/factored_part/" + std::to_string(i);
      if (p < 2) bad(where, "factored-part prime must be >= 2");
      if (k < 1) bad(where, "multiplicity must be >= 1");
      if (!seen.insert(p).second) bad(where, "duplicate factored-part prime");
    }
  }
  for (std::size_t i = 0; i < w.coprime_witnesses.size(); ++i) {
    const auto& cw = w.coprime_witnesses[i];
    std::string where = "/coprime_witnesses/" + std::to_string(i);
    if (cw.sign != 1 && cw.sign != -1) bad(where + "/sign", "sign must be 1 or -1");
    bool known = std::any_of(w.factored_part.begin(), w.factored_part.end(),
                             [&](const auto& pk) { return pk.first == cw.p; });
    if (!known) bad(where + "/p", "witness prime is not in the factored part");
    for (std::size_t t = 0; t < i; ++t)
      if (w.coprime_witnesses[t].p == cw.p) bad(where + "/p", "duplicate witness prime");
  }
  if (malformed) return rep;

  Int a = 1;
  for (const auto& [p, k] : w.factored_part)
    for (Int i = 0; i < k; ++i) a *= p;
  rep.factored_part_value = a;

  // (i) each factored-part prime is prime
  for (std::size_t i = 0; i < w.factored_part.size(); ++i) {
    const Int& p = w.factored_part[i].first;
    std::string where = "/factored_part/" + std::to_string(i);
    try {
      TrialDivision td = trial_division_prime(p);
      if (!td.is_prime)
        detail::pock_fail(rep, FailCode::NOT_PRIME_FACTOR, where,
                          to_decimal(p) + " is composite");
      rep.factor_checks.push_back(std::move(td));
    } catch (const std::exception& ex) {
      detail::pock_fail(rep, FailCode::NOT_PRIME_FACTOR, where, ex.what());
      rep.factor_checks.push_back({});
    }
  }

  // (ii) a^2 > c
  if (a * a <= w.c)
    detail::pock_fail(rep, FailCode::A_SQUARED_TOO_SMALL, "/factored_part",
                      "a = " + to_decimal(a) + " has a^2 <= c");

  // (iii) a | c-1
  Int cm1 = w.c - 1;
  if (cm1 % a != 0)
    detail::pock_fail(rep, FailCode::A_NOT_DIVISOR, "/factored_part",
                      "a = " + to_decimal(a) + " does not divide c-1");

  // (iv) Fermat condition
  rep.fermat = pow_mod_traced(w.base, cm1, w.c);
  rep.costs += rep.fermat.costs;
  if (rep.fermat.residue != 1)
    detail::pock_fail(rep, FailCode::FERMAT_FAIL, "/base",
                      "base^(c-1) = " + to_decimal(rep.fermat.residue) + " mod c, expected 1");

  // (v) per-prime coprimality, by witness identity or ext_gcd
  for (std::size_t i = 0; i < w.factored_part.size(); ++i) {
    const Int& p = w.factored_part[i].first;
    if (cm1 % p != 0) {
      // already diagnosed by (iii); the cofactor exponent does not exist
      rep.cofactor_exponents.push_back(0);
      rep.cofactor_ladders.push_back({});
      continue;
    }
    Int e = cm1 / p;
    PowMod pm = pow_mod_traced(w.base, e, w.c);
    rep.costs += pm.costs;
    Int rm1 = pm.residue - 1;
    const CoprimeWitness* cw = nullptr;
    for (const auto& x : w.coprime_witnesses)
      if (x.p == p) cw = &x;
    if (cw) {
      rep.costs.add(pm.residue, -1);
      rep.costs.mul(cw->multiplier, rm1);
      rep.costs.mul(cw->quotient, w.c);
      rep.costs.add(cw->quotient * w.c, cw->sign);
      if (cw->multiplier * rm1 != cw->quotient * w.c + cw->sign)
        detail::pock_fail(rep, FailCode::GCD_FAIL,
                          "/coprime_witnesses/" + std::to_string(cw - w.coprime_witnesses.data()),
                          "Bezout witness identity fails for p = " + to_decimal(p));
    } else {
      bool coprime = rm1 != 0 && ext_gcd(rm1, w.c).g == 1;
      if (!coprime)
        detail::pock_fail(rep, FailCode::GCD_FAIL, "/factored_part/" + std::to_string(i),
                          "gcd(base^((c-1)/p) - 1, c) != 1 for p = " + to_decimal(p));
    }
    rep.cofactor_exponents.push_back(std::move(e));
    rep.cofactor_ladders.push_back(std::move(pm));
  }

  rep.pass = rep.failures.empty();
  return rep;
}

// d mod 4; the main verification path requires the value 3
inline int congruence_class_check(const Int& d) {
  if (d < 2) throw std::invalid_argument("congruence_class_check: d must be >= 2");
  return static_cast<int>(mod_floor(d, 4));
}

}  // namespace mordell
