#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/bigint.hpp"
#include "mordell/certificate.hpp"
#include "mordell/cost.hpp"
#include "mordell/failure.hpp"
#include "mordell/ideal.hpp"
#include "mordell/primality.hpp"
#include "mordell/quadring.hpp"

namespace mordell {

enum class Verdict { D_DIVIDES_Y, FAILED };

struct ClaimResult {
  bool pass = true;
  std::vector<Failure> failures;
};

struct BoundsReport {
  bool pass = false;
  Int relation_bit_sum;     // sum b_i * bitlen(|a_i| + isqrt(d) + 1)
  Int denominator_bit_sum;  // sum d_j * bitlen(c_j)
  std::vector<Failure> failures;
};

// Everything the verification produced, pass or fail. Every pass leaf is
// backed by an exact integer identity reproducible from the traces, so the
// report doubles as a re-checkable transcript.
struct VerificationReport {
  Int d;
  int congruence_class = 0;
  ClaimResult congruence;

  PocklingtonReport claim1;
  ClaimResult claim2;
  ValuationReport valuations;
  std::size_t split_prime_count = 0;
  std::size_t relation_count = 0;

  ClaimResult claim3;
  LinearPass linear_pass;
  QuadResidue full_product;

  ClaimResult claim4;
  QuadResidue claim4_residue;
  bool claim4_nonrational = false;

  BoundsReport bounds;

  CostTally costs;  // ladders, witness products, linear pass, norms, valuations
  Verdict verdict = Verdict::FAILED;
  Failure first_failure;  // meaningful iff verdict == FAILED

  bool pass() const { return verdict == Verdict::D_DIVIDES_Y; }
};

// The two bit-length sums certifying |eta|, |eta^-1| < 2^d, hence the unit
// index argument applies with |k| < d. Exact integer arithmetic throughout.
inline BoundsReport bounds_check(const Certificate& cert) {
  BoundsReport rep;
  Int root = isqrt(cert.d);
  Int zsum = 0;
  for (const Relation& rel : cert.relations)
    zsum += rel.b * bit_length(abs(rel.a) + root + 1);
  Int nsum = 0;
  for (std::size_t j = 0; j < cert.split_primes.size(); ++j)
    nsum += cert.denominator_exponents[j] * bit_length(cert.split_primes[j].c);
  rep.relation_bit_sum = zsum;
  rep.denominator_bit_sum = nsum;
  if (zsum >= cert.d)
    rep.failures.push_back({FailCode::BOUNDS_FAIL, "/relations",
                            "relation bit sum " + to_decimal(zsum) + " is not < d"});
  if (nsum >= cert.d)
    rep.failures.push_back({FailCode::BOUNDS_FAIL, "/denominator_exponents",
                            "denominator bit sum " + to_decimal(nsum) + " is not < d"});
  rep.pass = rep.failures.empty();
  return rep;
}

namespace verify_detail {

inline void take(ClaimResult& claim, std::vector<Failure>& all, Check check, std::string where) {
  if (check.pass) return;
  check.failure.where = std::move(where);
  claim.pass = false;
  claim.failures.push_back(check.failure);
  all.push_back(std::move(check.failure));
}

}  // namespace verify_detail

// Runs the whole chain on a parsed certificate. Every step executes even
// after a failure (diagnostic completeness); the verdict reflects the first
// failure in the fixed order: congruence, claim 1, claim 2 (split rows,
// relations, valuations), claim 3, claim 4, bounds.
inline VerificationReport verify(const Certificate& cert) {
  using verify_detail::take;
  VerificationReport rep;
  std::vector<Failure> all;
  rep.d = cert.d;
  rep.split_prime_count = cert.split_primes.size();
  rep.relation_count = cert.relations.size();

  // the counterexample path lives in d = 3 mod 4, where O_K = Z[sqrt(d)]
  rep.congruence_class = congruence_class_check(cert.d);
  if (rep.congruence_class != 3) {
    rep.congruence.pass = false;
    Failure f{FailCode::MOD4_FAIL, "/d",
              "d = " + std::to_string(rep.congruence_class) + " mod 4, expected 3"};
    rep.congruence.failures.push_back(f);
    all.push_back(std::move(f));
  }

  // claim 1: d is prime
  ClaimResult claim1_result;
  if (cert.primality.c != cert.d) {
    Failure f{FailCode::MALFORMED, "/primality/c", "primality certificate does not target d"};
    claim1_result.pass = false;
    claim1_result.failures.push_back(f);
    all.push_back(std::move(f));
  }
  rep.claim1 = pocklington_verify(cert.primality);
  rep.costs += rep.claim1.costs;
  for (Failure f : rep.claim1.failures) {
    f.where = "/primality" + f.where;
    claim1_result.pass = false;
    claim1_result.failures.push_back(f);
    all.push_back(std::move(f));
  }
  rep.claim1.pass = rep.claim1.pass && claim1_result.pass;
  rep.claim1.failures = std::move(claim1_result.failures);

  // claim 2: eta is a unit of O_K
  for (std::size_t i = 0; i < cert.split_primes.size(); ++i)
    take(rep.claim2, all, split_prime_check(cert.split_primes[i], cert.d),
         "/split_primes/" + std::to_string(i));
  for (std::size_t i = 0; i < cert.split_primes.size(); ++i)
    for (std::size_t t = 0; t < i; ++t)
      if (cert.split_primes[t].c == cert.split_primes[i].c) {
        take(rep.claim2, all,
             Check::fail(FailCode::DUPLICATE_PRIME,
                         "c = " + to_decimal(cert.split_primes[i].c) + " duplicates row " +
                             std::to_string(t + 1)),
             "/split_primes/" + std::to_string(i));
        break;
      }
  CostTally norm_costs;
  for (std::size_t i = 0; i < cert.relations.size(); ++i) {
    const Relation& rel = cert.relations[i];
    for (std::size_t t = 0; t < rel.factors.size(); ++t) {
      const FactorEntry& f = rel.factors[t];
      take(rep.claim2, all,
           membership_check(rel.a, cert.split_primes[f.j - 1], f.conj, f.mult, cert.d),
           "/relations/" + std::to_string(i) + "/factors/" + std::to_string(t));
    }
    take(rep.claim2, all, norm_product_check(rel, cert.split_primes, cert.d, &norm_costs),
         "/relations/" + std::to_string(i));
  }
  rep.costs += norm_costs;
  rep.valuations =
      aggregate_valuations(cert.relations, cert.split_primes, cert.denominator_exponents);
  rep.costs += rep.valuations.costs;
  for (const Failure& f : rep.valuations.failures) {
    rep.claim2.pass = false;
    rep.claim2.failures.push_back(f);
    all.push_back(f);
  }

  // claim 3: eta lies in the order O_d, i.e. the sqrt(d) coefficient of the
  // relation product vanishes mod d. Two independent routes must agree.
  std::vector<QuadInt> linear_input;
  std::vector<std::pair<Int, Int>> power_input;
  for (const Relation& rel : cert.relations) {
    linear_input.push_back({rel.a, rel.b});
    power_input.emplace_back(rel.a, rel.b);
  }
  rep.linear_pass = claim3_linear_pass(linear_input, cert.d);
  rep.costs += rep.linear_pass.costs;
  rep.full_product = claim3_full_product(power_input, cert.d);
  if (rep.linear_pass.final_value.v != 0)
    take(rep.claim3, all,
         Check::fail(FailCode::CLAIM3_NONVANISHING,
                     "linear pass sqrt(d) coefficient " +
                         to_decimal(rep.linear_pass.final_value.v) + " mod d"),
         "/relations");
  if (rep.full_product.v != 0)
    take(rep.claim3, all,
         Check::fail(FailCode::CLAIM3_NONVANISHING,
                     "full product sqrt(d) coefficient " + to_decimal(rep.full_product.v) +
                         " mod d"),
         "/relations");

  // claim 4: eta != 1, because z is visibly irrational modulo the small modulus
  NonrationalCheck nc =
      claim4_nonrational_check(power_input, cert.nonunit_modulus, cert.d);
  rep.claim4_residue = nc.residue;
  rep.claim4_nonrational = nc.nonrational;
  if (!nc.nonrational)
    take(rep.claim4, all,
         Check::fail(FailCode::CLAIM4_RATIONAL,
                     "relation product is rational mod " + to_decimal(cert.nonunit_modulus)),
         "/nonunit_modulus");

  // bit-length bounds for the unit index argument
  rep.bounds = bounds_check(cert);
  for (const Failure& f : rep.bounds.failures) all.push_back(f);

  rep.verdict = all.empty() ? Verdict::D_DIVIDES_Y : Verdict::FAILED;
  if (!all.empty()) rep.first_failure = all.front();
  return rep;
}

// rollup accessor; identical to report.costs by construction
inline CostTally cost_report(const VerificationReport& rep) { return rep.costs; }

// ---------------------------------------------------------------- rendering

namespace report_detail {

inline const char* mark(bool pass) { return pass ? "[pass]" : "[FAIL]"; }

inline std::string claim_name(const Failure& f, const VerificationReport& rep) {
  auto in = [&](const std::vector<Failure>& fs) {
    for (const Failure& x : fs)
      if (x == f) return true;
    return false;
  };
  if (in(rep.congruence.failures)) return "congruence";
  if (in(rep.claim1.failures)) return "claim 1";
  if (in(rep.claim2.failures)) return "claim 2";
  if (in(rep.claim3.failures)) return "claim 3";
  if (in(rep.claim4.failures)) return "claim 4";
  return "bounds";
}

inline void append_failures(std::string& out, const std::vector<Failure>& fs) {
  for (const Failure& f : fs)
    out += std::string("      ") + to_string(f.code) + " at " + f.where + ": " + f.detail + "\n";
}

inline std::string ladder_text(const std::string& name, const PowMod& pm) {
  std::string out = "    " + name + ": exponent " + pm.trace.reconstructed_binary + "_2\n";
  for (const LadderStep& st : pm.trace.steps) {
    // two-column bullet style: exponent-prefix identity, then residue identity
    out += "      * 2*" + to_decimal(st.prefix_prev) + (st.bit ? "+1" : "") + " = " +
           to_decimal(st.prefix) + ",  ";
    out += (st.bit ? "base*" : "") + std::string("prev^2 = ");
    if (st.quotient != 0)
      out += to_decimal(st.quotient) + "*m + " + to_decimal(st.residue) + "\n";
    else
      out += to_decimal(st.residue) + "\n";
  }
  return out;
}

}  // namespace report_detail

// Human-readable rendering. The cost summary line always prints; traces and
// the per-step bullet lists only under include_traces; include_cost_detail
// appends the per-phase breakdown.
inline std::string report_text(const VerificationReport& rep, bool include_traces = false,
                               bool include_cost_detail = false) {
  using namespace report_detail;
  std::string out;
  out += "certificate verification for d = " + to_decimal(rep.d) + "\n";
  out += std::string("  congruence: d mod 4 = ") + std::to_string(rep.congruence_class) + "  " +
         mark(rep.congruence.pass) + "\n";
  append_failures(out, rep.congruence.failures);

  out += "  claim 1 (d prime): factored part a = " + to_decimal(rep.claim1.factored_part_value);
  out += ", fermat residue " + to_decimal(rep.claim1.fermat.residue) + "  " +
         mark(rep.claim1.pass) + "\n";
  if (!rep.claim1.cofactor_ladders.empty()) {
    out += "    cofactor residues:";
    for (const PowMod& pm : rep.claim1.cofactor_ladders) out += " " + to_decimal(pm.residue);
    out += "\n";
  }
  append_failures(out, rep.claim1.failures);

  out += "  claim 2 (unit ideal): " + std::to_string(rep.split_prime_count) + " split primes, " +
         std::to_string(rep.relation_count) + " relations, " +
         std::to_string(rep.valuations.rows.size()) + " valuation equations  " +
         mark(rep.claim2.pass) + "\n";
  append_failures(out, rep.claim2.failures);

  out += "  claim 3 (inside the order): linear-pass sqrt(d) coefficient " +
         to_decimal(rep.linear_pass.final_value.v) + " mod d, cross-check " +
         to_decimal(rep.full_product.v) + "  " + mark(rep.claim3.pass) + "\n";
  append_failures(out, rep.claim3.failures);

  out += "  claim 4 (nonunit residue): product = (" + to_decimal(rep.claim4_residue.u) + ", " +
         to_decimal(rep.claim4_residue.v) + ") mod " + to_decimal(rep.claim4_residue.m) +
         (rep.claim4_nonrational ? ", nonrational" : ", rational") + "  " +
         mark(rep.claim4.pass) + "\n";
  append_failures(out, rep.claim4.failures);

  out += "  bounds: relation bit sum " + to_decimal(rep.bounds.relation_bit_sum) +
         ", denominator bit sum " + to_decimal(rep.bounds.denominator_bit_sum) + ", both < d  " +
         mark(rep.bounds.pass) + "\n";
  append_failures(out, rep.bounds.failures);

  out +=
      "  conclusion: eta = eps^k for some integer k with 0 < |k| < d; eta is a unit\n"
      "    of the order, so the unit index (O_K^x : O_d^x) divides both k and d (d prime),\n"
      "    forcing index 1; hence eps itself lies in the order and d | y.\n"
      "    assumption: eps >= 1 + sqrt(d) (standing fact for fundamental units, d >= 3).\n";

  out += "  cost tally: hard=" + std::to_string(rep.costs.hard) +
         " easy=" + std::to_string(rep.costs.easy) +
         " trivial=" + std::to_string(rep.costs.trivial) + "\n";
  if (include_cost_detail) {
    out += "    claim 1 ladders and witness products: hard=" +
           std::to_string(rep.claim1.costs.hard) + " easy=" + std::to_string(rep.claim1.costs.easy) +
           " trivial=" + std::to_string(rep.claim1.costs.trivial) + "\n";
    out += "    claim 3 linear pass: hard=" + std::to_string(rep.linear_pass.costs.hard) +
           " easy=" + std::to_string(rep.linear_pass.costs.easy) +
           " trivial=" + std::to_string(rep.linear_pass.costs.trivial) + "\n";
    out += "    valuation sums: hard=" + std::to_string(rep.valuations.costs.hard) +
           " easy=" + std::to_string(rep.valuations.costs.easy) +
           " trivial=" + std::to_string(rep.valuations.costs.trivial) + "\n";
  }

  if (include_traces) {
    out += "  traces:\n";
    out += ladder_text("fermat ladder", rep.claim1.fermat);
    for (std::size_t i = 0; i < rep.claim1.cofactor_ladders.size(); ++i)
      out += ladder_text("cofactor ladder " + std::to_string(i + 1),
                         rep.claim1.cofactor_ladders[i]);
    out += "    linear pass:\n";
    for (const LinearStep& st : rep.linear_pass.steps) {
      out += "      * step " + std::to_string(st.k) + ": u*a = " + to_decimal(st.u_quotient) +
             "*d + " + to_decimal(st.u_residue) + ",  u*b + v*a = " + to_decimal(st.v_quotient) +
             "*d + " + to_decimal(st.v_residue) + "\n";
    }
  }

  if (rep.pass()) {
    out += "VERDICT: d | y: VERIFIED\n";
  } else {
    out += "VERDICT: FAILED (" + claim_name(rep.first_failure, rep) + ": " +
           to_string(rep.first_failure.code) + " at " + rep.first_failure.where + ")\n";
  }
  return out;
}

// Machine-readable rendering: same content, stable key order, decimal-string
// integers, counts as numbers. Deterministic across runs and platforms.
inline std::string report_structured(const VerificationReport& rep, bool include_traces = false) {
  using json = nlohmann::ordered_json;
  auto failures_json = [](const std::vector<Failure>& fs) {
    json arr = json::array();
    for (const Failure& f : fs)
      arr.push_back({{"code", to_string(f.code)}, {"where", f.where}, {"detail", f.detail}});
    return arr;
  };

  json doc;
  doc["d"] = to_decimal(rep.d);
  doc["verdict"] = rep.pass() ? "D_DIVIDES_Y" : "FAILED";
  if (!rep.pass())
    doc["first_failure"] = {{"code", to_string(rep.first_failure.code)},
                            {"where", rep.first_failure.where},
                            {"detail", rep.first_failure.detail}};
  doc["congruence"] = {{"class", rep.congruence_class},
                       {"pass", rep.congruence.pass},
                       {"failures", failures_json(rep.congruence.failures)}};
  json claim1;
  claim1["pass"] = rep.claim1.pass;
  claim1["factored_part"] = to_decimal(rep.claim1.factored_part_value);
  claim1["fermat_residue"] = to_decimal(rep.claim1.fermat.residue);
  json cof = json::array();
  for (const PowMod& pm : rep.claim1.cofactor_ladders) cof.push_back(to_decimal(pm.residue));
  claim1["cofactor_residues"] = std::move(cof);
  claim1["failures"] = failures_json(rep.claim1.failures);
  doc["claim1"] = std::move(claim1);

  json claim2;
  claim2["pass"] = rep.claim2.pass;
  claim2["split_primes"] = rep.split_prime_count;
  claim2["relations"] = rep.relation_count;
  claim2["valuation_equations"] = rep.valuations.rows.size();
  claim2["failures"] = failures_json(rep.claim2.failures);
  doc["claim2"] = std::move(claim2);

  json claim3;
  claim3["pass"] = rep.claim3.pass;
  claim3["linear_final"] = {{"u", to_decimal(rep.linear_pass.final_value.u)},
                            {"v", to_decimal(rep.linear_pass.final_value.v)}};
  claim3["full_product"] = {{"u", to_decimal(rep.full_product.u)},
                            {"v", to_decimal(rep.full_product.v)}};
  claim3["failures"] = failures_json(rep.claim3.failures);
  doc["claim3"] = std::move(claim3);

  json claim4;
  claim4["pass"] = rep.claim4.pass;
  claim4["residue"] = {{"u", to_decimal(rep.claim4_residue.u)},
                       {"v", to_decimal(rep.claim4_residue.v)}};
  claim4["modulus"] = to_decimal(rep.claim4_residue.m);
  claim4["nonrational"] = rep.claim4_nonrational;
  claim4["failures"] = failures_json(rep.claim4.failures);
  doc["claim4"] = std::move(claim4);

  doc["bounds"] = {{"pass", rep.bounds.pass},
                   {"relation_bit_sum", to_decimal(rep.bounds.relation_bit_sum)},
                   {"denominator_bit_sum", to_decimal(rep.bounds.denominator_bit_sum)},
                   {"failures", failures_json(rep.bounds.failures)}};
  doc["costs"] = {{"hard", rep.costs.hard}, {"easy", rep.costs.easy},
                  {"trivial", rep.costs.trivial}};
  doc["assumptions"] = json::array(
      {"eps >= 1 + sqrt(d) for the fundamental unit of a real quadratic field, d >= 3"});
  doc["inference"] = json::array(
      {"claims 1-4 and the bit bounds give: eta is a unit of the order, eta = eps^k, 0 < |k| < d",
       "the unit index (O_K^x : O_d^x) divides k and divides d since d is prime and ramified",
       "index < d forces index = 1, so eps lies in the order, i.e. d | y"});

  if (include_traces) {
    json traces;
    auto ladder_json = [](const PowMod& pm) {
      json steps = json::array();
      for (const LadderStep& st : pm.trace.steps)
        steps.push_back({{"bit_index", st.bit_index},
                         {"bit", st.bit},
                         {"prefix_prev", to_decimal(st.prefix_prev)},
                         {"prefix", to_decimal(st.prefix)},
                         {"quotient", to_decimal(st.quotient)},
                         {"residue", to_decimal(st.residue)}});
      return json{{"binary", pm.trace.reconstructed_binary},
                  {"residue", to_decimal(pm.residue)},
                  {"steps", std::move(steps)}};
    };
    traces["fermat"] = ladder_json(rep.claim1.fermat);
    json cofs = json::array();
    for (const PowMod& pm : rep.claim1.cofactor_ladders) cofs.push_back(ladder_json(pm));
    traces["cofactors"] = std::move(cofs);
    json lin = json::array();
    for (const LinearStep& st : rep.linear_pass.steps)
      lin.push_back({{"k", st.k},
                     {"a", to_decimal(st.a)},
                     {"b", to_decimal(st.b)},
                     {"u_quotient", to_decimal(st.u_quotient)},
                     {"u_residue", to_decimal(st.u_residue)},
                     {"v_quotient", to_decimal(st.v_quotient)},
                     {"v_residue", to_decimal(st.v_residue)}});
    traces["linear_pass"] = std::move(lin);
    doc["traces"] = std::move(traces);
  }
  return doc.dump(2) + "\n";
}

}  // namespace mordell
