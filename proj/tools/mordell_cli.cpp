// Command-line front end: certificate verification, the continued-fraction
// oracle, and desk-scale primality checking.
//
// Exit codes: 0 verified / true / clean run, 1 a well-formed check failed,
// 2 usage errors, unreadable input, or out-of-range requests.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mordell/mordell.hpp"

namespace {

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int run_verify(const std::string& path, bool trace, bool costs, const std::string& format) {
  std::string text;
  if (!read_file(path, text)) return fail_usage("cannot read certificate file: " + path);
  mordell::Certificate cert;
  try {
    cert = mordell::certificate_parse(text);
  } catch (const mordell::CertificateError& ex) {
    std::cerr << "certificate rejected: " << ex.what() << "\n";
    return 2;
  }
  mordell::VerificationReport rep = mordell::verify(cert);
  if (format == "structured")
    std::cout << mordell::report_structured(rep, trace);
  else
    std::cout << mordell::report_text(rep, trace, costs);
  return rep.pass() ? 0 : 1;
}

int run_oracle_unit(const std::string& d_str) {
  mordell::Int d;
  try {
    d = mordell::from_decimal(d_str);
  } catch (const std::invalid_argument&) {
    return fail_usage("d must be a decimal integer, got '" + d_str + "'");
  }
  mordell::FundamentalUnit u;
  try {
    u = mordell::fundamental_unit(d);
  } catch (const std::exception& ex) {
    return fail_usage(ex.what());
  }
  std::string omega = (u.form == mordell::OmegaForm::HALF_ONE_PLUS_SQRT_D)
                          ? "(1+√" + mordell::to_decimal(u.d) + ")/2"
                          : "√" + mordell::to_decimal(u.d);
  std::cout << "ε = " << mordell::to_decimal(u.x) << " + " << mordell::to_decimal(u.y)
            << "·" << omega << ", norm " << (u.norm_sign > 0 ? "+1" : "-1") << ", "
            << mordell::to_decimal(u.d) << " | y: " << (mordell::divides_y(u) ? "yes" : "no")
            << "\n";
  return 0;
}

int run_oracle_scan(std::uint64_t lo, std::uint64_t hi) {
  std::vector<mordell::ScanHit> hits;
  try {
    hits = mordell::scan(lo, hi);
  } catch (const std::domain_error& ex) {
    return fail_usage(ex.what());
  }
  for (const mordell::ScanHit& h : hits)
    std::cout << h.d << "  (" << (h.is_prime ? "prime" : "composite") << ", " << h.mod4
              << " mod 4)\n";
  std::cout << hits.size() << " hit" << (hits.size() == 1 ? "" : "s") << " in [" << lo << ", "
            << hi << "]\n";
  return 0;
}

int run_prime_direct(const std::string& n_str) {
  mordell::Int n;
  try {
    n = mordell::from_decimal(n_str);
  } catch (const std::invalid_argument&) {
    return fail_usage("n must be a decimal integer, got '" + n_str + "'");
  }
  mordell::TrialDivision td;
  try {
    td = mordell::trial_division_prime(n);
  } catch (const std::exception& ex) {
    return fail_usage(ex.what());
  }
  for (const mordell::TrialRow& row : td.witnesses)
    std::cout << mordell::to_decimal(n) << " = " << mordell::to_decimal(row.quotient) << " * "
              << mordell::to_decimal(row.divisor) << " + " << mordell::to_decimal(row.remainder)
              << "\n";
  if (td.is_prime) {
    std::cout << mordell::to_decimal(n) << " is prime (all primes up to its square root leave "
              << "a nonzero remainder)\n";
    return 0;
  }
  std::cout << mordell::to_decimal(n) << " is composite: divisible by "
            << mordell::to_decimal(td.witnesses.back().divisor) << "\n";
  return 1;
}

int run_prime_cert(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) return fail_usage("cannot read certificate file: " + path);
  mordell::PocklingtonWitness w;
  try {
    w = mordell::pocklington_parse(text);
  } catch (const mordell::CertificateError& ex) {
    std::cerr << "certificate rejected: " << ex.what() << "\n";
    return 2;
  }
  mordell::PocklingtonReport rep = mordell::pocklington_verify(w);
  std::cout << "c = " << mordell::to_decimal(w.c) << "\n";
  std::cout << "factored part a = " << mordell::to_decimal(rep.factored_part_value) << "\n";
  std::cout << "fermat: base^(c-1) leaves residue " << mordell::to_decimal(rep.fermat.residue)
            << "\n";
  for (std::size_t i = 0; i < rep.cofactor_ladders.size(); ++i)
    std::cout << "cofactor ladder " << (i + 1) << ": residue "
              << mordell::to_decimal(rep.cofactor_ladders[i].residue) << "\n";
  if (rep.pass) {
    std::cout << "pocklington: " << mordell::to_decimal(w.c) << " is prime\n";
    return 0;
  }
  for (const mordell::Failure& f : rep.failures)
    std::cout << "failed: " << mordell::to_string(f.code) << " at " << f.where << ": " << f.detail
              << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pell-unit divisibility toolkit: verifies d | y certificates and "
               "cross-checks them against a continued-fraction oracle"};
  app.require_subcommand(1);

  auto* verify_cmd =
      app.add_subcommand("verify", "verify a divisibility certificate (JSON file)");
  std::string cert_path;
  bool trace = false, costs = false;
  std::string format = "text";
  verify_cmd->add_option("certificate", cert_path, "path to the certificate")->required();
  verify_cmd->add_flag("--trace", trace, "include step-by-step arithmetic traces");
  verify_cmd->add_flag("--costs", costs, "include the cost tally breakdown");
  verify_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* oracle_cmd = app.add_subcommand("oracle", "continued-fraction facts, certificate-free");
  oracle_cmd->require_subcommand(1);
  auto* unit_cmd = oracle_cmd->add_subcommand("unit", "fundamental unit for squarefree d");
  std::string d_str;
  unit_cmd->add_option("d", d_str, "squarefree d >= 2, below 10^9")->required();
  auto* scan_cmd =
      oracle_cmd->add_subcommand("scan", "find squarefree d in [lo, hi] whose unit has d | y");
  std::uint64_t lo = 0, hi = 0;
  scan_cmd->add_option("lo", lo, "lower bound (inclusive)")->required();
  scan_cmd->add_option("hi", hi, "upper bound (inclusive, below 10^7)")->required();

  auto* prime_cmd = app.add_subcommand("prime", "primality by trial division or by certificate");
  std::string n_str, pock_path;
  prime_cmd->add_option("n", n_str, "integer to test by trial division (n < 2^64)");
  prime_cmd->add_option("--cert", pock_path, "verify a primality certificate instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (verify_cmd->parsed()) return run_verify(cert_path, trace, costs, format);
  if (unit_cmd->parsed()) return run_oracle_unit(d_str);
  if (scan_cmd->parsed()) return run_oracle_scan(lo, hi);
  if (prime_cmd->parsed()) {
    if (n_str.empty() == pock_path.empty())
      return fail_usage("prime needs exactly one of: a positional n, or --cert <path>");
    return n_str.empty() ? run_prime_cert(pock_path) : run_prime_direct(n_str);
  }
  return 2;
}
