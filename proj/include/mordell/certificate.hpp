#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "mordell/bigint.hpp"
#include "mordell/failure.hpp"
#include "mordell/ideal.hpp"
#include "mordell/primality.hpp"

namespace mordell {

// The full input object of the verification: discriminant, primality witness,
// split-prime table, denominator exponents, relation list, Claim 4 modulus.
struct Certificate {
  Int d;
  PocklingtonWitness primality;
  std::vector<SplitPrime> split_primes;  // j = 1 .. s in order
  std::vector<Int> denominator_exponents;
  std::vector<Relation> relations;
  Int nonunit_modulus;

  bool operator==(const Certificate&) const = default;
};

// Parse/format errors carry the failing field's document path. code is
// PARSE_ERROR for malformed text/types/numbers, RANGE_ERROR for structurally
// valid values outside the format's ranges.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(FailCode code, std::string path, const std::string& msg)
      : std::runtime_error(path.empty() ? msg : path + ": " + msg),
        code_(code),
        path_(std::move(path)) {}
  FailCode code() const { return code_; }
  const std::string& path() const { return path_; }

 private:
  FailCode code_;
  std::string path_;
};

namespace cert_detail {

using json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& msg) {
  throw CertificateError(FailCode::PARSE_ERROR, path, msg);
}
[[noreturn]] inline void range_fail(const std::string& path, const std::string& msg) {
  throw CertificateError(FailCode::RANGE_ERROR, path, msg);
}

inline const json& member(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path + "/" + key, "missing field");
  return *it;
}

// all integers travel as decimal strings to keep every consumer exact
inline Int get_int(const json& node, const std::string& path) {
  if (!node.is_string()) parse_fail(path, "expected a decimal string");
  try {
    return from_decimal(node.get<std::string>());
  } catch (const std::exception& ex) {
    parse_fail(path, ex.what());
  }
}

inline Int get_int_field(const json& obj, const std::string& path, const std::string& key) {
  return get_int(member(obj, path, key), path + "/" + key);
}

inline const json& array_field(const json& obj, const std::string& path, const std::string& key) {
  const json& node = member(obj, path, key);
  if (!node.is_array()) parse_fail(path + "/" + key, "expected an array");
  return node;
}

inline PocklingtonWitness parse_witness(const json& node, const std::string& path) {
  PocklingtonWitness w;
  w.c = get_int_field(node, path, "c");
  const json& fp = array_field(node, path, "factored_part");
  if (fp.empty()) range_fail(path + "/factored_part", "factored part must be nonempty");
  for (std::size_t i = 0; i < fp.size(); ++i) {
    std::string p = path + "/factored_part/" + std::to_string(i);
    if (!fp[i].is_array() || fp[i].size() != 2) parse_fail(p, "expected a [prime, mult] pair");
    Int prime = get_int(fp[i][0], p + "/0");
    Int mult = get_int(fp[i][1], p + "/1");
    if (prime < 2) range_fail(p + "/0", "prime must be >= 2");
    if (mult < 1) range_fail(p + "/1", "multiplicity must be >= 1");
    w.factored_part.emplace_back(std::move(prime), std::move(mult));
  }
  w.base = get_int_field(node, path, "base");
  // Bezout witnesses are optional; with none supplied the verifier falls back
  // to computing the gcds itself.
  json cws = json::array();
  if (node.is_object() && node.contains("coprime_witnesses"))
    cws = array_field(node, path, "coprime_witnesses");
  for (std::size_t i = 0; i < cws.size(); ++i) {
    std::string p = path + "/coprime_witnesses/" + std::to_string(i);
    CoprimeWitness cw;
    cw.p = get_int_field(cws[i], p, "p");
    cw.multiplier = get_int_field(cws[i], p, "multiplier");
    cw.quotient = get_int_field(cws[i], p, "quotient");
    const json& sign = member(cws[i], p, "sign");
    if (!sign.is_number_integer()) parse_fail(p + "/sign", "expected the number 1 or -1");
    long long sv = sign.get<long long>();
    if (sv != 1 && sv != -1) range_fail(p + "/sign", "sign must be 1 or -1");
    cw.sign = static_cast<int>(sv);
    w.coprime_witnesses.push_back(std::move(cw));
  }
  return w;
}

inline json witness_to_json(const PocklingtonWitness& w) {
  json node;
  node["c"] = to_decimal(w.c);
  json fp = json::array();
  for (const auto& [p, k] : w.factored_part)
    fp.push_back(json::array({to_decimal(p), to_decimal(k)}));
  node["factored_part"] = std::move(fp);
  node["base"] = to_decimal(w.base);
  json cws = json::array();
  for (const CoprimeWitness& cw : w.coprime_witnesses) {
    json e;
    e["p"] = to_decimal(cw.p);
    e["multiplier"] = to_decimal(cw.multiplier);
    e["quotient"] = to_decimal(cw.quotient);
    e["sign"] = cw.sign;
    cws.push_back(std::move(e));
  }
  node["coprime_witnesses"] = std::move(cws);
  return node;
}

inline void check_version(const json& doc) {
  const json& fv = member(doc, "", "format_version");
  if (!fv.is_number_integer()) parse_fail("/format_version", "expected an integer");
  if (fv.get<long long>() != 1) range_fail("/format_version", "unsupported format version");
}

}  // namespace cert_detail

// Total parse: either a fully validated Certificate or an exception, never a
// partial object. Unknown keys are ignored (room for future variant flags).
inline Certificate certificate_parse(const std::string& text) {
  using namespace cert_detail;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& ex) {
    parse_fail("", ex.what());
  }
  check_version(doc);

  Certificate cert;
  cert.d = get_int_field(doc, "", "d");
  if (cert.d < 2) range_fail("/d", "d must be >= 2");
  cert.primality = parse_witness(member(doc, "", "primality"), "/primality");

  const json& sps = array_field(doc, "", "split_primes");
  if (sps.empty()) range_fail("/split_primes", "at least one split prime required");
  for (std::size_t i = 0; i < sps.size(); ++i) {
    std::string p = "/split_primes/" + std::to_string(i);
    SplitPrime sp;
    sp.j = static_cast<int>(i) + 1;
    sp.c = get_int_field(sps[i], p, "c");
    sp.e = get_int_field(sps[i], p, "e");
    sp.f = get_int_field(sps[i], p, "f");
    if (sp.c < 2) range_fail(p + "/c", "c must be >= 2");
    if (sp.e < 1) range_fail(p + "/e", "e must be >= 1");
    if (sp.e >= cert.d) range_fail(p + "/e", "e must be < d");
    if (sp.f < 1) range_fail(p + "/f", "f must be >= 1");
    cert.split_primes.push_back(std::move(sp));
  }
  int s = static_cast<int>(cert.split_primes.size());

  const json& des = array_field(doc, "", "denominator_exponents");
  if (des.size() != cert.split_primes.size())
    range_fail("/denominator_exponents", "expected one exponent per split prime");
  for (std::size_t i = 0; i < des.size(); ++i) {
    Int v = get_int(des[i], "/denominator_exponents/" + std::to_string(i));
    if (v < 1) range_fail("/denominator_exponents/" + std::to_string(i), "must be >= 1");
    cert.denominator_exponents.push_back(std::move(v));
  }

  const json& rels = array_field(doc, "", "relations");
  if (rels.empty()) range_fail("/relations", "at least one relation required");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    std::string p = "/relations/" + std::to_string(i);
    Relation rel;
    rel.a = get_int_field(rels[i], p, "a");
    rel.b = get_int_field(rels[i], p, "b");
    if (rel.b < 1) range_fail(p + "/b", "exponent must be >= 1");
    const json& fs = array_field(rels[i], p, "factors");
    if (fs.empty()) range_fail(p + "/factors", "factor list must be nonempty");
    int prev_j = 0;
    for (std::size_t t = 0; t < fs.size(); ++t) {
      std::string fp = p + "/factors/" + std::to_string(t);
      FactorEntry f;
      Int j = get_int_field(fs[t], fp, "j");
      if (j < 1 || j > s) range_fail(fp + "/j", "index out of range [1, s]");
      f.j = static_cast<int>(j);
      const json& conj = member(fs[t], fp, "conj");
      if (!conj.is_boolean()) parse_fail(fp + "/conj", "expected a boolean");
      f.conj = conj.get<bool>();
      f.mult = get_int_field(fs[t], fp, "mult");
      if (f.mult < 1) range_fail(fp + "/mult", "multiplicity must be >= 1");
      if (f.j <= prev_j) range_fail(fp + "/j", "factor indices must be strictly increasing");
      if (f.j == 1 && f.conj)
        range_fail(fp + "/conj", "the ramified prime equals its conjugate; write conj = false");
      prev_j = f.j;
      rel.factors.push_back(std::move(f));
    }
    cert.relations.push_back(std::move(rel));
  }

  cert.nonunit_modulus = get_int_field(doc, "", "nonunit_modulus");
  if (cert.nonunit_modulus < 2) range_fail("/nonunit_modulus", "modulus must be >= 2");
  return cert;
}

// Canonical form: fixed key order, two-space indent, decimal-string integers,
// trailing newline. parse(serialize(c)) == c, and serialize(parse(text)) is
// byte-identical for canonical inputs.
inline std::string certificate_serialize(const Certificate& cert) {
  using namespace cert_detail;
  json doc;
  doc["format_version"] = 1;
  doc["d"] = to_decimal(cert.d);
  doc["primality"] = witness_to_json(cert.primality);
  json sps = json::array();
  for (const SplitPrime& sp : cert.split_primes) {
    json e;
    e["c"] = to_decimal(sp.c);
    e["e"] = to_decimal(sp.e);
    e["f"] = to_decimal(sp.f);
    sps.push_back(std::move(e));
  }
  doc["split_primes"] = std::move(sps);
  json des = json::array();
  for (const Int& v : cert.denominator_exponents) des.push_back(to_decimal(v));
  doc["denominator_exponents"] = std::move(des);
  json rels = json::array();
  for (const Relation& rel : cert.relations) {
    json r;
    r["a"] = to_decimal(rel.a);
    r["b"] = to_decimal(rel.b);
    json fs = json::array();
    for (const FactorEntry& f : rel.factors) {
      json fe;
      fe["j"] = std::to_string(f.j);
      fe["conj"] = f.conj;
      fe["mult"] = to_decimal(f.mult);
      fs.push_back(std::move(fe));
    }
    r["factors"] = std::move(fs);
    rels.push_back(std::move(r));
  }
  doc["relations"] = std::move(rels);
  doc["nonunit_modulus"] = to_decimal(cert.nonunit_modulus);
  return doc.dump(2) + "\n";
}

// Standalone Pocklington witness files (the `prime --cert` input): the same
// witness object with its own format_version.
inline PocklingtonWitness pocklington_parse(const std::string& text) {
  using namespace cert_detail;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& ex) {
    parse_fail("", ex.what());
  }
  check_version(doc);
  return parse_witness(doc, "");
}

inline std::string pocklington_serialize(const PocklingtonWitness& w) {
  using namespace cert_detail;
  json doc;
  doc["format_version"] = 1;
  json body = witness_to_json(w);
  for (auto& [key, value] : body.items()) doc[key] = std::move(value);
  return doc.dump(2) + "\n";
}

}  // namespace mordell
