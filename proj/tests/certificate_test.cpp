#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "mordell/certificate.hpp"

namespace {

using mordell::Certificate;
using mordell::CertificateError;
using mordell::FailCode;
using mordell::Int;

std::string slurp(const char* path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : s) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

// A tiny structurally-valid document for parser edge cases. Semantically it
// proves nothing; the verifier is expected to reject it later.
std::string minimal_toy() {
  return R"({
  "format_version": 1,
  "d": "7",
  "primality": {
    "c": "7",
    "factored_part": [["2", "1"], ["3", "1"]],
    "base": "3",
    "coprime_witnesses": []
  },
  "split_primes": [
    {"c": "2", "e": "1", "f": "3"}
  ],
  "denominator_exponents": ["1"],
  "relations": [
    {"a": "1", "b": "2", "factors": [{"j": "1", "conj": false, "mult": "1"}]}
  ],
  "nonunit_modulus": "3"
}
)";
}

TEST(Bundle, ContentLock) {
  // the bundled certificates are part of the test contract; a byte change
  // here invalidates every frozen trace vector
  EXPECT_EQ(fnv1a(slurp(MORDELL_CERT_PATH)), 5221959964557127181ULL);
  EXPECT_EQ(fnv1a(slurp(MORDELL_POCK_PATH)), 7193264545118068002ULL);
}

TEST(Bundle, RoundTripByteIdentical) {
  std::string text = slurp(MORDELL_CERT_PATH);
  Certificate cert = mordell::certificate_parse(text);
  EXPECT_EQ(mordell::certificate_serialize(cert), text);

  std::string pock = slurp(MORDELL_POCK_PATH);
  mordell::PocklingtonWitness w = mordell::pocklington_parse(pock);
  EXPECT_EQ(mordell::pocklington_serialize(w), pock);
}

TEST(Bundle, ParsedShape) {
  Certificate cert = mordell::certificate_parse(slurp(MORDELL_CERT_PATH));
  EXPECT_EQ(cert.d, Int("39028039587479"));
  EXPECT_EQ(cert.split_primes.size(), 56u);
  EXPECT_EQ(cert.denominator_exponents.size(), 56u);
  EXPECT_EQ(cert.relations.size(), 57u);
  EXPECT_EQ(cert.nonunit_modulus, 3);
  EXPECT_EQ(cert.primality.c, cert.d);
  EXPECT_EQ(cert.primality.factored_part.size(), 2u);
  EXPECT_EQ(cert.primality.factored_part[0].first, 3617);
  EXPECT_EQ(cert.primality.factored_part[1].first, 4021);
  EXPECT_EQ(cert.primality.base, 2);
  EXPECT_EQ(cert.split_primes[0].c, 2);
  EXPECT_EQ(cert.split_primes[0].j, 1);
  EXPECT_EQ(cert.split_primes[1].j, 2);
}

TEST(Toy, RoundTrip) {
  // serialization is a fixed point: whatever formatting the input used,
  // serialize(parse(.)) lands on the canonical form and stays there
  Certificate cert = mordell::certificate_parse(minimal_toy());
  EXPECT_EQ(cert.d, 7);
  std::string canon = mordell::certificate_serialize(cert);
  EXPECT_NE(canon, minimal_toy());  // toy literal is deliberately compact
  EXPECT_EQ(mordell::certificate_serialize(mordell::certificate_parse(canon)), canon);
}

TEST(Toy, UnknownKeysIgnored) {
  std::string canon = mordell::certificate_serialize(mordell::certificate_parse(minimal_toy()));
  std::string text = minimal_toy();
  text.insert(text.find("\"d\""), "\"comment\": \"scratch note\",\n  ");
  Certificate cert = mordell::certificate_parse(text);
  EXPECT_EQ(cert.d, 7);
  // canonical output: the unknown key does not survive
  EXPECT_EQ(mordell::certificate_serialize(cert), canon);
}

void expect_error(const std::string& text, FailCode code, const std::string& path) {
  try {
    mordell::certificate_parse(text);
    FAIL() << "expected rejection at " << path;
  } catch (const CertificateError& ex) {
    EXPECT_EQ(ex.code(), code) << ex.what();
    EXPECT_EQ(ex.path(), path) << ex.what();
  }
}

std::string replaced(const std::string& from, const std::string& to) {
  std::string text = minimal_toy();
  auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  text.replace(pos, from.size(), to);
  return text;
}

TEST(ParseErrors, NotJson) {
  expect_error("{", FailCode::PARSE_ERROR, "");
  expect_error("[]", FailCode::PARSE_ERROR, "");
  expect_error("null", FailCode::PARSE_ERROR, "");
}

TEST(ParseErrors, VersionGate) {
  expect_error(replaced("\"format_version\": 1", "\"format_version\": 2"),
               FailCode::RANGE_ERROR, "/format_version");
  expect_error(replaced("\"format_version\": 1", "\"format_version\": \"1\""),
               FailCode::PARSE_ERROR, "/format_version");
  expect_error(replaced("\"format_version\": 1,\n  ", ""), FailCode::PARSE_ERROR,
               "/format_version");
}

TEST(ParseErrors, MissingAndMistyped) {
  // d must be a string-typed decimal
  expect_error(replaced("\"d\": \"7\"", "\"d\": 7"), FailCode::PARSE_ERROR, "/d");
  expect_error(replaced("\"d\": \"7\"", "\"d\": \"07\""), FailCode::PARSE_ERROR, "/d");
  expect_error(replaced("\"d\": \"7\",\n  ", ""), FailCode::PARSE_ERROR, "/d");
  // sign and conj carry JSON types
  expect_error(replaced("\"conj\": false", "\"conj\": \"false\""), FailCode::PARSE_ERROR,
               "/relations/0/factors/0/conj");
  // arrays where arrays are required
  expect_error(replaced("\"denominator_exponents\": [\"1\"]",
                        "\"denominator_exponents\": \"1\""),
               FailCode::PARSE_ERROR, "/denominator_exponents");
}

TEST(RangeErrors, Bounds) {
  expect_error(replaced("\"d\": \"7\"", "\"d\": \"1\""), FailCode::RANGE_ERROR, "/d");
  expect_error(replaced("\"nonunit_modulus\": \"3\"", "\"nonunit_modulus\": \"1\""),
               FailCode::RANGE_ERROR, "/nonunit_modulus");
  expect_error(replaced("{\"c\": \"2\", \"e\": \"1\", \"f\": \"3\"}",
                        "{\"c\": \"2\", \"e\": \"0\", \"f\": \"3\"}"),
               FailCode::RANGE_ERROR, "/split_primes/0/e");
  expect_error(replaced("{\"c\": \"2\", \"e\": \"1\", \"f\": \"3\"}",
                        "{\"c\": \"2\", \"e\": \"9\", \"f\": \"3\"}"),
               FailCode::RANGE_ERROR, "/split_primes/0/e");  // e < d required
  expect_error(replaced("\"b\": \"2\"", "\"b\": \"0\""), FailCode::RANGE_ERROR,
               "/relations/0/b");
  expect_error(replaced("\"mult\": \"1\"", "\"mult\": \"0\""), FailCode::RANGE_ERROR,
               "/relations/0/factors/0/mult");
  expect_error(replaced("\"j\": \"1\"", "\"j\": \"2\""), FailCode::RANGE_ERROR,
               "/relations/0/factors/0/j");  // out of table range
  // ramified conjugate is not expressible
  expect_error(replaced("\"conj\": false", "\"conj\": true"), FailCode::RANGE_ERROR,
               "/relations/0/factors/0/conj");
  expect_error(replaced("\"split_primes\": [\n    {\"c\": \"2\", \"e\": \"1\", \"f\": \"3\"}\n  ]",
                        "\"split_primes\": []"),
               FailCode::RANGE_ERROR, "/split_primes");
  // exponent list length is tied to the table length
  expect_error(replaced("\"denominator_exponents\": [\"1\"]",
                        "\"denominator_exponents\": [\"1\", \"1\"]"),
               FailCode::RANGE_ERROR, "/denominator_exponents");
  expect_error(replaced("\"relations\": [\n    {\"a\": \"1\", \"b\": \"2\", \"factors\": [{\"j\": \"1\", \"conj\": false, \"mult\": \"1\"}]}\n  ]",
                        "\"relations\": []"),
               FailCode::RANGE_ERROR, "/relations");
}

TEST(RangeErrors, StrictlyIncreasingFactors) {
  std::string text = replaced(
      "\"factors\": [{\"j\": \"1\", \"conj\": false, \"mult\": \"1\"}]",
      "\"factors\": [{\"j\": \"1\", \"conj\": false, \"mult\": \"1\"}, "
      "{\"j\": \"1\", \"conj\": false, \"mult\": \"1\"}]");
  // duplicate j = 1 inside one factor list: not strictly increasing
  expect_error(text, FailCode::RANGE_ERROR, "/relations/0/factors/1/j");
}

TEST(PocklingtonDoc, ParseAndErrors) {
  mordell::PocklingtonWitness w = mordell::pocklington_parse(slurp(MORDELL_POCK_PATH));
  EXPECT_EQ(w.c, Int("39028039587479"));
  EXPECT_EQ(w.coprime_witnesses.size(), 2u);
  EXPECT_EQ(w.coprime_witnesses[0].sign * w.coprime_witnesses[0].sign, 1);

  EXPECT_THROW(mordell::pocklington_parse("{}"), CertificateError);
  EXPECT_THROW(mordell::pocklington_parse("not json"), CertificateError);

  // optional witness list: removing it entirely still parses
  std::string pock = slurp(MORDELL_POCK_PATH);
  auto from = pock.find(",\n  \"coprime_witnesses\"");
  ASSERT_NE(from, std::string::npos);
  auto to = pock.rfind("  ]");
  ASSERT_NE(to, std::string::npos);
  std::string stripped = pock.substr(0, from) + "\n" + pock.substr(to + 4);
  mordell::PocklingtonWitness w2 = mordell::pocklington_parse(stripped);
  EXPECT_TRUE(w2.coprime_witnesses.empty());
  EXPECT_EQ(w2.c, w.c);
}

}  // namespace
