#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace mordell {

// The ambient exact integer type. Everything in this library is exact; no
// floating point appears anywhere.
using Int = boost::multiprecision::cpp_int;

// canonical residue in [0, m), m > 0
inline Int mod_floor(const Int& a, const Int& m) {
  if (m <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
  Int r = a % m;  // cpp_int % truncates toward zero
  if (r < 0) r += m;
  return r;
}

// floor divmod: a = q*m + r with 0 <= r < m
inline std::pair<Int, Int> divmod_floor(const Int& a, const Int& m) {
  Int r = mod_floor(a, m);
  Int q = (a - r) / m;
  return {std::move(q), std::move(r)};
}

// number of bits in |n|; bit_length(0) == 0
inline unsigned bit_length(const Int& n) {
  if (n == 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(abs(n))) + 1;
}

inline std::string to_decimal(const Int& n) { return n.str(); }

// Strict decimal parser: optional leading '-', no leading zeros (except "0"
// itself), no whitespace, no exponent. This keeps the certificate format
// canonical: serialize(parse(x)) can only succeed byte-identically if inputs
// were canonical to begin with.
inline Int from_decimal(const std::string& s) {
  std::size_t pos = 0;
  if (!s.empty() && s[0] == '-') pos = 1;
  std::size_t ndigits = s.size() - pos;
  if (ndigits == 0) throw std::invalid_argument("empty decimal string");
  for (std::size_t i = pos; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit in decimal string");
  if (ndigits > 1 && s[pos] == '0') throw std::invalid_argument("leading zero in decimal string");
  if (pos == 1 && ndigits == 1 && s[1] == '0') throw std::invalid_argument("negative zero");
  return Int(s);
}

}  // namespace mordell
