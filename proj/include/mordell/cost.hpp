#pragma once

#include <cstdint>

#include "mordell/bigint.hpp"

namespace mordell {

// Arithmetic cost accounting. A multiplication is hard iff both factors have
// magnitude >= 10^3 and the product has magnitude >= 10^10; additions and
// subtractions with a single-digit member are trivial; everything else is
// easy. Multiplications are never trivial. Only the verification path tallies
// operations; bookkeeping (comparisons, copies) is uncounted.
struct CostTally {
  std::uint64_t hard = 0;
  std::uint64_t easy = 0;
  std::uint64_t trivial = 0;

  void mul(const Int& a, const Int& b) {
    static const Int kFactorFloor = 1000;
    static const Int kProductFloor = Int("10000000000");
    if (abs(a) >= kFactorFloor && abs(b) >= kFactorFloor && abs(a * b) >= kProductFloor)
      ++hard;
    else
      ++easy;
  }

  // covers subtraction too: classification depends only on magnitudes
  void add(const Int& a, const Int& b) {
    if (abs(a) <= 9 || abs(b) <= 9)
      ++trivial;
    else
      ++easy;
  }

  CostTally& operator+=(const CostTally& o) {
    hard += o.hard;
    easy += o.easy;
    trivial += o.trivial;
    return *this;
  }

  std::uint64_t total() const { return hard + easy + trivial; }

  bool operator==(const CostTally&) const = default;
};

}  // namespace mordell
