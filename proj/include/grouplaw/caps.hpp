#pragma once

#include <cstddef>

namespace grouplaw {

// Resource caps shared by the enumeration-heavy operations. Defaults match
// the documented limits; the CLI exposes flags to override them.
struct Caps {
  // Largest number of tuples an exhaustive tuple sweep may visit.
  std::size_t tuple_cap = 10'000'000;
  // Largest group order for element-level oracles (element tables, subgroup
  // lattices, automorphism searches, naive enumeration).
  std::size_t oracle_cap = 10'000;
  // Largest reduced word length a program expansion may produce.
  std::size_t word_cap = 1'000'000;
  // Largest number of tuples an exact probability sweep may visit.
  std::size_t exact_cap = 100'000'000;
};

}  // namespace grouplaw
