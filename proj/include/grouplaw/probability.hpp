#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "grouplaw/bigint.hpp"
#include "grouplaw/caps.hpp"
#include "grouplaw/group.hpp"
#include "grouplaw/slp.hpp"
#include "grouplaw/synthesis.hpp"

namespace grouplaw {

struct ProbabilityResult {
  struct Estimate {
    double p = 0.0;
    double lo = 0.0;  // 95% Wilson score interval
    double hi = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
  };
  struct Profile {
    BigInt solvable_satisfying = 0;     // satisfying tuples generating a solvable subgroup
    BigInt nonsolvable_satisfying = 0;  // the rest; the two sum to the exact numerator
  };

  std::optional<Rational> exact;  // denominator |G|^arity, unreduced
  std::optional<Estimate> estimate;
  std::optional<Profile> profile;

  nlohmann::ordered_json to_json() const;
};

// Exhaustive satisfaction probability. Only letters the word actually uses
// are enumerated (the value does not depend on padding); the count is then
// scaled so the stored denominator is |G|^arity. CapExceeded when the
// enumeration over used letters is above caps.exact_cap. The profile is
// filled in when |G|^arity also fits caps.tuple_cap. Sharded over the
// leading letter when jobs > 1; the result does not depend on jobs.
ProbabilityResult exact_probability(const PermutationGroup& G, const Slp& word, const Caps& caps,
                                    int jobs = 1);

// Monte Carlo estimate from uniform tuples, with a 95% Wilson score
// interval. Samples are partitioned into fixed 4096-sample shards, each
// drawn from its own counter-based substream of `seed`, so the result
// depends only on (samples, seed), never on jobs.
ProbabilityResult mc_probability(const PermutationGroup& G, const Slp& word,
                                 std::uint64_t samples, std::uint64_t seed, int jobs = 1);

// Per-class satisfaction table over all n-tuples: one row per
// marked-isomorphism class with its size, subgroup order, solvability, and
// whether the class satisfies the word.
std::vector<SynthesisReport::Row> satisfaction_profile(const PermutationGroup& G, const Slp& word,
                                                       int n, const Caps& caps);

struct MonotonicityReport {
  bool holds = false;            // P(G,w) <= P(G/K,w)
  bool kernel_identity = false;  // P(G/K,w) == |{tuples with word value in K}| / |G|^n
  Rational p_group = Rational(0, 1);
  Rational p_quotient = Rational(0, 1);
  Rational kernel_fraction = Rational(0, 1);

  nlohmann::ordered_json to_json() const;
};

// Exact check that factoring by a normal subgroup can only raise the
// satisfaction probability, plus the sharper identity that P(G/K,w) equals
// the fraction of tuples whose word value merely lands in K.
MonotonicityReport quotient_monotonicity(const PermutationGroup& G, const PermutationGroup& K,
                                         const Slp& word, const Caps& caps);

}  // namespace grouplaw
