#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/bigint.hpp"
#include "grouplaw/caps.hpp"
#include "grouplaw/product.hpp"
#include "grouplaw/slp.hpp"
#include "grouplaw/structure.hpp"

namespace grouplaw {

// One class of n-tuples under marked isomorphism: an isomorphism of the
// generated subgroups carrying one tuple to the other coordinatewise. A
// word evaluates to the identity on one member iff it does on all of them,
// so per-class verification covers every tuple.
struct TupleClass {
  std::vector<Permutation> representative;  // least member in element-index order
  BigInt members = 0;
  BigInt subgroup_order = 0;
  bool solvable = false;
};

// All classes of n-tuples over G, ordered by first appearance when tuples
// are enumerated by ascending element index. CapExceeded when |G|^n is
// above caps.tuple_cap.
std::vector<TupleClass> tuple_classes(const PermutationGroup& G, int n, const Caps& caps);

struct SynthesisReport {
  std::string group;
  int n_or_d = 0;
  Slp word;
  std::optional<std::string> word_flat;  // when expansion fits caps.word_cap

  struct Row {
    std::vector<std::string> representative;  // cycle form, one per tuple slot
    BigInt members = 0;
    BigInt subgroup_order = 0;
    bool solvable = false;
    bool satisfies = false;
  };
  std::vector<Row> classes;

  std::optional<Rational> exact_probability;
  std::optional<Rational> lower_bound;  // probability-target pipeline
  std::optional<Rational> upper_bound;  // only when every orbit is selected
  bool verified = false;
  std::vector<int> letters_used;
  bool letters_upper_bound_only = false;
  std::optional<std::string> note;

  // probability-target pipeline extras
  std::optional<int> trivial_coordinates;      // k
  std::optional<int> selected_orbits;          // s
  std::optional<int> total_orbits;             // r
  std::optional<BigInt> aut_order;
  std::optional<BigInt> satisfied_generating;  // generating tuples satisfying the word

  nlohmann::ordered_json to_json() const;
};

// Builds a word over n letters that evaluates to the identity on exactly
// the tuples generating a solvable subgroup, verifies the biconditional on
// every tuple class, and records the exact satisfaction probability. A
// solvable G short-circuits to the empty word.
SynthesisReport synthesize_solvability_word(const PermutationGroup& G, int n, const Caps& caps);

// Evaluates a word program against the solvability biconditional on every
// class of n-tuples; verified means no counterexample. The word may use
// fewer letters than n.
SynthesisReport verify_solvability_word(const PermutationGroup& G, int n, const Slp& word,
                                        const Caps& caps);

// Builds a word over d letters controlling its satisfaction probability:
// among the first s automorphism orbits of generating d-tuples, exactly the
// first k satisfy it, so the count of satisfying generating tuples within
// the selection is k·|Aut(G)|. Requires G just nonsolvable and k <= s <= r
// (r = number of orbits). Pass an empty automorphism list to have it
// computed. Reports the exact probability, the k·|Aut(G)|/|G|^d lower
// bound, and (when s = r) the upper bound adding m/2^d for m maximal
// subgroups.
SynthesisReport synthesize_probability_word(const PermutationGroup& G, int d, int k,
                                            std::optional<int> orbit_count,
                                            std::vector<GroupAutomorphism> automorphisms,
                                            const Caps& caps);

struct ObstructionReport {
  bool obstructed = false;  // no generating class satisfies the word
  std::optional<std::size_t> offending_class;
  std::vector<SynthesisReport::Row> generating_classes;
  nlohmann::ordered_json to_json() const;
};

// True obstruction means G cannot be a quotient of the one-relator group on
// the word: an epimorphism from it is exactly a generating tuple satisfying
// the word.
ObstructionReport quotient_obstruction_check(const PermutationGroup& G, int n, const Slp& word,
                                             const Caps& caps);

}  // namespace grouplaw
