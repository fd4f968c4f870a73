#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "grouplaw/bigint.hpp"
#include "grouplaw/caps.hpp"
#include "grouplaw/perm.hpp"
#include "grouplaw/rng.hpp"
#include "grouplaw/slp.hpp"

namespace grouplaw {

using Point = int;

struct SiftOutcome {
  bool member = false;
  Permutation residue{1};  // identity iff member
  int stuck_level = 0;     // level the strip could not pass; chain depth when member
  Slp program;             // over the chain's input letters; identity unless member
};

// Stabilizer chain (base + strong generating set) built by a deterministic,
// non-randomized incremental Schreier-Sims. Every strong generator and
// transversal element carries a node in a shared straight-line program over
// the input generators, so successful sifts yield membership programs.
//
// Base selection: an optional prescribed prefix, then the first point moved
// by each successive stabilizer residue. Orbits and transversals only ever
// extend, so recorded programs stay valid as generators are added, and
// add_generator() leaves the chain fully verified (order/membership are
// correct after every call).
class StabilizerChain {
 public:
  explicit StabilizerChain(int degree, std::vector<Point> base_prefix = {});

  // Registers the next input letter. Returns true when the group grew; a
  // generator already contained is kept as a letter but not placed.
  bool add_generator(const Permutation& g);

  int degree() const { return degree_; }
  int num_inputs() const { return num_inputs_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }
  std::vector<Point> base() const;
  BigInt order() const;
  bool contains(const Permutation& p) const;
  SiftOutcome sift(const Permutation& p) const;
  Permutation random_element(Rng& rng) const;

  // --- introspection (tests, stabilizers, kernels) ---
  Point base_point(int level) const;
  std::size_t orbit_size(int level) const;
  // (point, transversal element) pairs in discovery order; element maps the
  // base point to the orbit point.
  std::vector<std::pair<Point, Permutation>> transversal(int level) const;
  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Permutation& generator(int idx) const { return gens_[idx].perm; }
  // First base index the generator moves; -1 for redundant input letters.
  int generator_level(int idx) const { return gens_[idx].level; }
  bool generator_is_input(int idx) const { return gens_[idx].is_input; }
  Slp generator_program(int idx) const;
  // Indices of placed generators fixing the first k base points; these
  // generate the pointwise stabilizer of those points.
  std::vector<int> stabilizer_generator_indices(int k) const;

 private:
  struct Level {
    Point base;
    std::vector<Point> orbit;        // discovery order; orbit[0] == base
    std::vector<int> position;       // degree-sized: point -> orbit index + 1
    std::vector<Permutation> trans;  // base^trans[i] == orbit[i]
    std::vector<Permutation> trans_inv;
    std::vector<int> trans_node;     // program node per transversal element
    std::vector<int> acting;         // generator indices with level >= this one
    std::vector<std::pair<int, int>> pending;  // (orbit index, generator index)
    std::size_t pending_head = 0;
  };

  struct Gen {
    Permutation perm;
    int node;
    int level;  // -1 when redundant
    bool is_input;
  };

  struct Strip {
    Permutation residue{1};
    int level = 0;
    std::vector<std::pair<int, int>> path;  // (level, orbit index) consumed
  };

  int program_mul(int a, int b);
  int program_inv(int a);
  Strip strip_from(const Permutation& p, int from_level) const;
  void register_point(int level, Point pt, Permutation u, int node);
  void place_generator(Permutation g, int node, bool is_input);
  void process_pending();
  Slp combine_nodes(const std::vector<int>& nodes) const;

  int degree_;
  int num_inputs_ = 0;
  std::vector<Gen> gens_;
  std::vector<Level> levels_;
  std::vector<SlpInstruction> program_;
};

// Finite permutation group given by generators; the chain is built lazily on
// first structural query and shared afterwards (single-threaded contract).
class PermutationGroup {
 public:
  explicit PermutationGroup(int degree);  // trivial group
  PermutationGroup(int degree, std::vector<Permutation> generators, std::string name = "");

  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const StabilizerChain& chain() const;

  BigInt order() const { return chain().order(); }
  bool contains(const Permutation& p) const { return chain().contains(p); }
  SiftOutcome sift(const Permutation& p) const { return chain().sift(p); }
  Permutation random_element(Rng& rng) const { return chain().random_element(rng); }
  bool trivial() const { return order() == 1; }

 private:
  int degree_;
  std::string name_;
  std::vector<Permutation> gens_;
  mutable std::shared_ptr<const StabilizerChain> chain_;
};

// Smallest normal subgroup of G containing the seeds (which must lie in G).
PermutationGroup normal_closure(const PermutationGroup& G, const std::vector<Permutation>& seeds,
                                std::string name = "");

// Successive derived subgroups starting at G. Ends with the trivial group
// when the series reaches it; a nontrivial perfect term is recorded twice
// (the stabilized repeat) and the series stops there. The last entry is
// always the terminal derived term.
std::vector<PermutationGroup> derived_series(const PermutationGroup& G);

bool is_solvable(const PermutationGroup& G);

// Terminal term of the derived series (trivial iff G is solvable).
PermutationGroup perfect_core_of(const PermutationGroup& G);

// Breadth-first closure of the generators; throws CapExceeded past the cap.
// Returned sorted (image-table lexicographic).
std::vector<Permutation> naive_enumerate(const PermutationGroup& G, std::size_t cap);

// Subgroup of G fixing every listed point.
PermutationGroup pointwise_stabilizer(const PermutationGroup& G, const std::vector<Point>& points);

// Same, also returning one membership program per returned generator, over
// G's generator letters.
std::pair<PermutationGroup, std::vector<Slp>> pointwise_stabilizer_with_programs(
    const PermutationGroup& G, const std::vector<Point>& points);

}  // namespace grouplaw
