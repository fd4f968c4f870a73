#pragma once

#include <cstddef>
#include <memory>
#include <unordered_map>
#include <vector>

#include "grouplaw/bigint.hpp"
#include "grouplaw/group.hpp"

namespace grouplaw {

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9E3779B97F4A7C15ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

// Sorted element list of a small group, with index lookup, cached inverses
// and element orders, and (for orders up to an internal limit) an index-level
// multiplication table. mul() falls back to permutation products when the
// table is not built, so correctness never depends on it.
class ElementTable {
 public:
  static ElementTable build(const PermutationGroup& G, std::size_t cap);

  std::size_t size() const { return elems_.size(); }
  const std::vector<Permutation>& elements() const { return elems_; }
  const Permutation& element(int idx) const { return elems_[idx]; }
  int identity_index() const { return id_; }
  int index(const Permutation& p) const;      // InputError when absent
  int try_index(const Permutation& p) const;  // -1 when absent
  int mul(int a, int b) const {
    return table_.empty() ? try_index_unchecked(elems_[a] * elems_[b])
                          : table_[static_cast<std::size_t>(a) * elems_.size() + b];
  }
  int inv(int a) const { return inv_[a]; }
  long long order_of(int a) const { return order_[a]; }

  // BFS closure of the given generator indices: identity first, then
  // discovery order (scanning each known element by the generators in input
  // order). Stops early once `stop_size` elements are found when positive.
  std::vector<int> closure(const std::vector<int>& gen_indices, std::size_t stop_size = 0) const;
  bool generates(const std::vector<int>& tuple) const;

 private:
  int try_index_unchecked(const Permutation& p) const;

  std::vector<Permutation> elems_;
  std::unordered_map<Permutation, int, PermutationHash> lookup_;
  std::vector<int> table_;  // empty when not built
  std::vector<int> inv_;
  std::vector<long long> order_;
  int id_ = 0;
};

// BFS labeling of the subgroup generated by a tuple, plus its canonical
// right-multiplication table: entry (l, j) is the BFS label of e_l * t_j.
// Two tuples receive identical tables exactly when some isomorphism of the
// generated subgroups matches them coordinatewise, so the table is a
// complete marked-isomorphism invariant.
struct MarkedClosure {
  std::vector<int> bfs_elements;  // element indices in BFS label order
  std::vector<int> table;         // row-major |H| x n of BFS labels
};
MarkedClosure marked_closure(const ElementTable& E, const std::vector<int>& tuple);

struct GroupAutomorphism {
  std::vector<Permutation> generator_images;  // aligned with the group's generators
};

// All automorphisms, by backtracking over order-matched generator images with
// canonical-table prefix pruning. Deterministic output order.
std::vector<GroupAutomorphism> automorphism_group(const PermutationGroup& G, std::size_t cap);

// One element-index map per automorphism, over E's indexing of G.
std::vector<std::vector<int>> automorphism_element_maps(const PermutationGroup& G,
                                                        const ElementTable& E,
                                                        const std::vector<GroupAutomorphism>& auts);

struct TupleOrbits {
  struct Orbit {
    std::vector<Permutation> representative;  // lexicographically least member
    std::size_t size = 0;                     // full orbit size
  };
  std::vector<Orbit> orbits;  // sorted by representative
  std::vector<int> orbit_of;  // aligned with the input tuple list
};

TupleOrbits aut_orbits_on_tuples(const PermutationGroup& G,
                                 const std::vector<std::vector<Permutation>>& tuples,
                                 const std::vector<GroupAutomorphism>& auts, std::size_t cap);

// True when no listed automorphism maps s to t coordinatewise; when false
// and witness is non-null, *witness is the index of one that does.
bool automorphism_independent(const PermutationGroup& G, const std::vector<Permutation>& s,
                              const std::vector<Permutation>& t,
                              const std::vector<GroupAutomorphism>& auts, int* witness = nullptr);

// Minimal nontrivial normal subgroups. Every one is the normal closure of a
// single element, so candidates are the distinct single-element closures.
std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& G, std::size_t cap);

bool is_simple(const PermutationGroup& G, std::size_t cap);

// Pairwise-commuting simple factors of a perfect group that is an internal
// direct product of nonabelian simple subgroups; InputError when it is not.
// The trivial group yields the empty factor list.
std::vector<PermutationGroup> simple_factor_decomposition(const PermutationGroup& N,
                                                          std::size_t cap);

// Nonsolvable, but every proper quotient solvable.
bool is_just_nonsolvable(const PermutationGroup& G, std::size_t cap);

// Surjection G -> G/K. K = 1 is realized as the identity map on G itself;
// otherwise the image acts regularly on the right cosets of K, labeled in
// order of their least elements.
class QuotientMap {
 public:
  const PermutationGroup& source() const { return source_; }
  const PermutationGroup& kernel() const { return kernel_; }
  const PermutationGroup& image() const { return image_; }
  // Images of source().generators(), in order.
  const std::vector<Permutation>& generator_images() const { return gen_images_; }
  bool identity_realization() const { return identity_; }
  Permutation apply(const Permutation& g) const;

  friend QuotientMap quotient_by(const PermutationGroup& G, const PermutationGroup& K,
                                 std::size_t cap);

 private:
  PermutationGroup source_{1};
  PermutationGroup kernel_{1};
  PermutationGroup image_{1};
  std::vector<Permutation> gen_images_;
  bool identity_ = false;
  std::vector<Permutation> coset_reps_;
  std::unordered_map<Permutation, int, PermutationHash> coset_of_;
};

QuotientMap quotient_by(const PermutationGroup& G, const PermutationGroup& K, std::size_t cap);

// Largest quotient of a nonsolvable H that is just nonsolvable: greedily
// grows a normal subgroup K (elements tried by ascending (order, images))
// while H/K stays nonsolvable, then returns the quotient map by the fixed
// point. InputError on solvable input.
QuotientMap just_nonsolvable_quotient(const PermutationGroup& H, std::size_t cap);

struct MaximalSubgroups {
  std::vector<PermutationGroup> subgroups;  // by descending order, then elements
  std::vector<BigInt> indexes;              // |G| / |M|, aligned
};

// All maximal proper subgroups, from the full subgroup lattice (closures of
// cyclic joins); each result is self-checked by primitivity of the coset
// action.
MaximalSubgroups maximal_subgroups(const PermutationGroup& G, std::size_t cap);

// Element-index sets (each sorted) of every subgroup, lattice-complete.
std::vector<std::vector<int>> all_subgroup_index_sets(const PermutationGroup& G,
                                                      const ElementTable& E);

// Images of G's generators acting on the right cosets of H by right
// multiplication; cosets are labeled in order of their least elements.
std::vector<Permutation> coset_action(const PermutationGroup& G, const PermutationGroup& H,
                                      const ElementTable& E);

// Transitive with no nontrivial block system. False for intransitive input.
bool is_primitive_action(const std::vector<Permutation>& gens, int degree);

// All d-tuples over G that generate it, in ascending element-index order.
std::vector<std::vector<Permutation>> generating_tuples(const PermutationGroup& G, int d,
                                                        std::size_t tuple_cap,
                                                        std::size_t oracle_cap);

}  // namespace grouplaw
