#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "grouplaw/errors.hpp"
#include "grouplaw/group.hpp"
#include "grouplaw/structure.hpp"

namespace grouplaw {

// External direct product of permutation groups on disjoint, contiguous
// point ranges.
class ProductGroup {
 public:
  explicit ProductGroup(std::vector<PermutationGroup> coordinates);

  int num_coordinates() const { return static_cast<int>(coords_.size()); }
  int total_degree() const { return total_degree_; }
  const PermutationGroup& coordinate(int i) const { return coords_.at(i); }
  int offset(int i) const { return offsets_.at(i); }

  // p (on coordinate i's own degree) as an element of the product.
  Permutation embed(int i, const Permutation& p) const;
  // Restriction of p to coordinate i's range; p must map that range into
  // itself.
  Permutation project(int i, const Permutation& p) const;
  Permutation assemble_element(const std::vector<Permutation>& per_coordinate) const;
  bool respects_ranges(const Permutation& p) const;

 private:
  std::vector<PermutationGroup> coords_;
  std::vector<int> offsets_;
  int total_degree_ = 0;
};

// Thrown when a membership program is requested for a non-member; carries
// the sift certificate.
class NonMembership : public InputError {
 public:
  NonMembership(Permutation residue, int level)
      : InputError("element is not a member: sifting stalled at level " + std::to_string(level)),
        residue_(std::move(residue)),
        level_(level) {}
  const Permutation& residue() const { return residue_; }
  int level() const { return level_; }

 private:
  Permutation residue_;
  int level_;
};

// Subgroup of a product carrying one "tag" per generator: a straight-line
// program over x1..x_arity whose evaluation (on whatever tuple the letters
// stand for) reproduces how that generator was built. Membership programs
// are sifted over the generators, then rewritten through the tags, so they
// stay programs over the original letters.
class TaggedSubgroup {
 public:
  TaggedSubgroup(std::shared_ptr<const ProductGroup> ambient, int arity,
                 std::vector<Permutation> generators, std::vector<Slp> tags);

  const ProductGroup& ambient() const { return *ambient_; }
  const std::shared_ptr<const ProductGroup>& ambient_ptr() const { return ambient_; }
  int arity() const { return arity_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::vector<Slp>& tags() const { return tags_; }
  const StabilizerChain& chain() const { return *chain_; }

  BigInt order() const { return chain_->order(); }
  bool contains(const Permutation& p) const { return chain_->contains(p); }
  // Program over x1..x_arity writing g in terms of what the letters stand
  // for; throws NonMembership with the sift certificate when g is outside.
  Slp membership_program(const Permutation& g) const;

  PermutationGroup projection(int coordinate) const;

 private:
  std::shared_ptr<const ProductGroup> ambient_;
  int arity_;
  std::vector<Permutation> gens_;
  std::vector<Slp> tags_;
  std::shared_ptr<const StabilizerChain> chain_;
};

// Subgroup generated by one product element per letter: generator t is
// assembled from rows[t] (one entry per coordinate, each inside its
// coordinate group), tagged with the plain letter x_{t+1}.
TaggedSubgroup assemble(std::shared_ptr<const ProductGroup> ambient,
                        const std::vector<std::vector<Permutation>>& rows);

// Terminal term M of the derived series of L, with tags over L's letters,
// and the number of derived steps at which the series stabilizes. Tags that
// outgrow tag_cap reachable instructions are rebased: replaced by a fresh
// membership program over L itself.
std::pair<TaggedSubgroup, int> perfect_core(const TaggedSubgroup& L,
                                            std::size_t tag_cap = 100'000);

// Subgroup of H acting trivially on every listed coordinate (the kernel of
// the projection onto them), tagged over H's letters. Chain bases start at
// the listed coordinates' points.
TaggedSubgroup coordinate_kernel(const TaggedSubgroup& H, const std::vector<int>& coordinates);

struct IntersectionReport {
  bool preconditions_ok = false;
  std::string failure;  // empty when preconditions hold
  std::vector<int> nontrivial_coordinates;  // coordinates where K projects nontrivially
  BigInt intersection_order = 0;  // |K meet M| by the product formula
  BigInt expected_order = 0;      // product of the socle factors over those coordinates
  bool contains_expected = false;
  bool equal = false;
};

// For H subdirect in a product of just-nonsolvable coordinates with socle
// product M contained in H, and K normal in H: checks that K meet M is
// exactly the product of the socle factors at coordinates where K projects
// nontrivially. |K meet M| comes from |K||M|/|KM| (K is normal, so KM is a
// subgroup).
IntersectionReport verify_socle_intersection(const TaggedSubgroup& H,
                                             const std::vector<Permutation>& kernel_generators,
                                             std::size_t oracle_cap);

struct ColumnSpanReport {
  bool preconditions_ok = false;
  std::string failure;
  int witness_i = -1;  // offending column pair / automorphism when dependent
  int witness_j = -1;
  int witness_automorphism = -1;
  BigInt subgroup_order = 0;  // |H|
  bool socle_contained = false;
};

// For a just-nonsolvable G with minimal normal subgroup N and columns that
// each generate G and are pairwise automorphism-independent: the rows span a
// subgroup of G^n containing N^n. Reports rather than throws on failed
// preconditions.
ColumnSpanReport verify_socle_containment(const PermutationGroup& G,
                                          const std::vector<std::vector<Permutation>>& columns,
                                          const std::vector<GroupAutomorphism>& automorphisms,
                                          std::size_t oracle_cap);

// Partition of the coordinates of M's ambient into linked ("diagonal")
// blocks: i and j share a block when the pair projection of M is a proper
// (diagonal) subgroup of the order |G_i||G_j| product. Preconditions: every
// coordinate group is nonabelian simple and M projects onto each in full.
std::vector<std::vector<int>> diagonal_blocks(const TaggedSubgroup& M, std::size_t oracle_cap);

enum class SupportDemand { Nontrivial, Trivial, Free };

struct PatternElement {
  Permutation element{1};
  Slp program;  // over M's letters
};

// Element g of M whose coordinate support matches the demands: trivial
// where demanded trivial, nontrivial where demanded nontrivial. Coordinates
// where M projects trivially must not be demanded nontrivial. Works at the
// granularity of the simple factors of M's coordinate projections, honoring
// the diagonal linking between them; InputError when the demands are
// infeasible for M's diagonal structure.
PatternElement support_pattern_element(const TaggedSubgroup& M,
                                       const std::vector<SupportDemand>& demands,
                                       std::size_t oracle_cap);

}  // namespace grouplaw
