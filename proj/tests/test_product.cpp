#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "grouplaw/errors.hpp"
#include "grouplaw/group.hpp"
#include "grouplaw/perm.hpp"
#include "grouplaw/product.hpp"
#include "grouplaw/rng.hpp"
#include "grouplaw/structure.hpp"

using namespace grouplaw;

namespace {
constexpr std::size_t kCap = 10'000;

Permutation cyc(const std::string& text, int degree) {
  return Permutation::parse_cycles(text, degree);
}

PermutationGroup a5() {
  return PermutationGroup(5, {cyc("(0 1 2)", 5), cyc("(0 1 2 3 4)", 5)}, "A5");
}
PermutationGroup s4() {
  return PermutationGroup(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)}, "S4");
}

std::shared_ptr<const ProductGroup> a5_squared() {
  return std::make_shared<ProductGroup>(std::vector<PermutationGroup>{a5(), a5()});
}

// Columns of the two spec pairs: (a, a^c) and (b, b^c) give an
// automorphism-independent pair of generating pairs of A5 when c is chosen
// from a different orbit; conjugating by (3 4) (an outer automorphism of A5
// inside S5) works: columns ((a,b)) and ((a^t, b^t)) with t=(3 4) are
// automorphism-related, while ((a,b)) and ((a, b^2)) are not. We use tuples
// checked to be orbit-distinct below.
const Permutation kA = cyc("(0 1 2)", 5);
const Permutation kB = cyc("(0 1 2 3 4)", 5);
// Second generating pair from a different automorphism orbit: (a, b^2).
const Permutation kB2 = kB* kB;
}  // namespace

TEST_CASE("product groups embed, project, and assemble") {
  const auto P = a5_squared();
  CHECK(P->num_coordinates() == 2);
  CHECK(P->total_degree() == 10);
  CHECK(P->offset(0) == 0);
  CHECK(P->offset(1) == 5);

  const Permutation e0 = P->embed(0, kA);
  const Permutation e1 = P->embed(1, kA);
  CHECK(e0.degree() == 10);
  CHECK(e0[0] == 1);
  CHECK(e0[5] == 5);  // acts only on the first block
  CHECK(e1[5] == 6);
  CHECK(e1[0] == 0);

  CHECK(P->project(0, e0) == kA);
  CHECK(P->project(1, e1) == kA);
  CHECK(P->project(1, e0).is_identity());

  const Permutation both = P->assemble_element({kA, kB});
  CHECK(P->project(0, both) == kA);
  CHECK(P->project(1, both) == kB);
  CHECK(both == e0 * P->embed(1, kB));

  CHECK(P->respects_ranges(both));
  CHECK_FALSE(P->respects_ranges(cyc("(4 5)", 10)));
  CHECK_THROWS_AS(P->project(0, cyc("(4 5)", 10)), InputError);
  CHECK_THROWS_AS(P->embed(0, cyc("(0 1)", 4)), InputError);
}

TEST_CASE("assembled subgroups of a product") {
  const auto P = a5_squared();

  // Rows (a, a) and (b, b^2): the columns are automorphism-independent
  // generating pairs (verified in the socle containment test below), so the
  // rows generate the whole product.
  const TaggedSubgroup easy = assemble(P, {{kA, kA}, {kB, kB2}});
  CHECK(easy.order() == 3600);

  // Identical columns give the diagonal copy of A5.
  const TaggedSubgroup diag = assemble(P, {{kA, kA}, {kB, kB}});
  CHECK(diag.order() == 60);

  // A single coordinate: the subgroup is just A5 itself.
  const auto single = std::make_shared<ProductGroup>(std::vector<PermutationGroup>{a5()});
  CHECK(assemble(single, {{kA}, {kB}}).order() == 60);

  // Tags record the input letters.
  CHECK(easy.arity() == 2);
  REQUIRE(easy.tags().size() == 2);
  for (int t = 0; t < 2; ++t) {
    const Slp& tag = easy.tags()[t];
    const auto flat = tag.expand(10);
    REQUIRE(flat.has_value());
    CHECK(flat->str() == (t == 0 ? "x1" : "x2"));
  }

  CHECK_THROWS_AS(assemble(P, {{kA}, {kB, kB}}), InputError);        // ragged row
  CHECK_THROWS_AS(assemble(P, {{cyc("(0 1)", 5), kA}, {kB, kB}}),    // not in A5
                  InputError);
}

TEST_CASE("membership programs over tagged subgroups are faithful") {
  const auto P = a5_squared();
  const TaggedSubgroup H = assemble(P, {{kA, kA}, {kB, kB2}});
  const std::vector<Permutation> letters = {P->assemble_element({kA, kA}),
                                            P->assemble_element({kB, kB2})};

  Rng rng(8);
  StabilizerChain sampler(10);
  for (const auto& g : H.generators()) sampler.add_generator(g);
  for (int i = 0; i < 20; ++i) {
    const Permutation g = sampler.random_element(rng);
    const Slp prog = H.membership_program(g);
    CHECK(prog.evaluate(letters) == g);
  }

  // Outside the diagonal: (a, id) is not in the diagonal subgroup.
  const TaggedSubgroup diag = assemble(P, {{kA, kA}, {kB, kB}});
  const Permutation off = P->embed(0, kA);
  CHECK_FALSE(diag.contains(off));
  try {
    diag.membership_program(off);
    FAIL("expected NonMembership");
  } catch (const NonMembership& e) {
    CHECK_FALSE(e.residue().is_identity());
    CHECK(e.level() >= 0);
  }
}

TEST_CASE("perfect cores of assembled subgroups") {
  const auto P = a5_squared();

  // Perfect input: stabilizes immediately (0 steps).
  const TaggedSubgroup full = assemble(P, {{kA, kA}, {kB, kB2}});
  const auto [core_full, steps_full] = perfect_core(full);
  CHECK(core_full.order() == 3600);
  CHECK(steps_full == 0);

  const TaggedSubgroup diag = assemble(P, {{kA, kA}, {kB, kB}});
  const auto [core_diag, steps_diag] = perfect_core(diag);
  CHECK(core_diag.order() == 60);
  CHECK(steps_diag == 0);

  // Solvable coordinate dies: S4 x A5 with S4 solvable leaves 1 x A5...
  const auto mixed = std::make_shared<ProductGroup>(
      std::vector<PermutationGroup>{s4(), a5()});
  const TaggedSubgroup L = assemble(
      mixed, {{cyc("(0 1)", 4), kA}, {cyc("(0 1 2 3)", 4), kB}});
  const auto [core_mixed, steps_mixed] = perfect_core(L);
  CHECK(core_mixed.order() == 60);
  for (const auto& g : core_mixed.generators())
    CHECK(mixed->project(0, g).is_identity());

  // ... and pure S4 dies entirely, stabilizing after its derived length.
  const auto just_s4 = std::make_shared<ProductGroup>(std::vector<PermutationGroup>{s4()});
  const TaggedSubgroup Ls4 =
      assemble(just_s4, {{cyc("(0 1)", 4)}, {cyc("(0 1 2 3)", 4)}});
  const auto [core_s4, steps_s4] = perfect_core(Ls4);
  CHECK(core_s4.order() == 1);
  CHECK(steps_s4 == 3);

  // Idempotence: the core of a core is itself, instantly.
  const auto [core_again, steps_again] = perfect_core(core_mixed);
  CHECK(core_again.order() == core_mixed.order());
  CHECK(steps_again == 0);

  // Core tags still write the core's generators over the original letters.
  const std::vector<Permutation> letters = {
      mixed->assemble_element({cyc("(0 1)", 4), kA}),
      mixed->assemble_element({cyc("(0 1 2 3)", 4), kB})};
  for (std::size_t i = 0; i < core_mixed.generators().size(); ++i)
    CHECK(core_mixed.tags()[i].evaluate(letters) == core_mixed.generators()[i]);
}

TEST_CASE("coordinate kernels") {
  const auto P = a5_squared();
  const TaggedSubgroup full = assemble(P, {{kA, kA}, {kB, kB2}});

  // Kernel of the first projection: 1 x A5, order 60.
  const TaggedSubgroup k0 = coordinate_kernel(full, {0});
  CHECK(k0.order() == 60);
  CHECK(k0.projection(0).trivial());
  CHECK(k0.projection(1).order() == 60);

  const TaggedSubgroup k1 = coordinate_kernel(full, {1});
  CHECK(k1.order() == 60);
  CHECK(k1.projection(0).order() == 60);

  // In the diagonal, killing one coordinate kills everything.
  const TaggedSubgroup diag = assemble(P, {{kA, kA}, {kB, kB}});
  CHECK(coordinate_kernel(diag, {0}).order() == 1);

  // Killing nothing keeps the whole subgroup.
  CHECK(coordinate_kernel(full, {}).order() == 3600);

  // Kernel generator tags write kernel generators over the original letters.
  const std::vector<Permutation> letters = {P->assemble_element({kA, kA}),
                                            P->assemble_element({kB, kB2})};
  for (std::size_t i = 0; i < k0.generators().size(); ++i)
    CHECK(k0.tags()[i].evaluate(letters) == k0.generators()[i]);
}

TEST_CASE("socle intersection reports") {
  const auto P = a5_squared();
  const TaggedSubgroup H = assemble(P, {{kA, kA}, {kB, kB2}});  // all of A5 x A5

  // K = normal closure of an element nontrivial in both coordinates: the
  // intersection with the socle must be the whole socle.
  const Permutation both = P->assemble_element({kA, kA});
  const PermutationGroup Hgrp(10, H.generators(), "H");
  const auto K_full = normal_closure(Hgrp, {both});
  const IntersectionReport full_report =
      verify_socle_intersection(H, K_full.generators(), kCap);
  CHECK(full_report.preconditions_ok);
  CHECK(full_report.nontrivial_coordinates == std::vector<int>{0, 1});
  CHECK(full_report.intersection_order == 3600);
  CHECK(full_report.expected_order == 3600);
  CHECK(full_report.equal);

  // Trivial K: intersects trivially, expects the empty product.
  const IntersectionReport trivial_report = verify_socle_intersection(H, {}, kCap);
  CHECK(trivial_report.preconditions_ok);
  CHECK(trivial_report.nontrivial_coordinates.empty());
  CHECK(trivial_report.intersection_order == 1);
  CHECK(trivial_report.expected_order == 1);
  CHECK(trivial_report.equal);

  // K = 1 x A5: one nontrivial coordinate, intersection of order 60.
  const IntersectionReport half_report =
      verify_socle_intersection(H, {P->embed(1, kA), P->embed(1, kB)}, kCap);
  CHECK(half_report.preconditions_ok);
  CHECK(half_report.nontrivial_coordinates == std::vector<int>{1});
  CHECK(half_report.intersection_order == 60);
  CHECK(half_report.equal);

  // Precondition failure: a coordinate that is not just-nonsolvable.
  const auto mixed = std::make_shared<ProductGroup>(
      std::vector<PermutationGroup>{s4(), a5()});
  const TaggedSubgroup bad = assemble(
      mixed, {{cyc("(0 1)", 4), kA}, {cyc("(0 1 2 3)", 4), kB}});
  const IntersectionReport bad_report = verify_socle_intersection(bad, {}, kCap);
  CHECK_FALSE(bad_report.preconditions_ok);
  CHECK_FALSE(bad_report.failure.empty());
}

TEST_CASE("socle containment reports") {
  const PermutationGroup G = a5();
  const auto auts = automorphism_group(G, kCap);

  // Two generating pairs from different automorphism orbits.
  const std::vector<std::vector<Permutation>> distinct = {{kA, kB}, {kA, kB2}};
  int witness = -1;
  REQUIRE(automorphism_independent(G, distinct[0], distinct[1], auts, &witness));
  const ColumnSpanReport ok = verify_socle_containment(G, distinct, auts, kCap);
  CHECK(ok.preconditions_ok);
  CHECK(ok.socle_contained);
  CHECK(ok.subgroup_order == 3600);

  // A single column spans the diagonal; the socle of G^1 is G, so
  // containment means the column generates G.
  const ColumnSpanReport single = verify_socle_containment(G, {{kA, kB}}, auts, kCap);
  CHECK(single.preconditions_ok);
  CHECK(single.socle_contained);
  CHECK(single.subgroup_order == 60);

  // Automorphism-related columns fail the precondition with a witness.
  const Permutation t = cyc("(0 1)(2 3)", 5);
  const std::vector<std::vector<Permutation>> related = {
      {kA, kB}, {kA.conjugated_by(t), kB.conjugated_by(t)}};
  const ColumnSpanReport dep = verify_socle_containment(G, related, auts, kCap);
  CHECK_FALSE(dep.preconditions_ok);
  CHECK(dep.witness_i == 0);
  CHECK(dep.witness_j == 1);
  CHECK(dep.witness_automorphism >= 0);

  // A non-generating column fails the precondition.
  const ColumnSpanReport nongen =
      verify_socle_containment(G, {{kA, kA* kA}}, auts, kCap);
  CHECK_FALSE(nongen.preconditions_ok);
  CHECK_FALSE(nongen.failure.empty());
}

TEST_CASE("diagonal block partitions") {
  const auto P = a5_squared();

  // Independent coordinates: two singleton blocks.
  const TaggedSubgroup full = assemble(P, {{kA, kA}, {kB, kB2}});
  const auto blocks_full = diagonal_blocks(full, kCap);
  CHECK(blocks_full == std::vector<std::vector<int>>{{0}, {1}});

  // The diagonal links its two coordinates.
  const TaggedSubgroup diag = assemble(P, {{kA, kA}, {kB, kB}});
  const auto blocks_diag = diagonal_blocks(diag, kCap);
  CHECK(blocks_diag == std::vector<std::vector<int>>{{0, 1}});

  // Single coordinate: one singleton block.
  const auto single = std::make_shared<ProductGroup>(std::vector<PermutationGroup>{a5()});
  const TaggedSubgroup one = assemble(single, {{kA}, {kB}});
  CHECK(diagonal_blocks(one, kCap) == std::vector<std::vector<int>>{{0}});

  // Precondition: coordinates must be nonabelian simple with full
  // projections.
  const auto mixed = std::make_shared<ProductGroup>(
      std::vector<PermutationGroup>{s4(), a5()});
  const TaggedSubgroup bad = assemble(
      mixed, {{cyc("(0 1)", 4), kA}, {cyc("(0 1 2 3)", 4), kB}});
  CHECK_THROWS_AS(diagonal_blocks(bad, kCap), InputError);

  // Partial projection fails too.
  const TaggedSubgroup small = assemble(P, {{kA, kA}});
  CHECK_THROWS_AS(diagonal_blocks(small, kCap), InputError);
}

TEST_CASE("support pattern elements") {
  const auto P = a5_squared();
  const std::vector<Permutation> letters = {P->assemble_element({kA, kA}),
                                            P->assemble_element({kB, kB2})};

  // Full product: any pattern is feasible.
  const TaggedSubgroup full = assemble(P, {{kA, kA}, {kB, kB2}});
  const PatternElement both = support_pattern_element(
      full, {SupportDemand::Nontrivial, SupportDemand::Nontrivial}, kCap);
  CHECK_FALSE(P->project(0, both.element).is_identity());
  CHECK_FALSE(P->project(1, both.element).is_identity());
  CHECK(both.program.evaluate(letters) == both.element);

  const PatternElement first_only = support_pattern_element(
      full, {SupportDemand::Nontrivial, SupportDemand::Trivial}, kCap);
  CHECK_FALSE(P->project(0, first_only.element).is_identity());
  CHECK(P->project(1, first_only.element).is_identity());
  CHECK(first_only.program.evaluate(letters) == first_only.element);

  const PatternElement free_second = support_pattern_element(
      full, {SupportDemand::Nontrivial, SupportDemand::Free}, kCap);
  CHECK_FALSE(P->project(0, free_second.element).is_identity());

  // Diagonal: (Nontrivial, Trivial) is infeasible.
  const TaggedSubgroup diag = assemble(P, {{kA, kA}, {kB, kB}});
  CHECK_THROWS_AS(
      support_pattern_element(diag, {SupportDemand::Nontrivial, SupportDemand::Trivial},
                              kCap),
      InputError);
  // But all-nontrivial works fine on the diagonal.
  const PatternElement diag_both = support_pattern_element(
      diag, {SupportDemand::Nontrivial, SupportDemand::Nontrivial}, kCap);
  const std::vector<Permutation> diag_letters = {P->assemble_element({kA, kA}),
                                                 P->assemble_element({kB, kB})};
  CHECK_FALSE(P->project(0, diag_both.element).is_identity());
  CHECK_FALSE(P->project(1, diag_both.element).is_identity());
  CHECK(diag_both.program.evaluate(diag_letters) == diag_both.element);

  // Trivial subgroup: all-Trivial demands give the identity.
  const TaggedSubgroup none = assemble(P, {{Permutation(5), Permutation(5)}});
  const PatternElement id_elt = support_pattern_element(
      none, {SupportDemand::Trivial, SupportDemand::Trivial}, kCap);
  CHECK(id_elt.element.is_identity());
  // ... and a Nontrivial demand on a trivially-projecting coordinate fails.
  CHECK_THROWS_AS(
      support_pattern_element(none, {SupportDemand::Nontrivial, SupportDemand::Free},
                              kCap),
      InputError);
}

TEST_CASE("pattern elements honor refined factors inside one coordinate") {
  // Ambient = A5 x (A5 x A5 as one degree-10 coordinate group). The subgroup
  // links the first A5 diagonally with the first factor of the second
  // coordinate and leaves the last factor free.
  const PermutationGroup inner(
      10,
      {cyc("(0 1 2)", 10), cyc("(0 1 2 3 4)", 10), cyc("(5 6 7)", 10),
       cyc("(5 6 7 8 9)", 10)},
      "A5xA5");
  const auto P = std::make_shared<ProductGroup>(
      std::vector<PermutationGroup>{a5(), inner});

  const Permutation a10 = cyc("(0 1 2)", 10);
  const Permutation b10 = cyc("(0 1 2 3 4)", 10);
  const Permutation a10b = cyc("(5 6 7)", 10);
  const Permutation b10b = cyc("(5 7 6 9 8)", 10);  // b^2-like in its factor

  // Rows: (a, a x a'), (b, b x b') — columns generate; the second coordinate
  // carries two simple factors, one linked to coordinate 0, one free.
  const TaggedSubgroup M = assemble(
      P, {{kA, a10* a10b}, {kB, b10* b10b}});
  CHECK(M.order() == 3600);  // diagonal between coord 0 and factor 1, free factor 2

  // Trivial on coordinate 0 but nontrivial on coordinate 1 is feasible via
  // the free simple factor.
  const PatternElement ok = support_pattern_element(
      M, {SupportDemand::Trivial, SupportDemand::Nontrivial}, kCap);
  CHECK(P->project(0, ok.element).is_identity());
  CHECK_FALSE(P->project(1, ok.element).is_identity());

  // Nontrivial on coordinate 0 with coordinate 1 trivial is infeasible: the
  // diagonal drags the linked factor along.
  CHECK_THROWS_AS(
      support_pattern_element(M, {SupportDemand::Nontrivial, SupportDemand::Trivial},
                              kCap),
      InputError);
}

TEST_CASE("normal closures in powers split into coordinate kernels") {
  // In H = A5 x A5 x A5 every normal subgroup is a product of coordinate
  // socle factors; check |K| multiplies out over projections for random
  // seeds.
  const auto P = std::make_shared<ProductGroup>(
      std::vector<PermutationGroup>{a5(), a5(), a5()});
  // Columns (a,b), (a,b^2), ((0 1)(2 3), b): pairwise independent — the
  // first two lie in different orbits, and the third has a different
  // element-order signature (2,5) that no automorphism can match to (3,5).
  std::vector<std::vector<Permutation>> rows = {
      {kA, kA, cyc("(0 1)(2 3)", 5)}, {kB, kB2, kB}};
  const TaggedSubgroup H = assemble(P, rows);
  REQUIRE(H.order() == 216'000);

  const PermutationGroup Hgrp(15, H.generators(), "H");
  Rng rng(12);
  StabilizerChain sampler(15);
  for (const auto& g : H.generators()) sampler.add_generator(g);
  for (int trial = 0; trial < 10; ++trial) {
    const Permutation seed = sampler.random_element(rng);
    const PermutationGroup K = normal_closure(Hgrp, {seed});
    BigInt expected = 1;
    for (int c = 0; c < 3; ++c) {
      std::vector<Permutation> gens;
      for (const auto& g : K.generators()) gens.push_back(P->project(c, g));
      const BigInt po = PermutationGroup(5, gens).order();
      CHECK((po == 1 || po == 60));
      expected *= po;
    }
    CHECK(K.order() == expected);
  }
}
