#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "grouplaw/errors.hpp"
#include "grouplaw/group.hpp"
#include "grouplaw/perm.hpp"
#include "grouplaw/rng.hpp"
#include "grouplaw/structure.hpp"
#include "grouplaw/synthesis.hpp"

using namespace grouplaw;

namespace {
Permutation cyc(const std::string& text, int degree) {
  return Permutation::parse_cycles(text, degree);
}

PermutationGroup a5() {
  return PermutationGroup(5, {cyc("(0 1 2)", 5), cyc("(0 1 2 3 4)", 5)}, "A5");
}
PermutationGroup s4() {
  return PermutationGroup(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)}, "S4");
}
PermutationGroup a5xa5() {
  return PermutationGroup(10,
                          {cyc("(0 1 2)", 10), cyc("(0 1 2 3 4)", 10),
                           cyc("(5 6 7)", 10), cyc("(5 6 7 8 9)", 10)},
                          "A5xA5");
}

Caps caps() { return Caps{}; }
}  // namespace

TEST_CASE("tuple classes partition all tuples") {
  const auto classes = tuple_classes(a5(), 2, caps());
  CHECK(classes.size() == 44);

  BigInt total = 0;
  int solvable = 0;
  for (const auto& cls : classes) {
    total += cls.members;
    if (cls.solvable) ++solvable;
    CHECK(cls.representative.size() == 2);
    // The recorded subgroup order matches the closure of the representative.
    const PermutationGroup H(5, cls.representative);
    CHECK(H.order() == cls.subgroup_order);
    CHECK(is_solvable(H) == cls.solvable);
  }
  CHECK(total == 3600);
  CHECK(solvable == 25);

  // Single letters: classes are conjugacy-with-automorphisms of cyclic
  // subgroups; A5 has the identity, C2s, C3s, C5s.
  const auto singles = tuple_classes(a5(), 1, caps());
  CHECK(singles.size() == 4);
  std::multiset<BigInt> sizes;
  for (const auto& cls : singles) sizes.insert(cls.members);
  CHECK(sizes == std::multiset<BigInt>{1, 15, 20, 24});

  const auto s4_classes = tuple_classes(s4(), 2, caps());
  BigInt s4_total = 0;
  for (const auto& cls : s4_classes) {
    s4_total += cls.members;
    CHECK(cls.solvable);
  }
  CHECK(s4_total == 576);

  // The cap guards the |G|^n enumeration.
  Caps small = caps();
  small.tuple_cap = 100;
  CHECK_THROWS_AS(tuple_classes(a5(), 2, small), CapExceeded);
}

TEST_CASE("class membership is constant under conjugation") {
  // Conjugating a tuple gives a marked-isomorphic tuple, so both land in the
  // same class; spot-check by locating conjugates' classes via table lookup.
  const PermutationGroup G = a5();
  const ElementTable E = ElementTable::build(G, caps().oracle_cap);
  const std::vector<int> tuple = {E.index(cyc("(0 1 2)", 5)),
                                  E.index(cyc("(0 1 2 3 4)", 5))};
  const MarkedClosure base = marked_closure(E, tuple);
  Rng rng(4);
  for (int i = 0; i < 8; ++i) {
    const Permutation g = G.random_element(rng);
    std::vector<int> conj;
    for (int idx : tuple) conj.push_back(E.index(E.element(idx).conjugated_by(g)));
    CHECK(marked_closure(E, conj).table == base.table);
  }
}

TEST_CASE("solvability words: nonsolvable target group") {
  const SynthesisReport report = synthesize_solvability_word(a5(), 2, caps());

  CHECK(report.verified);
  CHECK(report.n_or_d == 2);
  CHECK(report.classes.size() == 44);
  CHECK(report.word.size() > 0);
  CHECK(report.word.arity() == 2);

  // The biconditional, class by class: satisfies iff solvable.
  int solvable = 0;
  BigInt satisfied = 0;
  for (const auto& row : report.classes) {
    CHECK(row.satisfies == row.solvable);
    if (row.solvable) {
      ++solvable;
      satisfied += row.members;
    }
  }
  CHECK(solvable == 25);
  CHECK(satisfied == 1320);

  REQUIRE(report.exact_probability.has_value());
  CHECK(report.exact_probability->num == 1320);
  CHECK(report.exact_probability->den == 3600);

  // Independent re-verification: evaluate the word on each class
  // representative directly.
  const auto classes = tuple_classes(a5(), 2, caps());
  for (const auto& cls : classes) {
    const bool vanished = report.word.evaluate(cls.representative).is_identity();
    CHECK(vanished == cls.solvable);
  }

  // The word genuinely uses both letters.
  CHECK(report.letters_used == std::vector<int>{1, 2});
}

TEST_CASE("solvability words: solvable groups short-circuit") {
  const SynthesisReport report = synthesize_solvability_word(s4(), 2, caps());
  CHECK(report.verified);
  CHECK(report.word.is_identity_program());
  REQUIRE(report.word_flat.has_value());
  CHECK(report.word_flat->empty());
  REQUIRE(report.exact_probability.has_value());
  CHECK(report.exact_probability->num == report.exact_probability->den);
  REQUIRE(report.note.has_value());

  const SynthesisReport one = synthesize_solvability_word(a5(), 1, caps());
  CHECK(one.verified);
  CHECK(one.word.is_identity_program());
  CHECK(one.classes.size() == 4);
  // Every single element of A5 generates a cyclic (solvable) subgroup, so
  // the empty word is correct at arity 1.
  for (const auto& row : one.classes) CHECK(row.solvable);
}

TEST_CASE("solvability verification accepts and rejects") {
  const SynthesisReport built = synthesize_solvability_word(a5(), 2, caps());
  const SynthesisReport pass = verify_solvability_word(a5(), 2, built.word, caps());
  CHECK(pass.verified);
  CHECK_FALSE(pass.note.has_value());

  // x1 vanishes on tuples whose first entry is the identity — including
  // nonsolvable-generating ones? No: it FAILS the biconditional because a
  // generating pair with nonidentity first entry is nonsolvable yet x1 does
  // not vanish... in fact x1 already fails on solvable classes with
  // nontrivial first coordinate.
  const SynthesisReport fail = verify_solvability_word(a5(), 2, Slp::input(2, 1), caps());
  CHECK_FALSE(fail.verified);
  REQUIRE(fail.note.has_value());
  CHECK(fail.note->find("class") != std::string::npos);

  // The empty word cannot be right for a nonsolvable group at arity 2.
  const SynthesisReport empty_fail =
      verify_solvability_word(a5(), 2, Slp::identity(2), caps());
  CHECK_FALSE(empty_fail.verified);

  // Word arity above the tuple arity is rejected.
  CHECK_THROWS_AS(verify_solvability_word(a5(), 1, Slp::input(2, 2), caps()), InputError);
}

TEST_CASE("probability words: full and partial selections") {
  const PermutationGroup G = a5();

  SUBCASE("k=5 of s=r=19 orbits") {
    const SynthesisReport report =
        synthesize_probability_word(G, 2, 5, std::nullopt, {}, caps());
    CHECK(report.verified);
    CHECK(report.trivial_coordinates == 5);
    CHECK(report.selected_orbits == 19);
    CHECK(report.total_orbits == 19);
    REQUIRE(report.aut_order.has_value());
    CHECK(*report.aut_order == 120);
    REQUIRE(report.satisfied_generating.has_value());
    CHECK(*report.satisfied_generating == 600);  // 5 * 120

    REQUIRE(report.exact_probability.has_value());
    // 23/60 frozen from independent evaluation of this construction.
    CHECK(report.exact_probability->num * 60 == report.exact_probability->den * 23);

    REQUIRE(report.lower_bound.has_value());
    CHECK(report.lower_bound->num * 3600 == report.lower_bound->den * 600);
    REQUIRE(report.upper_bound.has_value());
    // p <= k|Aut|/|G|^d + m/2^d = 600/3600 + 21/4 = 65/12.
    CHECK(report.upper_bound->num * 12 == report.upper_bound->den * 65);
  }

  SUBCASE("k=0 satisfies no generating tuple among the selected orbits") {
    const SynthesisReport report =
        synthesize_probability_word(G, 2, 0, std::nullopt, {}, caps());
    CHECK(report.verified);
    CHECK(*report.satisfied_generating == 0);
    REQUIRE(report.exact_probability.has_value());
    // No generating pair satisfies the word, so p <= (3600-2280)/3600.
    CHECK(report.exact_probability->num * 30 <= report.exact_probability->den * 11);
  }

  SUBCASE("partial selection s < r drops the upper bound") {
    const SynthesisReport report =
        synthesize_probability_word(G, 2, 3, 10, {}, caps());
    CHECK(report.verified);
    CHECK(report.trivial_coordinates == 3);
    CHECK(report.selected_orbits == 10);
    CHECK(report.total_orbits == 19);
    CHECK_FALSE(report.upper_bound.has_value());
    REQUIRE(report.lower_bound.has_value());
    CHECK(report.lower_bound->num * 3600 == report.lower_bound->den * 360);

    // Independent recount: evaluate the word over the first s orbit
    // representatives; exactly k satisfy it.
    const auto auts = automorphism_group(G, caps().oracle_cap);
    const auto tuples = generating_tuples(G, 2, caps().tuple_cap, caps().oracle_cap);
    const TupleOrbits orbits = aut_orbits_on_tuples(G, tuples, auts, caps().oracle_cap);
    int satisfied = 0;
    for (int i = 0; i < 10; ++i)
      if (report.word.evaluate(orbits.orbits[i].representative).is_identity()) ++satisfied;
    CHECK(satisfied == 3);
  }

  SUBCASE("k equal to s makes every selected orbit satisfy") {
    const SynthesisReport report =
        synthesize_probability_word(G, 2, 19, std::nullopt, {}, caps());
    CHECK(report.verified);
    CHECK(*report.satisfied_generating == 2280);
    REQUIRE(report.exact_probability.has_value());
    CHECK(report.exact_probability->num == report.exact_probability->den);  // p = 1
  }
}

TEST_CASE("probability words reject bad shapes") {
  const PermutationGroup G = a5();
  CHECK_THROWS_AS(synthesize_probability_word(G, 2, 20, std::nullopt, {}, caps()),
                  InputError);  // k > s
  CHECK_THROWS_AS(synthesize_probability_word(G, 2, 1, 25, {}, caps()),
                  InputError);  // s > r
  CHECK_THROWS_AS(synthesize_probability_word(G, 2, 0, 0, {}, caps()),
                  InputError);  // s = 0
  CHECK_THROWS_AS(synthesize_probability_word(G, 0, 0, std::nullopt, {}, caps()),
                  InputError);  // d < 1
  CHECK_THROWS_AS(synthesize_probability_word(G, 2, -1, std::nullopt, {}, caps()),
                  InputError);  // k < 0
  CHECK_THROWS_AS(synthesize_probability_word(s4(), 2, 1, std::nullopt, {}, caps()),
                  InputError);  // solvable target
  CHECK_THROWS_AS(synthesize_probability_word(a5xa5(), 2, 1, std::nullopt, {}, caps()),
                  InputError);  // not just nonsolvable
}

TEST_CASE("quotient obstruction checks") {
  const PermutationGroup G = a5();
  const SynthesisReport built = synthesize_solvability_word(G, 2, caps());

  // The solvability word vanishes on no generating pair, so A5 is obstructed
  // as a quotient of the corresponding one-relator group.
  const ObstructionReport obstructed = quotient_obstruction_check(G, 2, built.word, caps());
  CHECK(obstructed.obstructed);
  CHECK(obstructed.generating_classes.size() == 19);
  CHECK_FALSE(obstructed.offending_class.has_value());
  for (const auto& row : obstructed.generating_classes) {
    CHECK(row.subgroup_order == 60);
    CHECK_FALSE(row.satisfies);
  }

  // The empty word is satisfied by every tuple: not obstructed, first class
  // offends.
  const ObstructionReport not_obstructed =
      quotient_obstruction_check(G, 2, Slp::identity(2), caps());
  CHECK_FALSE(not_obstructed.obstructed);
  REQUIRE(not_obstructed.offending_class.has_value());
  CHECK(*not_obstructed.offending_class == 0);

  // Power words kill every element order, so they never obstruct either.
  const Slp x1_60 = Slp::from_word(Word::parse("x1^60 x2^60", 2));
  CHECK_FALSE(quotient_obstruction_check(G, 2, x1_60, caps()).obstructed);
}

TEST_CASE("synthesis reports serialize with stable shapes") {
  const SynthesisReport report = synthesize_solvability_word(a5(), 2, caps());
  const auto j = report.to_json();
  CHECK(j.contains("group"));
  CHECK(j.contains("word_slp"));
  CHECK(j.contains("word_slp_size"));
  CHECK(j.contains("classes"));
  CHECK(j.contains("exact_probability"));
  CHECK(j.contains("verified"));
  CHECK(j["verified"] == true);
  CHECK(j["classes"].size() == 44);
  CHECK(j["exact_probability"]["num"] == "1320");
  CHECK(j["exact_probability"]["den"] == "3600");

  const SynthesisReport prob =
      synthesize_probability_word(a5(), 2, 5, std::nullopt, {}, caps());
  const auto pj = prob.to_json();
  CHECK(pj.contains("bounds"));
  CHECK(pj["k"] == 5);
  CHECK(pj["s"] == 19);
  CHECK(pj["r"] == 19);

  const ObstructionReport obs = quotient_obstruction_check(a5(), 2, Slp::identity(2), caps());
  const auto oj = obs.to_json();
  CHECK(oj.contains("obstructed"));
  CHECK(oj.contains("generating_classes"));
}
