#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "grouplaw/errors.hpp"
#include "grouplaw/group.hpp"
#include "grouplaw/perm.hpp"
#include "grouplaw/probability.hpp"
#include "grouplaw/rng.hpp"
#include "grouplaw/slp.hpp"
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
PermutationGroup a5xc2() {
  return PermutationGroup(7, {cyc("(0 1 2)", 7), cyc("(0 1 2 3 4)", 7), cyc("(5 6)", 7)},
                          "A5xC2");
}

Caps caps() { return Caps{}; }

Slp word(const std::string& text, int min_arity = 0) {
  return Slp::from_word(Word::parse(text, min_arity));
}

Word random_word(Rng& rng, int arity, int length) {
  std::vector<Syllable> syl;
  for (int i = 0; i < length; ++i) {
    const int letter = 1 + static_cast<int>(rng.next() % arity);
    const long long exp = 1 + static_cast<long long>(rng.next() % 3);
    syl.push_back({letter, (rng.next() % 2 == 0) ? exp : -exp});
  }
  return Word::from_syllables(arity, syl);
}
}  // namespace

TEST_CASE("exact probabilities of basic words") {
  // Only the identity satisfies x1.
  const auto single = exact_probability(a5(), word("x1"), caps());
  REQUIRE(single.exact.has_value());
  CHECK(single.exact->num == 1);
  CHECK(single.exact->den == 60);

  // Commuting pairs of A5: 300 of 3600.
  const auto comm = exact_probability(a5(), word("[x1, x2]"), caps());
  REQUIRE(comm.exact.has_value());
  CHECK(comm.exact->num == 300);
  CHECK(comm.exact->den == 3600);
  REQUIRE(comm.profile.has_value());
  CHECK(comm.profile->solvable_satisfying == 300);
  CHECK(comm.profile->nonsolvable_satisfying == 0);

  // Exponent 60 kills every element order in A5.
  const auto killed = exact_probability(a5(), word("x1^60"), caps());
  REQUIRE(killed.exact.has_value());
  CHECK(killed.exact->num == killed.exact->den);

  // The arity-0 identity program is satisfied by the empty tuple.
  const auto empty = exact_probability(a5(), Slp::identity(0), caps());
  REQUIRE(empty.exact.has_value());
  CHECK(empty.exact->num == 1);
  CHECK(empty.exact->den == 1);
}

TEST_CASE("padding letters never changes the probability") {
  // [x1,x2] read at arity 5: the denominator scales to |G|^5 and the
  // numerator scales with it.
  const auto base = exact_probability(a5(), word("[x1, x2]"), caps());
  const auto padded = exact_probability(a5(), word("[x1, x2]", 5), caps());
  REQUIRE(base.exact.has_value());
  REQUIRE(padded.exact.has_value());
  CHECK(*padded.exact == *base.exact);  // cross-multiplied equality
  CHECK(padded.exact->den == BigInt("777600000"));  // 60^5

  Rng rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const Word w = random_word(rng, 2, 5);
    const auto tight = exact_probability(s4(), Slp::from_word(w), caps());
    const Word w_padded = Word::from_syllables(4, w.syllables());
    const auto wide = exact_probability(s4(), Slp::from_word(w_padded), caps());
    REQUIRE(tight.exact.has_value());
    REQUIRE(wide.exact.has_value());
    CHECK(*tight.exact == *wide.exact);
  }
}

TEST_CASE("exact evaluation respects its cap and suggests sampling") {
  Caps small = caps();
  small.exact_cap = 1000;
  try {
    exact_probability(a5(), word("[x1, x2]"), small);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
  }
}

TEST_CASE("exact evaluation is shard-count independent") {
  const auto serial = exact_probability(a5(), word("[x1, x2]"), caps(), 1);
  const auto parallel = exact_probability(a5(), word("[x1, x2]"), caps(), 3);
  REQUIRE(serial.exact.has_value());
  REQUIRE(parallel.exact.has_value());
  CHECK(serial.exact->num == parallel.exact->num);
  CHECK(serial.exact->den == parallel.exact->den);
}

TEST_CASE("monte carlo estimation") {
  // The empty word is always satisfied.
  const auto sure = mc_probability(a5(), Slp::identity(2), 10'000, 1);
  REQUIRE(sure.estimate.has_value());
  CHECK(sure.estimate->p == 1.0);
  CHECK(sure.estimate->hi == 1.0);
  CHECK(sure.estimate->lo > 0.99);

  // Identical (samples, seed) reproduce bitwise, whatever the job count.
  const auto run1 = mc_probability(a5(), word("[x1, x2]"), 100'000, 7, 1);
  const auto run2 = mc_probability(a5(), word("[x1, x2]"), 100'000, 7, 3);
  REQUIRE(run1.estimate.has_value());
  REQUIRE(run2.estimate.has_value());
  CHECK(run1.estimate->p == run2.estimate->p);
  CHECK(run1.estimate->lo == run2.estimate->lo);
  CHECK(run1.estimate->hi == run2.estimate->hi);

  // The estimate lands near the exact value 1/12 and the interval covers it.
  CHECK(std::abs(run1.estimate->p - 1.0 / 12) < 0.005);
  CHECK(run1.estimate->lo <= 1.0 / 12);
  CHECK(1.0 / 12 <= run1.estimate->hi);

  // A different seed gives a different (but nearby) estimate.
  const auto run3 = mc_probability(a5(), word("[x1, x2]"), 100'000, 8, 1);
  CHECK(run3.estimate->p != run1.estimate->p);

  // x1: p = 1/60.
  const auto rare = mc_probability(a5(), word("x1"), 100'000, 3, 2);
  CHECK(std::abs(rare.estimate->p - 1.0 / 60) < 0.002);

  CHECK_THROWS_AS(mc_probability(a5(), word("x1"), 0, 1), InputError);
}

TEST_CASE("intervals cover the exact value on random words") {
  Rng rng(2718);
  int covered = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Word w = random_word(rng, 2, 6);
    const Slp prog = Slp::from_word(w);
    const auto exact = exact_probability(a5(), prog, caps());
    REQUIRE(exact.exact.has_value());
    const double truth = exact.exact->to_double();
    const auto mc = mc_probability(a5(), prog, 20'000, 1000 + trial);
    if (mc.estimate->lo <= truth && truth <= mc.estimate->hi) ++covered;
  }
  CHECK(covered >= 9);  // 95% intervals: all ten cover almost always
}

TEST_CASE("satisfaction profiles tabulate class-by-class behavior") {
  const PermutationGroup G = a5();

  // The solvability word satisfies exactly the solvable classes.
  const SynthesisReport built = synthesize_solvability_word(G, 2, caps());
  const auto rows = satisfaction_profile(G, built.word, 2, caps());
  CHECK(rows.size() == 44);
  for (const auto& row : rows) CHECK(row.satisfies == row.solvable);

  // The empty word satisfies every class.
  const auto all = satisfaction_profile(G, Slp::identity(2), 2, caps());
  for (const auto& row : all) CHECK(row.satisfies);

  // x1 satisfies exactly the classes whose first slot is the identity.
  const auto first = satisfaction_profile(G, Slp::input(2, 1), 2, caps());
  for (const auto& row : first) {
    REQUIRE(row.representative.size() == 2);
    CHECK(row.satisfies == (row.representative[0] == "()"));
  }
}

TEST_CASE("factoring by a normal subgroup raises satisfaction") {
  const PermutationGroup G = a5xc2();
  const PermutationGroup K(7, {cyc("(5 6)", 7)}, "C2");
  const Slp comm = word("[x1, x2]");

  const MonotonicityReport report = quotient_monotonicity(G, K, comm, caps());
  CHECK(report.holds);
  CHECK(report.kernel_identity);
  // Both sides equal 1/12 here: commuting pairs of A5xC2 are 1200/14400 and
  // of the quotient A5 are 300/3600.
  CHECK(report.p_group == Rational(1200, 14400));
  CHECK(report.p_quotient == Rational(300, 3600));
  CHECK(report.p_group == report.p_quotient);
  CHECK(report.kernel_fraction == report.p_quotient);

  // K = G: everything maps to the identity, so the quotient satisfies all.
  const MonotonicityReport full = quotient_monotonicity(G, G, comm, caps());
  CHECK(full.holds);
  CHECK(full.kernel_identity);
  CHECK(full.p_quotient == Rational(1, 1));

  // K = 1: the quotient is G itself.
  const MonotonicityReport none =
      quotient_monotonicity(G, PermutationGroup(7), comm, caps());
  CHECK(none.holds);
  CHECK(none.kernel_identity);
  CHECK(none.p_group == none.p_quotient);

  // Non-normal K is rejected, as is a degree mismatch.
  CHECK_THROWS_AS(
      quotient_monotonicity(s4(), PermutationGroup(4, {cyc("(0 1)", 4)}), comm, caps()),
      InputError);
  CHECK_THROWS_AS(quotient_monotonicity(G, PermutationGroup(4), comm, caps()),
                  InputError);
}

TEST_CASE("monotonicity holds for random words over a fixed quotient") {
  const PermutationGroup G = s4();
  const PermutationGroup V = normal_closure(G, {cyc("(0 1)(2 3)", 4)});
  Rng rng(515);
  for (int trial = 0; trial < 10; ++trial) {
    const Word w = random_word(rng, 2, 5);
    const MonotonicityReport report =
        quotient_monotonicity(G, V, Slp::from_word(w), caps());
    CHECK(report.holds);
    CHECK(report.kernel_identity);
  }
}

TEST_CASE("probability results serialize") {
  const auto exact = exact_probability(a5(), word("[x1, x2]"), caps());
  const auto j = exact.to_json();
  CHECK(j.contains("exact"));
  CHECK(j["exact"]["num"] == "300");

  const auto mc = mc_probability(a5(), word("x1"), 4096, 5);
  const auto mj = mc.to_json();
  CHECK(mj.contains("estimate"));
  CHECK(mj["estimate"]["n"] == 4096);
  CHECK(mj["estimate"]["seed"] == 5);

  const MonotonicityReport mono = quotient_monotonicity(
      a5xc2(), PermutationGroup(7, {cyc("(5 6)", 7)}), word("x1"), caps());
  const auto monoj = mono.to_json();
  CHECK(monoj.contains("holds"));
  CHECK(monoj.contains("kernel_identity"));
}
