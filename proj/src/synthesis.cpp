#include "grouplaw/synthesis.hpp"

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grouplaw/errors.hpp"

namespace grouplaw {

namespace {

SynthesisReport::Row make_row(const TupleClass& cls, bool satisfies) {
  SynthesisReport::Row row;
  row.representative.reserve(cls.representative.size());
  for (const Permutation& p : cls.representative) row.representative.push_back(p.cycle_string());
  row.members = cls.members;
  row.subgroup_order = cls.subgroup_order;
  row.solvable = cls.solvable;
  row.satisfies = satisfies;
  return row;
}

nlohmann::ordered_json row_json(const SynthesisReport::Row& row) {
  nlohmann::ordered_json rj;
  rj["representative"] = row.representative;
  rj["members"] = row.members.str();
  rj["subgroup_order"] = row.subgroup_order.str();
  rj["solvable"] = row.solvable;
  rj["satisfies"] = row.satisfies;
  return rj;
}

nlohmann::ordered_json rational_json(const Rational& q) {
  nlohmann::ordered_json j;
  j["num"] = q.num.str();
  j["den"] = q.den.str();
  j["reduced"] = q.reduced().str();
  j["value"] = q.to_double();
  return j;
}

void finish_word_fields(SynthesisReport& rep, const Caps& caps) {
  const Slp::Letters letters = rep.word.used_letters(caps.word_cap);
  rep.letters_used.assign(letters.letters.begin(), letters.letters.end());
  rep.letters_upper_bound_only = letters.upper_bound_only;
  if (const auto flat = rep.word.expand(caps.word_cap)) rep.word_flat = flat->str();
}

}  // namespace

std::vector<TupleClass> tuple_classes(const PermutationGroup& G, int n, const Caps& caps) {
  if (n < 1) throw InputError("tuple length must be positive");
  const ElementTable E = ElementTable::build(G, caps.oracle_cap);
  const int m = static_cast<int>(E.size());
  const BigInt total = bigint_pow(BigInt(m), static_cast<unsigned long long>(n));
  if (total > BigInt(caps.tuple_cap))
    throw CapExceeded("enumerating " + total.str() + " tuples is above the tuple cap");

  std::vector<TupleClass> classes;
  std::unordered_map<std::vector<int>, std::size_t, IntVecHash> by_table;
  std::unordered_map<std::vector<int>, bool, IntVecHash> solvable_by_subgroup;

  std::vector<int> tuple(n, 0);
  while (true) {
    MarkedClosure mc = marked_closure(E, tuple);
    const auto [it, fresh] = by_table.try_emplace(std::move(mc.table), classes.size());
    if (fresh) {
      TupleClass cls;
      cls.representative.reserve(n);
      for (int idx : tuple) cls.representative.push_back(E.element(idx));
      cls.subgroup_order = static_cast<unsigned long long>(mc.bfs_elements.size());
      std::vector<int> subgroup = std::move(mc.bfs_elements);
      std::sort(subgroup.begin(), subgroup.end());
      const auto [sit, sfresh] = solvable_by_subgroup.try_emplace(std::move(subgroup), false);
      if (sfresh) {
        std::vector<Permutation> gens;
        gens.reserve(tuple.size());
        for (int idx : tuple) gens.push_back(E.element(idx));
        sit->second = is_solvable(PermutationGroup(G.degree(), std::move(gens)));
      }
      cls.solvable = sit->second;
      classes.push_back(std::move(cls));
    }
    classes[it->second].members += 1;

    int pos = n - 1;
    while (pos >= 0 && tuple[pos] == m - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
  return classes;
}

SynthesisReport synthesize_solvability_word(const PermutationGroup& G, int n, const Caps& caps) {
  if (n < 1) throw InputError("word arity must be positive");
  SynthesisReport rep;
  rep.group = G.name();
  rep.n_or_d = n;
  rep.word = Slp(n);

  if (is_solvable(G)) {
    rep.note = "the group is solvable, so the empty word vanishes on every tuple";
    BigInt satisfied = 0;
    for (const TupleClass& cls : tuple_classes(G, n, caps)) {
      rep.classes.push_back(make_row(cls, true));
      satisfied += cls.members;
    }
    rep.exact_probability = Rational(satisfied, bigint_pow(G.order(), static_cast<unsigned long long>(n)));
    rep.verified = true;
    finish_word_fields(rep, caps);
    return rep;
  }

  const std::vector<TupleClass> classes = tuple_classes(G, n, caps);

  // One coordinate per class: the class subgroup itself when solvable (the
  // identity map), a just-nonsolvable quotient otherwise. The word then
  // evaluates on a solvable representative to its own projection there, so
  // landing in the core forces it to vanish on every solvable class.
  std::vector<QuotientMap> maps;
  maps.reserve(classes.size());
  std::vector<PermutationGroup> coords;
  coords.reserve(classes.size());
  for (const TupleClass& cls : classes) {
    PermutationGroup H(G.degree(), cls.representative);
    if (cls.solvable) {
      maps.push_back(quotient_by(H, PermutationGroup(G.degree()), caps.oracle_cap));
    } else {
      maps.push_back(just_nonsolvable_quotient(H, caps.oracle_cap));
    }
    coords.push_back(maps.back().image());
  }

  auto ambient = std::make_shared<ProductGroup>(std::move(coords));
  std::vector<std::vector<Permutation>> rows(n);
  for (int j = 0; j < n; ++j) {
    rows[j].reserve(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
      rows[j].push_back(maps[i].apply(classes[i].representative[j]));
  }
  const TaggedSubgroup L = assemble(ambient, rows);
  auto core = perfect_core(L);
  const TaggedSubgroup& M = core.first;

  std::vector<SupportDemand> demands(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const bool expect_nontrivial = !classes[i].solvable;
    const bool nontrivial = M.projection(static_cast<int>(i)).order() > 1;
    if (nontrivial != expect_nontrivial)
      throw InternalError("perfect core support is wrong at class " + std::to_string(i));
    demands[i] = expect_nontrivial ? SupportDemand::Nontrivial : SupportDemand::Trivial;
  }
  PatternElement pattern = support_pattern_element(M, demands, caps.oracle_cap);
  rep.word = std::move(pattern.program);

  const Permutation id(G.degree());
  BigInt satisfied = 0;
  bool ok = true;
  for (const TupleClass& cls : classes) {
    const Permutation val = rep.word.evaluate(std::span<const Permutation>(cls.representative), G.degree());
    const bool sat = val == id;
    if (sat) satisfied += cls.members;
    if (sat != cls.solvable) ok = false;
    rep.classes.push_back(make_row(cls, sat));
  }
  rep.verified = ok;
  rep.exact_probability = Rational(satisfied, bigint_pow(G.order(), static_cast<unsigned long long>(n)));
  finish_word_fields(rep, caps);
  return rep;
}

SynthesisReport verify_solvability_word(const PermutationGroup& G, int n, const Slp& word,
                                        const Caps& caps) {
  if (n < 1) throw InputError("tuple length must be positive");
  if (word.arity() > n) throw InputError("the word uses more letters than the tuple length");
  SynthesisReport rep;
  rep.group = G.name();
  rep.n_or_d = n;
  rep.word = word;

  const Permutation id(G.degree());
  BigInt satisfied = 0;
  bool ok = true;
  for (const TupleClass& cls : tuple_classes(G, n, caps)) {
    const Permutation val = word.evaluate(std::span<const Permutation>(cls.representative), G.degree());
    const bool sat = val == id;
    if (sat) satisfied += cls.members;
    if (sat != cls.solvable && ok) {
      ok = false;
      std::string tuple_text;
      for (const Permutation& p : cls.representative) {
        if (!tuple_text.empty()) tuple_text += ", ";
        tuple_text += p.cycle_string();
      }
      rep.note = "first counterexample: class " + std::to_string(rep.classes.size()) + " with representative (" + tuple_text + ")";
    }
    rep.classes.push_back(make_row(cls, sat));
  }
  rep.verified = ok;
  rep.exact_probability = Rational(satisfied, bigint_pow(G.order(), static_cast<unsigned long long>(n)));
  finish_word_fields(rep, caps);
  return rep;
}

SynthesisReport synthesize_probability_word(const PermutationGroup& G, int d, int k,
                                            std::optional<int> orbit_count,
                                            std::vector<GroupAutomorphism> automorphisms,
                                            const Caps& caps) {
  if (d < 1) throw InputError("tuple length must be positive");
  if (k < 0) throw InputError("the vanishing orbit count must be nonnegative");
  if (!is_just_nonsolvable(G, caps.oracle_cap))
    throw InputError("the group is not just nonsolvable");
  const std::vector<PermutationGroup> mins = minimal_normal_subgroups(G, caps.oracle_cap);
  if (mins.size() != 1) throw InternalError("expected a unique minimal normal subgroup");
  const PermutationGroup& N = mins.front();

  const std::vector<PermutationGroup> factors = simple_factor_decomposition(N, caps.oracle_cap);
  const std::vector<Permutation> factor_elems = naive_enumerate(factors.front(), caps.oracle_cap);
  if (factor_elems.size() < 2) throw InternalError("a simple factor has no nontrivial element");
  const Permutation gfix = factor_elems[1];  // least nontrivial element

  const std::vector<std::vector<Permutation>> tuples =
      generating_tuples(G, d, caps.tuple_cap, caps.oracle_cap);
  if (tuples.empty())
    throw InputError("the group has no generating " + std::to_string(d) + "-tuples");
  if (automorphisms.empty()) automorphisms = automorphism_group(G, caps.oracle_cap);
  const TupleOrbits orbits = aut_orbits_on_tuples(G, tuples, automorphisms, caps.oracle_cap);
  const int r = static_cast<int>(orbits.orbits.size());
  const int s = orbit_count.value_or(r);
  if (s < 1) throw InputError("at least one orbit must be selected (an empty selection is degenerate)");
  if (s > r) throw InputError("only " + std::to_string(r) + " orbits exist");
  if (k > s) throw InputError("the vanishing orbit count cannot exceed the selected orbit count");
  const BigInt aut_order = static_cast<unsigned long long>(automorphisms.size());

  auto ambient = std::make_shared<ProductGroup>(std::vector<PermutationGroup>(s, G));
  std::vector<std::vector<Permutation>> rows(d);
  for (int t = 0; t < d; ++t) {
    rows[t].reserve(s);
    for (int i = 0; i < s; ++i) rows[t].push_back(orbits.orbits[i].representative[t]);
  }
  const TaggedSubgroup H = assemble(ambient, rows);

  // Distinct orbits give pairwise automorphism-independent generating
  // columns, which force the socle product into H; check it outright.
  for (int i = 0; i < s; ++i) {
    for (const Permutation& x : N.generators()) {
      if (!H.contains(ambient->embed(i, x)))
        throw InternalError("the socle product is not contained in the assembled subgroup");
    }
  }

  std::vector<Permutation> target(s, Permutation(G.degree()));
  for (int i = k; i < s; ++i) target[i] = gfix;
  const Permutation h = ambient->assemble_element(target);

  SynthesisReport rep;
  rep.group = G.name();
  rep.n_or_d = d;
  try {
    rep.word = H.membership_program(h);
  } catch (const NonMembership&) {
    throw InternalError("the target element fell outside the assembled subgroup");
  }

  const Permutation id(G.degree());
  bool ok = true;
  BigInt satisfied_generating = 0;
  for (int i = 0; i < r; ++i) {
    const Permutation val =
        rep.word.evaluate(std::span<const Permutation>(orbits.orbits[i].representative), G.degree());
    const bool sat = val == id;
    if (sat) satisfied_generating += static_cast<unsigned long long>(orbits.orbits[i].size);
    if (i < k && !sat) ok = false;
    if (i >= k && i < s && !(val == gfix)) ok = false;
  }
  if (s == r && satisfied_generating != BigInt(k) * aut_order) ok = false;

  const BigInt gd = bigint_pow(G.order(), static_cast<unsigned long long>(d));
  BigInt satisfied = 0;
  BigInt satisfied_generating_by_class = 0;
  for (const TupleClass& cls : tuple_classes(G, d, caps)) {
    const Permutation val = rep.word.evaluate(std::span<const Permutation>(cls.representative), G.degree());
    const bool sat = val == id;
    if (sat) {
      satisfied += cls.members;
      if (cls.subgroup_order == G.order()) satisfied_generating_by_class += cls.members;
    }
    rep.classes.push_back(make_row(cls, sat));
  }
  if (satisfied_generating_by_class != satisfied_generating)
    throw InternalError("orbit and class counts of satisfying generating tuples disagree");
  rep.exact_probability = Rational(satisfied, gd);

  rep.lower_bound = Rational(BigInt(k) * aut_order, gd);
  if (s == r) {
    const MaximalSubgroups maxes = maximal_subgroups(G, caps.oracle_cap);
    const BigInt m = static_cast<unsigned long long>(maxes.subgroups.size());
    const BigInt p2 = bigint_pow(BigInt(2), static_cast<unsigned long long>(d));
    rep.upper_bound = Rational(BigInt(k) * aut_order * p2 + m * gd, gd * p2);
  }
  if (!(*rep.lower_bound <= *rep.exact_probability)) ok = false;
  if (rep.upper_bound && !(*rep.exact_probability <= *rep.upper_bound)) ok = false;

  rep.verified = ok;
  rep.trivial_coordinates = k;
  rep.selected_orbits = s;
  rep.total_orbits = r;
  rep.aut_order = aut_order;
  rep.satisfied_generating = satisfied_generating;
  finish_word_fields(rep, caps);
  return rep;
}

ObstructionReport quotient_obstruction_check(const PermutationGroup& G, int n, const Slp& word,
                                             const Caps& caps) {
  if (n < 1) throw InputError("tuple length must be positive");
  if (word.arity() > n) throw InputError("the word uses more letters than the tuple length");
  ObstructionReport rep;
  rep.obstructed = true;
  const Permutation id(G.degree());
  for (const TupleClass& cls : tuple_classes(G, n, caps)) {
    if (cls.subgroup_order != G.order()) continue;
    const bool sat = word.evaluate(std::span<const Permutation>(cls.representative), G.degree()) == id;
    if (sat && rep.obstructed) {
      rep.obstructed = false;
      rep.offending_class = rep.generating_classes.size();
    }
    rep.generating_classes.push_back(make_row(cls, sat));
  }
  return rep;
}

nlohmann::ordered_json SynthesisReport::to_json() const {
  nlohmann::ordered_json j;
  j["group"] = group;
  j["n_or_d"] = n_or_d;
  j["word_slp"] = word.to_json();
  j["word_slp_size"] = word.size();
  if (word_flat) j["word_flat"] = *word_flat;
  auto rows = nlohmann::ordered_json::array();
  for (const Row& row : classes) rows.push_back(row_json(row));
  j["classes"] = std::move(rows);
  if (exact_probability) j["exact_probability"] = rational_json(*exact_probability);
  if (lower_bound || upper_bound) {
    nlohmann::ordered_json b;
    if (lower_bound) b["lower"] = rational_json(*lower_bound);
    if (upper_bound) b["upper"] = rational_json(*upper_bound);
    j["bounds"] = std::move(b);
  }
  j["verified"] = verified;
  j["letters_used"] = letters_used;
  if (letters_upper_bound_only) j["letters_upper_bound_only"] = true;
  if (note) j["note"] = *note;
  if (trivial_coordinates) j["k"] = *trivial_coordinates;
  if (selected_orbits) j["s"] = *selected_orbits;
  if (total_orbits) j["r"] = *total_orbits;
  if (aut_order) j["aut_order"] = aut_order->str();
  if (satisfied_generating) j["satisfied_generating"] = satisfied_generating->str();
  return j;
}

nlohmann::ordered_json ObstructionReport::to_json() const {
  nlohmann::ordered_json j;
  j["obstructed"] = obstructed;
  if (offending_class) j["offending_class"] = *offending_class;
  auto rows = nlohmann::ordered_json::array();
  for (const SynthesisReport::Row& row : generating_classes) rows.push_back(row_json(row));
  j["generating_classes"] = std::move(rows);
  return j;
}

}  // namespace grouplaw
