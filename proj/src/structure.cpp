#include "grouplaw/structure.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "grouplaw/errors.hpp"

namespace grouplaw {

namespace {

constexpr std::size_t kTableLimit = 2048;  // largest order that gets a mult table

}  // namespace

// ------------------------------------------------------------ ElementTable

ElementTable ElementTable::build(const PermutationGroup& G, std::size_t cap) {
  ElementTable t;
  t.elems_ = naive_enumerate(G, cap);
  const std::size_t n = t.elems_.size();
  t.lookup_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) t.lookup_.emplace(t.elems_[i], static_cast<int>(i));
  t.inv_.resize(n);
  t.order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.inv_[i] = t.lookup_.at(t.elems_[i].inverse());
    t.order_[i] = t.elems_[i].element_order();
    if (t.order_[i] == 1) t.id_ = static_cast<int>(i);
  }
  if (n <= kTableLimit) {
    t.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        t.table_[a * n + b] = t.lookup_.at(t.elems_[a] * t.elems_[b]);
  }
  return t;
}

int ElementTable::index(const Permutation& p) const {
  const int i = try_index(p);
  if (i < 0) throw InputError("element does not belong to the group");
  return i;
}

int ElementTable::try_index(const Permutation& p) const {
  const auto it = lookup_.find(p);
  return it == lookup_.end() ? -1 : it->second;
}

int ElementTable::try_index_unchecked(const Permutation& p) const { return lookup_.at(p); }

std::vector<int> ElementTable::closure(const std::vector<int>& gen_indices,
                                       std::size_t stop_size) const {
  std::vector<char> seen(size(), 0);
  std::vector<int> out{id_};
  seen[id_] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (stop_size && out.size() >= stop_size) break;
    for (int g : gen_indices) {
      const int y = mul(out[head], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        if (stop_size && out.size() >= stop_size) break;
      }
    }
  }
  return out;
}

bool ElementTable::generates(const std::vector<int>& tuple) const {
  return closure(tuple, size()).size() == size();
}

// ---------------------------------------------------------- marked closure

MarkedClosure marked_closure(const ElementTable& E, const std::vector<int>& tuple) {
  MarkedClosure mc;
  const int n = static_cast<int>(tuple.size());
  std::vector<int> label(E.size(), -1);
  mc.bfs_elements.push_back(E.identity_index());
  label[E.identity_index()] = 0;
  for (std::size_t head = 0; head < mc.bfs_elements.size(); ++head)
    for (int j = 0; j < n; ++j) {
      const int y = E.mul(mc.bfs_elements[head], tuple[j]);
      if (label[y] < 0) {
        label[y] = static_cast<int>(mc.bfs_elements.size());
        mc.bfs_elements.push_back(y);
      }
    }
  mc.table.reserve(mc.bfs_elements.size() * n);
  for (int x : mc.bfs_elements)
    for (int j = 0; j < n; ++j) mc.table.push_back(label[E.mul(x, tuple[j])]);
  return mc;
}

// ----------------------------------------------------------- automorphisms

std::vector<GroupAutomorphism> automorphism_group(const PermutationGroup& G, std::size_t cap) {
  const ElementTable E = ElementTable::build(G, cap);

  // search over the distinct nontrivial generators; identity and duplicate
  // entries in the generator list are reconstructed from the found images
  std::vector<int> unique_gens;
  std::vector<int> gen_slot(G.generators().size(), -1);  // -1 = identity generator
  for (std::size_t i = 0; i < G.generators().size(); ++i) {
    const int idx = E.index(G.generators()[i]);
    if (idx == E.identity_index()) continue;
    const auto it = std::find(unique_gens.begin(), unique_gens.end(), idx);
    if (it == unique_gens.end()) {
      gen_slot[i] = static_cast<int>(unique_gens.size());
      unique_gens.push_back(idx);
    } else {
      gen_slot[i] = static_cast<int>(it - unique_gens.begin());
    }
  }
  const int m = static_cast<int>(unique_gens.size());

  std::vector<std::vector<int>> target_tables(m + 1);
  for (int j = 1; j <= m; ++j)
    target_tables[j] =
        marked_closure(E, std::vector<int>(unique_gens.begin(), unique_gens.begin() + j)).table;

  std::vector<GroupAutomorphism> out;
  std::vector<int> chosen;
  auto record = [&] {
    GroupAutomorphism a;
    for (std::size_t i = 0; i < G.generators().size(); ++i)
      a.generator_images.push_back(gen_slot[i] < 0 ? Permutation(G.degree())
                                                   : E.element(chosen[gen_slot[i]]));
    out.push_back(std::move(a));
  };
  auto backtrack = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      record();
      return;
    }
    const long long want_order = E.order_of(unique_gens[depth]);
    for (int cand = 0; cand < static_cast<int>(E.size()); ++cand) {
      if (E.order_of(cand) != want_order) continue;
      chosen.push_back(cand);
      if (marked_closure(E, chosen).table == target_tables[depth + 1]) self(self, depth + 1);
      chosen.pop_back();
    }
  };
  backtrack(backtrack, 0);
  return out;
}

std::vector<std::vector<int>> automorphism_element_maps(
    const PermutationGroup& G, const ElementTable& E, const std::vector<GroupAutomorphism>& auts) {
  std::vector<int> gen_idx, image_idx;
  std::vector<std::vector<int>> maps;
  for (const auto& aut : auts) {
    if (aut.generator_images.size() != G.generators().size())
      throw InputError("automorphism image list does not match the generator list");
    gen_idx.clear();
    image_idx.clear();
    for (std::size_t i = 0; i < G.generators().size(); ++i) {
      gen_idx.push_back(E.index(G.generators()[i]));
      image_idx.push_back(E.index(aut.generator_images[i]));
    }
    std::vector<int> map(E.size(), -1);
    map[E.identity_index()] = E.identity_index();
    std::vector<int> queue{E.identity_index()};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t j = 0; j < gen_idx.size(); ++j) {
        const int y = E.mul(queue[head], gen_idx[j]);
        if (map[y] < 0) {
          map[y] = E.mul(map[queue[head]], image_idx[j]);
          queue.push_back(y);
        }
      }
    if (queue.size() != E.size())
      throw InputError("automorphism images given for a non-generating list");
    maps.push_back(std::move(map));
  }
  return maps;
}

// ------------------------------------------------------------ tuple orbits

TupleOrbits aut_orbits_on_tuples(const PermutationGroup& G,
                                 const std::vector<std::vector<Permutation>>& tuples,
                                 const std::vector<GroupAutomorphism>& auts, std::size_t cap) {
  const ElementTable E = ElementTable::build(G, cap);
  const auto maps = automorphism_element_maps(G, E, auts);

  std::vector<std::vector<int>> index_tuples;
  index_tuples.reserve(tuples.size());
  for (const auto& t : tuples) {
    std::vector<int> it;
    it.reserve(t.size());
    for (const auto& p : t) it.push_back(E.index(p));
    index_tuples.push_back(std::move(it));
  }

  struct RawOrbit {
    std::vector<int> rep;
    std::size_t size;
    bool rep_generates;
  };
  std::vector<RawOrbit> raw;
  std::unordered_map<std::vector<int>, int, IntVecHash> orbit_of_key;

  for (const auto& start : index_tuples) {
    if (orbit_of_key.count(start)) continue;
    const int orbit_id = static_cast<int>(raw.size());
    std::vector<std::vector<int>> members{start};
    orbit_of_key.emplace(start, orbit_id);
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto& map : maps) {
        std::vector<int> img(members[head].size());
        for (std::size_t c = 0; c < img.size(); ++c) img[c] = map[members[head][c]];
        if (orbit_of_key.emplace(img, orbit_id).second) members.push_back(std::move(img));
      }
    }
    RawOrbit o;
    o.rep = *std::min_element(members.begin(), members.end());
    o.size = members.size();
    o.rep_generates = E.generates(o.rep);
    if (o.rep_generates && o.size != auts.size())
      throw InternalError("a generating tuple's orbit size differs from the automorphism count");
    raw.push_back(std::move(o));
  }

  std::vector<int> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return raw[a].rep < raw[b].rep; });
  std::vector<int> rank(raw.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = static_cast<int>(i);

  TupleOrbits out;
  for (int p : perm) {
    TupleOrbits::Orbit o;
    for (int idx : raw[p].rep) o.representative.push_back(E.element(idx));
    o.size = raw[p].size;
    out.orbits.push_back(std::move(o));
  }
  out.orbit_of.reserve(index_tuples.size());
  for (const auto& it : index_tuples) out.orbit_of.push_back(rank[orbit_of_key.at(it)]);
  return out;
}

bool automorphism_independent(const PermutationGroup& G, const std::vector<Permutation>& s,
                              const std::vector<Permutation>& t,
                              const std::vector<GroupAutomorphism>& auts, int* witness) {
  if (s.size() != t.size()) throw InputError("tuples must have equal length");
  for (const auto& p : s)
    if (!G.contains(p)) throw InputError("tuple entry lies outside the group");
  for (const auto& p : t)
    if (!G.contains(p)) throw InputError("tuple entry lies outside the group");

  for (std::size_t a = 0; a < auts.size(); ++a) {
    // apply the automorphism entrywise by rebuilding each entry from the
    // generator images via a membership program over G's generators
    bool all_match = true;
    for (std::size_t c = 0; c < s.size() && all_match; ++c) {
      const SiftOutcome sift = G.sift(s[c]);
      if (!sift.member) throw InternalError("contained element failed to sift");
      const Permutation image =
          sift.program.evaluate(auts[a].generator_images, G.degree());
      all_match = image == t[c];
    }
    if (all_match) {
      if (witness) *witness = static_cast<int>(a);
      return false;
    }
  }
  return true;
}

// --------------------------------------------------- normal subgroup tools

namespace {

bool subgroup_leq(const PermutationGroup& A, const PermutationGroup& B) {
  for (const auto& g : A.generators())
    if (!B.contains(g)) return false;
  return true;
}

}  // namespace

std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& G,
                                                       std::size_t cap) {
  if (G.trivial()) throw InputError("the trivial group has no minimal normal subgroup");
  const auto elems = naive_enumerate(G, cap);
  std::vector<PermutationGroup> closures;
  for (const auto& e : elems) {
    if (e.is_identity()) continue;
    PermutationGroup N = normal_closure(G, {e});
    bool known = false;
    for (const auto& M : closures)
      if (M.order() == N.order() && subgroup_leq(N, M)) {
        known = true;
        break;
      }
    if (!known) closures.push_back(std::move(N));
  }
  std::vector<PermutationGroup> minimal;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    bool is_min = true;
    for (std::size_t j = 0; j < closures.size() && is_min; ++j)
      if (j != i && closures[j].order() < closures[i].order() &&
          subgroup_leq(closures[j], closures[i]))
        is_min = false;
    if (is_min) minimal.push_back(closures[i]);
  }
  return minimal;
}

bool is_simple(const PermutationGroup& G, std::size_t cap) {
  if (G.order() <= 1) return false;
  const auto elems = naive_enumerate(G, cap);
  for (const auto& e : elems) {
    if (e.is_identity()) continue;
    if (normal_closure(G, {e}).order() != G.order()) return false;
  }
  return true;
}

std::vector<PermutationGroup> simple_factor_decomposition(const PermutationGroup& N,
                                                          std::size_t cap) {
  if (N.trivial()) return {};
  {
    std::vector<Permutation> seeds;
    const auto& gens = N.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        seeds.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
    if (normal_closure(N, seeds).order() != N.order())
      throw InputError("not a product of nonabelian simple groups: input is not perfect");
  }
  std::vector<PermutationGroup> factors = minimal_normal_subgroups(N, cap);
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    int ma = a.degree(), mb = b.degree();
    for (const auto& g : a.generators())
      if (g.first_moved() >= 0) ma = std::min(ma, g.first_moved());
    for (const auto& g : b.generators())
      if (g.first_moved() >= 0) mb = std::min(mb, g.first_moved());
    return ma < mb;
  });

  BigInt product = 1;
  for (const auto& F : factors) {
    if (!is_simple(F, cap))
      throw InputError("not a product of nonabelian simple groups: a factor is not simple");
    bool abelian = true;
    for (const auto& a : F.generators())
      for (const auto& b : F.generators())
        if (!(a * b == b * a)) abelian = false;
    if (abelian)
      throw InputError("not a product of nonabelian simple groups: a factor is abelian");
    product *= F.order();
  }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      for (const auto& a : factors[i].generators())
        for (const auto& b : factors[j].generators())
          if (!(a * b == b * a))
            throw InputError("not a product of nonabelian simple groups: factors do not commute");
  if (product != N.order())
    throw InputError("not a product of nonabelian simple groups: factor orders do not multiply up");
  return factors;
}

bool is_just_nonsolvable(const PermutationGroup& G, std::size_t cap) {
  if (is_solvable(G)) return false;
  const PermutationGroup core = perfect_core_of(G);
  const auto elems = naive_enumerate(G, cap);
  for (const auto& e : elems) {
    if (e.is_identity()) continue;
    const PermutationGroup N = normal_closure(G, {e});
    if (!subgroup_leq(core, N)) return false;  // G/N is nonsolvable
  }
  return true;
}

// ---------------------------------------------------------------- quotient

Permutation QuotientMap::apply(const Permutation& g) const {
  if (identity_) {
    if (!source_.contains(g)) throw InputError("element lies outside the quotient's source");
    return g;
  }
  std::vector<int> images(coset_reps_.size());
  for (std::size_t c = 0; c < coset_reps_.size(); ++c) {
    const auto it = coset_of_.find(coset_reps_[c] * g);
    if (it == coset_of_.end()) throw InputError("element lies outside the quotient's source");
    images[c] = it->second;
  }
  return Permutation(std::move(images));
}

QuotientMap quotient_by(const PermutationGroup& G, const PermutationGroup& K, std::size_t cap) {
  if (K.degree() != G.degree()) throw InputError("kernel degree does not match the group");
  for (const auto& k : K.generators())
    if (!G.contains(k)) throw InputError("kernel is not a subgroup of the group");
  for (const auto& k : K.generators())
    for (const auto& g : G.generators())
      if (!K.contains(k.conjugated_by(g)))
        throw InputError("kernel is not a normal subgroup of the group");

  QuotientMap q;
  q.source_ = G;
  q.kernel_ = K;
  if (K.order() == 1) {
    q.identity_ = true;
    q.image_ = G;
    q.gen_images_ = G.generators();
    return q;
  }

  const auto elems = naive_enumerate(G, cap);
  const auto kelems = naive_enumerate(K, cap);
  q.coset_of_.reserve(elems.size() * 2);
  for (const auto& e : elems) {
    if (q.coset_of_.count(e)) continue;
    const int id = static_cast<int>(q.coset_reps_.size());
    q.coset_reps_.push_back(e);  // least element of its coset: elems is sorted
    for (const auto& k : kelems) q.coset_of_.emplace(k * e, id);
  }
  q.identity_ = false;
  for (const auto& g : G.generators()) {
    std::vector<int> images(q.coset_reps_.size());
    for (std::size_t c = 0; c < q.coset_reps_.size(); ++c)
      images[c] = q.coset_of_.at(q.coset_reps_[c] * g);
    q.gen_images_.push_back(Permutation(std::move(images)));
  }
  const std::string name =
      (G.name().empty() ? "G" : G.name()) + "/" + (K.name().empty() ? "K" : K.name());
  q.image_ = PermutationGroup(static_cast<int>(q.coset_reps_.size()), q.gen_images_, name);
  return q;
}

QuotientMap just_nonsolvable_quotient(const PermutationGroup& H, std::size_t cap) {
  if (is_solvable(H))
    throw InputError("the group is solvable: it has no just-nonsolvable quotient");
  const PermutationGroup core = perfect_core_of(H);

  auto elems = naive_enumerate(H, cap);
  std::stable_sort(elems.begin(), elems.end(), [](const Permutation& a, const Permutation& b) {
    return a.element_order() < b.element_order();
  });

  std::vector<Permutation> kernel_gens;
  PermutationGroup K(H.degree());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : elems) {
      if (e.is_identity() || K.contains(e)) continue;
      std::vector<Permutation> seeds = kernel_gens;
      seeds.push_back(e);
      PermutationGroup K2 = normal_closure(H, seeds);
      if (!subgroup_leq(core, K2)) {  // H/K2 still nonsolvable
        kernel_gens.push_back(e);
        K = std::move(K2);
        grew = true;
      }
    }
  }
  K = PermutationGroup(H.degree(), K.generators(),
                       (H.name().empty() ? "" : H.name() + ".") + "radical");
  return quotient_by(H, K, cap);
}

// ------------------------------------------------------- subgroup lattices

std::vector<std::vector<int>> all_subgroup_index_sets(const PermutationGroup& G,
                                                      const ElementTable& E) {
  (void)G;
  const int n = static_cast<int>(E.size());
  std::unordered_map<std::vector<int>, int, IntVecHash> seen;
  std::vector<std::vector<int>> all;        // sorted element-index sets
  std::vector<std::vector<int>> gen_elems;  // a generating set per subgroup

  auto add = [&](std::vector<int> gens) -> bool {
    std::vector<int> cl = E.closure(gens);
    std::sort(cl.begin(), cl.end());
    if (seen.emplace(cl, static_cast<int>(all.size())).second) {
      all.push_back(std::move(cl));
      gen_elems.push_back(std::move(gens));
      return true;
    }
    return false;
  };

  add({});  // trivial subgroup
  std::size_t head = 0;
  for (int e = 0; e < n; ++e) add({e});
  // join each known subgroup with each cyclic subgroup until stable
  while (head < all.size()) {
    const std::vector<int> base_gens = gen_elems[head];
    const std::vector<int> members = all[head];
    ++head;
    if (members.size() == E.size()) continue;
    std::vector<char> inside(n, 0);
    for (int x : members) inside[x] = 1;
    for (int e = 0; e < n; ++e) {
      if (inside[e]) continue;
      std::vector<int> gens = base_gens;
      gens.push_back(e);
      add(std::move(gens));
    }
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return all;
}

namespace {

// Small deterministic generating set for the subgroup with the given sorted
// element-index set: greedily extend by the least element not yet generated.
std::vector<int> small_generating_set(const ElementTable& E, const std::vector<int>& members) {
  std::vector<int> gens;
  std::vector<char> have(E.size(), 0);
  have[E.identity_index()] = 1;
  std::size_t covered = 1;
  while (covered < members.size()) {
    int next = -1;
    for (int m : members)
      if (!have[m]) {
        next = m;
        break;
      }
    gens.push_back(next);
    const auto cl = E.closure(gens);
    for (int x : cl)
      if (!have[x]) have[x] = 1;
    covered = cl.size();
  }
  return gens;
}

}  // namespace

std::vector<Permutation> coset_action(const PermutationGroup& G, const PermutationGroup& H,
                                      const ElementTable& E) {
  std::vector<int> coset_of(E.size(), -1);
  std::vector<int> reps;
  std::vector<int> hmembers;
  for (std::size_t i = 0; i < E.size(); ++i)
    if (H.contains(E.element(static_cast<int>(i)))) hmembers.push_back(static_cast<int>(i));
  for (int e = 0; e < static_cast<int>(E.size()); ++e) {
    if (coset_of[e] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(e);
    for (int h : hmembers) coset_of[E.mul(h, e)] = id;
  }
  std::vector<Permutation> action;
  for (const auto& g : G.generators()) {
    const int gi = E.index(g);
    std::vector<int> images(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) images[c] = coset_of[E.mul(reps[c], gi)];
    action.push_back(Permutation(std::move(images)));
  }
  return action;
}

bool is_primitive_action(const std::vector<Permutation>& gens, int degree) {
  if (degree == 1) return true;
  // transitivity
  {
    std::vector<char> seen(degree, 0);
    std::vector<int> orbit{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const auto& g : gens) {
        const int y = g[orbit[head]];
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
    if (orbit.size() != static_cast<std::size_t>(degree)) return false;
  }
  // minimal block containing {0, p} for each p; any proper one kills it
  for (int p = 1; p < degree; ++p) {
    std::vector<int> parent(degree);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::pair<int, int>> queue;
    auto merge = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      parent[b] = a;
      queue.emplace_back(a, b);
    };
    merge(0, p);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto [a, b] = queue[head];
      for (const auto& g : gens) merge(g[a], g[b]);
    }
    int block_size = 0;
    const int root = find(0);
    for (int x = 0; x < degree; ++x)
      if (find(x) == root) ++block_size;
    if (block_size != degree) return false;  // proper block of size >= 2
  }
  return true;
}

MaximalSubgroups maximal_subgroups(const PermutationGroup& G, std::size_t cap) {
  const ElementTable E = ElementTable::build(G, cap);
  const auto all = all_subgroup_index_sets(G, E);

  MaximalSubgroups out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].size() == E.size()) continue;  // the group itself
    bool maximal = true;
    for (std::size_t j = 0; j < all.size() && maximal; ++j) {
      if (j == i || all[j].size() == E.size() || all[j].size() <= all[i].size()) continue;
      maximal = !std::includes(all[j].begin(), all[j].end(), all[i].begin(), all[i].end());
    }
    if (!maximal) continue;
    std::vector<Permutation> gens;
    for (int idx : small_generating_set(E, all[i])) gens.push_back(E.element(idx));
    PermutationGroup M(G.degree(), std::move(gens));
    const auto action = coset_action(G, M, E);
    if (!is_primitive_action(action, static_cast<int>(E.size() / all[i].size())))
      throw InternalError("reported maximal subgroup fails the primitivity self-check");
    out.indexes.push_back(BigInt(static_cast<unsigned long long>(E.size() / all[i].size())));
    out.subgroups.push_back(std::move(M));
  }
  return out;
}

std::vector<std::vector<Permutation>> generating_tuples(const PermutationGroup& G, int d,
                                                        std::size_t tuple_cap,
                                                        std::size_t oracle_cap) {
  if (d < 1) throw InputError("tuple length must be at least 1");
  const ElementTable E = ElementTable::build(G, oracle_cap);
  BigInt total = bigint_pow(BigInt(static_cast<unsigned long long>(E.size())),
                            static_cast<unsigned long long>(d));
  if (total > BigInt(static_cast<unsigned long long>(tuple_cap)))
    throw CapExceeded("tuple enumeration would visit " + total.str() +
                      " tuples, past the cap of " + std::to_string(tuple_cap));

  std::vector<std::vector<Permutation>> out;
  std::vector<int> odo(d, 0);
  while (true) {
    if (E.generates(odo)) {
      std::vector<Permutation> t;
      t.reserve(d);
      for (int idx : odo) t.push_back(E.element(idx));
      out.push_back(std::move(t));
    }
    int pos = d - 1;
    while (pos >= 0 && odo[pos] == static_cast<int>(E.size()) - 1) odo[pos--] = 0;
    if (pos < 0) break;
    ++odo[pos];
  }
  return out;
}

}  // namespace grouplaw
