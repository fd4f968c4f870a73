#include "grouplaw/product.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "grouplaw/errors.hpp"

namespace grouplaw {

namespace {

Permutation perm_commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

}  // namespace

ProductGroup::ProductGroup(std::vector<PermutationGroup> coordinates)
    : coords_(std::move(coordinates)) {
  if (coords_.empty()) throw InputError("a product group needs at least one coordinate");
  offsets_.reserve(coords_.size());
  for (const PermutationGroup& c : coords_) {
    offsets_.push_back(total_degree_);
    total_degree_ += c.degree();
  }
}

Permutation ProductGroup::embed(int i, const Permutation& p) const {
  if (i < 0 || i >= num_coordinates()) throw InputError("coordinate index out of range");
  if (p.degree() != coords_[i].degree()) throw InputError("embedded element has the wrong degree");
  std::vector<int> images(total_degree_);
  std::iota(images.begin(), images.end(), 0);
  const int off = offsets_[i];
  for (int x = 0; x < p.degree(); ++x) images[off + x] = off + p[x];
  return Permutation(std::move(images));
}

Permutation ProductGroup::project(int i, const Permutation& p) const {
  if (i < 0 || i >= num_coordinates()) throw InputError("coordinate index out of range");
  if (p.degree() != total_degree_) throw InputError("projected element has the wrong degree");
  const int off = offsets_[i];
  const int deg = coords_[i].degree();
  std::vector<int> images(deg);
  for (int x = 0; x < deg; ++x) {
    const int y = p[off + x];
    if (y < off || y >= off + deg)
      throw InputError("element does not preserve the coordinate ranges");
    images[x] = y - off;
  }
  return Permutation(std::move(images));
}

Permutation ProductGroup::assemble_element(const std::vector<Permutation>& per_coordinate) const {
  if (static_cast<int>(per_coordinate.size()) != num_coordinates())
    throw InputError("assembling an element needs one entry per coordinate");
  std::vector<int> images(total_degree_);
  for (int i = 0; i < num_coordinates(); ++i) {
    const Permutation& p = per_coordinate[i];
    if (p.degree() != coords_[i].degree())
      throw InputError("assembled entry has the wrong degree");
    const int off = offsets_[i];
    for (int x = 0; x < p.degree(); ++x) images[off + x] = off + p[x];
  }
  return Permutation(std::move(images));
}

bool ProductGroup::respects_ranges(const Permutation& p) const {
  if (p.degree() != total_degree_) return false;
  for (int i = 0; i < num_coordinates(); ++i) {
    const int off = offsets_[i];
    const int deg = coords_[i].degree();
    for (int x = 0; x < deg; ++x) {
      const int y = p[off + x];
      if (y < off || y >= off + deg) return false;
    }
  }
  return true;
}

TaggedSubgroup::TaggedSubgroup(std::shared_ptr<const ProductGroup> ambient, int arity,
                               std::vector<Permutation> generators, std::vector<Slp> tags)
    : ambient_(std::move(ambient)),
      arity_(arity),
      gens_(std::move(generators)),
      tags_(std::move(tags)) {
  if (!ambient_) throw InputError("a tagged subgroup needs an ambient product");
  if (arity_ < 0) throw InputError("tag arity must be nonnegative");
  if (gens_.size() != tags_.size()) throw InputError("generators and tags must align");
  if (gens_.empty()) {
    gens_.emplace_back(ambient_->total_degree());
    tags_.emplace_back(arity_);
  }
  for (const Permutation& g : gens_) {
    if (g.degree() != ambient_->total_degree())
      throw InputError("generator has the wrong degree for the product");
    for (int i = 0; i < ambient_->num_coordinates(); ++i) {
      if (!ambient_->coordinate(i).contains(ambient_->project(i, g)))
        throw InputError("generator leaves coordinate group " + std::to_string(i));
    }
  }
  for (const Slp& t : tags_) {
    if (t.arity() != arity_) throw InputError("tag arity mismatch");
  }
  auto chain = std::make_shared<StabilizerChain>(ambient_->total_degree());
  for (const Permutation& g : gens_) chain->add_generator(g);
  chain_ = std::move(chain);
}

Slp TaggedSubgroup::membership_program(const Permutation& g) const {
  SiftOutcome out = chain_->sift(g);
  if (!out.member) throw NonMembership(std::move(out.residue), out.stuck_level);
  return out.program.substitute(tags_);
}

PermutationGroup TaggedSubgroup::projection(int coordinate) const {
  std::vector<Permutation> gens;
  gens.reserve(gens_.size());
  for (const Permutation& g : gens_) gens.push_back(ambient_->project(coordinate, g));
  return PermutationGroup(ambient_->coordinate(coordinate).degree(), std::move(gens),
                          "pi" + std::to_string(coordinate));
}

TaggedSubgroup assemble(std::shared_ptr<const ProductGroup> ambient,
                        const std::vector<std::vector<Permutation>>& rows) {
  if (!ambient) throw InputError("assemble needs an ambient product");
  if (rows.empty()) throw InputError("assemble needs at least one generator row");
  const int arity = static_cast<int>(rows.size());
  std::vector<Permutation> gens;
  std::vector<Slp> tags;
  gens.reserve(rows.size());
  tags.reserve(rows.size());
  for (int t = 0; t < arity; ++t) {
    gens.push_back(ambient->assemble_element(rows[t]));
    tags.push_back(Slp::input(arity, t + 1));
  }
  return TaggedSubgroup(std::move(ambient), arity, std::move(gens), std::move(tags));
}

namespace {

// One derived step: the subgroup generated by all commutators of term's
// generators, closed under conjugation by term. Every new generator gets a
// program over the original letters; programs that outgrow tag_cap are
// rebased to a fresh membership program through root.
TaggedSubgroup tagged_derived_subgroup(const TaggedSubgroup& term, const TaggedSubgroup& root,
                                       std::size_t tag_cap) {
  const int arity = term.arity();
  SlpBuilder b(arity);
  std::vector<int> term_nodes;
  term_nodes.reserve(term.tags().size());
  for (const Slp& tag : term.tags()) term_nodes.push_back(b.import_program(tag));

  StabilizerChain chain(term.ambient().total_degree());
  std::vector<Permutation> gens;
  std::vector<Slp> tags;
  std::vector<std::pair<Permutation, int>> work;

  auto add = [&](const Permutation& p, int node) {
    if (chain.contains(p)) return;
    chain.add_generator(p);
    Slp tag = b.extract(node);
    int kept = node;
    if (tag.size() > tag_cap) {
      tag = root.membership_program(p);
      kept = b.import_program(tag);
    }
    gens.push_back(p);
    tags.push_back(std::move(tag));
    work.emplace_back(p, kept);
  };

  const std::vector<Permutation>& tgens = term.generators();
  for (std::size_t i = 0; i < tgens.size(); ++i) {
    for (std::size_t j = i + 1; j < tgens.size(); ++j) {
      add(perm_commutator(tgens[i], tgens[j]),
          b.commutator(term_nodes[i], term_nodes[j]));
    }
  }
  for (std::size_t w = 0; w < work.size(); ++w) {
    const Permutation x = work[w].first;
    const int xn = work[w].second;
    for (std::size_t t = 0; t < tgens.size(); ++t) {
      add(x.conjugated_by(tgens[t]),
          b.mul(b.mul(b.inv(term_nodes[t]), xn), term_nodes[t]));
    }
  }
  return TaggedSubgroup(term.ambient_ptr(), arity, std::move(gens), std::move(tags));
}

}  // namespace

std::pair<TaggedSubgroup, int> perfect_core(const TaggedSubgroup& L, std::size_t tag_cap) {
  TaggedSubgroup term = L;
  int steps = 0;
  while (true) {
    TaggedSubgroup next = tagged_derived_subgroup(term, L, tag_cap);
    if (next.order() == term.order()) return {std::move(term), steps};
    term = std::move(next);
    ++steps;
    if (term.order() == 1) return {std::move(term), steps};
  }
}

TaggedSubgroup coordinate_kernel(const TaggedSubgroup& H, const std::vector<int>& coordinates) {
  const ProductGroup& amb = H.ambient();
  std::vector<Point> prefix;
  std::vector<char> seen(amb.num_coordinates(), 0);
  for (int c : coordinates) {
    if (c < 0 || c >= amb.num_coordinates()) throw InputError("coordinate index out of range");
    if (seen[c]) continue;
    seen[c] = 1;
    const int off = amb.offset(c);
    for (int x = 0; x < amb.coordinate(c).degree(); ++x) prefix.push_back(off + x);
  }
  StabilizerChain chain(amb.total_degree(), prefix);
  for (const Permutation& g : H.generators()) chain.add_generator(g);

  std::vector<Permutation> gens;
  std::vector<Slp> tags;
  for (int idx : chain.stabilizer_generator_indices(static_cast<int>(prefix.size()))) {
    gens.push_back(chain.generator(idx));
    tags.push_back(chain.generator_program(idx).substitute(H.tags()));
  }
  return TaggedSubgroup(H.ambient_ptr(), H.arity(), std::move(gens), std::move(tags));
}

IntersectionReport verify_socle_intersection(const TaggedSubgroup& H,
                                             const std::vector<Permutation>& kernel_generators,
                                             std::size_t oracle_cap) {
  IntersectionReport rep;
  const ProductGroup& amb = H.ambient();
  const int nc = amb.num_coordinates();

  auto fail = [&rep](std::string why) {
    rep.failure = std::move(why);
    return rep;
  };

  std::vector<std::vector<Permutation>> socle_gens(nc);  // embedded
  std::vector<BigInt> socle_orders(nc);
  for (int j = 0; j < nc; ++j) {
    const PermutationGroup& Gj = amb.coordinate(j);
    if (!is_just_nonsolvable(Gj, oracle_cap))
      return fail("coordinate " + std::to_string(j) + " is not just nonsolvable");
    const auto mins = minimal_normal_subgroups(Gj, oracle_cap);
    if (mins.size() != 1)
      return fail("coordinate " + std::to_string(j) + " has no unique minimal normal subgroup");
    socle_orders[j] = mins[0].order();
    for (const Permutation& x : mins[0].generators()) socle_gens[j].push_back(amb.embed(j, x));
  }
  for (int j = 0; j < nc; ++j) {
    if (H.projection(j).order() != amb.coordinate(j).order())
      return fail("subgroup does not project onto coordinate " + std::to_string(j));
  }
  for (int j = 0; j < nc; ++j) {
    for (const Permutation& x : socle_gens[j]) {
      if (!H.contains(x))
        return fail("socle product is not contained in the subgroup at coordinate " +
                    std::to_string(j));
    }
  }

  StabilizerChain K(amb.total_degree());
  for (const Permutation& x : kernel_generators) {
    if (x.degree() != amb.total_degree())
      throw InputError("kernel generator has the wrong degree");
    if (!H.contains(x)) return fail("a kernel generator lies outside the subgroup");
    K.add_generator(x);
  }
  for (const Permutation& h : H.generators()) {
    for (const Permutation& x : kernel_generators) {
      if (!K.contains(x.conjugated_by(h)))
        return fail("the kernel is not normal in the subgroup");
    }
  }
  rep.preconditions_ok = true;

  for (int j = 0; j < nc; ++j) {
    const Permutation id(amb.coordinate(j).degree());
    for (const Permutation& x : kernel_generators) {
      if (!(amb.project(j, x) == id)) {
        rep.nontrivial_coordinates.push_back(j);
        break;
      }
    }
  }

  rep.expected_order = 1;
  for (int j : rep.nontrivial_coordinates) rep.expected_order *= socle_orders[j];
  rep.contains_expected = true;
  for (int j : rep.nontrivial_coordinates) {
    for (const Permutation& x : socle_gens[j]) {
      if (!K.contains(x)) {
        rep.contains_expected = false;
        break;
      }
    }
    if (!rep.contains_expected) break;
  }

  StabilizerChain M(amb.total_degree());
  StabilizerChain KM(amb.total_degree());
  for (int j = 0; j < nc; ++j) {
    for (const Permutation& x : socle_gens[j]) {
      M.add_generator(x);
      KM.add_generator(x);
    }
  }
  for (const Permutation& x : kernel_generators) KM.add_generator(x);
  const BigInt ko = K.order();
  const BigInt mo = M.order();
  const BigInt kmo = KM.order();
  if ((ko * mo) % kmo != 0) throw InternalError("order product formula failed to divide");
  rep.intersection_order = ko * mo / kmo;
  rep.equal = rep.contains_expected && rep.intersection_order == rep.expected_order;
  return rep;
}

ColumnSpanReport verify_socle_containment(const PermutationGroup& G,
                                          const std::vector<std::vector<Permutation>>& columns,
                                          const std::vector<GroupAutomorphism>& automorphisms,
                                          std::size_t oracle_cap) {
  ColumnSpanReport rep;
  auto fail = [&rep](std::string why) {
    rep.failure = std::move(why);
    return rep;
  };

  if (columns.empty()) return fail("no columns given");
  const std::size_t k = columns.front().size();
  if (k == 0) return fail("columns must be nonempty");
  for (const auto& col : columns) {
    if (col.size() != k) return fail("columns must all have the same length");
    for (const Permutation& x : col) {
      if (x.degree() != G.degree()) throw InputError("column entry has the wrong degree");
      if (!G.contains(x)) return fail("a column entry lies outside the group");
    }
  }
  if (automorphisms.empty()) throw InputError("the automorphism list must not be empty");
  if (!is_just_nonsolvable(G, oracle_cap)) return fail("the group is not just nonsolvable");
  const auto mins = minimal_normal_subgroups(G, oracle_cap);
  if (mins.size() != 1) return fail("the group has no unique minimal normal subgroup");

  const int n = static_cast<int>(columns.size());
  for (int j = 0; j < n; ++j) {
    if (PermutationGroup(G.degree(), columns[j]).order() != G.order())
      return fail("column " + std::to_string(j) + " does not generate the group");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int witness = -1;
      if (!automorphism_independent(G, columns[i], columns[j], automorphisms, &witness)) {
        rep.witness_i = i;
        rep.witness_j = j;
        rep.witness_automorphism = witness;
        return fail("columns " + std::to_string(i) + " and " + std::to_string(j) +
                    " are automorphism dependent");
      }
    }
  }
  rep.preconditions_ok = true;

  auto amb = std::make_shared<ProductGroup>(std::vector<PermutationGroup>(n, G));
  std::vector<std::vector<Permutation>> rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    rows[i].reserve(n);
    for (int j = 0; j < n; ++j) rows[i].push_back(columns[j][i]);
  }
  const TaggedSubgroup H = assemble(amb, rows);
  rep.subgroup_order = H.order();
  rep.socle_contained = true;
  for (int j = 0; j < n && rep.socle_contained; ++j) {
    for (const Permutation& x : mins[0].generators()) {
      if (!H.contains(amb->embed(j, x))) {
        rep.socle_contained = false;
        break;
      }
    }
  }
  return rep;
}

namespace {

// One simple factor of one coordinate projection, with what is needed to
// split a coordinate element into its factor components.
struct RefinedFactor {
  int coordinate = 0;
  BigInt order = 0;
  std::vector<Permutation> elements;            // on the coordinate degree
  std::shared_ptr<StabilizerChain> complement;  // the other factors; null when alone
};

struct DiagonalAnalysis {
  std::vector<RefinedFactor> factors;
  std::vector<std::vector<int>> factors_of;          // per ambient coordinate
  std::vector<std::vector<Permutation>> components;  // [generator][factor], embedded
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<Permutation>> block_gens;  // nonidentity generators per block diagonal
  std::vector<BigInt> block_orders;
};

Permutation factor_component(const RefinedFactor& f, const Permutation& x) {
  if (!f.complement) return x;
  for (const Permutation& s : f.elements) {
    if (f.complement->contains(s.inverse() * x)) return s;
  }
  throw InternalError("element does not decompose over the simple factors");
}

// Splits the nontrivial coordinate projections of M into simple factors,
// computes every generator's factor components, links factors whose pair
// image is a diagonal rather than the full product, and extracts the
// resulting block diagonals. Self-checks the expected structure throughout.
DiagonalAnalysis analyze_diagonal_structure(const TaggedSubgroup& M, std::size_t oracle_cap) {
  const ProductGroup& amb = M.ambient();
  const int nc = amb.num_coordinates();
  DiagonalAnalysis A;
  A.factors_of.resize(nc);

  for (int c = 0; c < nc; ++c) {
    PermutationGroup proj = M.projection(c);
    if (proj.order() == 1) continue;
    const std::vector<PermutationGroup> simples = simple_factor_decomposition(proj, oracle_cap);
    for (std::size_t k = 0; k < simples.size(); ++k) {
      RefinedFactor f;
      f.coordinate = c;
      f.order = simples[k].order();
      f.elements = naive_enumerate(simples[k], oracle_cap);
      if (simples.size() > 1) {
        auto comp = std::make_shared<StabilizerChain>(proj.degree());
        for (std::size_t l = 0; l < simples.size(); ++l) {
          if (l == k) continue;
          for (const Permutation& g : simples[l].generators()) comp->add_generator(g);
        }
        f.complement = std::move(comp);
      }
      A.factors_of[c].push_back(static_cast<int>(A.factors.size()));
      A.factors.push_back(std::move(f));
    }
  }
  const int nf = static_cast<int>(A.factors.size());

  for (const Permutation& g : M.generators()) {
    std::vector<Permutation> comps;
    comps.reserve(nf);
    for (const RefinedFactor& f : A.factors) {
      comps.push_back(amb.embed(f.coordinate, factor_component(f, amb.project(f.coordinate, g))));
    }
    A.components.push_back(std::move(comps));
  }

  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<char>> linked(nf, std::vector<char>(nf, 0));
  for (int i = 0; i < nf; ++i) {
    for (int j = i + 1; j < nf; ++j) {
      StabilizerChain pair_chain(amb.total_degree());
      for (const auto& comps : A.components) pair_chain.add_generator(comps[i] * comps[j]);
      const BigInt o = pair_chain.order();
      if (o == A.factors[i].order * A.factors[j].order) continue;
      if (!(o == A.factors[i].order && A.factors[i].order == A.factors[j].order))
        throw InternalError("a pair image is neither independent nor a diagonal");
      linked[i][j] = linked[j][i] = 1;
      parent[find(i)] = find(j);
    }
  }

  std::map<int, std::vector<int>> by_root;
  for (int i = 0; i < nf; ++i) by_root[find(i)].push_back(i);
  for (auto& [r, members] : by_root) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t bidx = a + 1; bidx < members.size(); ++bidx) {
        if (!linked[members[a]][members[bidx]])
          throw InternalError("diagonal linking is not transitive");
      }
    }
    A.blocks.push_back(members);
  }
  std::sort(A.blocks.begin(), A.blocks.end());

  const Permutation id(amb.total_degree());
  BigInt product = 1;
  for (const std::vector<int>& B : A.blocks) {
    std::vector<Permutation> parts;
    StabilizerChain bc(amb.total_degree());
    for (const auto& comps : A.components) {
      Permutation part = id;
      for (int f : B) part = part * comps[f];
      if (part == id) continue;
      bc.add_generator(part);
      parts.push_back(std::move(part));
    }
    const BigInt bo = bc.order();
    if (bo != A.factors[B.front()].order)
      throw InternalError("a block part is not a single diagonal");
    product *= bo;
    A.block_gens.push_back(std::move(parts));
    A.block_orders.push_back(bo);
  }
  if (product != M.order())
    throw InternalError("block diagonals do not account for the subgroup order");
  return A;
}

}  // namespace

std::vector<std::vector<int>> diagonal_blocks(const TaggedSubgroup& M, std::size_t oracle_cap) {
  const ProductGroup& amb = M.ambient();
  for (int c = 0; c < amb.num_coordinates(); ++c) {
    const PermutationGroup& Gc = amb.coordinate(c);
    if (is_solvable(Gc) || !is_simple(Gc, oracle_cap))
      throw InputError("coordinate " + std::to_string(c) + " is not nonabelian simple");
    if (M.projection(c).order() != Gc.order())
      throw InputError("subgroup does not project onto coordinate " + std::to_string(c));
  }
  // Every coordinate is itself simple, so the refined factors coincide with
  // the coordinates and block entries are coordinate indices.
  std::vector<std::vector<int>> blocks = analyze_diagonal_structure(M, oracle_cap).blocks;

  // Independent check via a second route: the kernel of the projection onto
  // all other blocks recovers one block's diagonal, and the internal product
  // of those kernels must fill the whole subgroup.
  BigInt kernel_product = 1;
  for (const std::vector<int>& block : blocks) {
    std::vector<int> others;
    for (int c = 0; c < amb.num_coordinates(); ++c)
      if (std::find(block.begin(), block.end(), c) == block.end()) others.push_back(c);
    kernel_product *= coordinate_kernel(M, others).order();
  }
  if (kernel_product != M.order())
    throw InternalError("block kernels do not multiply up to the subgroup order");
  return blocks;
}

PatternElement support_pattern_element(const TaggedSubgroup& M,
                                       const std::vector<SupportDemand>& demands,
                                       std::size_t oracle_cap) {
  const ProductGroup& amb = M.ambient();
  const int nc = amb.num_coordinates();
  if (static_cast<int>(demands.size()) != nc)
    throw InputError("one support demand per coordinate is required");

  DiagonalAnalysis A = analyze_diagonal_structure(M, oracle_cap);
  for (int c = 0; c < nc; ++c) {
    if (demands[c] == SupportDemand::Nontrivial && A.factors_of[c].empty())
      throw InputError("coordinate " + std::to_string(c) +
                       " is demanded nontrivial but the subgroup projects trivially there");
  }

  const int nb = static_cast<int>(A.blocks.size());
  std::vector<int> block_of(A.factors.size(), -1);
  for (int b = 0; b < nb; ++b) {
    for (int f : A.blocks[b]) block_of[f] = b;
  }
  std::vector<char> alive(nb, 1);
  std::vector<char> on(nb, 0);
  for (int c = 0; c < nc; ++c) {
    if (demands[c] != SupportDemand::Trivial) continue;
    for (int f : A.factors_of[c]) alive[block_of[f]] = 0;
  }
  for (int c = 0; c < nc; ++c) {
    if (demands[c] != SupportDemand::Nontrivial) continue;
    bool satisfied = false;
    for (int f : A.factors_of[c]) {
      if (alive[block_of[f]]) {
        on[block_of[f]] = 1;
        satisfied = true;
      }
    }
    if (!satisfied)
      throw InputError("demands are infeasible: coordinate " + std::to_string(c) +
                       " is diagonally linked to coordinates demanded trivial");
  }

  // Any nonidentity element of a block diagonal has nontrivial components at
  // every factor of the block, so turning a block on lights up exactly its
  // factors.
  Permutation g(amb.total_degree());
  for (int b = 0; b < nb; ++b) {
    if (!on[b]) continue;
    const Permutation* pick = nullptr;
    for (const Permutation& x : A.block_gens[b]) {
      if (pick == nullptr || x < *pick) pick = &x;
    }
    if (pick == nullptr) throw InternalError("a live block has no nontrivial element");
    g = g * *pick;
  }

  PatternElement out;
  try {
    out.program = M.membership_program(g);
  } catch (const NonMembership&) {
    throw InternalError("the pattern element fell outside the subgroup");
  }
  out.element = std::move(g);
  return out;
}

}  // namespace grouplaw
