#include "grouplaw/group.hpp"

#include <algorithm>
#include <unordered_set>

#include "grouplaw/errors.hpp"

namespace grouplaw {

// --------------------------------------------------------- StabilizerChain

StabilizerChain::StabilizerChain(int degree, std::vector<Point> base_prefix) : degree_(degree) {
  if (degree < 1) throw InputError("chain degree must be positive");
  std::vector<char> seen(degree, 0);
  for (Point b : base_prefix) {
    if (b < 0 || b >= degree) throw InputError("base prefix point out of range");
    if (seen[b]) throw InputError("base prefix points must be distinct");
    seen[b] = 1;
    Level lvl;
    lvl.base = b;
    lvl.position.assign(degree_, 0);
    levels_.push_back(std::move(lvl));
    register_point(static_cast<int>(levels_.size()) - 1, b, Permutation(degree_), -1);
  }
}

int StabilizerChain::program_mul(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  program_.push_back({SlpInstruction::Op::Mul, a, b, 0});
  return static_cast<int>(program_.size()) - 1;
}

int StabilizerChain::program_inv(int a) {
  if (a < 0) return -1;
  program_.push_back({SlpInstruction::Op::Inv, a, 0, 0});
  return static_cast<int>(program_.size()) - 1;
}

void StabilizerChain::register_point(int level, Point pt, Permutation u, int node) {
  Level& lvl = levels_[level];
  lvl.orbit.push_back(pt);
  lvl.position[pt] = static_cast<int>(lvl.orbit.size());
  lvl.trans_inv.push_back(u.inverse());
  lvl.trans.push_back(std::move(u));
  lvl.trans_node.push_back(node);
  const int pos = static_cast<int>(lvl.orbit.size()) - 1;
  for (int g : lvl.acting) lvl.pending.emplace_back(pos, g);
}

void StabilizerChain::place_generator(Permutation g, int node, bool is_input) {
  if (g.is_identity()) throw InternalError("place_generator given the identity");
  int flevel = -1;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (g[levels_[j].base] != levels_[j].base) {
      flevel = static_cast<int>(j);
      break;
    }
  }
  if (flevel < 0) {
    // fixes every current base: open a new level at its first moved point
    Level lvl;
    lvl.base = g.first_moved();
    lvl.position.assign(degree_, 0);
    levels_.push_back(std::move(lvl));
    flevel = static_cast<int>(levels_.size()) - 1;
    register_point(flevel, levels_[flevel].base, Permutation(degree_), -1);
  }
  const int gen_idx = static_cast<int>(gens_.size());
  gens_.push_back({std::move(g), node, flevel, is_input});
  for (int j = 0; j <= flevel; ++j) {
    Level& lvl = levels_[j];
    lvl.acting.push_back(gen_idx);
    for (int pos = 0; pos < static_cast<int>(lvl.orbit.size()); ++pos)
      lvl.pending.emplace_back(pos, gen_idx);
  }
}

StabilizerChain::Strip StabilizerChain::strip_from(const Permutation& p, int from_level) const {
  Strip s;
  s.residue = p;
  s.level = from_level;
  for (int lvl = from_level; lvl < static_cast<int>(levels_.size()); ++lvl) {
    const Level& L = levels_[lvl];
    const Point image = s.residue[L.base];
    if (image == L.base) {
      s.level = lvl + 1;
      continue;  // identity transversal entry
    }
    const int pos = L.position[image];
    if (pos == 0) {
      s.level = lvl;
      return s;
    }
    s.residue = s.residue * L.trans_inv[pos - 1];
    s.path.emplace_back(lvl, pos - 1);
    s.level = lvl + 1;
  }
  return s;
}

void StabilizerChain::process_pending() {
  while (true) {
    int level = -1;
    for (int j = static_cast<int>(levels_.size()) - 1; j >= 0; --j) {
      if (levels_[j].pending_head < levels_[j].pending.size()) {
        level = j;
        break;
      }
    }
    if (level < 0) return;

    Level& L = levels_[level];
    const auto [pos, gen_idx] = L.pending[L.pending_head++];
    const Permutation& s = gens_[gen_idx].perm;
    const Point pt = L.orbit[pos];
    const Point image = s[pt];
    if (L.position[image] == 0) {
      // new orbit point; its Schreier generator is trivially the identity
      Permutation u = L.trans[pos] * s;
      const int node = program_mul(L.trans_node[pos], gens_[gen_idx].node);
      register_point(level, image, std::move(u), node);
      continue;
    }
    const int img_pos = L.position[image] - 1;
    const Permutation schreier = L.trans[pos] * s * L.trans_inv[img_pos];
    if (schreier.is_identity()) continue;
    Strip st = strip_from(schreier, level + 1);
    if (st.residue.is_identity()) continue;
    // new strong generator: build its program node, then place it
    int node = program_mul(program_mul(L.trans_node[pos], gens_[gen_idx].node),
                           program_inv(L.trans_node[img_pos]));
    for (const auto& [plvl, ppos] : st.path)
      node = program_mul(node, program_inv(levels_[plvl].trans_node[ppos]));
    place_generator(std::move(st.residue), node, false);
  }
}

bool StabilizerChain::add_generator(const Permutation& g) {
  if (g.degree() != degree_) throw InputError("generator degree does not match the chain");
  ++num_inputs_;
  program_.push_back({SlpInstruction::Op::Input, num_inputs_, 0, 0});
  const int node = static_cast<int>(program_.size()) - 1;
  if (g.is_identity() || contains(g)) {
    gens_.push_back({g, node, -1, true});
    return false;
  }
  place_generator(g, node, true);
  process_pending();
  return true;
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& lvl : levels_) b.push_back(lvl.base);
  return b;
}

BigInt StabilizerChain::order() const {
  BigInt n = 1;
  for (const auto& lvl : levels_) n *= static_cast<unsigned long long>(lvl.orbit.size());
  return n;
}

bool StabilizerChain::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw InputError("element degree does not match the chain");
  return strip_from(p, 0).residue.is_identity();
}

SiftOutcome StabilizerChain::sift(const Permutation& p) const {
  if (p.degree() != degree_) throw InputError("element degree does not match the chain");
  Strip st = strip_from(p, 0);
  SiftOutcome out;
  out.residue = st.residue;
  out.stuck_level = st.level;
  out.member = st.residue.is_identity();
  if (out.member) {
    // p = u_last * ... * u_first over the strip path
    std::vector<int> nodes;
    for (auto it = st.path.rbegin(); it != st.path.rend(); ++it)
      nodes.push_back(levels_[it->first].trans_node[it->second]);
    out.program = combine_nodes(nodes);
  } else {
    out.program = Slp(num_inputs_);
  }
  return out;
}

Permutation StabilizerChain::random_element(Rng& rng) const {
  Permutation acc(degree_);
  for (int lvl = static_cast<int>(levels_.size()) - 1; lvl >= 0; --lvl) {
    const Level& L = levels_[lvl];
    const std::size_t pick = L.orbit.size() == 1 ? 0 : rng.below(L.orbit.size());
    acc = acc * L.trans[pick];
  }
  return acc;
}

Point StabilizerChain::base_point(int level) const { return levels_.at(level).base; }

std::size_t StabilizerChain::orbit_size(int level) const { return levels_.at(level).orbit.size(); }

std::vector<std::pair<Point, Permutation>> StabilizerChain::transversal(int level) const {
  const Level& L = levels_.at(level);
  std::vector<std::pair<Point, Permutation>> out;
  out.reserve(L.orbit.size());
  for (std::size_t i = 0; i < L.orbit.size(); ++i) out.emplace_back(L.orbit[i], L.trans[i]);
  return out;
}

Slp StabilizerChain::generator_program(int idx) const {
  return combine_nodes({gens_.at(idx).node});
}

std::vector<int> StabilizerChain::stabilizer_generator_indices(int k) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(gens_.size()); ++i)
    if (gens_[i].level >= k) out.push_back(i);
  return out;
}

Slp StabilizerChain::combine_nodes(const std::vector<int>& nodes) const {
  // extract the reachable subgraph once (shared), then fold the product
  std::vector<char> mark(program_.size(), 0);
  std::vector<int> stack;
  for (int n : nodes)
    if (n >= 0 && !mark[n]) {
      mark[n] = 1;
      stack.push_back(n);
    }
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const auto& ins = program_[idx];
    auto visit = [&](int r) {
      if (r >= 0 && !mark[r]) {
        mark[r] = 1;
        stack.push_back(r);
      }
    };
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        break;
      case SlpInstruction::Op::Inv:
      case SlpInstruction::Op::Pow:
        visit(ins.a);
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        visit(ins.a);
        visit(ins.b);
        break;
    }
  }
  std::vector<SlpInstruction> code;
  std::vector<int> map(program_.size(), -2);
  for (std::size_t i = 0; i < program_.size(); ++i) {
    if (!mark[i]) continue;
    SlpInstruction ins = program_[i];
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        break;
      case SlpInstruction::Op::Inv:
      case SlpInstruction::Op::Pow:
        ins.a = map[ins.a];
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        ins.a = map[ins.a];
        ins.b = map[ins.b];
        break;
    }
    map[i] = static_cast<int>(code.size());
    code.push_back(ins);
  }
  int out = -1;
  for (int n : nodes) {
    const int mapped = n < 0 ? -1 : map[n];
    if (out < 0) {
      out = mapped;
    } else if (mapped >= 0) {
      code.push_back({SlpInstruction::Op::Mul, out, mapped, 0});
      out = static_cast<int>(code.size()) - 1;
    }
  }
  return Slp(num_inputs_, std::move(code), out);
}

// -------------------------------------------------------- PermutationGroup

PermutationGroup::PermutationGroup(int degree) : PermutationGroup(degree, {}, "") {}

PermutationGroup::PermutationGroup(int degree, std::vector<Permutation> generators,
                                   std::string name)
    : degree_(degree), name_(std::move(name)), gens_(std::move(generators)) {
  if (degree < 1) throw InputError("group degree must be positive");
  if (gens_.empty()) gens_.push_back(Permutation(degree));
  for (const auto& g : gens_)
    if (g.degree() != degree) throw InputError("generator degree does not match the group");
}

const StabilizerChain& PermutationGroup::chain() const {
  if (!chain_) {
    auto c = std::make_shared<StabilizerChain>(degree_);
    for (const auto& g : gens_) c->add_generator(g);
    chain_ = std::move(c);
  }
  return *chain_;
}

// --------------------------------------------------------------- free ops

PermutationGroup normal_closure(const PermutationGroup& G, const std::vector<Permutation>& seeds,
                                std::string name) {
  StabilizerChain chain(G.degree());
  std::vector<Permutation> closure_gens;
  std::vector<Permutation> worklist;
  auto add = [&](const Permutation& x) {
    if (chain.contains(x)) return;
    chain.add_generator(x);
    closure_gens.push_back(x);
    worklist.push_back(x);
  };
  for (const auto& s : seeds) {
    if (!G.contains(s)) throw InputError("normal closure seed lies outside the group");
    add(s);
  }
  while (!worklist.empty()) {
    const Permutation x = std::move(worklist.back());
    worklist.pop_back();
    for (const auto& g : G.generators()) add(x.conjugated_by(g));
  }
  return PermutationGroup(G.degree(), std::move(closure_gens), std::move(name));
}

namespace {

PermutationGroup derived_subgroup(const PermutationGroup& G) {
  const auto& gens = G.generators();
  std::vector<Permutation> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) seeds.push_back(std::move(c));
    }
  return normal_closure(G, seeds);
}

}  // namespace

std::vector<PermutationGroup> derived_series(const PermutationGroup& G) {
  std::vector<PermutationGroup> terms{G};
  while (terms.back().order() > 1) {
    PermutationGroup d = derived_subgroup(terms.back());
    const bool stabilized = d.order() == terms.back().order();
    terms.push_back(std::move(d));
    if (stabilized) break;
  }
  return terms;
}

bool is_solvable(const PermutationGroup& G) { return derived_series(G).back().order() == 1; }

PermutationGroup perfect_core_of(const PermutationGroup& G) {
  auto series = derived_series(G);
  return series.back();
}

std::vector<Permutation> naive_enumerate(const PermutationGroup& G, std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> frontier{Permutation(G.degree())};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    const Permutation x = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : G.generators()) {
      Permutation y = x * g;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw CapExceeded("naive enumeration exceeds the cap of " + std::to_string(cap) +
                            " elements");
        frontier.push_back(std::move(y));
      }
    }
  }
  std::vector<Permutation> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<PermutationGroup, std::vector<Slp>> pointwise_stabilizer_with_programs(
    const PermutationGroup& G, const std::vector<Point>& points) {
  std::vector<Point> prefix;
  for (Point p : points) {
    if (p < 0 || p >= G.degree()) throw InputError("stabilized point out of range");
    if (std::find(prefix.begin(), prefix.end(), p) == prefix.end()) prefix.push_back(p);
  }
  StabilizerChain chain(G.degree(), prefix);
  for (const auto& g : G.generators()) chain.add_generator(g);
  std::vector<Permutation> gens;
  std::vector<Slp> programs;
  for (int idx : chain.stabilizer_generator_indices(static_cast<int>(prefix.size()))) {
    gens.push_back(chain.generator(idx));
    programs.push_back(chain.generator_program(idx));
  }
  PermutationGroup H(G.degree(), std::move(gens),
                     G.name().empty() ? "" : G.name() + ".stab");
  if (programs.empty()) programs.push_back(Slp(chain.num_inputs()));
  return {std::move(H), std::move(programs)};
}

PermutationGroup pointwise_stabilizer(const PermutationGroup& G, const std::vector<Point>& points) {
  return pointwise_stabilizer_with_programs(G, points).first;
}

}  // namespace grouplaw
