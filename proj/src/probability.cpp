#include "grouplaw/probability.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grouplaw/errors.hpp"
#include "grouplaw/rng.hpp"
#include "grouplaw/structure.hpp"

namespace grouplaw {

namespace {

struct SweepCounts {
  std::uint64_t identity = 0;
  std::uint64_t in_kernel = 0;
};

// Count tuples whose word value is the identity (and, when K is given, lands
// in K) over all assignments of `elems` to the `support` letters whose
// leading digit lies in [lo, hi). Unsupported letters stay the identity.
SweepCounts sweep_range(const Slp& word, int arity, int degree,
                        const std::vector<Permutation>& elems, const std::vector<int>& support,
                        const PermutationGroup* K, std::size_t lo, std::size_t hi) {
  SweepCounts counts;
  const Permutation id(degree);
  const std::size_t m = elems.size();
  const std::size_t k = support.size();
  std::vector<Permutation> tuple(static_cast<std::size_t>(arity), id);
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t lead = lo; lead < hi; ++lead) {
    for (std::size_t j = 1; j < k; ++j) {
      idx[j] = 0;
      tuple[static_cast<std::size_t>(support[j]) - 1] = elems[0];
    }
    tuple[static_cast<std::size_t>(support[0]) - 1] = elems[lead];
    while (true) {
      const Permutation val = word.evaluate(std::span<const Permutation>(tuple), degree);
      if (val == id) ++counts.identity;
      if (K != nullptr && K->contains(val)) ++counts.in_kernel;
      std::size_t pos = k - 1;
      while (pos >= 1 && idx[pos] == m - 1) {
        idx[pos] = 0;
        tuple[static_cast<std::size_t>(support[pos]) - 1] = elems[0];
        --pos;
      }
      if (pos < 1) break;
      ++idx[pos];
      tuple[static_cast<std::size_t>(support[pos]) - 1] = elems[idx[pos]];
    }
  }
  return counts;
}

SweepCounts sweep_all(const Slp& word, int arity, int degree, const PermutationGroup& G,
                      const std::vector<int>& support, const PermutationGroup* K,
                      std::size_t element_cap, int jobs) {
  if (support.empty()) {
    std::vector<Permutation> tuple(static_cast<std::size_t>(arity), Permutation(degree));
    const Permutation val = word.evaluate(std::span<const Permutation>(tuple), degree);
    SweepCounts counts;
    counts.identity = val == Permutation(degree) ? 1 : 0;
    counts.in_kernel = (K != nullptr && K->contains(val)) ? 1 : 0;
    return counts;
  }
  const std::vector<Permutation> elems = naive_enumerate(G, element_cap);
  const std::size_t m = elems.size();
  const std::size_t shards = std::min<std::size_t>(std::max(jobs, 1), m);
  if (shards <= 1) return sweep_range(word, arity, degree, elems, support, K, 0, m);

  std::vector<std::future<SweepCounts>> futures;
  futures.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    const std::size_t lo = m * s / shards;
    const std::size_t hi = m * (s + 1) / shards;
    futures.push_back(std::async(std::launch::async, [&, lo, hi] {
      return sweep_range(word, arity, degree, elems, support, K, lo, hi);
    }));
  }
  SweepCounts total;
  for (auto& f : futures) {
    const SweepCounts part = f.get();
    total.identity += part.identity;
    total.in_kernel += part.in_kernel;
  }
  return total;
}

std::vector<int> support_letters(const Slp& word, const Caps& caps) {
  const Slp::Letters letters = word.used_letters(caps.word_cap);
  return std::vector<int>(letters.letters.begin(), letters.letters.end());
}

nlohmann::ordered_json rational_json(const Rational& q) {
  nlohmann::ordered_json j;
  j["num"] = q.num.str();
  j["den"] = q.den.str();
  j["reduced"] = q.reduced().str();
  j["value"] = q.to_double();
  return j;
}

constexpr double kZ95 = 1.959963984540054;  // 97.5% normal quantile (Wilson score)

}  // namespace

ProbabilityResult exact_probability(const PermutationGroup& G, const Slp& word, const Caps& caps,
                                    int jobs) {
  const int arity = word.arity();
  const int degree = G.degree();
  const BigInt order = G.order();
  const std::vector<int> support = support_letters(word, caps);
  const std::size_t k = support.size();

  const BigInt effective_total = bigint_pow(order, k);
  if (effective_total > BigInt(caps.exact_cap))
    throw CapExceeded("exhaustive evaluation over " + effective_total.str() +
                      " tuples is above the exact cap; use Monte Carlo estimation instead");

  const SweepCounts counts =
      sweep_all(word, arity, degree, G, support, nullptr, caps.exact_cap, jobs);
  const BigInt padding = bigint_pow(order, static_cast<unsigned long long>(arity) - k);

  ProbabilityResult out;
  out.exact = Rational(BigInt(counts.identity) * padding,
                       bigint_pow(order, static_cast<unsigned long long>(arity)));

  if (arity == 0) {
    ProbabilityResult::Profile prof;
    prof.solvable_satisfying = out.exact->num;  // the empty tuple generates the trivial group
    out.profile = prof;
  } else if (bigint_pow(order, static_cast<unsigned long long>(arity)) <= BigInt(caps.tuple_cap)) {
    ProbabilityResult::Profile prof;
    const Permutation id(degree);
    BigInt check = 0;
    for (const TupleClass& cls : tuple_classes(G, arity, caps)) {
      const Permutation val =
          word.evaluate(std::span<const Permutation>(cls.representative), degree);
      if (val == id) {
        (cls.solvable ? prof.solvable_satisfying : prof.nonsolvable_satisfying) += cls.members;
        check += cls.members;
      }
    }
    if (check != out.exact->num)
      throw InternalError("profile counts disagree with the exhaustive count");
    out.profile = prof;
  }
  return out;
}

ProbabilityResult mc_probability(const PermutationGroup& G, const Slp& word,
                                 std::uint64_t samples, std::uint64_t seed, int jobs) {
  if (samples < 1) throw InputError("at least one sample is required");
  const int arity = word.arity();
  const int degree = G.degree();
  Caps support_caps;
  const std::vector<int> support = support_letters(word, support_caps);
  const Permutation id(degree);
  const Rng base(seed);

  constexpr std::uint64_t kShardSize = 4096;
  const std::uint64_t num_shards = (samples + kShardSize - 1) / kShardSize;
  const auto run_shard = [&](std::uint64_t shard) {
    Rng rng = base.substream(shard);
    const std::uint64_t lo = shard * kShardSize;
    const std::uint64_t hi = std::min(samples, lo + kShardSize);
    std::vector<Permutation> tuple(static_cast<std::size_t>(arity), id);
    std::uint64_t hits = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      for (int letter : support)
        tuple[static_cast<std::size_t>(letter) - 1] = G.random_element(rng);
      if (word.evaluate(std::span<const Permutation>(tuple), degree) == id) ++hits;
    }
    return hits;
  };

  std::uint64_t hits = 0;
  const std::uint64_t workers = std::min<std::uint64_t>(std::max(jobs, 1), num_shards);
  if (workers <= 1) {
    for (std::uint64_t shard = 0; shard < num_shards; ++shard) hits += run_shard(shard);
  } else {
    std::vector<std::future<std::uint64_t>> futures;
    futures.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        std::uint64_t sum = 0;
        for (std::uint64_t shard = w; shard < num_shards; shard += workers) sum += run_shard(shard);
        return sum;
      }));
    }
    for (auto& f : futures) hits += f.get();
  }

  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

  ProbabilityResult out;
  ProbabilityResult::Estimate est;
  est.p = p;
  est.lo = std::max(0.0, center - half);
  est.hi = std::min(1.0, center + half);
  est.samples = samples;
  est.seed = seed;
  out.estimate = est;
  return out;
}

std::vector<SynthesisReport::Row> satisfaction_profile(const PermutationGroup& G, const Slp& word,
                                                       int n, const Caps& caps) {
  if (n < 1) throw InputError("tuple length must be positive");
  if (word.arity() > n) throw InputError("the word uses more letters than the tuple length");
  const Permutation id(G.degree());
  std::vector<SynthesisReport::Row> rows;
  for (const TupleClass& cls : tuple_classes(G, n, caps)) {
    SynthesisReport::Row row;
    row.representative.reserve(cls.representative.size());
    for (const Permutation& p : cls.representative)
      row.representative.push_back(p.cycle_string());
    row.members = cls.members;
    row.subgroup_order = cls.subgroup_order;
    row.solvable = cls.solvable;
    row.satisfies =
        word.evaluate(std::span<const Permutation>(cls.representative), G.degree()) == id;
    rows.push_back(std::move(row));
  }
  return rows;
}

MonotonicityReport quotient_monotonicity(const PermutationGroup& G, const PermutationGroup& K,
                                         const Slp& word, const Caps& caps) {
  if (K.degree() != G.degree()) throw InputError("the kernel must act on the same points");
  for (const Permutation& x : K.generators())
    if (!G.contains(x)) throw InputError("the kernel is not a subgroup of the group");
  for (const Permutation& g : G.generators()) {
    const Permutation gi = g.inverse();
    for (const Permutation& x : K.generators())
      if (!K.contains(gi * x * g)) throw InputError("the kernel is not normal");
  }

  const int arity = word.arity();
  const BigInt order = G.order();
  const std::vector<int> support = support_letters(word, caps);
  const std::size_t k = support.size();
  const BigInt effective_total = bigint_pow(order, k);
  if (effective_total > BigInt(caps.exact_cap))
    throw CapExceeded("exhaustive evaluation over " + effective_total.str() +
                      " tuples is above the exact cap; use Monte Carlo estimation instead");

  const SweepCounts counts =
      sweep_all(word, arity, G.degree(), G, support, &K, caps.exact_cap, 1);
  const BigInt padding = bigint_pow(order, static_cast<unsigned long long>(arity) - k);
  const BigInt den = bigint_pow(order, static_cast<unsigned long long>(arity));

  MonotonicityReport rep;
  rep.p_group = Rational(BigInt(counts.identity) * padding, den);
  rep.kernel_fraction = Rational(BigInt(counts.in_kernel) * padding, den);

  const QuotientMap qm = quotient_by(G, K, caps.oracle_cap);
  const ProbabilityResult quotient = exact_probability(qm.image(), word, caps);
  rep.p_quotient = *quotient.exact;

  rep.kernel_identity = rep.kernel_fraction == rep.p_quotient;
  rep.holds = rep.p_group <= rep.p_quotient;
  return rep;
}

nlohmann::ordered_json ProbabilityResult::to_json() const {
  nlohmann::ordered_json j;
  if (exact) j["exact"] = rational_json(*exact);
  if (estimate) {
    nlohmann::ordered_json e;
    e["p"] = estimate->p;
    e["lo"] = estimate->lo;
    e["hi"] = estimate->hi;
    e["n"] = estimate->samples;
    e["seed"] = estimate->seed;
    j["estimate"] = std::move(e);
  }
  if (profile) {
    nlohmann::ordered_json pr;
    pr["solvable_satisfying"] = profile->solvable_satisfying.str();
    pr["nonsolvable_satisfying"] = profile->nonsolvable_satisfying.str();
    j["profile"] = std::move(pr);
  }
  return j;
}

nlohmann::ordered_json MonotonicityReport::to_json() const {
  nlohmann::ordered_json j;
  j["holds"] = holds;
  j["kernel_identity"] = kernel_identity;
  j["p_group"] = rational_json(p_group);
  j["p_quotient"] = rational_json(p_quotient);
  j["kernel_fraction"] = rational_json(kernel_fraction);
  return j;
}

}  // namespace grouplaw
