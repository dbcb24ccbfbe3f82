#include "citeval/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "citeval/error.hpp"
#include "citeval/numeric.hpp"

namespace citeval {

std::string_view to_string(Population p) noexcept {
  return p == Population::all ? "all" : "cited_only";
}

Population parse_population(std::string_view s) {
  if (s == "all") return Population::all;
  if (s == "cited_only") return Population::cited_only;
  throw ValidationError("unknown baseline population '" + std::string(s) +
                        "' (expected all or cited_only)");
}

const GroupBaseline* Baselines::find(const GroupKey& key) const {
  const auto it = std::lower_bound(groups.begin(), groups.end(), key,
                                   [](const GroupBaseline& b, const GroupKey& k) { return b.key < k; });
  if (it == groups.end() || it->key != key) return nullptr;
  return &*it;
}

Baselines compute_group_baselines(const CitationCorpus& corpus, Population population,
                                  unsigned threads) {
  Baselines out;
  out.population = population;
  out.groups.resize(corpus.group_count());
  parallel_for(corpus.group_count(), threads, [&](std::size_t g) {
    const auto members = corpus.group_members(static_cast<GroupIndex>(g));
    GroupBaseline& b = out.groups[g];
    b.key = corpus.group_key(static_cast<GroupIndex>(g));
    b.n_pubs = members.size();

    std::vector<double> counts;
    counts.reserve(members.size());
    std::uint64_t total = 0;
    for (PubIndex p : members) {
      const auto c = corpus.in_degree(p);
      if (c > 0) ++b.n_cited;
      if (population == Population::all || c > 0) {
        counts.push_back(static_cast<double>(c));
        total += c;
        b.c_max = std::max(b.c_max, c);
      }
    }
    if (counts.empty() || total == 0) {
      b.degenerate = true;
      return;
    }
    b.c_exp = static_cast<double>(total) / static_cast<double>(counts.size());
    b.c_median = median_of(std::move(counts));
  });
  return out;
}

BetaConvention beta_from_ratio(double r, double target) {
  if (!(target > 1.0 && target < 2.0)) {
    throw ValidationError("target weight must lie in (1, 2), got " + std::to_string(target));
  }
  if (!(r > 0.0 && r <= 1.0)) {
    throw DegenerateDataError("degenerate ratio r = " + std::to_string(r) +
                              " (median/max ratio must lie in (0, 1))");
  }
  if (r == 1.0) throw DegenerateDataError("degenerate ratio r = 1");
  BetaConvention conv;
  conv.median_max_ratio = r;
  conv.target_weight_at_ratio = target;
  conv.beta = std::log(1.0 / (target - 1.0)) / (1.0 / r - 1.0);
  return conv;
}

BetaConvention derive_beta(const Baselines& baselines, double target) {
  CompensatedSum ratios;
  std::size_t used = 0;
  for (const auto& b : baselines.groups) {
    if (b.degenerate || b.c_max == 0) continue;
    ratios.add(b.c_median / static_cast<double>(b.c_max));
    ++used;
  }
  if (used == 0) throw DegenerateDataError("cannot derive beta: no cited publications");
  return beta_from_ratio(ratios.value() / static_cast<double>(used), target);
}

}  // namespace citeval
