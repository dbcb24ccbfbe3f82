#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "citeval/corpus.hpp"

namespace citeval {

/// Which group members form the reference distribution for c_exp, c_max
/// and c_median.
enum class Population { all, cited_only };

std::string_view to_string(Population p) noexcept;
Population parse_population(std::string_view s);

/// Citation-distribution statistics of one (year, SC) group.
struct GroupBaseline {
  GroupKey key;
  std::size_t n_pubs = 0;
  std::size_t n_cited = 0;
  double c_exp = 0.0;
  std::uint32_t c_max = 0;
  double c_median = 0.0;
  /// Mean Cv* over members with nonzero Cv*; filled by compute_all.
  std::optional<double> cv_star_exp;
  /// Empty population or no citations at all; skipped downstream.
  bool degenerate = false;
};

/// Baselines indexed by the corpus group index.
struct Baselines {
  Population population = Population::cited_only;
  std::vector<GroupBaseline> groups;

  const GroupBaseline* find(const GroupKey& key) const;
};

Baselines compute_group_baselines(const CitationCorpus& corpus, Population population,
                                  unsigned threads = 1);

/// The corpus-wide convention fixing the exponential conversion rate:
/// a citing publication cited `median_max_ratio * c_max` times carries a
/// total weight of `target_weight_at_ratio`.
struct BetaConvention {
  double median_max_ratio = 0.0;
  double target_weight_at_ratio = 1.5;
  double beta = 0.0;
};

/// Solves exp(beta * (1 - 1/r)) = target - 1 for beta.
BetaConvention beta_from_ratio(double median_max_ratio, double target_weight_at_ratio = 1.5);

/// Averages c_median / c_max over non-degenerate groups (unweighted) and
/// solves for beta.
BetaConvention derive_beta(const Baselines& baselines, double target_weight_at_ratio = 1.5);

}  // namespace citeval
