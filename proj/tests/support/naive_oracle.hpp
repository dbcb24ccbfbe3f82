#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citeval/corpus.hpp"

namespace citeval::test {

/// Direct evaluation of the scores from the raw publication and edge lists:
/// nested loops, plain double sums, no library helpers. Kept deliberately
/// separate from the production path so the two can check each other.
struct OracleParams {
  bool power_model = false;
  bool population_all = false;
  bool centre_median = false;
  /// Derived from the data when absent.
  std::optional<double> beta;
  double beta_target = 1.5;
  double alpha = 1.0;
  double gamma = 0.5;
};

struct OracleScores {
  double beta = 0.0;
  std::map<std::string, double> c;
  std::map<std::string, double> cv_star;
  std::map<std::string, double> cv;
};

OracleScores naive_scores(const std::vector<PublicationRecord>& pubs,
                          const std::vector<CitationEdge>& edges, const OracleParams& params);

}  // namespace citeval::test
