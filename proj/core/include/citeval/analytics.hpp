#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citeval/corpus.hpp"
#include "citeval/indicators.hpp"

namespace citeval {

// ---------------------------------------------------------------------------
// Score sheet: the analysis input, decoupled from the corpus so it can be
// rebuilt from score files alone.

struct ScoredPublication {
  std::string id;
  int year = 0;
  std::vector<std::string> subject_categories;
  std::uint32_t n = 0;
  std::optional<double> c;
  double cv_star = 0.0;
  std::optional<double> cv;
};

struct GroupScoreRow {
  /// Position of the publication in ScoreSheet::publications.
  std::size_t pub = 0;
  GroupKey key;
  std::optional<double> c;
  std::optional<double> cv;
};

struct ScoreSheet {
  std::vector<ScoredPublication> publications;
  /// Ordered by (publication, group) as produced by the scoring pass.
  std::vector<GroupScoreRow> by_group;
};

ScoreSheet make_score_sheet(const CitationCorpus& corpus, const ScoreRun& run);

/// Group-specific C and Cv of every member with both scores available.
struct GroupSeries {
  GroupKey key;
  std::vector<std::size_t> pubs;
  std::vector<double> c;
  std::vector<double> cv;
};

/// Partitions the sheet's group rows by key (sorted by key).
std::vector<GroupSeries> group_series(const ScoreSheet& sheet);

// ---------------------------------------------------------------------------
// Elementary statistics.

struct RegressionResult {
  GroupKey key;
  std::size_t n_points = 0;
  double r_squared = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  /// False for fewer than 3 points or zero variance in either variable.
  bool defined = false;
};

/// Ordinary least squares of ys on xs.
RegressionResult linear_r2(std::span<const double> xs, std::span<const double> ys);

/// Population standard deviation over mean; nullopt for empty input or zero mean.
std::optional<double> coefficient_of_variation(std::span<const double> xs);

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value.
double nearest_rank_threshold(std::span<const double> scores, double percentile);

/// Indices of scores strictly above the nearest-rank threshold, ascending.
std::vector<std::size_t> top_set(std::span<const double> scores, double percentile);

struct ShareSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Population standard deviation.
  double stdev = 0.0;
};

ShareSummary summarize(std::span<const double> xs);

// ---------------------------------------------------------------------------
// Group-level comparisons between C and Cv.

enum class Indicator { c, cv };
std::string_view to_string(Indicator i) noexcept;

struct DispersionStats {
  GroupKey key;
  std::size_t n_points = 0;
  double cv_of_c = 0.0;
  double cv_of_cv = 0.0;
  /// Indicator with the larger coefficient of variation; ties go to C.
  Indicator winner = Indicator::c;
};

/// R^2 of Cv on C for each group with at least `min_group_size` members.
/// Undefined fits are dropped.
std::vector<RegressionResult> group_regressions(std::span<const GroupSeries> groups,
                                                std::size_t min_group_size);

std::vector<DispersionStats> group_dispersion(std::span<const GroupSeries> groups,
                                              std::size_t min_group_size);

/// Fraction of qualifying groups where CV(Cv) > CV(C). Throws
/// DegenerateDataError when no group qualifies.
double cv_winner_share(std::span<const GroupSeries> groups, std::size_t min_group_size);

// ---------------------------------------------------------------------------
// Highly-cited sets.

struct GroupShare {
  GroupKey key;
  std::size_t members = 0;
  double share_c = 0.0;
  double share_cv = 0.0;
};

struct TopSetReport {
  double percentile = 0.0;
  /// Positions in ScoreSheet::publications, ascending.
  std::vector<std::size_t> set_c;
  std::vector<std::size_t> set_cv;
  /// |set_c \ set_cv| / |set_c| (0 when set_c is empty).
  double shift_c_to_cv = 0.0;
  double shift_cv_to_c = 0.0;
  std::vector<GroupShare> per_group_share;
};

/// Fraction of `from` absent from `to`; both must be sorted.
double shift_rate(std::span<const std::size_t> from, std::span<const std::size_t> to);

/// Top sets of publication-level C and Cv at each percentile, their shift
/// rates and per-group member shares.
std::vector<TopSetReport> shift_report(const ScoreSheet& sheet,
                                       std::span<const double> percentiles);

struct TopShareRow {
  Indicator indicator = Indicator::c;
  int year = 0;
  ShareSummary summary;
};

/// Per-year statistics of per-group top shares over groups with at least
/// `min_group_size` members, one row per (indicator, year).
std::vector<TopShareRow> top_share_dispersion(const TopSetReport& report,
                                              std::size_t min_group_size);

// ---------------------------------------------------------------------------
// Full analysis and sensitivity.

struct AnalysisOptions {
  std::vector<double> percentiles{90.0, 95.0, 99.0};
  /// Threshold for R^2, CV-winner share and top-share statistics.
  std::size_t min_group_size = 30;
  /// Threshold for the per-group dispersion listing.
  std::size_t min_group_size_dispersion = 600;
  /// Percentile used for sensitivity overlaps and top-share statistics.
  double top_percentile = 90.0;
  unsigned threads = 1;
};

struct AnalysisReport {
  std::vector<RegressionResult> regressions;
  std::vector<DispersionStats> dispersion;
  std::optional<double> cv_winner_share;
  std::vector<TopSetReport> top_sets;
  std::vector<TopShareRow> top_shares;
};

/// Runs every group and corpus-level comparison. Throws DegenerateDataError
/// when no group reaches `min_group_size`.
AnalysisReport analyze(const ScoreSheet& sheet, const AnalysisOptions& options);

struct SensitivityEntry {
  double alpha = 1.0;
  ShareSummary cv_summary;
  ShareSummary cv_star_summary;
  std::vector<RegressionResult> regressions;
  std::optional<double> cv_winner_share;
  /// |top(alpha) ∩ top(1)| / |top(1)| at the top percentile.
  double top_overlap = 1.0;
  /// Publication-level Cv and Cv* in corpus order of cited publications.
  std::vector<double> cv;
  std::vector<double> cv_star;
};

struct SensitivityReport {
  ModelConfig base_config;
  std::optional<double> beta;
  double top_percentile = 90.0;
  std::vector<SensitivityEntry> entries;
};

/// Recomputes the scoring and the group analyses for each alpha (exponential
/// model only). Entries follow the order of `alphas`.
SensitivityReport alpha_sweep(const CitationCorpus& corpus, const ModelConfig& base_config,
                              std::span<const double> alphas, const AnalysisOptions& options);

}  // namespace citeval
