#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "citeval/baselines.hpp"
#include "citeval/corpus.hpp"

namespace citeval {

enum class Model { exponential, power };

/// Reference value c_i_exp of the power model, taken from the citing group.
enum class PowerCenter { mean, median };

std::string_view to_string(Model m) noexcept;
std::string_view to_string(PowerCenter c) noexcept;
Model parse_model(std::string_view s);
PowerCenter parse_power_center(std::string_view s);

struct ModelConfig {
  Model model = Model::exponential;
  /// Fixed conversion rate; nullopt derives it from the corpus.
  std::optional<double> fixed_beta;
  /// Weight of a median-cited citing publication used when deriving beta.
  double beta_target = 1.5;
  /// Cap multiplier: a single citation is worth at most 1 + alpha.
  double alpha = 1.0;
  double gamma = 0.5;
  Population population = Population::cited_only;
  PowerCenter power_center = PowerCenter::mean;

  /// Throws ValidationError on out-of-range parameters.
  void validate() const;
};

/// Gain transform 1 - c_max / c_i. Returns -infinity for c_i = 0 so the
/// exponential weight collapses to exactly zero.
double f_gain(std::uint32_t citing_citations, std::uint32_t group_max);

/// One citing publication as seen by the cited one: its own citation count
/// and the reference value of its group (c_max for the exponential model,
/// the group centre for the power model). A reference of 0 marks a
/// degenerate citing group.
struct CitingDegree {
  std::uint32_t citations = 0;
  double reference = 0.0;
};

/// exp(beta * f(c_i)); zero for uncited or degenerate citing publications.
double exponential_weight(std::uint32_t citations, double group_max, double beta);

/// (1 + c_i / centre)^gamma; a degenerate centre yields a plain citation (1).
double power_term(std::uint32_t citations, double centre, double gamma);

/// N + alpha * sum of exponential weights over the citing publications.
double cv_star_exponential(std::span<const CitingDegree> citing, double beta, double alpha = 1.0);

/// Sum of power-model terms over the citing publications.
double cv_star_power(std::span<const CitingDegree> citing, double gamma);

/// Traditional field-normalized score N / c_exp; nullopt for a degenerate group.
std::optional<double> compute_c(std::uint32_t n, double c_exp);

struct GroupScore {
  GroupIndex group = 0;
  std::optional<double> c;
  std::optional<double> cv;
};

/// Scores of one cited publication. Cv* does not depend on the cited
/// publication's own group, so only C and Cv vary across `per_group`.
struct IndicatorScores {
  PubIndex pub = 0;
  std::uint32_t n = 0;
  std::optional<double> c;
  double cv_star = 0.0;
  std::optional<double> cv;
  std::vector<GroupScore> per_group;
};

struct ScoreRun {
  ModelConfig config;
  /// Resolved conversion rate (exponential model only).
  std::optional<double> beta;
  /// Present when beta was derived rather than fixed.
  std::optional<BetaConvention> convention;
  /// Baselines with cv_star_exp filled.
  Baselines baselines;
  /// Cited publications only, in corpus order.
  std::vector<IndicatorScores> scores;
};

/// Resolves beta for an exponential-model config (fixed or derived).
std::optional<BetaConvention> resolve_beta(const Baselines& baselines, const ModelConfig& config,
                                           double& beta);

/// Two-pass scoring: Cv* for every cited publication, then group means of
/// nonzero Cv* and the normalized Cv. Output is independent of `threads`.
ScoreRun compute_all(const CitationCorpus& corpus, const Baselines& baselines,
                     const ModelConfig& config, unsigned threads = 1);

/// Computes baselines under `config.population` first.
ScoreRun compute_all(const CitationCorpus& corpus, const ModelConfig& config,
                     unsigned threads = 1);

}  // namespace citeval
