#include "citeval/indicators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "citeval/error.hpp"
#include "citeval/numeric.hpp"

namespace citeval {

std::string_view to_string(Model m) noexcept {
  return m == Model::exponential ? "exponential" : "power";
}

std::string_view to_string(PowerCenter c) noexcept {
  return c == PowerCenter::mean ? "mean" : "median";
}

Model parse_model(std::string_view s) {
  if (s == "exponential") return Model::exponential;
  if (s == "power") return Model::power;
  throw ValidationError("unknown model '" + std::string(s) + "' (expected exponential or power)");
}

PowerCenter parse_power_center(std::string_view s) {
  if (s == "mean") return PowerCenter::mean;
  if (s == "median") return PowerCenter::median;
  throw ValidationError("unknown power centre '" + std::string(s) + "' (expected mean or median)");
}

void ModelConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be > 0, got " + std::to_string(alpha));
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ValidationError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  if (fixed_beta && (!(*fixed_beta > 0.0) || !std::isfinite(*fixed_beta))) {
    throw ValidationError("fixed beta must be > 0, got " + std::to_string(*fixed_beta));
  }
  if (!(beta_target > 1.0 && beta_target < 2.0)) {
    throw ValidationError("beta target weight must lie in (1, 2)");
  }
}

double f_gain(std::uint32_t citing_citations, std::uint32_t group_max) {
  if (group_max == 0) throw ValidationError("f_gain requires a group maximum >= 1");
  if (citing_citations == 0) return -std::numeric_limits<double>::infinity();
  return 1.0 - static_cast<double>(group_max) / static_cast<double>(citing_citations);
}

double exponential_weight(std::uint32_t citations, double group_max, double beta) {
  if (citations == 0 || !(group_max > 0.0)) return 0.0;
  return std::exp(beta * (1.0 - group_max / static_cast<double>(citations)));
}

double power_term(std::uint32_t citations, double centre, double gamma) {
  if (!(centre > 0.0)) return 1.0;
  return std::pow(1.0 + static_cast<double>(citations) / centre, gamma);
}

double cv_star_exponential(std::span<const CitingDegree> citing, double beta, double alpha) {
  if (citing.empty()) throw ValidationError("cv_star undefined for uncited publication");
  CompensatedSum bonus;
  for (const auto& d : citing) bonus.add(exponential_weight(d.citations, d.reference, beta));
  return static_cast<double>(citing.size()) + alpha * bonus.value();
}

double cv_star_power(std::span<const CitingDegree> citing, double gamma) {
  if (citing.empty()) throw ValidationError("cv_star undefined for uncited publication");
  CompensatedSum total;
  for (const auto& d : citing) total.add(power_term(d.citations, d.reference, gamma));
  return total.value();
}

std::optional<double> compute_c(std::uint32_t n, double c_exp) {
  if (!(c_exp > 0.0)) return std::nullopt;
  return static_cast<double>(n) / c_exp;
}

std::optional<BetaConvention> resolve_beta(const Baselines& baselines, const ModelConfig& config,
                                           double& beta) {
  if (config.fixed_beta) {
    beta = *config.fixed_beta;
    return std::nullopt;
  }
  auto conv = derive_beta(baselines, config.beta_target);
  beta = conv.beta;
  return conv;
}

namespace {

/// Per-publication contribution of one citation it makes, averaged over
/// the publication's own groups.
std::vector<double> citing_contributions(const CitationCorpus& corpus, const Baselines& baselines,
                                         const ModelConfig& config, double beta,
                                         unsigned threads) {
  std::vector<double> out(corpus.size(), 0.0);
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const auto p = static_cast<PubIndex>(i);
    if (corpus.references(p).empty()) return;
    const auto groups = corpus.groups_of(p);
    const auto c_i = corpus.in_degree(p);
    CompensatedSum sum;
    for (GroupIndex g : groups) {
      const GroupBaseline& b = baselines.groups[g];
      if (config.model == Model::exponential) {
        sum.add(b.degenerate ? 0.0 : exponential_weight(c_i, b.c_max, beta));
      } else {
        const double centre =
            b.degenerate ? 0.0 : (config.power_center == PowerCenter::mean ? b.c_exp : b.c_median);
        sum.add(power_term(c_i, centre, config.gamma));
      }
    }
    out[i] = sum.value() / static_cast<double>(groups.size());
  });
  return out;
}

}  // namespace

ScoreRun compute_all(const CitationCorpus& corpus, const Baselines& baselines,
                     const ModelConfig& config, unsigned threads) {
  config.validate();
  if (baselines.groups.size() != corpus.group_count()) {
    throw ValidationError("baselines do not match the corpus group partition");
  }

  ScoreRun run;
  run.config = config;
  run.baselines = baselines;
  double beta = 0.0;
  if (config.model == Model::exponential) {
    run.convention = resolve_beta(baselines, config, beta);
    run.beta = beta;
  }

  const auto contrib = citing_contributions(corpus, baselines, config, beta, threads);

  // Pass 1: Cv* per publication (zero for uncited).
  std::vector<double> cv_star(corpus.size(), 0.0);
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const auto citers = corpus.citers(static_cast<PubIndex>(i));
    if (citers.empty()) return;
    CompensatedSum sum;
    for (PubIndex citing : citers) sum.add(contrib[citing]);
    cv_star[i] = config.model == Model::exponential
                     ? static_cast<double>(citers.size()) + config.alpha * sum.value()
                     : sum.value();
  });

  // Pass 2: group means over members with nonzero Cv*.
  parallel_for(corpus.group_count(), threads, [&](std::size_t g) {
    CompensatedSum sum;
    std::size_t count = 0;
    for (PubIndex p : corpus.group_members(static_cast<GroupIndex>(g))) {
      if (cv_star[p] != 0.0) {
        sum.add(cv_star[p]);
        ++count;
      }
    }
    if (count > 0) run.baselines.groups[g].cv_star_exp = sum.value() / static_cast<double>(count);
  });

  std::vector<PubIndex> cited;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus.is_cited(static_cast<PubIndex>(i))) cited.push_back(static_cast<PubIndex>(i));
  }
  run.scores.resize(cited.size());
  parallel_for(cited.size(), threads, [&](std::size_t k) {
    const PubIndex p = cited[k];
    IndicatorScores& s = run.scores[k];
    s.pub = p;
    s.n = corpus.in_degree(p);
    s.cv_star = cv_star[p];
    CompensatedSum c_sum, cv_sum;
    std::size_t c_count = 0, cv_count = 0;
    for (GroupIndex g : corpus.groups_of(p)) {
      const GroupBaseline& b = run.baselines.groups[g];
      GroupScore gs;
      gs.group = g;
      if (!b.degenerate) gs.c = compute_c(s.n, b.c_exp);
      if (b.cv_star_exp && *b.cv_star_exp > 0.0) gs.cv = s.cv_star / *b.cv_star_exp;
      if (gs.c) {
        c_sum.add(*gs.c);
        ++c_count;
      }
      if (gs.cv) {
        cv_sum.add(*gs.cv);
        ++cv_count;
      }
      s.per_group.push_back(gs);
    }
    if (c_count > 0) s.c = c_sum.value() / static_cast<double>(c_count);
    if (cv_count > 0) s.cv = cv_sum.value() / static_cast<double>(cv_count);
  });
  return run;
}

ScoreRun compute_all(const CitationCorpus& corpus, const ModelConfig& config, unsigned threads) {
  config.validate();
  return compute_all(corpus, compute_group_baselines(corpus, config.population, threads), config,
                     threads);
}

}  // namespace citeval
