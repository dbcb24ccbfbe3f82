#include "citeval/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "citeval/error.hpp"
#include "citeval/numeric.hpp"

namespace citeval {

ScoreSheet make_score_sheet(const CitationCorpus& corpus, const ScoreRun& run) {
  ScoreSheet sheet;
  sheet.publications.reserve(run.scores.size());
  for (const auto& s : run.scores) {
    const auto& rec = corpus.publication(s.pub);
    const std::size_t pos = sheet.publications.size();
    sheet.publications.push_back({rec.id, rec.year, rec.subject_categories, s.n, s.c, s.cv_star, s.cv});
    for (const auto& g : s.per_group) {
      sheet.by_group.push_back({pos, corpus.group_key(g.group), g.c, g.cv});
    }
  }
  return sheet;
}

std::vector<GroupSeries> group_series(const ScoreSheet& sheet) {
  std::map<GroupKey, GroupSeries> groups;
  for (const auto& row : sheet.by_group) {
    if (!row.c || !row.cv) continue;
    auto& g = groups[row.key];
    g.key = row.key;
    g.pubs.push_back(row.pub);
    g.c.push_back(*row.c);
    g.cv.push_back(*row.cv);
  }
  std::vector<GroupSeries> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

namespace {

bool all_equal(std::span<const double> xs) {
  return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) == xs.end();
}

}  // namespace

RegressionResult linear_r2(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ValidationError("linear_r2: vectors differ in length");
  RegressionResult r;
  r.n_points = xs.size();
  if (xs.size() < 3 || all_equal(xs) || all_equal(ys)) return r;

  const double mx = compensated_mean(xs);
  const double my = compensated_mean(ys);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) return r;
  r.slope = sxy.value() / sxx.value();
  r.intercept = my - r.slope * mx;
  r.r_squared = std::clamp(sxy.value() * sxy.value() / (sxx.value() * syy.value()), 0.0, 1.0);
  r.defined = true;
  return r;
}

std::optional<double> coefficient_of_variation(std::span<const double> xs) {
  if (xs.empty()) return std::nullopt;
  const double mean = compensated_mean(xs);
  if (mean == 0.0) return std::nullopt;
  if (all_equal(xs)) return 0.0;
  CompensatedSum ss;
  for (double x : xs) ss.add((x - mean) * (x - mean));
  return std::sqrt(ss.value() / static_cast<double>(xs.size())) / mean;
}

double nearest_rank_threshold(std::span<const double> scores, double percentile) {
  if (scores.empty()) throw ValidationError("percentile of an empty score vector");
  if (!(percentile > 0.0 && percentile < 100.0)) {
    throw ValidationError("percentile must lie in (0, 100), got " + std::to_string(percentile));
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n) / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  return sorted[rank - 1];
}

std::vector<std::size_t> top_set(std::span<const double> scores, double percentile) {
  std::vector<std::size_t> out;
  if (scores.empty()) return out;
  const double threshold = nearest_rank_threshold(scores, percentile);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > threshold) out.push_back(i);
  }
  return out;
}

ShareSummary summarize(std::span<const double> xs) {
  ShareSummary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  s.mean = compensated_mean(xs);
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  if (!all_equal(xs)) {
    CompensatedSum ss;
    for (double x : xs) ss.add((x - s.mean) * (x - s.mean));
    s.stdev = std::sqrt(ss.value() / static_cast<double>(xs.size()));
  }
  return s;
}

std::string_view to_string(Indicator i) noexcept { return i == Indicator::c ? "c" : "cv"; }

std::vector<RegressionResult> group_regressions(std::span<const GroupSeries> groups,
                                                std::size_t min_group_size) {
  std::vector<RegressionResult> out;
  for (const auto& g : groups) {
    if (g.pubs.size() < min_group_size) continue;
    auto r = linear_r2(g.c, g.cv);
    if (!r.defined) continue;
    r.key = g.key;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DispersionStats> group_dispersion(std::span<const GroupSeries> groups,
                                              std::size_t min_group_size) {
  std::vector<DispersionStats> out;
  for (const auto& g : groups) {
    if (g.pubs.size() < min_group_size) continue;
    const auto cv_c = coefficient_of_variation(g.c);
    const auto cv_cv = coefficient_of_variation(g.cv);
    if (!cv_c || !cv_cv) continue;
    DispersionStats d;
    d.key = g.key;
    d.n_points = g.pubs.size();
    d.cv_of_c = *cv_c;
    d.cv_of_cv = *cv_cv;
    d.winner = d.cv_of_cv > d.cv_of_c ? Indicator::cv : Indicator::c;
    out.push_back(std::move(d));
  }
  return out;
}

double cv_winner_share(std::span<const GroupSeries> groups, std::size_t min_group_size) {
  const auto stats = group_dispersion(groups, min_group_size);
  if (stats.empty()) throw DegenerateDataError("no groups meet size threshold");
  const auto wins = std::count_if(stats.begin(), stats.end(),
                                  [](const DispersionStats& d) { return d.winner == Indicator::cv; });
  return static_cast<double>(wins) / static_cast<double>(stats.size());
}

double shift_rate(std::span<const std::size_t> from, std::span<const std::size_t> to) {
  if (from.empty()) return 0.0;
  std::size_t missing = 0;
  for (std::size_t id : from) {
    if (!std::binary_search(to.begin(), to.end(), id)) ++missing;
  }
  return static_cast<double>(missing) / static_cast<double>(from.size());
}

std::vector<TopSetReport> shift_report(const ScoreSheet& sheet,
                                       std::span<const double> percentiles) {
  std::vector<std::size_t> eligible;
  std::vector<double> c, cv;
  for (std::size_t i = 0; i < sheet.publications.size(); ++i) {
    const auto& p = sheet.publications[i];
    if (!p.c || !p.cv) continue;
    eligible.push_back(i);
    c.push_back(*p.c);
    cv.push_back(*p.cv);
  }
  const auto groups = group_series(sheet);

  std::vector<TopSetReport> out;
  for (double pct : percentiles) {
    TopSetReport rep;
    rep.percentile = pct;
    for (auto i : top_set(c, pct)) rep.set_c.push_back(eligible[i]);
    for (auto i : top_set(cv, pct)) rep.set_cv.push_back(eligible[i]);
    rep.shift_c_to_cv = shift_rate(rep.set_c, rep.set_cv);
    rep.shift_cv_to_c = shift_rate(rep.set_cv, rep.set_c);
    for (const auto& g : groups) {
      GroupShare share;
      share.key = g.key;
      share.members = g.pubs.size();
      std::size_t in_c = 0, in_cv = 0;
      for (std::size_t p : g.pubs) {
        if (std::binary_search(rep.set_c.begin(), rep.set_c.end(), p)) ++in_c;
        if (std::binary_search(rep.set_cv.begin(), rep.set_cv.end(), p)) ++in_cv;
      }
      share.share_c = static_cast<double>(in_c) / static_cast<double>(share.members);
      share.share_cv = static_cast<double>(in_cv) / static_cast<double>(share.members);
      rep.per_group_share.push_back(std::move(share));
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<TopShareRow> top_share_dispersion(const TopSetReport& report,
                                              std::size_t min_group_size) {
  std::vector<TopShareRow> out;
  for (Indicator ind : {Indicator::c, Indicator::cv}) {
    std::map<int, std::vector<double>> by_year;
    for (const auto& g : report.per_group_share) {
      if (g.members < min_group_size) continue;
      by_year[g.key.year].push_back(ind == Indicator::c ? g.share_c : g.share_cv);
    }
    for (const auto& [year, shares] : by_year) {
      out.push_back({ind, year, summarize(shares)});
    }
  }
  return out;
}

AnalysisReport analyze(const ScoreSheet& sheet, const AnalysisOptions& options) {
  const auto groups = group_series(sheet);
  const bool any = std::any_of(groups.begin(), groups.end(), [&](const GroupSeries& g) {
    return g.pubs.size() >= options.min_group_size;
  });
  if (!any) {
    throw DegenerateDataError("no groups meet size threshold: no group has at least " +
                              std::to_string(options.min_group_size) + " scored publications");
  }

  AnalysisReport rep;
  rep.regressions = group_regressions(groups, options.min_group_size);
  rep.dispersion = group_dispersion(groups, options.min_group_size_dispersion);
  try {
    rep.cv_winner_share = cv_winner_share(groups, options.min_group_size);
  } catch (const DegenerateDataError&) {
    rep.cv_winner_share.reset();
  }
  rep.top_sets = shift_report(sheet, options.percentiles);

  const auto it = std::find_if(rep.top_sets.begin(), rep.top_sets.end(), [&](const TopSetReport& t) {
    return t.percentile == options.top_percentile;
  });
  if (it != rep.top_sets.end()) {
    rep.top_shares = top_share_dispersion(*it, options.min_group_size);
  } else {
    const double pct[] = {options.top_percentile};
    rep.top_shares = top_share_dispersion(shift_report(sheet, pct).front(), options.min_group_size);
  }
  return rep;
}

namespace {

/// Positions (in the sheet) of the Cv top set.
std::vector<std::size_t> top_cv_positions(const ScoreSheet& sheet, double percentile) {
  std::vector<double> cv;
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < sheet.publications.size(); ++i) {
    if (sheet.publications[i].cv) {
      cv.push_back(*sheet.publications[i].cv);
      pos.push_back(i);
    }
  }
  std::vector<std::size_t> out;
  for (auto i : top_set(cv, percentile)) out.push_back(pos[i]);
  return out;
}

}  // namespace

SensitivityReport alpha_sweep(const CitationCorpus& corpus, const ModelConfig& base_config,
                              std::span<const double> alphas, const AnalysisOptions& options) {
  if (base_config.model != Model::exponential) {
    throw ValidationError("alpha sweep requires the exponential model");
  }
  for (double a : alphas) {
    if (!(a > 0.0)) throw ValidationError("alpha must be > 0, got " + std::to_string(a));
  }

  SensitivityReport rep;
  rep.base_config = base_config;
  rep.top_percentile = options.top_percentile;

  const auto baselines = compute_group_baselines(corpus, base_config.population, options.threads);
  double beta = 0.0;
  resolve_beta(baselines, base_config, beta);
  ModelConfig fixed = base_config;
  fixed.fixed_beta = beta;
  rep.beta = beta;

  // Overlaps are measured against the alpha = 1 top set.
  std::vector<std::size_t> base_top;
  {
    ModelConfig cfg = fixed;
    cfg.alpha = 1.0;
    const auto sheet = make_score_sheet(corpus, compute_all(corpus, baselines, cfg, options.threads));
    base_top = top_cv_positions(sheet, options.top_percentile);
  }

  rep.entries.resize(alphas.size());
  const unsigned outer = std::min<unsigned>(resolve_threads(options.threads),
                                            static_cast<unsigned>(std::max<std::size_t>(1, alphas.size())));
  parallel_for(alphas.size(), outer, [&](std::size_t k) {
    ModelConfig cfg = fixed;
    cfg.alpha = alphas[k];
    const ScoreRun run = compute_all(corpus, baselines, cfg, outer > 1 ? 1 : options.threads);
    const ScoreSheet sheet = make_score_sheet(corpus, run);
    const auto groups = group_series(sheet);

    SensitivityEntry& e = rep.entries[k];
    e.alpha = alphas[k];
    for (const auto& p : sheet.publications) {
      if (p.cv) e.cv.push_back(*p.cv);
      e.cv_star.push_back(p.cv_star);
    }
    e.cv_summary = summarize(e.cv);
    e.cv_star_summary = summarize(e.cv_star);
    e.regressions = group_regressions(groups, options.min_group_size);
    try {
      e.cv_winner_share = cv_winner_share(groups, options.min_group_size);
    } catch (const DegenerateDataError&) {
      e.cv_winner_share.reset();
    }
    const auto top = top_cv_positions(sheet, options.top_percentile);
    e.top_overlap = base_top.empty() ? 1.0 : 1.0 - shift_rate(base_top, top);
  });
  return rep;
}

}  // namespace citeval
