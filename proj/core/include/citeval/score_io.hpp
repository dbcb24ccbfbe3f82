#pragma once

#include <istream>
#include <span>
#include <string>

#include "citeval/analytics.hpp"
#include "citeval/baselines.hpp"

namespace citeval {

/// Shortest decimal that round-trips to the same double.
std::string format_exact(double x);
/// Six significant digits, used by every report file.
std::string format_report(double x);

/// `id,year,subject_categories,n,c,cv_star,cv`; subject categories `;`-joined.
std::string scores_csv(const ScoreSheet& sheet);
/// `id,year,subject_category,n,c,cv_star,cv`, one row per (publication, group).
std::string scores_by_group_csv(const ScoreSheet& sheet);
/// Rebuilds a sheet from the two score files.
ScoreSheet parse_score_files(std::istream& scores, std::istream& by_group);

/// `year,subject_category,n_pubs,n_cited,c_exp,c_max,c_median,cv_star_exp`.
std::string baselines_csv(const Baselines& baselines);

std::string report_r2_csv(std::span<const RegressionResult> rows);
std::string report_dispersion_csv(std::span<const DispersionStats> rows);
std::string report_topk_csv(std::span<const TopSetReport> rows);
std::string report_top_share_csv(std::span<const TopShareRow> rows);
/// Keyed by alpha; each entry embeds the per-alpha summaries.
std::string report_sensitivity_json(const SensitivityReport& report);

}  // namespace citeval
