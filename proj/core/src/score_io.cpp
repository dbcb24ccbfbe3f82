#include "citeval/score_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "citeval/csv.hpp"
#include "citeval/error.hpp"

namespace citeval {

std::string format_exact(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_report(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_exact(*v) : std::string(); }

std::string join(const std::vector<std::string>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += xs[i];
  }
  return out;
}

double parse_double(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require_row(ec == std::errc{} && ptr == s.data() + s.size() && !s.empty(), row,
              "invalid number '" + s + "'");
  return v;
}

std::optional<double> parse_opt(const std::string& s, std::size_t row) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, row);
}

template <typename T>
T parse_int(const std::string& s, std::size_t row) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require_row(ec == std::errc{} && ptr == s.data() + s.size() && !s.empty(), row,
              "invalid integer '" + s + "'");
  return v;
}

std::vector<std::size_t> columns(const std::vector<std::string>& header,
                                 std::initializer_list<std::string_view> names,
                                 std::string_view file) {
  std::vector<std::size_t> out;
  for (auto name : names) {
    const auto idx = csv::find_column(header, name);
    if (!idx) {
      throw ValidationError(std::string(file) + " is missing column '" + std::string(name) + "'");
    }
    out.push_back(*idx);
  }
  return out;
}

}  // namespace

std::string scores_csv(const ScoreSheet& sheet) {
  std::string out = "id,year,subject_categories,n,c,cv_star,cv\n";
  for (const auto& p : sheet.publications) {
    out += csv::escape(p.id) + ',' + std::to_string(p.year) + ',' +
           csv::escape(join(p.subject_categories, ';')) + ',' + std::to_string(p.n) + ',' +
           opt(p.c) + ',' + format_exact(p.cv_star) + ',' + opt(p.cv) + '\n';
  }
  return out;
}

std::string scores_by_group_csv(const ScoreSheet& sheet) {
  std::string out = "id,year,subject_category,n,c,cv_star,cv\n";
  for (const auto& row : sheet.by_group) {
    const auto& p = sheet.publications.at(row.pub);
    out += csv::escape(p.id) + ',' + std::to_string(row.key.year) + ',' +
           csv::escape(row.key.subject_category) + ',' + std::to_string(p.n) + ',' + opt(row.c) +
           ',' + format_exact(p.cv_star) + ',' + opt(row.cv) + '\n';
  }
  return out;
}

ScoreSheet parse_score_files(std::istream& scores, std::istream& by_group) {
  ScoreSheet sheet;
  std::unordered_map<std::string, std::size_t> pos;
  {
    csv::Reader reader(scores);
    const auto header = reader.header();
    const auto col = columns(header, {"id", "year", "subject_categories", "n", "c", "cv_star", "cv"},
                             "scores.csv");
    while (auto f = reader.next()) {
      const auto row = reader.row();
      require_row(f->size() == header.size(), row, "scores.csv: wrong field count");
      ScoredPublication p;
      p.id = (*f)[col[0]];
      p.year = parse_int<int>((*f)[col[1]], row);
      std::stringstream scs((*f)[col[2]]);
      for (std::string sc; std::getline(scs, sc, ';');) {
        if (!sc.empty()) p.subject_categories.push_back(sc);
      }
      p.n = parse_int<std::uint32_t>((*f)[col[3]], row);
      p.c = parse_opt((*f)[col[4]], row);
      p.cv_star = parse_double((*f)[col[5]], row);
      p.cv = parse_opt((*f)[col[6]], row);
      if (!pos.emplace(p.id, sheet.publications.size()).second) {
        throw ValidationError("scores.csv: duplicate publication id " + p.id);
      }
      sheet.publications.push_back(std::move(p));
    }
  }
  {
    csv::Reader reader(by_group);
    const auto header = reader.header();
    const auto col = columns(header, {"id", "year", "subject_category", "c", "cv"},
                             "scores_by_group.csv");
    while (auto f = reader.next()) {
      const auto row = reader.row();
      require_row(f->size() == header.size(), row, "scores_by_group.csv: wrong field count");
      const auto it = pos.find((*f)[col[0]]);
      require_row(it != pos.end(), row,
                  "scores_by_group.csv: publication " + (*f)[col[0]] + " not in scores.csv");
      GroupScoreRow g;
      g.pub = it->second;
      g.key = GroupKey{parse_int<int>((*f)[col[1]], row), (*f)[col[2]]};
      g.c = parse_opt((*f)[col[3]], row);
      g.cv = parse_opt((*f)[col[4]], row);
      sheet.by_group.push_back(std::move(g));
    }
  }
  return sheet;
}

std::string baselines_csv(const Baselines& baselines) {
  std::string out = "year,subject_category,n_pubs,n_cited,c_exp,c_max,c_median,cv_star_exp\n";
  for (const auto& b : baselines.groups) {
    out += std::to_string(b.key.year) + ',' + csv::escape(b.key.subject_category) + ',' +
           std::to_string(b.n_pubs) + ',' + std::to_string(b.n_cited) + ',' +
           format_report(b.c_exp) + ',' + std::to_string(b.c_max) + ',' +
           format_report(b.c_median) + ',' +
           (b.cv_star_exp ? format_report(*b.cv_star_exp) : std::string()) + '\n';
  }
  return out;
}

std::string report_r2_csv(std::span<const RegressionResult> rows) {
  std::string out = "year,subject_category,n_points,r_squared,slope,intercept\n";
  for (const auto& r : rows) {
    out += std::to_string(r.key.year) + ',' + csv::escape(r.key.subject_category) + ',' +
           std::to_string(r.n_points) + ',' + format_report(r.r_squared) + ',' +
           format_report(r.slope) + ',' + format_report(r.intercept) + '\n';
  }
  return out;
}

std::string report_dispersion_csv(std::span<const DispersionStats> rows) {
  std::string out = "year,subject_category,cv_c,cv_cv,winner\n";
  for (const auto& d : rows) {
    out += std::to_string(d.key.year) + ',' + csv::escape(d.key.subject_category) + ',' +
           format_report(d.cv_of_c) + ',' + format_report(d.cv_of_cv) + ',' +
           std::string(to_string(d.winner)) + '\n';
  }
  return out;
}

std::string report_topk_csv(std::span<const TopSetReport> rows) {
  std::string out = "percentile,shift_c_to_cv,shift_cv_to_c,set_size_c,set_size_cv\n";
  for (const auto& t : rows) {
    out += format_report(t.percentile) + ',' + format_report(t.shift_c_to_cv) + ',' +
           format_report(t.shift_cv_to_c) + ',' + std::to_string(t.set_c.size()) + ',' +
           std::to_string(t.set_cv.size()) + '\n';
  }
  return out;
}

std::string report_top_share_csv(std::span<const TopShareRow> rows) {
  std::string out = "indicator,year,mean,min,max,stdev\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.indicator)) + ',' + std::to_string(r.year) + ',' +
           format_report(r.summary.mean) + ',' + format_report(r.summary.min) + ',' +
           format_report(r.summary.max) + ',' + format_report(r.summary.stdev) + '\n';
  }
  return out;
}

namespace {

using nlohmann::ordered_json;

double rounded(double x) { return std::stod(format_report(x)); }

ordered_json summary_json(const ShareSummary& s) {
  return {{"count", s.count},
          {"mean", rounded(s.mean)},
          {"min", rounded(s.min)},
          {"max", rounded(s.max)},
          {"stdev", rounded(s.stdev)}};
}

}  // namespace

std::string report_sensitivity_json(const SensitivityReport& report) {
  ordered_json doc;
  doc["model"] = to_string(report.base_config.model);
  doc["population"] = to_string(report.base_config.population);
  if (report.beta) doc["beta"] = rounded(*report.beta);
  doc["top_percentile"] = rounded(report.top_percentile);
  ordered_json alphas = ordered_json::object();
  for (const auto& e : report.entries) {
    ordered_json entry;
    entry["alpha"] = rounded(e.alpha);
    entry["cv"] = summary_json(e.cv_summary);
    entry["cv_star"] = summary_json(e.cv_star_summary);
    ordered_json r2 = ordered_json::array();
    for (const auto& r : e.regressions) {
      r2.push_back({{"year", r.key.year},
                    {"subject_category", r.key.subject_category},
                    {"n_points", r.n_points},
                    {"r_squared", rounded(r.r_squared)},
                    {"slope", rounded(r.slope)},
                    {"intercept", rounded(r.intercept)}});
    }
    entry["r2"] = std::move(r2);
    entry["cv_winner_share"] =
        e.cv_winner_share ? ordered_json(rounded(*e.cv_winner_share)) : ordered_json(nullptr);
    entry["top_overlap_vs_alpha1"] = rounded(e.top_overlap);
    alphas[format_report(e.alpha)] = std::move(entry);
  }
  doc["alphas"] = std::move(alphas);
  return doc.dump(2) + "\n";
}

}  // namespace citeval
