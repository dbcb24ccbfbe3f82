// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "citeval/analytics.hpp"
#include "citeval/baselines.hpp"
#include "citeval/corpus_io.hpp"
#include "citeval/indicators.hpp"
#include "citeval/score_io.hpp"
#include "citeval/synth.hpp"
#include "cli.hpp"
#include "fixtures.hpp"
#include "naive_oracle.hpp"

namespace fs = std::filesystem;
using namespace citeval;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances, pinned.
constexpr double kGoldenTol = 1e-3;
constexpr double kBetaTol = 1e-6;
constexpr double kWeightTol = 1e-9;
constexpr double kReductionTol = 1e-12;
constexpr double kOracleTol = 1e-12;
constexpr double kLinearTol = 1e-12;
constexpr double kGoldenSeconds = 1.0;
constexpr double kPipelineSeconds = 30.0;
constexpr int kRangeCorpora = 1000;
constexpr std::size_t kRangeMaxPubs = 200;
constexpr int kOracleCorpora = 100;
constexpr std::size_t kOracleMaxPubs = 50;
constexpr std::size_t kPipelinePubs = 50'000;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const IndicatorScores* score_of(const CitationCorpus& corpus, const ScoreRun& run, const char* id) {
  const auto p = corpus.find(id);
  for (const auto& s : run.scores) {
    if (p && s.pub == *p) return &s;
  }
  return nullptr;
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::fprintf(stderr, "citeval %s failed: %s", args[0].c_str(), err.str().c_str());
  return code;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("citeval_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void golden() {
  const auto t0 = Clock::now();
  const auto corpus = test::two_level_corpus();
  ModelConfig cfg;
  cfg.population = Population::all;
  cfg.fixed_beta = std::log(2.0) / 19.0;
  const auto run = compute_all(corpus, cfg);
  const double elapsed = seconds_since(t0);

  const auto* a = score_of(corpus, run, "alpha");
  const auto* g = score_of(corpus, run, "gamma");
  const auto* e = score_of(corpus, run, "E");
  const auto& base = run.baselines.groups.at(0);
  auto near = [](double x, double want) { return std::abs(x - want) <= kGoldenTol; };
  const bool ok = a && g && e && near(base.c_exp, 1.143) && near(*a->c, 2.625) &&
                  near(*g->c, 2.625) && near(a->cv_star, 5.789) && near(g->cv_star, 5.930) &&
                  e->cv_star == 4.0 && near(*base.cv_star_exp, 2.840) && near(*a->cv, 2.038) &&
                  near(*g->cv, 2.088) && elapsed < kGoldenSeconds;
  std::ostringstream d;
  if (a && g && e) {
    d << "c_exp=" << fmt("%.4f", base.c_exp) << " Cv*(a)=" << fmt("%.4f", a->cv_star)
      << " Cv*(g)=" << fmt("%.4f", g->cv_star) << " Cv*(E)=" << e->cv_star
      << " Cv*_exp=" << fmt("%.4f", *base.cv_star_exp) << " Cv(a)=" << fmt("%.4f", *a->cv)
      << " Cv(g)=" << fmt("%.4f", *g->cv) << " in " << fmt("%.3f", elapsed) << "s";
  } else {
    d << "missing scores";
  }
  report(1, "golden worked example", ok, d.str());
}

void beta_convention() {
  const auto conv = beta_from_ratio(0.05, 1.5);
  const double weight = 1.0 + std::exp(conv.beta * f_gain(1, 20));  // c_i = 0.05 * c_max
  const bool ok = std::abs(conv.beta - 0.0364814) <= kBetaTol && std::abs(weight - 1.5) <= kWeightTol;
  report(2, "beta convention", ok,
         "beta=" + fmt("%.9f", conv.beta) + " weight=" + fmt("%.12f", weight));
}

void range_property() {
  std::size_t checked = 0, violations = 0;
  for (int seed = 1; seed <= kRangeCorpora; ++seed) {
    const auto corpus = generate(test::random_small_spec(static_cast<std::uint64_t>(seed), kRangeMaxPubs));
    const auto pop = seed % 2 ? Population::cited_only : Population::all;
    const auto baselines = compute_group_baselines(corpus, pop);
    for (double alpha : {1.0, 2.0, 3.0, 5.0}) {
      ModelConfig cfg;
      cfg.population = pop;
      cfg.fixed_beta = test::kReferenceBeta;
      cfg.alpha = alpha;
      for (const auto& s : compute_all(corpus, baselines, cfg).scores) {
        ++checked;
        const double n = s.n;
        if (s.cv_star < n || s.cv_star > (1.0 + alpha) * n) ++violations;
      }
    }
  }
  report(3, "range N <= Cv* <= (1+alpha)N", violations == 0,
         std::to_string(kRangeCorpora) + " corpora, " + std::to_string(checked) + " scores, " +
             std::to_string(violations) + " violations");
}

void reduction() {
  // Cv*_exp averages over cited members only, so the identity holds in
  // cited_only mode; in `all` mode C and Cv differ by n_cited / n_pubs.
  double worst = 0.0;
  std::size_t checked = 0;
  for (int seed = 1; seed <= 300; ++seed) {
    const auto corpus = generate(test::random_small_spec(static_cast<std::uint64_t>(seed), 200));
    ModelConfig cfg;
    cfg.model = Model::power;
    cfg.gamma = 0.0;
    cfg.population = Population::cited_only;
    for (const auto& s : compute_all(corpus, cfg).scores) {
      ++checked;
      worst = std::max(worst, std::abs(*s.cv - *s.c) / std::abs(*s.c));
      for (const auto& g : s.per_group) worst = std::max(worst, std::abs(*g.cv - *g.c) / std::abs(*g.c));
    }
  }
  report(4, "reduction gamma=0 gives Cv == C", worst <= kReductionTol,
         "population=cited_only, " + std::to_string(checked) + " scores, max rel err " +
             fmt("%.3g", worst));
}

void oracle() {
  double worst = 0.0;
  std::size_t checked = 0;
  bool complete = true;
  for (int seed = 1; seed <= kOracleCorpora; ++seed) {
    const auto corpus = generate(test::random_small_spec(static_cast<std::uint64_t>(5000 + seed), kOracleMaxPubs));
    const std::vector<PublicationRecord> pubs(corpus.publications().begin(), corpus.publications().end());
    const auto edges = corpus.edges();
    for (int variant = 0; variant < 4; ++variant) {
      ModelConfig cfg;
      test::OracleParams params;
      cfg.population = variant % 2 ? Population::all : Population::cited_only;
      params.population_all = variant % 2 == 1;
      if (variant >= 2) {
        cfg.model = Model::power;
        params.power_model = true;
        cfg.gamma = params.gamma = 0.5;
      } else {
        cfg.fixed_beta = params.beta = test::kReferenceBeta;
        cfg.alpha = params.alpha = 1.0 + variant;
      }
      const auto run = compute_all(corpus, cfg);
      const auto want = test::naive_scores(pubs, edges, params);
      if (want.cv_star.size() != run.scores.size()) complete = false;
      for (const auto& s : run.scores) {
        const auto& id = corpus.publication(s.pub).id;
        if (!want.cv_star.count(id)) {
          complete = false;
          continue;
        }
        ++checked;
        worst = std::max({worst, test::rel_diff(s.cv_star, want.cv_star.at(id)),
                          test::rel_diff(*s.c, want.c.at(id)), test::rel_diff(*s.cv, want.cv.at(id))});
      }
    }
  }
  report(5, "oracle equivalence", complete && worst <= kOracleTol,
         std::to_string(kOracleCorpora) + " corpora x 4 configs, " + std::to_string(checked) +
             " scores, max rel err " + fmt("%.3g", worst));
}

void alpha_shape() {
  const auto corpus = test::two_level_corpus();
  ModelConfig cfg;
  cfg.population = Population::all;
  cfg.fixed_beta = test::kReferenceBeta;
  const double alphas[] = {1.0, 2.0, 3.0, 5.0};
  AnalysisOptions opts;
  opts.min_group_size = 1;
  const auto sweep = alpha_sweep(corpus, cfg, alphas, opts);
  const auto ia = static_cast<std::size_t>(*corpus.find("alpha"));
  const auto ig = static_cast<std::size_t>(*corpus.find("gamma"));
  // Both are cited, and cited publications come first in corpus order here.
  bool ok = ia == 0 && ig == 1;
  double prev = 0.0;
  std::string detail = "ratios";
  for (const auto& e : sweep.entries) {
    const double ratio = e.cv[ig] / e.cv[ia];
    ok = ok && ratio > prev;
    prev = ratio;
    detail += " a=" + fmt("%g", e.alpha) + ":" + fmt("%.6f", ratio);
  }
  report(6, "alpha sensitivity shape", ok, detail);
}

void analytics_anchors() {
  std::vector<double> x, y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i - 7.0);
  }
  const double r2 = linear_r2(x, y).r_squared;
  const std::vector<double> flat(20, 4.2);
  const double cv = *coefficient_of_variation(flat);

  ScoreSheet sheet;
  for (std::size_t i = 0; i < 200; ++i) {
    const double v = std::exp(std::sin(double(i)) * 3.0);
    sheet.publications.push_back({"P" + std::to_string(i), 2000, {"X"}, 1, v, v, v});
    sheet.by_group.push_back({i, {2000, "X"}, v, v});
  }
  const double pct[] = {90.0, 95.0, 99.0};
  double max_shift = 0.0;
  for (const auto& t : shift_report(sheet, pct)) {
    max_shift = std::max({max_shift, t.shift_c_to_cv, t.shift_cv_to_c});
  }
  const bool ok = std::abs(r2 - 1.0) <= kLinearTol && cv == 0.0 && max_shift == 0.0;
  report(7, "analytics anchors", ok,
         "R2=" + fmt("%.15f", r2) + " CV(const)=" + fmt("%g", cv) + " max shift=" + fmt("%g", max_shift));
}

/// Independent per-group top-set recount from the score files.
bool recount_shares(const fs::path& dir, std::size_t& groups_checked, std::string& why) {
  std::ifstream s(dir / "scores.csv"), g(dir / "scores_by_group.csv");
  const auto sheet = parse_score_files(s, g);
  const double pct[] = {90.0};
  const auto rep = shift_report(sheet, pct).front();

  std::vector<double> c, cv;
  for (const auto& p : sheet.publications) {
    c.push_back(*p.c);
    cv.push_back(*p.cv);
  }
  auto threshold = [](std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return xs[static_cast<std::size_t>(std::ceil(0.9 * double(xs.size()))) - 1];
  };
  const double tc = threshold(c), tcv = threshold(cv);
  std::map<GroupKey, std::array<std::size_t, 3>> counts;  // members, in top C, in top Cv
  for (const auto& row : sheet.by_group) {
    auto& k = counts[row.key];
    ++k[0];
    k[1] += c[row.pub] > tc;
    k[2] += cv[row.pub] > tcv;
  }
  if (counts.size() != rep.per_group_share.size()) {
    why = "group count mismatch";
    return false;
  }
  for (const auto& share : rep.per_group_share) {
    const auto& k = counts.at(share.key);
    const double want_c = double(k[1]) / double(k[0]);
    const double want_cv = double(k[2]) / double(k[0]);
    if (share.share_c < 0.0 || share.share_c > 1.0 || share.share_cv < 0.0 || share.share_cv > 1.0) {
      why = "share outside [0,1] in " + to_string(share.key);
      return false;
    }
    if (share.members != k[0] || share.share_c != want_c || share.share_cv != want_cv) {
      why = "recount mismatch in " + to_string(share.key);
      return false;
    }
    ++groups_checked;
  }
  return true;
}

bool r2_in_unit_interval(const fs::path& file, std::size_t& rows) {
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() != 6) return false;
    const double r2 = std::stod(f[3]);
    if (!(r2 >= 0.0 && r2 <= 1.0)) return false;
    ++rows;
  }
  return rows > 0;
}

void large_pipeline() {
  const auto dir = scratch("large");
  SynthSpec spec;
  spec.n_pubs = kPipelinePubs;
  spec.year_min = 2004;
  spec.year_max = 2012;
  spec.n_groups = 20;
  spec.edge_budget = 8 * kPipelinePubs;
  spec.multi_sc_fraction = 0.1;
  write_text_file(dir / "spec.json", synth_spec_to_json(spec));

  const auto t0 = Clock::now();
  bool ok = cli({"synth", "--spec", (dir / "spec.json").string(), "--seed", "20240101", "--out",
                 dir.string()}) == 0 &&
            cli({"compute", "--out", dir.string(), "--threads", "0"}) == 0 &&
            cli({"analyze", "--out", dir.string(), "--threads", "0"}) == 0;
  const double elapsed = seconds_since(t0);

  std::size_t r2_rows = 0, groups = 0;
  std::string why;
  if (ok) {
    for (const char* f : {"report_r2.csv", "report_dispersion.csv", "report_topk.csv",
                          "report_top_share.csv", "report_sensitivity.json"}) {
      if (!fs::is_regular_file(dir / f)) {
        ok = false;
        why = std::string("missing ") + f;
      }
    }
  } else {
    why = "pipeline command failed";
  }
  if (ok && !r2_in_unit_interval(dir / "report_r2.csv", r2_rows)) {
    ok = false;
    why = "R2 outside [0,1] or empty";
  }
  if (ok) ok = recount_shares(dir, groups, why);
  ok = ok && elapsed < kPipelineSeconds;
  report(8, "50k synthetic pipeline", ok,
         std::to_string(kPipelinePubs) + " pubs in " + fmt("%.2f", elapsed) + "s, " +
             std::to_string(r2_rows) + " R2 rows, " + std::to_string(groups) +
             " groups recounted" + (why.empty() ? "" : " (" + why + ")"));
}

void determinism() {
  const std::vector<std::string> files{
      "corpus.json",          "scores.csv",      "scores_by_group.csv",  "baselines.csv",
      "run_manifest.json",    "report_r2.csv",   "report_dispersion.csv", "report_topk.csv",
      "report_top_share.csv", "report_sensitivity.json"};
  SynthSpec spec;
  spec.n_pubs = 5000;
  spec.n_groups = 6;
  spec.edge_budget = 30'000;
  spec.multi_sc_fraction = 0.15;

  std::vector<std::map<std::string, std::string>> runs;
  bool ok = true;
  for (const char* threads : {"1", "8", "1"}) {
    const auto dir = scratch("det" + std::to_string(runs.size()));
    write_text_file(dir / "spec.json", synth_spec_to_json(spec));
    ok = ok && cli({"synth", "--spec", (dir / "spec.json").string(), "--seed", "77", "--out", dir.string()}) == 0;
    ok = ok && cli({"compute", "--out", dir.string(), "--threads", threads}) == 0;
    ok = ok && cli({"analyze", "--out", dir.string(), "--threads", threads, "--min-group-size", "50",
                    "--min-group-size-dispersion", "50"}) == 0;
    std::map<std::string, std::string> contents;
    for (const auto& f : files) {
      if (fs::is_regular_file(dir / f)) contents[f] = read_text_file(dir / f);
    }
    runs.push_back(std::move(contents));
  }
  std::size_t identical = 0;
  for (const auto& f : files) {
    if (runs[0].count(f) && runs[0][f] == runs[1][f] && runs[0][f] == runs[2][f]) ++identical;
  }
  ok = ok && identical == files.size();
  report(9, "determinism", ok,
         std::to_string(identical) + "/" + std::to_string(files.size()) +
             " files byte-identical across two threads=1 runs and one threads=8 run");
}

template <typename Fn>
void guarded(int id, const char* name, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, "golden worked example", golden);
  guarded(2, "beta convention", beta_convention);
  guarded(3, "range N <= Cv* <= (1+alpha)N", range_property);
  guarded(4, "reduction gamma=0 gives Cv == C", reduction);
  guarded(5, "oracle equivalence", oracle);
  guarded(6, "alpha sensitivity shape", alpha_shape);
  guarded(7, "analytics anchors", analytics_anchors);
  guarded(8, "50k synthetic pipeline", large_pipeline);
  guarded(9, "determinism", determinism);
  std::printf("%s: %d failing\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
