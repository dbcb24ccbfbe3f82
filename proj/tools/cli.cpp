#include "cli.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "citeval/analytics.hpp"
#include "citeval/baselines.hpp"
#include "citeval/corpus.hpp"
#include "citeval/corpus_io.hpp"
#include "citeval/error.hpp"
#include "citeval/indicators.hpp"
#include "citeval/score_io.hpp"
#include "citeval/synth.hpp"

namespace citeval::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

/// Every resolved run parameter. Precedence: built-in defaults, then the
/// config file, then command-line flags. CITEVAL_OUT only supplies the
/// output directory when neither file nor flag does.
struct RunConfig {
  std::optional<fs::path> publications;
  std::optional<fs::path> citations;
  std::optional<json> synth;  // inline spec object
  std::optional<fs::path> synth_path;
  std::optional<std::uint64_t> seed;
  DanglingPolicy dangling = DanglingPolicy::reject;
  std::optional<std::string> window_end;

  ModelConfig model;
  AnalysisOptions analysis;
  std::vector<double> alphas{1.0, 2.0, 3.0, 5.0};

  std::optional<fs::path> out;
  std::optional<fs::path> snapshot;
  std::optional<fs::path> scores_dir;
  unsigned threads = 1;

  fs::path out_dir() const {
    if (out) return *out;
    if (const char* env = std::getenv("CITEVAL_OUT"); env && *env) return env;
    return ".";
  }
  fs::path snapshot_path() const { return snapshot ? *snapshot : out_dir() / "corpus.json"; }
  fs::path scores_path() const { return scores_dir ? *scores_dir : out_dir(); }
};

DanglingPolicy parse_dangling(std::string_view s) {
  if (s == "reject") return DanglingPolicy::reject;
  if (s == "stub") return DanglingPolicy::stub;
  throw ValidationError("unknown dangling policy '" + std::string(s) + "' (expected reject or stub)");
}

std::optional<double> parse_beta(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("beta must be 'auto' or a number, got '" + s + "'");
  }
}

void apply_file(RunConfig& cfg, const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  try {
    if (doc.contains("publications")) cfg.publications = doc["publications"].get<std::string>();
    if (doc.contains("citations")) cfg.citations = doc["citations"].get<std::string>();
    if (doc.contains("synth")) {
      if (doc["synth"].is_string()) {
        cfg.synth_path = doc["synth"].get<std::string>();
      } else {
        cfg.synth = doc["synth"];
      }
    }
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("dangling")) cfg.dangling = parse_dangling(doc["dangling"].get<std::string>());
    if (doc.contains("window_end")) cfg.window_end = doc["window_end"].get<std::string>();
    if (doc.contains("model")) cfg.model.model = parse_model(doc["model"].get<std::string>());
    if (doc.contains("beta")) {
      cfg.model.fixed_beta = doc["beta"].is_number()
                                 ? std::optional<double>(doc["beta"].get<double>())
                                 : parse_beta(doc["beta"].get<std::string>());
    }
    if (doc.contains("beta_target")) cfg.model.beta_target = doc["beta_target"].get<double>();
    if (doc.contains("alpha")) cfg.model.alpha = doc["alpha"].get<double>();
    if (doc.contains("gamma")) cfg.model.gamma = doc["gamma"].get<double>();
    if (doc.contains("population")) {
      cfg.model.population = parse_population(doc["population"].get<std::string>());
    }
    if (doc.contains("power_center")) {
      cfg.model.power_center = parse_power_center(doc["power_center"].get<std::string>());
    }
    if (doc.contains("percentiles")) {
      cfg.analysis.percentiles = doc["percentiles"].get<std::vector<double>>();
    }
    if (doc.contains("min_group_size")) {
      cfg.analysis.min_group_size = doc["min_group_size"].get<std::size_t>();
    }
    if (doc.contains("min_group_size_dispersion")) {
      cfg.analysis.min_group_size_dispersion = doc["min_group_size_dispersion"].get<std::size_t>();
    }
    if (doc.contains("top_percentile")) {
      cfg.analysis.top_percentile = doc["top_percentile"].get<double>();
    }
    if (doc.contains("alphas")) cfg.alphas = doc["alphas"].get<std::vector<double>>();
    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    if (doc.contains("snapshot")) cfg.snapshot = doc["snapshot"].get<std::string>();
    if (doc.contains("scores_dir")) cfg.scores_dir = doc["scores_dir"].get<std::string>();
    if (doc.contains("threads")) cfg.threads = doc["threads"].get<unsigned>();
  } catch (const json::exception& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
}

/// Raw flag values; a flag is applied only if it was given.
struct Flags {
  std::string config;
  std::string publications, citations, spec, dangling, window_end;
  std::uint64_t seed = 0;
  std::string model, beta, population, power_center;
  double beta_target = 0, alpha = 0, gamma = 0;
  std::vector<double> percentiles, alphas;
  std::size_t min_group_size = 0, min_group_size_dispersion = 0;
  double top_percentile = 0;
  std::string out, snapshot, scores_dir;
  unsigned threads = 0;

  // Subcommands bind the same variables; only the parsed one has counts.
  std::map<std::string, std::vector<CLI::Option*>> opts;

  void track(const std::string& name, CLI::Option* opt) { opts[name].push_back(opt); }

  bool given(const std::string& name) const {
    const auto it = opts.find(name);
    if (it == opts.end()) return false;
    for (const auto* o : it->second) {
      if (o->count() > 0) return true;
    }
    return false;
  }
};

void add_common(CLI::App* cmd, Flags& f) {
  f.track("config", cmd->add_option("--config", f.config, "JSON run configuration"));
  f.track("out", cmd->add_option("--out", f.out, "Output directory (default: $CITEVAL_OUT or .)"));
  f.track("threads", cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)"));
}

void add_model(CLI::App* cmd, Flags& f) {
  f.track("snapshot", cmd->add_option("--snapshot", f.snapshot, "Corpus snapshot (default: OUT/corpus.json)"));
  f.track("model", cmd->add_option("--model", f.model, "exponential | power"));
  f.track("beta", cmd->add_option("--beta", f.beta, "auto | fixed value"));
  f.track("beta_target", cmd->add_option("--beta-target", f.beta_target,
                                          "Weight of a median-cited citing publication"));
  f.track("alpha", cmd->add_option("--alpha", f.alpha, "Cap multiplier (> 0)"));
  f.track("gamma", cmd->add_option("--gamma", f.gamma, "Power-model exponent in [0, 1]"));
  f.track("population", cmd->add_option("--population", f.population, "all | cited_only"));
  f.track("power_center", cmd->add_option("--power-center", f.power_center, "mean | median"));
}

void add_analysis(CLI::App* cmd, Flags& f) {
  f.track("percentiles", cmd->add_option("--percentiles", f.percentiles, "Top-set percentiles")
                              ->delimiter(','));
  f.track("min_group_size", cmd->add_option("--min-group-size", f.min_group_size,
                                             "Minimum scored members per group"));
  f.track("min_group_size_dispersion",
          cmd->add_option("--min-group-size-dispersion", f.min_group_size_dispersion,
                          "Minimum scored members for the dispersion listing"));
  f.track("top_percentile", cmd->add_option("--top-percentile", f.top_percentile,
                                             "Percentile for top shares and overlaps"));
  f.track("alphas", cmd->add_option("--alphas", f.alphas, "Alpha values for the sweep")->delimiter(','));
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.given("config")) apply_file(cfg, f.config);
  if (f.given("publications")) cfg.publications = f.publications;
  if (f.given("citations")) cfg.citations = f.citations;
  if (f.given("spec")) {
    cfg.synth_path = f.spec;
    cfg.synth.reset();
  }
  if (f.given("seed")) cfg.seed = f.seed;
  if (f.given("dangling")) cfg.dangling = parse_dangling(f.dangling);
  if (f.given("window_end")) cfg.window_end = f.window_end;
  if (f.given("model")) cfg.model.model = parse_model(f.model);
  if (f.given("beta")) cfg.model.fixed_beta = parse_beta(f.beta);
  if (f.given("beta_target")) cfg.model.beta_target = f.beta_target;
  if (f.given("alpha")) cfg.model.alpha = f.alpha;
  if (f.given("gamma")) cfg.model.gamma = f.gamma;
  if (f.given("population")) cfg.model.population = parse_population(f.population);
  if (f.given("power_center")) cfg.model.power_center = parse_power_center(f.power_center);
  if (f.given("percentiles")) cfg.analysis.percentiles = f.percentiles;
  if (f.given("min_group_size")) cfg.analysis.min_group_size = f.min_group_size;
  if (f.given("min_group_size_dispersion")) {
    cfg.analysis.min_group_size_dispersion = f.min_group_size_dispersion;
  }
  if (f.given("top_percentile")) cfg.analysis.top_percentile = f.top_percentile;
  if (f.given("alphas")) cfg.alphas = f.alphas;
  if (f.given("out")) cfg.out = f.out;
  if (f.given("snapshot")) cfg.snapshot = f.snapshot;
  if (f.given("scores_dir")) cfg.scores_dir = f.scores_dir;
  if (f.given("threads")) cfg.threads = f.threads;
  cfg.analysis.threads = cfg.threads;

  cfg.model.validate();
  for (double p : cfg.analysis.percentiles) {
    if (!(p > 0.0 && p < 100.0)) {
      throw ValidationError("percentiles must lie in (0, 100), got " + format_report(p));
    }
  }
  if (!(cfg.analysis.top_percentile > 0.0 && cfg.analysis.top_percentile < 100.0)) {
    throw ValidationError("top percentile must lie in (0, 100)");
  }
  if (cfg.analysis.min_group_size == 0) throw ValidationError("min group size must be >= 1");
  return cfg;
}

void require_file(const fs::path& path, const std::string& what) {
  if (!fs::is_regular_file(path)) throw IoError(what + " not found: " + path.string());
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void print_counts(std::ostream& out, const CitationCorpus& corpus) {
  out << "publications: " << corpus.size() << "\n"
      << "edges: " << corpus.edge_count() << "\n"
      << "groups: " << corpus.group_count() << "\n";
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
  if (cfg.synth || cfg.synth_path) {
    throw ValidationError("ingest takes publication/citation files, not a synth spec");
  }
  if (!cfg.publications || !cfg.citations) {
    throw ValidationError("ingest needs both --publications and --citations");
  }
  require_file(*cfg.publications, "publications file");
  require_file(*cfg.citations, "citations file");

  auto pubs = read_publications_file(*cfg.publications);
  const auto cites = read_citations_file(*cfg.citations);
  BuildOptions opts;
  opts.dangling = cfg.dangling;
  opts.window_end = cfg.window_end;
  const auto corpus = CitationCorpus::build(std::move(pubs), cites.edges, opts);

  const auto path = cfg.snapshot_path();
  write_snapshot(corpus, path);
  print_counts(out, corpus);
  out << "duplicate edges collapsed: " << cites.duplicates << "\n";
  if (corpus.stubbed() > 0) out << "stubbed publications: " << corpus.stubbed() << "\n";
  if (cfg.window_end) out << "edges outside window: " << corpus.dropped_by_window() << "\n";
  out << "snapshot: " << path.string() << "\n";
  return 0;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  if (cfg.publications || cfg.citations) {
    throw ValidationError("synth takes a synth spec, not publication/citation files");
  }
  if (!cfg.seed) throw ValidationError("synth requires an explicit --seed");
  std::string text;
  if (cfg.synth_path) {
    require_file(*cfg.synth_path, "synth spec");
    text = read_text_file(*cfg.synth_path);
  } else if (cfg.synth) {
    text = cfg.synth->dump();
  } else {
    throw ValidationError("synth needs a spec (--spec FILE or a `synth` object in the config)");
  }
  SynthSpec spec = synth_spec_from_json(text);
  spec.seed = *cfg.seed;
  const auto corpus = generate(spec);
  const auto path = cfg.snapshot_path();
  write_snapshot(corpus, path);
  print_counts(out, corpus);
  out << "snapshot: " << path.string() << "\n";
  return 0;
}

ordered_json manifest_json(const RunConfig& cfg, const ScoreRun& run, std::string_view snapshot_text,
                           const CitationCorpus& corpus) {
  ordered_json m;
  m["tool"] = "citeval";
  m["snapshot_fnv1a64"] = hex64(fnv1a64(snapshot_text));
  m["publications"] = corpus.size();
  m["edges"] = corpus.edge_count();
  m["groups"] = corpus.group_count();
  m["scored_publications"] = run.scores.size();
  m["model"] = to_string(cfg.model.model);
  m["population"] = to_string(cfg.model.population);
  if (cfg.model.model == Model::exponential) {
    m["beta_mode"] = cfg.model.fixed_beta ? "fixed" : "auto";
    m["beta"] = *run.beta;
    m["beta_target"] = cfg.model.beta_target;
    if (run.convention) m["median_max_ratio"] = run.convention->median_max_ratio;
    m["alpha"] = cfg.model.alpha;
  } else {
    m["gamma"] = cfg.model.gamma;
    m["power_center"] = to_string(cfg.model.power_center);
  }
  return m;
}

int cmd_compute(const RunConfig& cfg, std::ostream& out) {
  const auto snap = cfg.snapshot_path();
  require_file(snap, "corpus snapshot");
  const auto text = read_text_file(snap);
  const auto corpus = from_snapshot(text);

  const auto run = compute_all(corpus, cfg.model, cfg.threads);
  if (run.scores.empty()) {
    throw DegenerateDataError("no cited publications: nothing to score");
  }
  const auto sheet = make_score_sheet(corpus, run);
  const auto dir = cfg.out_dir();
  write_text_file(dir / "scores.csv", scores_csv(sheet));
  write_text_file(dir / "scores_by_group.csv", scores_by_group_csv(sheet));
  write_text_file(dir / "baselines.csv", baselines_csv(run.baselines));
  write_text_file(dir / "run_manifest.json", manifest_json(cfg, run, text, corpus).dump(2) + "\n");

  out << "scored publications: " << run.scores.size() << "\n";
  if (run.beta) out << "beta: " << format_report(*run.beta) << "\n";
  out << "outputs: " << dir.string() << "\n";
  return 0;
}

/// Model parameters recorded by `compute`, so the sweep matches the scores
/// being analyzed.
ModelConfig model_from_manifest(const fs::path& path, ModelConfig base) {
  const auto m = json::parse(read_text_file(path));
  base.model = parse_model(m.at("model").get<std::string>());
  base.population = parse_population(m.at("population").get<std::string>());
  if (base.model == Model::exponential) {
    base.fixed_beta = m.at("beta").get<double>();
    base.alpha = m.at("alpha").get<double>();
  } else {
    base.gamma = m.at("gamma").get<double>();
    base.power_center = parse_power_center(m.at("power_center").get<std::string>());
  }
  return base;
}

std::string sensitivity(const RunConfig& cfg, const ModelConfig& model) {
  if (model.model != Model::exponential) {
    SensitivityReport empty;
    empty.base_config = model;
    empty.top_percentile = cfg.analysis.top_percentile;
    return report_sensitivity_json(empty);
  }
  const auto snap = cfg.snapshot_path();
  require_file(snap, "corpus snapshot");
  const auto corpus = read_snapshot(snap);
  return report_sensitivity_json(alpha_sweep(corpus, model, cfg.alphas, cfg.analysis));
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto dir = cfg.scores_path();
  require_file(dir / "scores.csv", "scores file");
  require_file(dir / "scores_by_group.csv", "group scores file");
  std::ifstream scores(dir / "scores.csv");
  std::ifstream by_group(dir / "scores_by_group.csv");
  const auto sheet = parse_score_files(scores, by_group);

  const auto report = analyze(sheet, cfg.analysis);
  const auto manifest = dir / "run_manifest.json";
  const ModelConfig model = fs::is_regular_file(manifest) ? model_from_manifest(manifest, cfg.model)
                                                          : cfg.model;
  const auto sens = sensitivity(cfg, model);

  const auto out_dir = cfg.out_dir();
  write_text_file(out_dir / "report_r2.csv", report_r2_csv(report.regressions));
  write_text_file(out_dir / "report_dispersion.csv", report_dispersion_csv(report.dispersion));
  write_text_file(out_dir / "report_topk.csv", report_topk_csv(report.top_sets));
  write_text_file(out_dir / "report_top_share.csv", report_top_share_csv(report.top_shares));
  write_text_file(out_dir / "report_sensitivity.json", sens);

  out << "regressions: " << report.regressions.size() << "\n"
      << "dispersion rows: " << report.dispersion.size() << "\n";
  if (report.cv_winner_share) {
    out << "cv winner share: " << format_report(*report.cv_winner_share) << "\n";
  }
  for (const auto& t : report.top_sets) {
    out << "top " << format_report(100.0 - t.percentile) << "%: shift c->cv "
        << format_report(t.shift_c_to_cv) << ", cv->c " << format_report(t.shift_cv_to_c) << "\n";
  }
  out << "reports: " << out_dir.string() << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto dir = cfg.out_dir();
  write_text_file(dir / "report_sensitivity.json", sensitivity(cfg, cfg.model));
  out << "sensitivity: " << (dir / "report_sensitivity.json").string() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"citeval: valued-citation impact indicators over citation networks"};
  app.require_subcommand(1);
  Flags f;

  auto* ingest = app.add_subcommand("ingest", "Validate publication/citation CSVs into a corpus snapshot");
  add_common(ingest, f);
  f.track("publications", ingest->add_option("--publications", f.publications, "publications.csv"));
  f.track("citations", ingest->add_option("--citations", f.citations, "citations.csv"));
  f.track("dangling", ingest->add_option("--dangling", f.dangling, "reject | stub"));
  f.track("window_end", ingest->add_option("--window-end", f.window_end,
                                            "Last citing date counted (ISO-8601)"));
  f.track("snapshot", ingest->add_option("--snapshot", f.snapshot, "Snapshot path (default: OUT/corpus.json)"));

  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus snapshot");
  add_common(synth, f);
  f.track("spec", synth->add_option("--spec", f.spec, "Synth spec JSON"));
  f.track("seed", synth->add_option("--seed", f.seed, "Random seed (required)"));
  f.track("snapshot", synth->add_option("--snapshot", f.snapshot, "Snapshot path (default: OUT/corpus.json)"));

  auto* compute = app.add_subcommand("compute", "Score every cited publication (C, Cv*, Cv)");
  add_common(compute, f);
  add_model(compute, f);

  auto* analyze_cmd = app.add_subcommand("analyze", "Compare C and Cv across groups and top sets");
  add_common(analyze_cmd, f);
  add_model(analyze_cmd, f);
  add_analysis(analyze_cmd, f);
  f.track("scores_dir", analyze_cmd->add_option("--scores-dir", f.scores_dir,
                                                 "Directory holding scores.csv (default: OUT)"));

  auto* sweep = app.add_subcommand("sweep", "Alpha sensitivity sweep");
  add_common(sweep, f);
  add_model(sweep, f);
  add_analysis(sweep, f);

  std::vector<std::string> argv_store{"citeval"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = resolve(f);
    if (ingest->parsed()) return cmd_ingest(cfg, out);
    if (synth->parsed()) return cmd_synth(cfg, out);
    if (compute->parsed()) return cmd_compute(cfg, out);
    if (analyze_cmd->parsed()) return cmd_analyze(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace citeval::cli
