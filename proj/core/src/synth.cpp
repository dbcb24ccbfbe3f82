#include "citeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "citeval/error.hpp"
#include "citeval/random.hpp"

namespace citeval {

using nlohmann::json;

void SynthSpec::validate() const {
  if (n_pubs == 0) throw ValidationError("synth: n_pubs must be > 0");
  if (n_pubs > 0xFFFFFFFFull) throw ValidationError("synth: n_pubs too large");
  if (year_min > year_max) throw ValidationError("synth: empty year range");
  if (n_groups == 0) throw ValidationError("synth: n_groups must be > 0");
  if (!(multi_sc_fraction >= 0.0 && multi_sc_fraction <= 1.0)) {
    throw ValidationError("synth: multi_sc_fraction must lie in [0, 1]");
  }
  if (multi_sc_fraction > 0.0 && n_groups < 2) {
    throw ValidationError("synth: multi_sc_fraction needs at least two subject categories");
  }
  switch (degree_model.kind) {
    case DegreeModel::Kind::lognormal:
      if (!(degree_model.sigma >= 0.0)) throw ValidationError("synth: lognormal sigma must be >= 0");
      break;
    case DegreeModel::Kind::powerlaw:
      if (!(degree_model.exponent > 1.0)) throw ValidationError("synth: powerlaw exponent must be > 1");
      break;
    case DegreeModel::Kind::uniform:
      if (degree_model.max == 0) throw ValidationError("synth: uniform max must be >= 1");
      break;
  }
  const std::uint64_t n = n_pubs;
  if (edge_budget > n * (n - 1)) throw ValidationError("synth: edge_budget exceeds n_pubs*(n_pubs-1)");
}

SynthSpec synth_spec_from_json(std::string_view text) {
  SynthSpec spec;
  try {
    const json doc = json::parse(text);
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
    spec.n_pubs = doc.value("n_pubs", spec.n_pubs);
    if (doc.contains("years")) {
      const auto& y = doc["years"];
      if (!y.is_array() || y.size() != 2) throw ValidationError("synth: years must be [min, max]");
      spec.year_min = y[0].get<int>();
      spec.year_max = y[1].get<int>();
    }
    spec.n_groups = doc.value("n_groups", spec.n_groups);
    spec.edge_budget = doc.value("edge_budget", spec.edge_budget);
    spec.multi_sc_fraction = doc.value("multi_sc_fraction", spec.multi_sc_fraction);
    if (doc.contains("degree_model")) {
      const auto& dm = doc["degree_model"];
      const auto kind = dm.value("kind", std::string("lognormal"));
      if (kind == "lognormal") {
        spec.degree_model.kind = DegreeModel::Kind::lognormal;
        spec.degree_model.mu = dm.value("mu", 0.0);
        spec.degree_model.sigma = dm.value("sigma", 1.0);
      } else if (kind == "powerlaw") {
        spec.degree_model.kind = DegreeModel::Kind::powerlaw;
        spec.degree_model.exponent = dm.value("exponent", 2.5);
      } else if (kind == "uniform") {
        spec.degree_model.kind = DegreeModel::Kind::uniform;
        spec.degree_model.max = dm.value("max", 10u);
      } else {
        throw ValidationError("synth: unknown degree model '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("synth spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string synth_spec_to_json(const SynthSpec& spec) {
  json dm;
  switch (spec.degree_model.kind) {
    case DegreeModel::Kind::lognormal:
      dm = {{"kind", "lognormal"}, {"mu", spec.degree_model.mu}, {"sigma", spec.degree_model.sigma}};
      break;
    case DegreeModel::Kind::powerlaw:
      dm = {{"kind", "powerlaw"}, {"exponent", spec.degree_model.exponent}};
      break;
    case DegreeModel::Kind::uniform:
      dm = {{"kind", "uniform"}, {"max", spec.degree_model.max}};
      break;
  }
  const json doc = {{"seed", spec.seed},
                    {"n_pubs", spec.n_pubs},
                    {"years", {spec.year_min, spec.year_max}},
                    {"n_groups", spec.n_groups},
                    {"degree_model", dm},
                    {"edge_budget", spec.edge_budget},
                    {"multi_sc_fraction", spec.multi_sc_fraction}};
  return doc.dump(2) + "\n";
}

namespace {

std::string padded(const char* prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

struct Layout {
  std::vector<int> years;
  std::vector<std::uint32_t> by_year;  // publication indices sorted by (year, index)
  std::vector<std::size_t> first_of;   // first position in by_year with year >= years[i]
};

Layout make_layout(const std::vector<int>& years) {
  Layout l;
  l.years = years;
  l.by_year.resize(years.size());
  for (std::uint32_t i = 0; i < years.size(); ++i) l.by_year[i] = i;
  std::stable_sort(l.by_year.begin(), l.by_year.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return years[a] < years[b]; });
  l.first_of.resize(years.size());
  std::vector<int> sorted_years(years.size());
  for (std::size_t k = 0; k < years.size(); ++k) sorted_years[k] = years[l.by_year[k]];
  for (std::size_t i = 0; i < years.size(); ++i) {
    l.first_of[i] = static_cast<std::size_t>(
        std::lower_bound(sorted_years.begin(), sorted_years.end(), years[i]) - sorted_years.begin());
  }
  return l;
}

double draw_weight(const DegreeModel& m, Rng& rng) {
  switch (m.kind) {
    case DegreeModel::Kind::lognormal:
      return std::exp(m.mu + m.sigma * rng.normal());
    case DegreeModel::Kind::powerlaw:
      return std::pow(1.0 - rng.uniform01(), -1.0 / (m.exponent - 1.0));
    case DegreeModel::Kind::uniform:
      return 1.0 + static_cast<double>(rng.below(m.max));
  }
  return 1.0;
}

}  // namespace

std::uint64_t feasible_pairs(const SynthSpec& spec) {
  // Depends only on the year draws, so replay them.
  Rng rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(spec.year_max - spec.year_min) + 1;
  std::vector<std::uint64_t> per_year(span, 0);
  for (std::size_t i = 0; i < spec.n_pubs; ++i) {
    ++per_year[rng.below(span)];
    rng.below(spec.n_groups);
    if (spec.multi_sc_fraction > 0.0 && rng.uniform01() < spec.multi_sc_fraction) {
      rng.below(spec.n_groups - 1);
    }
  }
  std::uint64_t total = 0, at_or_after = 0;
  for (std::size_t y = span; y-- > 0;) {
    at_or_after += per_year[y];
    total += per_year[y] * (at_or_after - 1);
  }
  return total;
}

CitationCorpus generate(const SynthSpec& spec) {
  spec.validate();
  const std::uint64_t feasible = feasible_pairs(spec);
  if (spec.edge_budget > feasible) {
    throw ValidationError("synth: infeasible edge_budget " + std::to_string(spec.edge_budget) +
                          " (only " + std::to_string(feasible) +
                          " pairs satisfy the citing-age rule)");
  }

  Rng rng(spec.seed);
  const std::size_t n = spec.n_pubs;
  const auto year_span = static_cast<std::uint64_t>(spec.year_max - spec.year_min) + 1;
  const std::size_t id_width = std::to_string(n - 1).size();
  const std::size_t sc_width = std::max<std::size_t>(2, std::to_string(spec.n_groups - 1).size());

  std::vector<PublicationRecord> pubs(n);
  std::vector<int> years(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = pubs[i];
    p.id = padded("P", i, id_width);
    p.year = spec.year_min + static_cast<int>(rng.below(year_span));
    years[i] = p.year;
    const auto sc = rng.below(spec.n_groups);
    p.subject_categories.push_back(padded("SC", sc, sc_width));
    if (spec.multi_sc_fraction > 0.0 && rng.uniform01() < spec.multi_sc_fraction) {
      auto second = rng.below(spec.n_groups - 1);
      if (second >= sc) ++second;
      p.subject_categories.push_back(padded("SC", second, sc_width));
    }
  }

  std::vector<double> cumulative(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += draw_weight(spec.degree_model, rng);
    cumulative[i] = total;
  }

  const Layout layout = make_layout(years);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(spec.edge_budget * 2);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (citing, cited)
  pairs.reserve(spec.edge_budget);

  auto try_add = [&](std::uint32_t citing, std::uint32_t cited) {
    if (citing == cited) return;
    if (seen.insert(static_cast<std::uint64_t>(citing) * n + cited).second) {
      pairs.emplace_back(citing, cited);
    }
  };

  const std::uint64_t max_attempts = 64 * static_cast<std::uint64_t>(spec.edge_budget) + 1024;
  for (std::uint64_t attempt = 0; attempt < max_attempts && pairs.size() < spec.edge_budget;
       ++attempt) {
    const double u = rng.uniform01() * total;
    auto cited = static_cast<std::uint32_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    if (cited >= n) cited = static_cast<std::uint32_t>(n - 1);
    const std::size_t start = layout.first_of[cited];
    const std::size_t span = n - start;
    if (span <= 1) continue;
    try_add(layout.by_year[start + rng.below(span)], cited);
  }

  // Near saturation rejection sampling stalls; fill the rest in a fixed order.
  for (std::uint32_t cited = 0; cited < n && pairs.size() < spec.edge_budget; ++cited) {
    for (std::size_t k = layout.first_of[cited]; k < n && pairs.size() < spec.edge_budget; ++k) {
      try_add(layout.by_year[k], cited);
    }
  }

  std::vector<CitationEdge> edges;
  edges.reserve(pairs.size());
  for (const auto& [citing, cited] : pairs) edges.push_back({pubs[citing].id, pubs[cited].id});
  return CitationCorpus::build(std::move(pubs), edges);
}

}  // namespace citeval
