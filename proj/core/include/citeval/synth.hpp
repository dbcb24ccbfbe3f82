#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "citeval/corpus.hpp"

namespace citeval {

/// Shape of the target in-degree distribution. Each publication draws a
/// weight from the model and citations land on it in proportion.
struct DegreeModel {
  enum class Kind { lognormal, powerlaw, uniform };
  Kind kind = Kind::lognormal;
  double mu = 0.0;
  double sigma = 1.0;
  /// Pareto tail exponent (> 1) for `powerlaw`.
  double exponent = 2.5;
  /// Weights drawn from 1..max for `uniform`.
  std::uint32_t max = 10;
};

struct SynthSpec {
  std::uint64_t seed = 0;
  std::size_t n_pubs = 1000;
  int year_min = 2004;
  int year_max = 2012;
  std::size_t n_groups = 10;
  DegreeModel degree_model;
  std::size_t edge_budget = 5000;
  /// Probability that a publication also joins a second subject category.
  double multi_sc_fraction = 0.0;

  void validate() const;
};

SynthSpec synth_spec_from_json(std::string_view json);
std::string synth_spec_to_json(const SynthSpec& spec);

/// Number of (citing, cited) pairs allowed by the age rule
/// (citing year >= cited year, no self-citation).
std::uint64_t feasible_pairs(const SynthSpec& spec);

/// Deterministic corpus for a given spec and seed. Exactly `edge_budget`
/// distinct edges; every citing publication is at least as recent as the
/// publication it cites.
CitationCorpus generate(const SynthSpec& spec);

}  // namespace citeval
