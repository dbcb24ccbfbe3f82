#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "citeval/corpus.hpp"
#include "citeval/synth.hpp"

namespace citeval::test {

/// ln 2 / 19: the conversion rate whose weight at 5% of the group maximum is 1.5.
inline const double kReferenceBeta = std::log(2.0) / 19.0;

std::string data_path(const std::string& relative);

/// The 14-node, 16-edge two-level example network (one year, one SC).
CitationCorpus two_level_corpus();
std::vector<PublicationRecord> two_level_publications();
std::vector<CitationEdge> two_level_edges();

/// Small random spec for property tests: up to `max_pubs` publications,
/// a few years and categories, optional multi-SC membership.
SynthSpec random_small_spec(std::uint64_t seed, std::size_t max_pubs);

/// Relative difference |a - b| / max(1, |a|, |b|).
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace citeval::test
