#include "fixtures.hpp"

#include <algorithm>

#include "citeval/corpus_io.hpp"
#include "citeval/random.hpp"

namespace citeval::test {

std::string data_path(const std::string& relative) {
  return std::string(CITEVAL_TEST_DATA_DIR) + "/" + relative;
}

std::vector<PublicationRecord> two_level_publications() {
  return read_publications_file(data_path("two_level/publications.csv"));
}

std::vector<CitationEdge> two_level_edges() {
  return read_citations_file(data_path("two_level/citations.csv")).edges;
}

CitationCorpus two_level_corpus() {
  return CitationCorpus::build(two_level_publications(), two_level_edges());
}

SynthSpec random_small_spec(std::uint64_t seed, std::size_t max_pubs) {
  Rng rng(seed ^ 0xA5A5A5A5ull);
  SynthSpec spec;
  spec.seed = seed;
  spec.n_pubs = 2 + rng.below(max_pubs - 1);
  spec.year_min = 2004;
  spec.year_max = 2004 + static_cast<int>(rng.below(3));
  spec.n_groups = 1 + rng.below(4);
  spec.multi_sc_fraction = spec.n_groups > 1 ? 0.3 * rng.uniform01() : 0.0;
  switch (rng.below(3)) {
    case 0:
      spec.degree_model.kind = DegreeModel::Kind::lognormal;
      spec.degree_model.sigma = 0.5 + 1.5 * rng.uniform01();
      break;
    case 1:
      spec.degree_model.kind = DegreeModel::Kind::powerlaw;
      spec.degree_model.exponent = 1.5 + 2.0 * rng.uniform01();
      break;
    default:
      spec.degree_model.kind = DegreeModel::Kind::uniform;
      spec.degree_model.max = 1 + static_cast<std::uint32_t>(rng.below(8));
      break;
  }
  const auto feasible = feasible_pairs(spec);
  const auto cap = std::min<std::uint64_t>(feasible, 4 * spec.n_pubs);
  spec.edge_budget = cap == 0 ? 0 : rng.below(cap + 1);
  return spec;
}

}  // namespace citeval::test
