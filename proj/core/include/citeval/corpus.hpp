#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citeval {

/// Normalization group: publications sharing a year and a subject category.
struct GroupKey {
  int year = 0;
  std::string subject_category;

  auto operator<=>(const GroupKey&) const = default;
  bool operator==(const GroupKey&) const = default;
};

std::string to_string(const GroupKey& key);

struct PublicationRecord {
  std::string id;
  int year = 0;
  std::vector<std::string> subject_categories;
  std::optional<std::string> doc_type;
  /// ISO-8601 date; only consulted by the citation-window filter.
  std::optional<std::string> date;
  /// Created by the `stub` dangling-endpoint policy, not read from input.
  bool synthetic = false;

  bool operator==(const PublicationRecord&) const = default;
};

struct CitationEdge {
  std::string citing_id;
  std::string cited_id;

  bool operator==(const CitationEdge&) const = default;
};

struct ParsedCitations {
  std::vector<CitationEdge> edges;
  std::size_t duplicates = 0;
};

/// Parses a `publications.csv` stream (header `id,year,subject_categories,doc_type`,
/// optional `date`). Subject categories are `;`-separated.
std::vector<PublicationRecord> parse_publications(std::istream& in);

/// Parses a `citations.csv` stream (header `citing_id,cited_id`). Duplicate
/// pairs are collapsed, keeping the first occurrence.
ParsedCitations parse_citations(std::istream& in);

enum class DanglingPolicy { reject, stub };

struct BuildOptions {
  DanglingPolicy dangling = DanglingPolicy::reject;
  /// Inclusive ISO-8601 upper bound on the citing publication's date.
  /// Edges whose citing side carries a later date are dropped; undated
  /// citing publications always count.
  std::optional<std::string> window_end;
};

using PubIndex = std::uint32_t;
using GroupIndex = std::uint32_t;

/// Immutable, validated citation network partitioned into (year, SC) groups.
///
/// Publications keep their input order (stubs appended after). Adjacency is
/// stored in CSR form with neighbour lists sorted ascending by index, which
/// fixes every downstream summation order.
class CitationCorpus {
public:
  static CitationCorpus build(std::vector<PublicationRecord> pubs,
                              std::span<const CitationEdge> edges,
                              const BuildOptions& options = {});

  std::size_t size() const noexcept { return pubs_.size(); }
  std::span<const PublicationRecord> publications() const noexcept { return pubs_; }
  const PublicationRecord& publication(PubIndex p) const { return pubs_.at(p); }
  std::optional<PubIndex> find(std::string_view id) const;

  std::uint32_t in_degree(PubIndex p) const { return in_degree_.at(p); }
  std::span<const std::uint32_t> in_degrees() const noexcept { return in_degree_; }
  bool is_cited(PubIndex p) const { return in_degree(p) > 0; }

  /// Publications citing `p`, ascending.
  std::span<const PubIndex> citers(PubIndex p) const;
  /// Publications cited by `p`, ascending.
  std::span<const PubIndex> references(PubIndex p) const;

  std::size_t edge_count() const noexcept { return citers_.size(); }
  /// Edges ordered by (citing index, cited index).
  std::vector<CitationEdge> edges() const;

  std::size_t group_count() const noexcept { return group_keys_.size(); }
  std::span<const GroupKey> group_keys() const noexcept { return group_keys_; }
  const GroupKey& group_key(GroupIndex g) const { return group_keys_.at(g); }
  std::span<const PubIndex> group_members(GroupIndex g) const;
  /// Groups of `p`, in the order of its subject categories.
  std::span<const GroupIndex> groups_of(PubIndex p) const;
  std::optional<GroupIndex> find_group(const GroupKey& key) const;

  std::size_t stubbed() const noexcept { return stubbed_; }
  std::size_t dropped_by_window() const noexcept { return dropped_by_window_; }
  std::size_t duplicate_edges() const noexcept { return duplicate_edges_; }

  bool operator==(const CitationCorpus& other) const;

private:
  CitationCorpus() = default;

  std::vector<PublicationRecord> pubs_;
  std::unordered_map<std::string, PubIndex> index_;
  std::vector<std::uint32_t> in_degree_;

  std::vector<std::size_t> citer_offsets_;
  std::vector<PubIndex> citers_;
  std::vector<std::size_t> ref_offsets_;
  std::vector<PubIndex> refs_;

  std::vector<GroupKey> group_keys_;
  std::vector<std::size_t> member_offsets_;
  std::vector<PubIndex> members_;
  std::vector<std::size_t> pub_group_offsets_;
  std::vector<GroupIndex> pub_groups_;

  std::size_t stubbed_ = 0;
  std::size_t dropped_by_window_ = 0;
  std::size_t duplicate_edges_ = 0;
};

}  // namespace citeval
