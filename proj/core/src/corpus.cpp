#include "citeval/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

#include "citeval/csv.hpp"
#include "citeval/error.hpp"

namespace citeval {

std::string to_string(const GroupKey& key) {
  return std::to_string(key.year) + "/" + key.subject_category;
}

namespace {

bool is_iso_date(std::string_view s) {
  if (s.size() < 10) return false;
  for (std::size_t i = 0; i < 10; ++i) {
    const bool dash = (i == 4 || i == 7);
    if (dash ? s[i] != '-' : (s[i] < '0' || s[i] > '9')) return false;
  }
  return true;
}

int parse_year(std::string_view s, std::size_t row) {
  int year = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, year);
  require_row(ec == std::errc{} && ptr == end && !s.empty(), row,
              "invalid year '" + std::string(s) + "'");
  return year;
}

std::vector<std::string> split_categories(std::string_view field) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= field.size()) {
    const auto semi = field.find(';', start);
    const auto part = csv::trim(field.substr(start, semi == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : semi - start));
    if (!part.empty()) out.emplace_back(part);
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

void validate_record(const PublicationRecord& rec) {
  if (rec.id.empty()) throw ValidationError("publication with empty id");
  if (rec.subject_categories.empty()) {
    throw ValidationError("publication " + rec.id + " has no subject category");
  }
  std::set<std::string_view> seen;
  for (const auto& sc : rec.subject_categories) {
    if (!seen.insert(sc).second) {
      throw ValidationError("publication " + rec.id + " lists subject category '" + sc +
                            "' twice");
    }
  }
  if (rec.date && !is_iso_date(*rec.date)) {
    throw ValidationError("publication " + rec.id + " has malformed date '" + *rec.date + "'");
  }
}

}  // namespace

std::vector<PublicationRecord> parse_publications(std::istream& in) {
  csv::Reader reader(in);
  const auto cols = reader.header();
  const auto id_col = csv::find_column(cols, "id");
  const auto year_col = csv::find_column(cols, "year");
  const auto sc_col = csv::find_column(cols, "subject_categories");
  const auto doc_col = csv::find_column(cols, "doc_type");
  const auto date_col = csv::find_column(cols, "date");
  if (!id_col || !year_col || !sc_col) {
    throw ValidationError(
        "publications header must contain id, year and subject_categories columns");
  }

  std::vector<PublicationRecord> out;
  std::unordered_set<std::string> ids;
  while (auto fields = reader.next()) {
    const std::size_t row = reader.row();
    require_row(fields->size() == cols.size(), row,
                "expected " + std::to_string(cols.size()) + " fields, found " +
                    std::to_string(fields->size()));
    PublicationRecord rec;
    rec.id = (*fields)[*id_col];
    require_row(!rec.id.empty(), row, "empty publication id");
    rec.year = parse_year((*fields)[*year_col], row);
    rec.subject_categories = split_categories((*fields)[*sc_col]);
    if (rec.subject_categories.empty()) {
      throw ValidationError("row " + std::to_string(row) + ": publication " + rec.id +
                            " has no subject category");
    }
    if (doc_col && !(*fields)[*doc_col].empty()) rec.doc_type = (*fields)[*doc_col];
    if (date_col && !(*fields)[*date_col].empty()) rec.date = (*fields)[*date_col];
    try {
      validate_record(rec);
    } catch (const ValidationError& e) {
      throw ValidationError("row " + std::to_string(row) + ": " + e.what());
    }
    if (!ids.insert(rec.id).second) {
      throw ValidationError("row " + std::to_string(row) + ": duplicate publication id " +
                            rec.id);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

ParsedCitations parse_citations(std::istream& in) {
  csv::Reader reader(in);
  const auto cols = reader.header();
  const auto citing_col = csv::find_column(cols, "citing_id");
  const auto cited_col = csv::find_column(cols, "cited_id");
  if (!citing_col || !cited_col) {
    throw ValidationError("citations header must contain citing_id and cited_id columns");
  }

  ParsedCitations out;
  std::set<std::pair<std::string, std::string>> seen;
  while (auto fields = reader.next()) {
    const std::size_t row = reader.row();
    require_row(fields->size() == cols.size(), row,
                "expected " + std::to_string(cols.size()) + " fields, found " +
                    std::to_string(fields->size()));
    CitationEdge edge{(*fields)[*citing_col], (*fields)[*cited_col]};
    require_row(!edge.citing_id.empty() && !edge.cited_id.empty(), row, "empty endpoint");
    if (edge.citing_id == edge.cited_id) {
      throw ValidationError("self-citation edge rejected at row " + std::to_string(row));
    }
    if (!seen.emplace(edge.citing_id, edge.cited_id).second) {
      ++out.duplicates;
      continue;
    }
    out.edges.push_back(std::move(edge));
  }
  return out;
}

CitationCorpus CitationCorpus::build(std::vector<PublicationRecord> pubs,
                                     std::span<const CitationEdge> edges,
                                     const BuildOptions& options) {
  if (pubs.empty()) throw ValidationError("corpus needs at least one publication");
  if (options.window_end && !is_iso_date(*options.window_end)) {
    throw ValidationError("malformed citation window end '" + *options.window_end + "'");
  }

  CitationCorpus c;
  c.pubs_ = std::move(pubs);
  c.index_.reserve(c.pubs_.size());
  for (std::size_t i = 0; i < c.pubs_.size(); ++i) {
    validate_record(c.pubs_[i]);
    if (!c.index_.emplace(c.pubs_[i].id, static_cast<PubIndex>(i)).second) {
      throw ValidationError("duplicate publication id " + c.pubs_[i].id);
    }
  }

  auto resolve = [&](const std::string& id, const std::string& other) -> PubIndex {
    if (auto it = c.index_.find(id); it != c.index_.end()) return it->second;
    if (options.dangling == DanglingPolicy::reject) {
      throw ValidationError("citation references unknown publication " + id);
    }
    const auto other_it = c.index_.find(other);
    if (other_it == c.index_.end()) {
      throw ValidationError("citation " + other + " -> " + id +
                            " has no known endpoint to stub from");
    }
    const auto& ref = c.pubs_[other_it->second];
    PublicationRecord stub;
    stub.id = id;
    stub.year = ref.year;
    stub.subject_categories = ref.subject_categories;
    stub.synthetic = true;
    const auto idx = static_cast<PubIndex>(c.pubs_.size());
    c.pubs_.push_back(std::move(stub));
    c.index_.emplace(id, idx);
    ++c.stubbed_;
    return idx;
  };

  std::vector<std::pair<PubIndex, PubIndex>> pairs;  // (citing, cited)
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.citing_id == e.cited_id) {
      throw ValidationError("self-citation edge rejected: " + e.citing_id);
    }
    // Resolve the known side first so a stub can copy its year and SC.
    const bool citing_known = c.index_.contains(e.citing_id);
    PubIndex citing, cited;
    if (citing_known) {
      citing = resolve(e.citing_id, e.cited_id);
      cited = resolve(e.cited_id, e.citing_id);
    } else {
      cited = resolve(e.cited_id, e.citing_id);
      citing = resolve(e.citing_id, e.cited_id);
    }
    if (options.window_end) {
      const auto& date = c.pubs_[citing].date;
      if (date && date->substr(0, 10) > options.window_end->substr(0, 10)) {
        ++c.dropped_by_window_;
        continue;
      }
    }
    pairs.emplace_back(citing, cited);
  }
  std::sort(pairs.begin(), pairs.end());
  const auto before = pairs.size();
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  c.duplicate_edges_ = before - pairs.size();

  const std::size_t n = c.pubs_.size();
  c.in_degree_.assign(n, 0);
  std::vector<std::uint32_t> out_degree(n, 0);
  for (const auto& [citing, cited] : pairs) {
    ++c.in_degree_[cited];
    ++out_degree[citing];
  }

  // pairs are sorted by (citing, cited), so both CSR lists fill ascending.
  c.ref_offsets_.assign(n + 1, 0);
  c.citer_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    c.ref_offsets_[i + 1] = c.ref_offsets_[i] + out_degree[i];
    c.citer_offsets_[i + 1] = c.citer_offsets_[i] + c.in_degree_[i];
  }
  c.refs_.resize(pairs.size());
  c.citers_.resize(pairs.size());
  std::vector<std::size_t> ref_fill(c.ref_offsets_.begin(), c.ref_offsets_.end() - 1);
  std::vector<std::size_t> citer_fill(c.citer_offsets_.begin(), c.citer_offsets_.end() - 1);
  for (const auto& [citing, cited] : pairs) {
    c.refs_[ref_fill[citing]++] = cited;
    c.citers_[citer_fill[cited]++] = citing;
  }

  std::map<GroupKey, std::vector<PubIndex>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& sc : c.pubs_[i].subject_categories) {
      groups[GroupKey{c.pubs_[i].year, sc}].push_back(static_cast<PubIndex>(i));
    }
  }
  c.member_offsets_.push_back(0);
  std::map<GroupKey, GroupIndex> group_index;
  for (auto& [key, members] : groups) {
    group_index.emplace(key, static_cast<GroupIndex>(c.group_keys_.size()));
    c.group_keys_.push_back(key);
    c.members_.insert(c.members_.end(), members.begin(), members.end());
    c.member_offsets_.push_back(c.members_.size());
  }
  c.pub_group_offsets_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& sc : c.pubs_[i].subject_categories) {
      c.pub_groups_.push_back(group_index.at(GroupKey{c.pubs_[i].year, sc}));
    }
    c.pub_group_offsets_.push_back(c.pub_groups_.size());
  }
  return c;
}

std::optional<PubIndex> CitationCorpus::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const PubIndex> CitationCorpus::citers(PubIndex p) const {
  return std::span<const PubIndex>(citers_).subspan(
      citer_offsets_.at(p), citer_offsets_.at(p + 1) - citer_offsets_[p]);
}

std::span<const PubIndex> CitationCorpus::references(PubIndex p) const {
  return std::span<const PubIndex>(refs_).subspan(ref_offsets_.at(p),
                                                  ref_offsets_.at(p + 1) - ref_offsets_[p]);
}

std::vector<CitationEdge> CitationCorpus::edges() const {
  std::vector<CitationEdge> out;
  out.reserve(refs_.size());
  for (std::size_t i = 0; i < pubs_.size(); ++i) {
    for (PubIndex cited : references(static_cast<PubIndex>(i))) {
      out.push_back({pubs_[i].id, pubs_[cited].id});
    }
  }
  return out;
}

std::span<const PubIndex> CitationCorpus::group_members(GroupIndex g) const {
  return std::span<const PubIndex>(members_).subspan(
      member_offsets_.at(g), member_offsets_.at(g + 1) - member_offsets_[g]);
}

std::span<const GroupIndex> CitationCorpus::groups_of(PubIndex p) const {
  return std::span<const GroupIndex>(pub_groups_).subspan(
      pub_group_offsets_.at(p), pub_group_offsets_.at(p + 1) - pub_group_offsets_[p]);
}

std::optional<GroupIndex> CitationCorpus::find_group(const GroupKey& key) const {
  const auto it = std::lower_bound(group_keys_.begin(), group_keys_.end(), key);
  if (it == group_keys_.end() || *it != key) return std::nullopt;
  return static_cast<GroupIndex>(it - group_keys_.begin());
}

bool CitationCorpus::operator==(const CitationCorpus& other) const {
  return pubs_ == other.pubs_ && in_degree_ == other.in_degree_ &&
         citer_offsets_ == other.citer_offsets_ && citers_ == other.citers_ &&
         refs_ == other.refs_ && group_keys_ == other.group_keys_ &&
         members_ == other.members_ && pub_groups_ == other.pub_groups_;
}

}  // namespace citeval
