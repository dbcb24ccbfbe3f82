#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "citeval/corpus.hpp"

namespace citeval {

inline constexpr int kSnapshotSchemaVersion = 1;

/// Serializes the corpus as a JSON document with `schema_version`,
/// `publications` and `edges` fields. Output is deterministic.
std::string to_snapshot(const CitationCorpus& corpus);

/// Rebuilds a corpus from a snapshot document (policy `reject`).
CitationCorpus from_snapshot(std::string_view json);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::vector<PublicationRecord> read_publications_file(const std::filesystem::path& path);
ParsedCitations read_citations_file(const std::filesystem::path& path);

void write_snapshot(const CitationCorpus& corpus, const std::filesystem::path& path);
CitationCorpus read_snapshot(const std::filesystem::path& path);

}  // namespace citeval
