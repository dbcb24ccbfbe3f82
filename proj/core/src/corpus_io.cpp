#include "citeval/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "citeval/error.hpp"

namespace citeval {

using nlohmann::json;

std::string to_snapshot(const CitationCorpus& corpus) {
  json pubs = json::array();
  for (const auto& p : corpus.publications()) {
    json rec = {{"id", p.id}, {"year", p.year}, {"subject_categories", p.subject_categories}};
    if (p.doc_type) rec["doc_type"] = *p.doc_type;
    if (p.date) rec["date"] = *p.date;
    if (p.synthetic) rec["synthetic"] = true;
    pubs.push_back(std::move(rec));
  }
  json edges = json::array();
  for (const auto& e : corpus.edges()) edges.push_back({e.citing_id, e.cited_id});

  json doc;
  doc["schema_version"] = kSnapshotSchemaVersion;
  doc["publications"] = std::move(pubs);
  doc["edges"] = std::move(edges);
  return doc.dump(1) + "\n";
}

CitationCorpus from_snapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("corpus snapshot is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kSnapshotSchemaVersion) {
      throw ValidationError("unsupported snapshot schema_version " + std::to_string(version));
    }
    std::vector<PublicationRecord> pubs;
    for (const auto& rec : doc.at("publications")) {
      PublicationRecord p;
      p.id = rec.at("id").get<std::string>();
      p.year = rec.at("year").get<int>();
      p.subject_categories = rec.at("subject_categories").get<std::vector<std::string>>();
      if (rec.contains("doc_type")) p.doc_type = rec["doc_type"].get<std::string>();
      if (rec.contains("date")) p.date = rec["date"].get<std::string>();
      p.synthetic = rec.value("synthetic", false);
      pubs.push_back(std::move(p));
    }
    std::vector<CitationEdge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ValidationError("snapshot edge must be a [citing_id, cited_id] pair");
      }
      edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    return CitationCorpus::build(std::move(pubs), edges);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed corpus snapshot: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<PublicationRecord> read_publications_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open publications file " + path.string());
  try {
    return parse_publications(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ParsedCitations read_citations_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open citations file " + path.string());
  try {
    return parse_citations(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_snapshot(const CitationCorpus& corpus, const std::filesystem::path& path) {
  write_text_file(path, to_snapshot(corpus));
}

CitationCorpus read_snapshot(const std::filesystem::path& path) {
  return from_snapshot(read_text_file(path));
}

}  // namespace citeval
