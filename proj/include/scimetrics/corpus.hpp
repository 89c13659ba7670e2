#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scimetrics/date.hpp"
#include "scimetrics/graph.hpp"

namespace scim {

struct Paper {
  std::string id;
  std::string title;
  std::string journal_id;
  std::string discipline_id;
  Date pub_date{};
  std::vector<std::string> author_ids;
  bool is_oa = false;
  std::vector<std::string> references;  // raw, may name papers outside the corpus
  std::optional<std::vector<std::string>> tokens;

  bool operator==(const Paper&) const = default;
};

struct Author {
  std::string id;
  std::string name;
  std::string unit_id;

  bool operator==(const Author&) const = default;
};

struct Unit {
  std::string id;
  std::string discipline_id;
  std::vector<std::string> author_ids;
  double prior_funding = 0.0;
  std::int64_t student_count = 0;
  std::vector<std::string> submitted_paper_ids;

  bool operator==(const Unit&) const = default;
};

struct Journal {
  std::string id;
  std::string name;

  bool operator==(const Journal&) const = default;
};

struct DownloadEvent {
  std::string paper_id;
  Date at{};

  bool operator==(const DownloadEvent&) const = default;
};

// Panel ranking of the units of one discipline; 1 is best, ties allowed.
struct CriterionRanking {
  std::string discipline_id;
  std::map<std::string, int> ranks;

  bool operator==(const CriterionRanking&) const = default;
};

// Plain records as read from (or written to) the ingestion files.
struct CorpusData {
  std::vector<Paper> papers;
  std::vector<Author> authors;
  std::vector<Unit> units;
  std::vector<Journal> journals;
  std::vector<DownloadEvent> downloads;
  std::vector<CriterionRanking> criteria;

  bool operator==(const CorpusData&) const = default;
};

struct LoadIssue {
  std::string kind;  // dangling_reference, unknown_author, ...
  std::string from;
  std::string to;

  bool operator==(const LoadIssue&) const = default;
};

// Non-fatal findings collected while linking a corpus.
struct LoadReport {
  std::vector<LoadIssue> issues;
  std::size_t dangling_references = 0;
  std::size_t dropped_downloads = 0;

  bool empty() const noexcept { return issues.empty(); }
  std::string to_text() const;
};

using PaperIndex = NodeIndex;
using AuthorIndex = std::uint32_t;
using UnitIndex = std::uint32_t;

struct CitationEdge {
  PaperIndex citing;
  PaperIndex cited;
};

// Immutable, fully linked corpus. All lookups are index based; ids are
// resolved once at construction.
class Corpus {
 public:
  /// Links `data`. Fatal inconsistencies (duplicate ids, bad criterion
  /// entries) throw; everything else lands in `report`.
  static Corpus build(CorpusData data, std::optional<Date> snapshot_date = {},
                      LoadReport* report = nullptr);

  const CorpusData& data() const noexcept { return data_; }
  Date snapshot_date() const noexcept { return snapshot_date_; }

  std::span<const Paper> papers() const noexcept { return data_.papers; }
  std::span<const Author> authors() const noexcept { return data_.authors; }
  std::span<const Unit> units() const noexcept { return data_.units; }
  std::span<const Journal> journals() const noexcept { return data_.journals; }

  const Paper& paper(PaperIndex i) const { return data_.papers[i]; }
  const Author& author(AuthorIndex i) const { return data_.authors[i]; }
  const Unit& unit(UnitIndex i) const { return data_.units[i]; }

  std::optional<PaperIndex> find_paper(std::string_view id) const;
  std::optional<AuthorIndex> find_author(std::string_view id) const;
  std::optional<UnitIndex> find_unit(std::string_view id) const;
  bool has_journal(std::string_view id) const;

  const CitationGraph& graph() const noexcept { return graph_; }
  /// Edges whose citing paper predates the cited one. Kept in the graph.
  std::span<const CitationEdge> anachronistic_edges() const noexcept { return anachronistic_; }

  /// Papers listing the author, sorted by index.
  std::span<const PaperIndex> papers_of_author(AuthorIndex a) const { return author_papers_[a]; }
  /// Submitted papers that resolve, in submission order.
  std::span<const PaperIndex> submitted_papers(UnitIndex u) const { return unit_papers_[u]; }
  /// Resolved member authors of a unit.
  std::span<const AuthorIndex> members(UnitIndex u) const { return unit_members_[u]; }
  /// Download dates of a paper, sorted ascending.
  std::span<const Date> downloads_of(PaperIndex p) const { return paper_downloads_[p]; }
  std::span<const PaperIndex> papers_of_journal(std::string_view journal_id) const;

  /// Discipline of an author: their unit's, else that of their first paper.
  std::optional<std::string> author_discipline(AuthorIndex a) const;

  /// Sorted distinct discipline ids over papers and units.
  const std::vector<std::string>& disciplines() const noexcept { return disciplines_; }
  bool has_discipline(std::string_view id) const;
  const CriterionRanking* criterion(std::string_view discipline_id) const;

 private:
  CorpusData data_;
  Date snapshot_date_{};
  CitationGraph graph_;
  std::vector<CitationEdge> anachronistic_;
  std::unordered_map<std::string, PaperIndex> paper_index_;
  std::unordered_map<std::string, AuthorIndex> author_index_;
  std::unordered_map<std::string, UnitIndex> unit_index_;
  std::unordered_map<std::string, std::vector<PaperIndex>> journal_papers_;
  std::vector<std::vector<PaperIndex>> author_papers_;
  std::vector<std::vector<PaperIndex>> unit_papers_;
  std::vector<std::vector<AuthorIndex>> unit_members_;
  std::vector<std::vector<Date>> paper_downloads_;
  std::vector<std::string> disciplines_;
};

struct ValidationReport {
  std::size_t anachronistic_edges = 0;
  std::size_t orphan_authors = 0;
  std::size_t units_without_papers = 0;
  std::size_t unattributed_submissions = 0;  // submitted paper with no member author
  std::vector<std::string> details;

  bool clean() const noexcept {
    return anachronistic_edges == 0 && orphan_authors == 0 && units_without_papers == 0 &&
           unattributed_submissions == 0;
  }
};

ValidationReport validate_corpus(const Corpus& corpus);

/// Papers, citation edges and downloads dated on or before `cutoff`.
/// Authors, units, journals and criteria carry over; submitted paper lists
/// keep only surviving papers.
Corpus snapshot_at(const Corpus& corpus, Date cutoff);

/// Stable 64-bit FNV-1a digest of the canonical serialization.
std::uint64_t fingerprint(const CorpusData& data);

// ---- ingestion files ----

struct CorpusPaths {
  std::filesystem::path papers;
  std::filesystem::path authors;
  std::filesystem::path units;
  std::filesystem::path downloads;
  std::filesystem::path criterion;
  std::optional<std::filesystem::path> journals;

  /// Standard file names inside `dir`; journals.jsonl is used when present.
  static CorpusPaths in_directory(const std::filesystem::path& dir);
};

struct ParsedCorpus {
  Corpus corpus;
  LoadReport report;
};

ParsedCorpus parse_corpus(const CorpusPaths& paths, std::optional<Date> snapshot_date = {});

/// Writes papers.jsonl, authors.jsonl, units.jsonl, journals.jsonl,
/// downloads.csv and criterion.csv into `dir`.
void write_corpus(const CorpusData& data, const std::filesystem::path& dir);

std::string load_report_json(const LoadReport& report);

}  // namespace scim
