#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/corpus.hpp"

namespace scim {

enum class Level { paper, author, unit };

std::string_view to_string(Level level) noexcept;
Level parse_level(std::string_view text);

struct EntityRef {
  Level level = Level::paper;
  std::string id;
};

// The papers an entity answers for: a paper itself, an author's listed
// papers, or a unit's submitted papers.
struct EntityPapers {
  std::vector<PaperIndex> papers;
  std::optional<std::string> discipline;
};

/// Throws Error(not_found) for an unknown id.
EntityPapers resolve_entity(const Corpus& corpus, const EntityRef& entity);

// ---- counts ----

/// In-edges whose citing paper is dated inside `window`. For authors and
/// units, edges between the entity's own papers are not counted.
std::int64_t citation_count(const Corpus& corpus, const EntityRef& entity,
                            const DateRange& window = {});

/// Citations to a paper set; `exclude_internal` drops edges within the set.
std::int64_t citations_to_set(const Corpus& corpus, std::span<const PaperIndex> papers,
                              const DateRange& window, bool exclude_internal);

/// Papers of an author or unit published inside `window`.
std::int64_t publication_count(const Corpus& corpus, const EntityRef& entity,
                               const DateRange& window = {});

/// Citations dated in `year` to the journal's articles from the two
/// preceding years, per article. 0 when there are no such articles.
double journal_impact_factor(const Corpus& corpus, std::string_view journal_id, int year);

/// Same-year analogue of the impact factor.
double immediacy_index(const Corpus& corpus, std::string_view journal_id, int year);

/// Largest h with at least h entries >= h.
int h_index_of(std::span<const std::int64_t> citation_counts);

/// h-index over the entity's papers published in `window`, counting
/// citations dated in `window`. Unit h-index pools all submitted papers.
int h_index(const Corpus& corpus, const EntityRef& entity, const DateRange& window = {});

/// Distinct papers citing both `p` and `q`; throws when p == q.
std::int64_t cocitation(const Corpus& corpus, std::string_view p, std::string_view q);

/// Co-citation weighted mean citation count of the papers co-cited with
/// `p`; 0 when `p` is never co-cited.
double co_citedness_score(const Corpus& corpus, std::string_view p);

// ---- time course ----

struct Chronometrics {
  double age_years = 0.0;
  double growth_slope = 0.0;
  int latency_to_peak_years = 0;
  double decay_rate = 0.0;

  bool operator==(const Chronometrics&) const = default;
};

/// Event counts per publication-relative year, years 0..floor(age).
std::vector<std::int64_t> annual_counts(Date origin, std::span<const Date> events, Date snapshot);

/// Growth is the least-squares slope over the first min(5, bins) annual
/// counts; latency is the earliest peak year; decay is the least-squares
/// slope of -ln(count) over post-peak years with a nonzero count, >= 0.
Chronometrics chronometrics_of(Date origin, std::span<const Date> events, Date snapshot);

/// Citation time course of a paper, author or unit (internal citations of
/// authors and units excluded; origin is the earliest publication).
Chronometrics citation_chronometrics(const Corpus& corpus, const EntityRef& entity);
Chronometrics download_chronometrics(const Corpus& corpus, std::string_view paper_id);

/// Downloads whose completed months since publication fall in `window`.
std::int64_t download_count(const Corpus& corpus, std::string_view paper_id,
                            const MonthWindow& window);

// ---- neighbourhood ----

/// Share of incident citation edges (in and out) whose other endpoint has
/// the entity's discipline. Empty when the entity has no incident edges.
/// Exogamy is 1 - endogamy.
std::optional<double> endogamy(const Corpus& corpus, const EntityRef& entity);

/// Author: distinct co-authors over their papers. Unit: mean over members.
double coauthorship_score(const Corpus& corpus, const EntityRef& entity);

/// Cosine similarity of term-frequency vectors; empty if either list is empty.
std::optional<double> cosine_similarity(std::span<const std::string> a,
                                        std::span<const std::string> b);
std::optional<double> textual_proximity(const Corpus& corpus, std::string_view p,
                                        std::string_view q);

// ---- link analysis over the whole corpus ----

struct GraphScores {
  std::vector<double> hub;
  std::vector<double> authority;
  std::vector<double> pagerank;
  bool no_edges = false;
};

HitsScores hits_scores(const Corpus& corpus, const HitsOptions& options = {});
PageRankScores corpus_pagerank(const Corpus& corpus, double damping = 0.85);
GraphScores graph_scores(const Corpus& corpus);

}  // namespace scim
