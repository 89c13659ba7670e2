#include "scimetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "scimetrics/error.hpp"

namespace scim {

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::paper: return "paper";
    case Level::author: return "author";
    case Level::unit: return "unit";
  }
  return "unit";
}

Level parse_level(std::string_view text) {
  if (text == "paper") return Level::paper;
  if (text == "author") return Level::author;
  if (text == "unit") return Level::unit;
  throw Error(ErrorCode::invalid_argument,
              "unknown level '" + std::string(text) + "' (expected paper, author or unit)");
}

EntityPapers resolve_entity(const Corpus& corpus, const EntityRef& entity) {
  EntityPapers out;
  switch (entity.level) {
    case Level::paper: {
      auto p = corpus.find_paper(entity.id);
      if (!p) throw Error(ErrorCode::not_found, "unknown paper '" + entity.id + "'");
      out.papers.push_back(*p);
      out.discipline = corpus.paper(*p).discipline_id;
      break;
    }
    case Level::author: {
      auto a = corpus.find_author(entity.id);
      if (!a) throw Error(ErrorCode::not_found, "unknown author '" + entity.id + "'");
      auto ps = corpus.papers_of_author(*a);
      out.papers.assign(ps.begin(), ps.end());
      out.discipline = corpus.author_discipline(*a);
      break;
    }
    case Level::unit: {
      auto u = corpus.find_unit(entity.id);
      if (!u) throw Error(ErrorCode::not_found, "unknown unit '" + entity.id + "'");
      auto ps = corpus.submitted_papers(*u);
      out.papers.assign(ps.begin(), ps.end());
      std::sort(out.papers.begin(), out.papers.end());
      out.papers.erase(std::unique(out.papers.begin(), out.papers.end()), out.papers.end());
      out.discipline = corpus.unit(*u).discipline_id;
      break;
    }
  }
  return out;
}

namespace {

PaperIndex require_paper(const Corpus& corpus, std::string_view id) {
  auto p = corpus.find_paper(id);
  if (!p) throw Error(ErrorCode::not_found, "unknown paper '" + std::string(id) + "'");
  return *p;
}

void require_journal(const Corpus& corpus, std::string_view id) {
  if (!corpus.has_journal(id))
    throw Error(ErrorCode::not_found, "unknown journal '" + std::string(id) + "'");
}

std::vector<PaperIndex> sorted_copy(std::span<const PaperIndex> papers) {
  std::vector<PaperIndex> v(papers.begin(), papers.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool contains(const std::vector<PaperIndex>& sorted, PaperIndex p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

std::int64_t citations_to_set(const Corpus& corpus, std::span<const PaperIndex> papers,
                              const DateRange& window, bool exclude_internal) {
  const auto own = sorted_copy(papers);
  const auto& g = corpus.graph();
  std::int64_t count = 0;
  for (PaperIndex p : own) {
    for (NodeIndex c : g.citers(p)) {
      if (exclude_internal && contains(own, c)) continue;
      if (window.contains(corpus.paper(c).pub_date)) ++count;
    }
  }
  return count;
}

std::int64_t citation_count(const Corpus& corpus, const EntityRef& entity,
                            const DateRange& window) {
  auto e = resolve_entity(corpus, entity);
  return citations_to_set(corpus, e.papers, window, entity.level != Level::paper);
}

std::int64_t publication_count(const Corpus& corpus, const EntityRef& entity,
                               const DateRange& window) {
  if (entity.level == Level::paper)
    throw Error(ErrorCode::invalid_argument, "publication_count applies to authors and units");
  auto e = resolve_entity(corpus, entity);
  return std::count_if(e.papers.begin(), e.papers.end(), [&](PaperIndex p) {
    return window.contains(corpus.paper(p).pub_date);
  });
}

namespace {

double journal_ratio(const Corpus& corpus, std::string_view journal_id, int year,
                     int first_pub_year, int last_pub_year) {
  require_journal(corpus, journal_id);
  std::int64_t articles = 0, citations = 0;
  for (PaperIndex p : corpus.papers_of_journal(journal_id)) {
    const int y = year_of(corpus.paper(p).pub_date);
    if (y < first_pub_year || y > last_pub_year) continue;
    ++articles;
    for (NodeIndex c : corpus.graph().citers(p))
      if (year_of(corpus.paper(c).pub_date) == year) ++citations;
  }
  return articles == 0 ? 0.0 : static_cast<double>(citations) / static_cast<double>(articles);
}

}  // namespace

double journal_impact_factor(const Corpus& corpus, std::string_view journal_id, int year) {
  return journal_ratio(corpus, journal_id, year, year - 2, year - 1);
}

double immediacy_index(const Corpus& corpus, std::string_view journal_id, int year) {
  return journal_ratio(corpus, journal_id, year, year, year);
}

int h_index_of(std::span<const std::int64_t> citation_counts) {
  std::vector<std::int64_t> c(citation_counts.begin(), citation_counts.end());
  std::sort(c.begin(), c.end(), std::greater<>());
  int h = 0;
  while (static_cast<std::size_t>(h) < c.size() && c[h] >= h + 1) ++h;
  return h;
}

int h_index(const Corpus& corpus, const EntityRef& entity, const DateRange& window) {
  if (entity.level == Level::paper)
    throw Error(ErrorCode::invalid_argument, "h_index applies to authors and units");
  auto e = resolve_entity(corpus, entity);
  std::vector<std::int64_t> counts;
  for (PaperIndex p : e.papers) {
    if (!window.contains(corpus.paper(p).pub_date)) continue;
    std::int64_t n = 0;
    for (NodeIndex c : corpus.graph().citers(p))
      if (window.contains(corpus.paper(c).pub_date)) ++n;
    counts.push_back(n);
  }
  return h_index_of(counts);
}

std::int64_t cocitation(const Corpus& corpus, std::string_view p, std::string_view q) {
  const PaperIndex a = require_paper(corpus, p);
  const PaperIndex b = require_paper(corpus, q);
  if (a == b) throw Error(ErrorCode::invalid_argument, "cocitation needs two distinct papers");
  auto ca = corpus.graph().citers(a);
  auto cb = corpus.graph().citers(b);
  std::int64_t n = 0;
  auto i = ca.begin();
  auto j = cb.begin();
  while (i != ca.end() && j != cb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double co_citedness_score(const Corpus& corpus, std::string_view p) {
  const PaperIndex a = require_paper(corpus, p);
  const auto& g = corpus.graph();
  // sum over q of cocitation(a,q) * cites(q) == sum over citers c of a of
  // the citation counts of c's other references
  double weighted = 0.0, weight = 0.0;
  for (NodeIndex c : g.citers(a)) {
    for (NodeIndex q : g.cited(c)) {
      if (q == a) continue;
      weighted += static_cast<double>(g.citers(q).size());
      weight += 1.0;
    }
  }
  return weight > 0.0 ? weighted / weight : 0.0;
}

std::vector<std::int64_t> annual_counts(Date origin, std::span<const Date> events, Date snapshot) {
  if (snapshot < origin) return {};
  const int bins = whole_years_between(origin, snapshot) + 1;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
  for (Date e : events) {
    if (e < origin || e > snapshot) continue;
    const int k = whole_years_between(origin, e);
    if (k >= 0 && k < bins) ++counts[static_cast<std::size_t>(k)];
  }
  return counts;
}

Chronometrics chronometrics_of(Date origin, std::span<const Date> events, Date snapshot) {
  Chronometrics m;
  m.age_years = std::max(0.0, years_between(origin, snapshot));
  const auto counts = annual_counts(origin, events, snapshot);
  const bool any = std::any_of(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; });
  if (!any) return m;

  const std::size_t growth_bins = std::min<std::size_t>(5, counts.size());
  std::vector<double> x, y;
  for (std::size_t k = 0; k < growth_bins; ++k) {
    x.push_back(static_cast<double>(k));
    y.push_back(static_cast<double>(counts[k]));
  }
  m.growth_slope = least_squares_slope(x, y);

  const auto peak = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  m.latency_to_peak_years = static_cast<int>(peak);

  x.clear();
  y.clear();
  for (std::size_t k = peak + 1; k < counts.size(); ++k) {
    if (counts[k] <= 0) continue;
    x.push_back(static_cast<double>(k - peak));
    y.push_back(-std::log(static_cast<double>(counts[k])));
  }
  if (x.size() >= 2) m.decay_rate = std::max(0.0, least_squares_slope(x, y));
  return m;
}

Chronometrics citation_chronometrics(const Corpus& corpus, const EntityRef& entity) {
  auto e = resolve_entity(corpus, entity);
  if (e.papers.empty()) return Chronometrics{};
  const auto own = sorted_copy(e.papers);
  Date origin = corpus.paper(own.front()).pub_date;
  std::vector<Date> events;
  for (PaperIndex p : own) {
    origin = std::min(origin, corpus.paper(p).pub_date);
    for (NodeIndex c : corpus.graph().citers(p)) {
      if (entity.level != Level::paper && contains(own, c)) continue;
      events.push_back(corpus.paper(c).pub_date);
    }
  }
  return chronometrics_of(origin, events, corpus.snapshot_date());
}

Chronometrics download_chronometrics(const Corpus& corpus, std::string_view paper_id) {
  const PaperIndex p = require_paper(corpus, paper_id);
  return chronometrics_of(corpus.paper(p).pub_date, corpus.downloads_of(p), corpus.snapshot_date());
}

std::int64_t download_count(const Corpus& corpus, std::string_view paper_id,
                            const MonthWindow& window) {
  const PaperIndex p = require_paper(corpus, paper_id);
  const Date pub = corpus.paper(p).pub_date;
  std::int64_t n = 0;
  for (Date d : corpus.downloads_of(p)) {
    const int m = months_between(pub, d);
    if (m >= 0 && window.contains(m)) ++n;
  }
  return n;
}

std::optional<double> endogamy(const Corpus& corpus, const EntityRef& entity) {
  auto e = resolve_entity(corpus, entity);
  if (!e.discipline) return std::nullopt;
  const auto own = sorted_copy(e.papers);
  const bool skip_internal = entity.level != Level::paper;
  std::int64_t total = 0, same = 0;
  auto visit = [&](NodeIndex other) {
    if (skip_internal && contains(own, other)) return;
    ++total;
    if (corpus.paper(other).discipline_id == *e.discipline) ++same;
  };
  for (PaperIndex p : own) {
    for (NodeIndex c : corpus.graph().citers(p)) visit(c);
    for (NodeIndex q : corpus.graph().cited(p)) visit(q);
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(same) / static_cast<double>(total);
}

namespace {

std::size_t distinct_coauthors(const Corpus& corpus, AuthorIndex a) {
  const std::string& self = corpus.author(a).id;
  std::set<std::string_view> others;
  for (PaperIndex p : corpus.papers_of_author(a))
    for (const auto& id : corpus.paper(p).author_ids)
      if (id != self) others.insert(id);
  return others.size();
}

}  // namespace

double coauthorship_score(const Corpus& corpus, const EntityRef& entity) {
  if (entity.level == Level::author) {
    auto a = corpus.find_author(entity.id);
    if (!a) throw Error(ErrorCode::not_found, "unknown author '" + entity.id + "'");
    return static_cast<double>(distinct_coauthors(corpus, *a));
  }
  if (entity.level == Level::unit) {
    auto u = corpus.find_unit(entity.id);
    if (!u) throw Error(ErrorCode::not_found, "unknown unit '" + entity.id + "'");
    auto members = corpus.members(*u);
    if (members.empty()) return 0.0;
    double sum = 0.0;
    for (AuthorIndex a : members) sum += static_cast<double>(distinct_coauthors(corpus, a));
    return sum / static_cast<double>(members.size());
  }
  throw Error(ErrorCode::invalid_argument, "coauthorship applies to authors and units");
}

std::optional<double> cosine_similarity(std::span<const std::string> a,
                                        std::span<const std::string> b) {
  if (a.empty() || b.empty()) return std::nullopt;
  std::map<std::string_view, std::pair<double, double>> tf;
  for (const auto& t : a) tf[t].first += 1.0;
  for (const auto& t : b) tf[t].second += 1.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [term, f] : tf) {
    dot += f.first * f.second;
    na += f.first * f.first;
    nb += f.second * f.second;
  }
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

std::optional<double> textual_proximity(const Corpus& corpus, std::string_view p,
                                        std::string_view q) {
  const auto& a = corpus.paper(require_paper(corpus, p));
  const auto& b = corpus.paper(require_paper(corpus, q));
  if (!a.tokens || !b.tokens) return std::nullopt;
  return cosine_similarity(*a.tokens, *b.tokens);
}

HitsScores hits_scores(const Corpus& corpus, const HitsOptions& options) {
  return hits(corpus.graph(), options);
}

PageRankScores corpus_pagerank(const Corpus& corpus, double damping) {
  PageRankOptions options;
  options.damping = damping;
  return pagerank(corpus.graph(), options);
}

GraphScores graph_scores(const Corpus& corpus) {
  GraphScores s;
  auto h = hits_scores(corpus);
  s.hub = std::move(h.hub);
  s.authority = std::move(h.authority);
  s.no_edges = h.no_edges;
  if (corpus.papers().size() > 0) s.pagerank = corpus_pagerank(corpus).rank;
  return s;
}

}  // namespace scim
