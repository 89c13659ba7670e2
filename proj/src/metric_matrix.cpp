#include "scimetrics/metric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"

namespace scim {

std::optional<std::size_t> MetricMatrix::column_index(std::string_view name) const {
  for (std::size_t c = 0; c < metric_names.size(); ++c)
    if (metric_names[c] == name) return c;
  return std::nullopt;
}

std::vector<std::optional<double>> MetricMatrix::column(std::size_t c) const {
  std::vector<std::optional<double>> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(at(r, c));
  return out;
}

std::string MetricMatrix::to_csv() const {
  std::string out = "row_id";
  for (const auto& m : metric_names) out += "," + m;
  out += "\n";
  for (std::size_t r = 0; r < rows(); ++r) {
    out += row_ids[r];
    for (std::size_t c = 0; c < cols(); ++c) out += "," + format_cell(at(r, c));
    out += "\n";
  }
  return out;
}

namespace {

// Defined per paper; authors and units average them.
const std::vector<std::string> kPaperMetrics = {
    "citation_count", "journal_impact_factor", "immediacy_index", "cocitation_count",
    "co_citedness",   "hub",                   "authority",       "pagerank",
    "age",            "citation_growth",       "citation_latency", "citation_decay",
    "downloads",      "early_downloads",       "download_growth", "download_latency",
    "download_decay", "endogamy",              "textual_proximity"};

const std::vector<std::string> kAuthorMetrics = {
    "publication_count", "citation_count",   "h_index",         "journal_impact_factor",
    "immediacy_index",   "cocitation_count", "co_citedness",    "hub",
    "authority",         "pagerank",         "age",             "citation_growth",
    "citation_latency",  "citation_decay",   "downloads",       "early_downloads",
    "download_growth",   "download_latency", "download_decay",  "coauthorship",
    "endogamy",          "textual_proximity"};

const std::vector<std::string> kUnitMetrics = [] {
  auto v = kAuthorMetrics;
  v.push_back("prior_funding");
  v.push_back("student_count");
  return v;
}();

bool listed(const std::vector<std::string>& names, std::string_view m) {
  return std::find(names.begin(), names.end(), m) != names.end();
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

const std::vector<std::string>& metric_catalog(Level level) {
  switch (level) {
    case Level::paper: return kPaperMetrics;
    case Level::author: return kAuthorMetrics;
    case Level::unit: return kUnitMetrics;
  }
  return kUnitMetrics;
}

bool is_known_metric(std::string_view name) { return listed(kUnitMetrics, name); }

struct MetricEvaluator::Cache {
  std::optional<GraphScores> graph;
  std::map<std::pair<std::string, int>, double> jif;
  std::map<std::pair<std::string, int>, double> immediacy;
  std::unordered_map<PaperIndex, Chronometrics> citation_chrono;
  std::unordered_map<PaperIndex, Chronometrics> download_chrono;
  std::set<std::string> proximity_done;
  std::unordered_map<PaperIndex, std::optional<double>> proximity;
};

MetricEvaluator::MetricEvaluator(const Corpus& corpus)
    : corpus_(corpus), cache_(std::make_unique<Cache>()) {}

MetricEvaluator::~MetricEvaluator() = default;

namespace {

// Sparse term-frequency vector with its norm, terms interned.
struct TermVector {
  std::vector<std::pair<std::uint32_t, double>> terms;  // sorted by term id
  double norm = 0.0;
};

double sparse_dot(const TermVector& a, const TermVector& b) {
  double dot = 0.0;
  auto i = a.terms.begin();
  auto j = b.terms.begin();
  while (i != a.terms.end() && j != b.terms.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return dot;
}

}  // namespace

std::optional<double> MetricEvaluator::paper_value(std::string_view metric, PaperIndex p) {
  const auto& g = corpus_.graph();
  const Paper& paper = corpus_.paper(p);
  auto& cache = *cache_;

  auto graph = [&]() -> const GraphScores& {
    if (!cache.graph) cache.graph = graph_scores(corpus_);
    return *cache.graph;
  };
  auto citation_chrono = [&]() -> const Chronometrics& {
    auto it = cache.citation_chrono.find(p);
    if (it == cache.citation_chrono.end())
      it = cache.citation_chrono
               .emplace(p, citation_chronometrics(corpus_, {Level::paper, paper.id}))
               .first;
    return it->second;
  };
  auto download_chrono = [&]() -> const Chronometrics& {
    auto it = cache.download_chrono.find(p);
    if (it == cache.download_chrono.end())
      it = cache.download_chrono.emplace(p, download_chronometrics(corpus_, paper.id)).first;
    return it->second;
  };
  auto journal_metric = [&](auto& table, auto fn) {
    const std::pair<std::string, int> key{paper.journal_id, year_of(paper.pub_date)};
    auto it = table.find(key);
    if (it == table.end()) it = table.emplace(key, fn(corpus_, key.first, key.second)).first;
    return it->second;
  };

  if (metric == "citation_count") return static_cast<double>(g.citers(p).size());
  if (metric == "journal_impact_factor") return journal_metric(cache.jif, journal_impact_factor);
  if (metric == "immediacy_index") return journal_metric(cache.immediacy, immediacy_index);
  if (metric == "cocitation_count") {
    double n = 0.0;
    for (NodeIndex c : g.citers(p)) n += static_cast<double>(g.cited(c).size() - 1);
    return n;
  }
  if (metric == "co_citedness") return co_citedness_score(corpus_, paper.id);
  if (metric == "hub") return graph().hub[p];
  if (metric == "authority") return graph().authority[p];
  if (metric == "pagerank") return graph().pagerank[p];
  if (metric == "age") return std::max(0.0, years_between(paper.pub_date, corpus_.snapshot_date()));
  if (metric == "citation_growth") return citation_chrono().growth_slope;
  if (metric == "citation_latency") return citation_chrono().latency_to_peak_years;
  if (metric == "citation_decay") return citation_chrono().decay_rate;
  if (metric == "downloads")
    return static_cast<double>(download_count(corpus_, paper.id, MonthWindow{0, std::nullopt}));
  if (metric == "early_downloads")
    return static_cast<double>(download_count(corpus_, paper.id, MonthWindow{0, 6}));
  if (metric == "download_growth") return download_chrono().growth_slope;
  if (metric == "download_latency") return download_chrono().latency_to_peak_years;
  if (metric == "download_decay") return download_chrono().decay_rate;
  if (metric == "endogamy") return endogamy(corpus_, {Level::paper, paper.id});
  if (metric == "textual_proximity") {
    // mean similarity to the other tokenized papers of the same discipline
    if (!cache.proximity_done.contains(paper.discipline_id)) {
      cache.proximity_done.insert(paper.discipline_id);
      std::unordered_map<std::string_view, std::uint32_t> ids;
      std::vector<PaperIndex> members;
      std::vector<TermVector> vectors;
      for (PaperIndex i = 0; i < corpus_.papers().size(); ++i) {
        const Paper& q = corpus_.paper(i);
        if (q.discipline_id != paper.discipline_id) continue;
        if (!q.tokens || q.tokens->empty()) {
          cache.proximity[i] = std::nullopt;
          continue;
        }
        std::map<std::uint32_t, double> tf;
        for (const auto& t : *q.tokens) {
          auto [it, fresh] = ids.emplace(t, static_cast<std::uint32_t>(ids.size()));
          tf[it->second] += 1.0;
        }
        TermVector v;
        v.terms.assign(tf.begin(), tf.end());
        for (const auto& [term, f] : v.terms) v.norm += f * f;
        v.norm = std::sqrt(v.norm);
        members.push_back(i);
        vectors.push_back(std::move(v));
      }
      std::vector<double> sums(members.size(), 0.0);
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          const double s = std::clamp(
              sparse_dot(vectors[a], vectors[b]) / (vectors[a].norm * vectors[b].norm), 0.0, 1.0);
          sums[a] += s;
          sums[b] += s;
        }
      for (std::size_t a = 0; a < members.size(); ++a)
        cache.proximity[members[a]] =
            members.size() > 1 ? std::optional<double>(sums[a] / static_cast<double>(members.size() - 1))
                               : std::nullopt;
    }
    return cache.proximity[p];
  }
  if (is_known_metric(metric))
    throw Error(ErrorCode::invalid_argument,
                "metric '" + std::string(metric) + "' is not defined for papers");
  throw Error(ErrorCode::invalid_argument, "unknown metric '" + std::string(metric) + "'");
}

std::optional<double> MetricEvaluator::value(std::string_view metric, const EntityRef& entity) {
  if (entity.level == Level::paper) {
    auto p = corpus_.find_paper(entity.id);
    if (!p) throw Error(ErrorCode::not_found, "unknown paper '" + entity.id + "'");
    return paper_value(metric, *p);
  }
  if (!listed(metric_catalog(entity.level), metric)) {
    if (is_known_metric(metric))
      throw Error(ErrorCode::invalid_argument, "metric '" + std::string(metric) +
                                                   "' is not defined at " +
                                                   std::string(to_string(entity.level)) + " level");
    throw Error(ErrorCode::invalid_argument, "unknown metric '" + std::string(metric) + "'");
  }
  if (metric == "publication_count") return static_cast<double>(publication_count(corpus_, entity));
  if (metric == "citation_count") return static_cast<double>(citation_count(corpus_, entity));
  if (metric == "h_index") return static_cast<double>(h_index(corpus_, entity));
  if (metric == "coauthorship") return coauthorship_score(corpus_, entity);
  if (metric == "endogamy") return endogamy(corpus_, entity);
  if (metric == "prior_funding" || metric == "student_count") {
    auto u = corpus_.find_unit(entity.id);
    if (!u) throw Error(ErrorCode::not_found, "unknown unit '" + entity.id + "'");
    const Unit& unit = corpus_.unit(*u);
    return metric == "prior_funding" ? unit.prior_funding
                                     : static_cast<double>(unit.student_count);
  }
  auto e = resolve_entity(corpus_, entity);
  std::vector<std::optional<double>> values;
  for (PaperIndex p : e.papers) values.push_back(paper_value(metric, p));
  return mean_of(values);
}

bool MetricEvaluator::supports_paper_sets(std::string_view metric) const {
  if (metric == "publication_count" || metric == "h_index") return true;
  return listed(kPaperMetrics, metric) && metric != "endogamy";
}

std::optional<double> MetricEvaluator::value_on_papers(std::string_view metric,
                                                       std::span<const PaperIndex> papers,
                                                       const DateRange& window) {
  if (!supports_paper_sets(metric))
    throw Error(ErrorCode::invalid_argument,
                "metric '" + std::string(metric) + "' cannot be evaluated on a paper subset");
  std::vector<PaperIndex> in_window;
  for (PaperIndex p : papers)
    if (window.contains(corpus_.paper(p).pub_date)) in_window.push_back(p);

  if (metric == "publication_count") return static_cast<double>(in_window.size());
  if (metric == "citation_count")
    return static_cast<double>(citations_to_set(corpus_, in_window, window, true));
  if (metric == "h_index") {
    std::vector<std::int64_t> counts;
    for (PaperIndex p : in_window) {
      std::int64_t n = 0;
      for (NodeIndex c : corpus_.graph().citers(p))
        if (window.contains(corpus_.paper(c).pub_date)) ++n;
      counts.push_back(n);
    }
    return static_cast<double>(h_index_of(counts));
  }
  std::vector<std::optional<double>> values;
  for (PaperIndex p : in_window) values.push_back(paper_value(metric, p));
  return mean_of(values);
}

std::vector<std::string> discipline_rows(const Corpus& corpus, std::string_view discipline,
                                         Level level) {
  std::vector<std::string> rows;
  switch (level) {
    case Level::paper:
      for (const auto& p : corpus.papers())
        if (p.discipline_id == discipline) rows.push_back(p.id);
      break;
    case Level::author:
      for (AuthorIndex a = 0; a < corpus.authors().size(); ++a) {
        auto d = corpus.author_discipline(a);
        if (d && *d == discipline) rows.push_back(corpus.author(a).id);
      }
      break;
    case Level::unit:
      for (const auto& u : corpus.units())
        if (u.discipline_id == discipline) rows.push_back(u.id);
      break;
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

MetricMatrix build_metric_matrix(const Corpus& corpus, std::string_view discipline, Level level,
                                 std::span<const std::string> metrics) {
  if (!corpus.has_discipline(discipline))
    throw Error(ErrorCode::not_found, "unknown discipline '" + std::string(discipline) + "'");
  MetricMatrix m;
  m.level = level;
  m.discipline_id = std::string(discipline);
  const auto& catalog = metric_catalog(level);
  if (metrics.empty())
    m.metric_names = catalog;
  else
    m.metric_names.assign(metrics.begin(), metrics.end());

  std::set<std::string_view> seen;
  for (const auto& name : m.metric_names) {
    if (!is_known_metric(name))
      throw Error(ErrorCode::invalid_argument, "unknown metric '" + name + "'");
    if (!listed(catalog, name))
      throw Error(ErrorCode::invalid_argument, "metric '" + name + "' is not defined at " +
                                                   std::string(to_string(level)) + " level");
    if (!seen.insert(name).second)
      throw Error(ErrorCode::invalid_argument, "metric '" + name + "' requested twice");
  }

  m.row_ids = discipline_rows(corpus, discipline, level);
  if (m.row_ids.empty())
    throw Error(ErrorCode::unprocessable, "discipline '" + std::string(discipline) + "' has no " +
                                              std::string(to_string(level)) + " rows");

  MetricEvaluator eval(corpus);
  m.values.reserve(m.rows() * m.cols());
  for (const auto& id : m.row_ids)
    for (const auto& name : m.metric_names) m.values.push_back(eval.value(name, {level, id}));
  return m;
}

}  // namespace scim
