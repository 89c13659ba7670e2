#include "scimetrics/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/stats.hpp"
#include "scimetrics/validation.hpp"

namespace scim {

ZScored zscore(const MetricMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw Error(ErrorCode::invalid_argument, "cannot z-score an empty matrix");
  ZScored out;
  out.matrix.level = m.level;
  out.matrix.discipline_id = m.discipline_id;
  out.matrix.row_ids = m.row_ids;
  std::vector<std::vector<std::optional<double>>> kept;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto st = standardize(m.column(c));
    if (st.constant) {
      out.dropped_columns.push_back(m.metric_names[c]);
      continue;
    }
    out.matrix.metric_names.push_back(m.metric_names[c]);
    kept.push_back(std::move(st.values));
  }
  out.matrix.values.resize(m.rows() * kept.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < kept.size(); ++c) out.matrix.at(r, c) = kept[c][r];
  return out;
}

WeightVector parse_weights(std::string_view text) {
  WeightVector w;
  for (const auto& raw : split(text, ',')) {
    const auto token = trim(raw);
    if (token.empty()) continue;
    const auto colon = token.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error(ErrorCode::invalid_argument,
                  "malformed weight '" + std::string(token) + "': expected name:value");
    const auto name = trim(token.substr(0, colon));
    const auto number = trim(token.substr(colon + 1));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc{} || ptr != number.data() + number.size() || !std::isfinite(value))
      throw Error(ErrorCode::invalid_argument,
                  "malformed weight '" + std::string(token) + "': bad number");
    if (!is_known_metric(name))
      throw Error(ErrorCode::invalid_argument, "unknown metric '" + std::string(name) + "'");
    if (std::find(w.metric_names.begin(), w.metric_names.end(), name) != w.metric_names.end())
      throw Error(ErrorCode::invalid_argument,
                  "metric '" + std::string(name) + "' weighted twice");
    w.metric_names.emplace_back(name);
    w.weights.push_back(value);
  }
  if (w.metric_names.empty()) throw Error(ErrorCode::invalid_argument, "no weights given");
  return w;
}

namespace {

// Keeps 40 significant bits so that c*w / (c*sum) lands on the same double
// for any positive scale c.
double round_weight(long double v) {
  if (v == 0.0L) return 0.0;
  int exp = 0;
  const long double frac = std::frexp(v, &exp);
  return static_cast<double>(std::ldexp(std::round(std::ldexp(frac, 40)), exp - 40));
}

void assign_ranks(RankingResult& result) {
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const RankedRow& a, const RankedRow& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.unit_id < b.unit_id;
                   });
  std::size_t i = 0;
  while (i < result.rows.size()) {
    std::size_t j = i;
    while (j + 1 < result.rows.size() && result.rows[j + 1].score == result.rows[i].score) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) result.rows[k].rank = avg;
    i = j + 1;
  }
}

// Spearman of the ordering scores against the criterion; empty when the
// criterion does not cover every row or either side is constant.
std::optional<double> agreement(const std::vector<std::string>& ids,
                                const std::vector<double>& scores,
                                const CriterionRanking* criterion) {
  if (!criterion || ids.size() < 3) return std::nullopt;
  try {
    const auto s = criterion_scores(*criterion, ids);
    return spearman(scores, s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

WeightVector normalize(const WeightVector& w) {
  WeightVector out = w;
  long double total = 0.0L;
  for (double v : w.weights) total += std::fabs(static_cast<long double>(v));
  if (total > 0.0L)
    for (std::size_t j = 0; j < w.weights.size(); ++j)
      out.weights[j] = round_weight(static_cast<long double>(w.weights[j]) / total);
  out.normalized = true;
  return out;
}

std::string RankingResult::to_csv() const {
  std::string out = "unit_id,score,rank\n";
  for (const auto& row : rows)
    out += row.unit_id + "," + format9(row.score) + "," + format9(row.rank) + "\n";
  return out;
}

RankingResult univariate_rank(const MetricMatrix& m, std::string_view metric,
                              const CriterionRanking* criterion) {
  const auto c = m.column_index(metric);
  if (!c) throw Error(ErrorCode::invalid_argument, "metric '" + std::string(metric) + "' not in matrix");
  if (m.rows() == 0) throw Error(ErrorCode::invalid_argument, "cannot rank an empty matrix");
  RankingResult result;
  result.discipline_id = m.discipline_id;
  result.metric = std::string(metric);
  const auto column = m.column(*c);
  const auto st = standardize(column);
  long double sum = 0.0L;
  std::size_t present = 0;
  for (const auto& v : column)
    if (v) {
      sum += *v;
      ++present;
    }
  const double fill = present ? static_cast<double>(sum / static_cast<long double>(present)) : 0.0;
  std::vector<double> order_keys;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!column[r]) result.imputed.push_back(m.row_ids[r]);
    // z-scores order the rows, so a weight-1 composite gives the same ranks
    const double key = st.constant ? 0.0 : st.values[r].value_or(0.0);
    order_keys.push_back(key);
    result.rows.push_back({m.row_ids[r], key, 0.0});
  }
  result.spearman_vs_criterion = agreement(m.row_ids, order_keys, criterion);
  assign_ranks(result);
  // report raw values, keeping the z-score order
  std::map<std::string, double> raw;
  for (std::size_t r = 0; r < m.rows(); ++r) raw[m.row_ids[r]] = column[r].value_or(fill);
  for (auto& row : result.rows) row.score = raw[row.unit_id];
  return result;
}

RankingResult composite_rank(const ZScored& z, const WeightVector& w,
                             const CriterionRanking* criterion) {
  if (w.metric_names.size() != w.weights.size())
    throw Error(ErrorCode::invalid_argument, "weight names and values differ in length");
  const MetricMatrix& m = z.matrix;
  if (m.rows() == 0) throw Error(ErrorCode::invalid_argument, "cannot rank an empty matrix");
  const WeightVector nw = w.normalized ? w : normalize(w);
  std::vector<std::optional<std::size_t>> columns;
  for (const auto& name : nw.metric_names) {
    const auto c = m.column_index(name);
    if (!c && std::find(z.dropped_columns.begin(), z.dropped_columns.end(), name) ==
                  z.dropped_columns.end())
      throw Error(ErrorCode::invalid_argument, "weight on metric '" + name + "' not in matrix");
    columns.push_back(c);
  }
  RankingResult result;
  result.discipline_id = m.discipline_id;
  std::vector<double> scores;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    long double s = 0.0L;
    bool missing = false;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (!columns[j]) continue;
      const auto& v = m.at(r, *columns[j]);
      if (!v) {
        missing = missing || nw.weights[j] != 0.0;
        continue;
      }
      s += static_cast<long double>(nw.weights[j]) * *v;
    }
    if (missing) result.imputed.push_back(m.row_ids[r]);
    const double score = snap_to_grid(s);
    scores.push_back(score);
    result.rows.push_back({m.row_ids[r], score, 0.0});
  }
  result.spearman_vs_criterion = agreement(m.row_ids, scores, criterion);
  assign_ranks(result);
  return result;
}

OaAdvantage oa_advantage(const Corpus& corpus, std::string_view discipline) {
  if (!corpus.has_discipline(discipline))
    throw Error(ErrorCode::not_found, "unknown discipline '" + std::string(discipline) + "'");
  struct Cell {
    double oa_sum = 0.0, non_sum = 0.0;
    std::size_t oa_n = 0, non_n = 0;
  };
  std::map<std::pair<std::string, int>, Cell> cells;
  for (PaperIndex p = 0; p < corpus.papers().size(); ++p) {
    const Paper& paper = corpus.paper(p);
    if (paper.discipline_id != discipline) continue;
    Cell& cell = cells[{paper.journal_id, year_of(paper.pub_date)}];
    const double cites = static_cast<double>(corpus.graph().citers(p).size());
    if (paper.is_oa) {
      cell.oa_sum += cites;
      ++cell.oa_n;
    } else {
      cell.non_sum += cites;
      ++cell.non_n;
    }
  }
  OaAdvantage out;
  out.discipline_id = std::string(discipline);
  double ratio_sum = 0.0;
  for (const auto& [key, cell] : cells) {
    if (cell.oa_n == 0 || cell.non_n == 0) continue;
    const double non_mean = cell.non_sum / static_cast<double>(cell.non_n);
    if (non_mean == 0.0) {
      ++out.skipped_cells;
      continue;
    }
    ratio_sum += (cell.oa_sum / static_cast<double>(cell.oa_n)) / non_mean;
    ++out.n_pairs;
  }
  if (out.n_pairs == 0) throw Error(ErrorCode::unprocessable, "no eligible cells");
  out.ratio = ratio_sum / static_cast<double>(out.n_pairs);
  return out;
}

}  // namespace scim
