#include "scimetrics/validation.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "scimetrics/error.hpp"
#include "scimetrics/rng.hpp"
#include "scimetrics/stats.hpp"

namespace scim {

std::vector<double> criterion_scores(const CriterionRanking& criterion,
                                     std::span<const std::string> row_ids) {
  const std::size_t n = row_ids.size();
  if (n < 2)
    throw Error(ErrorCode::unprocessable, "criterion needs at least two ranked units");
  std::vector<double> raw;
  raw.reserve(n);
  for (const auto& id : row_ids) {
    auto it = criterion.ranks.find(id);
    if (it == criterion.ranks.end())
      throw Error(ErrorCode::unprocessable,
                  "unit '" + id + "' has no criterion rank in discipline '" +
                      criterion.discipline_id + "'");
    raw.push_back(static_cast<double>(it->second));
  }
  const auto r = average_ranks(raw);
  std::vector<double> s(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s[i] = (static_cast<double>(n) - r[i]) / denom;
  return s;
}

std::optional<double> RegressionModel::beta_of(std::string_view metric) const {
  for (std::size_t j = 0; j < metric_names.size(); ++j)
    if (metric_names[j] == metric) return beta[j];
  return std::nullopt;
}

double RegressionModel::predict(std::span<const std::optional<double>> raw_values) const {
  if (raw_values.size() != metric_names.size())
    throw Error(ErrorCode::invalid_argument, "expected " + std::to_string(metric_names.size()) +
                                                 " metric values, got " +
                                                 std::to_string(raw_values.size()));
  double z_hat = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (!raw_values[j]) continue;  // the column mean has z = 0
    z_hat += beta[j] * (*raw_values[j] - column_means[j]) / column_sds[j];
  }
  return score_mean + score_sd * z_hat;
}

namespace {

// Imputed, z-scored design over a subset of matrix rows.
struct Design {
  std::vector<std::string> names;
  std::vector<std::size_t> source_columns;
  std::vector<std::string> dropped;
  std::vector<ImputedCell> imputed;
  Matrix z;  // rows x kept columns
  std::vector<double> means;
  std::vector<double> sds;
};

Design prepare_design(const MetricMatrix& m, std::span<const std::size_t> rows) {
  Design d;
  std::vector<std::vector<double>> kept;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    std::size_t present = 0;
    for (std::size_t r : rows)
      if (const auto& v = m.at(r, c)) {
        sum += *v;
        ++present;
      }
    if (present == 0) {
      d.dropped.push_back(m.metric_names[c]);
      continue;
    }
    const double fill = sum / static_cast<double>(present);
    std::vector<std::optional<double>> column;
    column.reserve(rows.size());
    std::vector<ImputedCell> imputed;
    for (std::size_t r : rows) {
      const auto& v = m.at(r, c);
      if (v) {
        column.push_back(*v);
      } else {
        column.push_back(fill);
        imputed.push_back({m.row_ids[r], m.metric_names[c]});
      }
    }
    auto st = standardize(column);
    if (st.constant) {
      d.dropped.push_back(m.metric_names[c]);
      continue;
    }
    d.names.push_back(m.metric_names[c]);
    d.source_columns.push_back(c);
    d.means.push_back(st.mean);
    d.sds.push_back(st.sd);
    d.imputed.insert(d.imputed.end(), imputed.begin(), imputed.end());
    std::vector<double> zc;
    zc.reserve(rows.size());
    for (const auto& v : st.values) zc.push_back(*v);
    kept.push_back(std::move(zc));
  }
  d.z = Matrix(rows.size(), kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j)
    for (std::size_t i = 0; i < rows.size(); ++i) d.z(i, j) = kept[j][i];
  std::sort(d.imputed.begin(), d.imputed.end(), [](const ImputedCell& a, const ImputedCell& b) {
    return std::tie(a.row_id, a.metric) < std::tie(b.row_id, b.metric);
  });
  return d;
}

Matrix correlation_of(const Matrix& z) {
  const std::size_t n = z.rows();
  const std::size_t p = z.cols();
  Matrix r(p, p);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a; b < p; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += z(i, a) * z(i, b);
      r(a, b) = r(b, a) = s / denom;
    }
  return r;
}

double condition_number_of(const Matrix& correlation) {
  if (correlation.rows() == 0) return 1.0;
  const auto eig = jacobi_eigen(correlation);
  const double hi = eig.values.front();
  const double lo = eig.values.back();
  if (!(hi > 0.0)) return 1.0;
  // a singular matrix reports an enormous but finite number
  return hi / std::max(lo, hi * 1e-300);
}

RegressionModel fit_design(const Design& d, std::span<const double> scores,
                           const std::map<std::string, double>& constraints, double ridge_lambda) {
  const std::size_t n = d.z.rows();
  const std::size_t p = d.z.cols();
  if (n < p + 2)
    throw Error(ErrorCode::unprocessable,
                "regression is underdetermined: " + std::to_string(n) + " rows for " +
                    std::to_string(p) + " metrics (need at least metrics + 2)");
  std::vector<std::optional<double>> score_column(scores.begin(), scores.end());
  const auto ys = standardize(score_column);
  if (ys.constant) throw Error(ErrorCode::unprocessable, "criterion scores have no spread");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = *ys.values[i];

  RegressionModel model;
  model.metric_names = d.names;
  model.dropped_columns = d.dropped;
  model.imputed_cells = d.imputed;
  model.ridge_lambda = ridge_lambda;
  model.column_means = d.means;
  model.column_sds = d.sds;
  model.score_mean = ys.mean;
  model.score_sd = ys.sd;
  model.intercept = ys.mean;
  model.beta.assign(p, 0.0);

  std::vector<std::size_t> free;
  std::vector<double> target = y;
  for (std::size_t j = 0; j < p; ++j) {
    auto it = constraints.find(d.names[j]);
    if (it == constraints.end()) {
      free.push_back(j);
      continue;
    }
    model.beta[j] = it->second;
    model.constraints.emplace(it->first, it->second);
    for (std::size_t i = 0; i < n; ++i) target[i] -= it->second * d.z(i, j);
  }

  const double denom = static_cast<double>(n - 1);
  if (!free.empty()) {
    const std::size_t k = free.size();
    Matrix normal(k, k);
    std::vector<double> rhs(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a; b < k; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += d.z(i, free[a]) * d.z(i, free[b]);
        normal(a, b) = normal(b, a) = s / denom;
      }
      normal(a, a) += ridge_lambda;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += d.z(i, free[a]) * target[i];
      rhs[a] = s / denom;
    }
    const auto solved = solve_spd(normal, rhs);
    for (std::size_t a = 0; a < k; ++a) model.beta[free[a]] = solved[a];
  }

  double sse = 0.0;
  double sst = 0.0;
  model.fitted.resize(n);
  model.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z_hat = 0.0;
    for (std::size_t j = 0; j < p; ++j) z_hat += model.beta[j] * d.z(i, j);
    sse += (y[i] - z_hat) * (y[i] - z_hat);
    sst += y[i] * y[i];
    model.fitted[i] = ys.mean + ys.sd * z_hat;
    model.residuals[i] = scores[i] - model.fitted[i];
  }
  model.r_squared = std::clamp(1.0 - sse / sst, 0.0, 1.0);
  model.adjusted_r_squared =
      1.0 - (1.0 - model.r_squared) * static_cast<double>(n - 1) / static_cast<double>(n - p - 1);
  model.condition_number = condition_number_of(correlation_of(d.z));
  return model;
}

std::vector<std::size_t> all_rows(const MetricMatrix& m) {
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

void check_ridge(double ridge_lambda) {
  if (!(ridge_lambda >= 0.0) || !std::isfinite(ridge_lambda))
    throw Error(ErrorCode::invalid_argument, "ridge_lambda must be a finite value >= 0");
}

RegressionModel fit_with(const MetricMatrix& m, const CriterionRanking& criterion,
                         const std::map<std::string, double>& constraints, double ridge_lambda) {
  check_ridge(ridge_lambda);
  if (m.level != Level::unit)
    throw Error(ErrorCode::invalid_argument, "regression needs a unit-level metric matrix");
  const auto rows = all_rows(m);
  const auto d = prepare_design(m, rows);
  for (const auto& [metric, value] : constraints) {
    if (!std::isfinite(value))
      throw Error(ErrorCode::invalid_argument, "constraint on '" + metric + "' is not finite");
    if (std::find(d.dropped.begin(), d.dropped.end(), metric) != d.dropped.end())
      throw Error(ErrorCode::unprocessable,
                  "cannot constrain '" + metric + "': the column was dropped");
    if (std::find(d.names.begin(), d.names.end(), metric) == d.names.end())
      throw Error(ErrorCode::invalid_argument,
                  "cannot constrain '" + metric + "': not a metric of the model");
  }
  const auto scores = criterion_scores(criterion, m.row_ids);
  auto model = fit_design(d, scores, constraints, ridge_lambda);
  model.discipline_id = m.discipline_id;
  model.row_ids = m.row_ids;
  return model;
}

}  // namespace

RegressionModel fit_regression(const MetricMatrix& m, const CriterionRanking& criterion,
                               double ridge_lambda) {
  return fit_with(m, criterion, {}, ridge_lambda);
}

RegressionModel constrained_refit(const RegressionModel& model, const MetricMatrix& m,
                                  const CriterionRanking& criterion,
                                  const std::map<std::string, double>& constraints) {
  return fit_with(m, criterion, constraints, model.ridge_lambda);
}

CrossValidation cross_validate(const MetricMatrix& m, const CriterionRanking& criterion,
                               double ridge_lambda) {
  check_ridge(ridge_lambda);
  if (m.level != Level::unit)
    throw Error(ErrorCode::invalid_argument, "cross-validation needs a unit-level metric matrix");
  const auto scores = criterion_scores(criterion, m.row_ids);
  const std::size_t n = m.rows();
  CrossValidation cv;
  std::vector<double> predicted;
  for (std::size_t held = 0; held < n; ++held) {
    std::vector<std::size_t> train;
    std::vector<double> train_scores;
    for (std::size_t i = 0; i < n; ++i)
      if (i != held) {
        train.push_back(i);
        train_scores.push_back(scores[i]);
      }
    const auto d = prepare_design(m, train);
    const auto model = fit_design(d, train_scores, {}, ridge_lambda);
    std::vector<std::optional<double>> raw;
    for (std::size_t c : d.source_columns) raw.push_back(m.at(held, c));
    const double pred = model.predict(raw);
    predicted.push_back(pred);
    cv.folds.push_back({m.row_ids[held], pred, scores[held]});
  }
  cv.mean_oos_spearman = spearman(predicted, scores);
  return cv;
}

FactorResult factor_analysis(const MetricMatrix& m) {
  std::vector<std::size_t> complete;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    bool ok = true;
    for (std::size_t c = 0; c < m.cols() && ok; ++c) ok = m.at(r, c).has_value();
    if (ok) complete.push_back(r);
  }
  if (complete.size() < 3)
    throw Error(ErrorCode::unprocessable, "factor analysis needs at least 3 complete rows, got " +
                                              std::to_string(complete.size()));
  const auto d = prepare_design(m, complete);
  if (d.names.size() < 2)
    throw Error(ErrorCode::unprocessable,
                "factor analysis needs at least 2 non-constant metrics");

  FactorResult out;
  out.metric_names = d.names;
  out.dropped_columns = d.dropped;
  out.rows_used = complete.size();
  out.correlation = correlation_of(d.z);
  const auto eig = jacobi_eigen(out.correlation);
  out.sweeps = eig.sweeps;
  const std::size_t p = d.names.size();
  double trace = 0.0;
  for (std::size_t j = 0; j < p; ++j) trace += out.correlation(j, j);
  out.eigenvalues = eig.values;
  for (double& v : out.eigenvalues)
    if (v < 0.0 && v > -1e-12 * trace) v = 0.0;
  out.loadings = eig.vectors;
  for (std::size_t k = 0; k < p; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) sum += out.loadings(j, k);
    if (sum < 0.0)
      for (std::size_t j = 0; j < p; ++j) out.loadings(j, k) = -out.loadings(j, k);
  }
  double total = 0.0;
  for (double v : out.eigenvalues) total += v;
  for (double v : out.eigenvalues) out.variance_explained.push_back(v / total);
  for (std::size_t j = 0; j < p; ++j) out.g_loadings.push_back(out.loadings(j, 0));
  return out;
}

namespace {

ReliabilityReport correlate_pairs(std::string metric, std::span<const double> a,
                                  std::span<const double> b, std::uint64_t seed, bool boost) {
  if (a.size() < 3)
    throw Error(ErrorCode::unprocessable, "reliability needs at least 3 entities with values, got " +
                                              std::to_string(a.size()));
  ReliabilityReport rep;
  rep.metric_name = std::move(metric);
  rep.n = a.size();
  rep.seed = seed;
  rep.raw_r = pearson(a, b);
  rep.spearman_brown_r = rep.raw_r;
  if (boost && rep.raw_r > -1.0) rep.spearman_brown_r = 2.0 * rep.raw_r / (1.0 + rep.raw_r);
  return rep;
}

void check_paper_set_metric(MetricEvaluator& eval, const std::string& metric) {
  if (!is_known_metric(metric))
    throw Error(ErrorCode::invalid_argument, "unknown metric '" + metric + "'");
  if (!eval.supports_paper_sets(metric))
    throw Error(ErrorCode::invalid_argument,
                "metric '" + metric + "' cannot be evaluated on part of an author's papers");
}

}  // namespace

ReliabilityReport split_half_reliability(const Corpus& corpus, const std::string& metric,
                                         std::uint64_t seed, SplitMode mode) {
  MetricEvaluator eval(corpus);
  check_paper_set_metric(eval, metric);
  std::vector<AuthorIndex> authors(corpus.authors().size());
  std::iota(authors.begin(), authors.end(), AuthorIndex{0});
  std::sort(authors.begin(), authors.end(), [&](AuthorIndex x, AuthorIndex y) {
    return corpus.author(x).id < corpus.author(y).id;
  });
  Rng rng(seed);
  std::vector<double> first;
  std::vector<double> second;
  for (AuthorIndex a : authors) {
    const auto own = corpus.papers_of_author(a);
    if (own.size() < 2) continue;
    std::vector<PaperIndex> papers(own.begin(), own.end());
    std::sort(papers.begin(), papers.end(), [&](PaperIndex x, PaperIndex y) {
      return corpus.paper(x).id < corpus.paper(y).id;
    });
    std::optional<double> va;
    std::optional<double> vb;
    if (mode == SplitMode::duplicated) {
      va = vb = eval.value_on_papers(metric, papers);
    } else {
      rng.shuffle(std::span<PaperIndex>(papers));
      const std::size_t half = (papers.size() + 1) / 2;
      va = eval.value_on_papers(metric, std::span<const PaperIndex>(papers).first(half));
      vb = eval.value_on_papers(metric, std::span<const PaperIndex>(papers).subspan(half));
    }
    if (!va || !vb) continue;
    first.push_back(*va);
    second.push_back(*vb);
  }
  return correlate_pairs(metric, first, second, seed, true);
}

ReliabilityReport test_retest_reliability(const Corpus& corpus, const std::string& metric,
                                          const DateRange& first, const DateRange& second,
                                          Level level) {
  if (level == Level::paper)
    throw Error(ErrorCode::invalid_argument, "test-retest runs at author or unit level");
  for (const DateRange* w : {&first, &second})
    if (!w->from || !w->to || *w->to <= *w->from)
      throw Error(ErrorCode::invalid_argument,
                  "test-retest windows need both bounds with from < to");
  const Corpus snap_a = snapshot_at(corpus, *first.to - std::chrono::days{1});
  const Corpus snap_b = snapshot_at(corpus, *second.to - std::chrono::days{1});
  MetricEvaluator eval_a(snap_a);
  MetricEvaluator eval_b(snap_b);
  if (!is_known_metric(metric))
    throw Error(ErrorCode::invalid_argument, "unknown metric '" + metric + "'");
  const auto& catalog = metric_catalog(level);
  if (std::find(catalog.begin(), catalog.end(), metric) == catalog.end())
    throw Error(ErrorCode::invalid_argument,
                "metric '" + metric + "' is not defined at " + std::string(to_string(level)) +
                    " level");

  auto papers_of = [&](const Corpus& c, std::size_t i) -> std::vector<PaperIndex> {
    const auto span = level == Level::author ? c.papers_of_author(static_cast<AuthorIndex>(i))
                                             : c.submitted_papers(static_cast<UnitIndex>(i));
    return {span.begin(), span.end()};
  };
  auto evaluate = [&](MetricEvaluator& eval, const Corpus& c, std::size_t i,
                      const DateRange& window) -> std::optional<double> {
    if (eval.supports_paper_sets(metric)) return eval.value_on_papers(metric, papers_of(c, i), window);
    const std::string& id = level == Level::author ? c.author(static_cast<AuthorIndex>(i)).id
                                                   : c.unit(static_cast<UnitIndex>(i)).id;
    return eval.value(metric, EntityRef{level, id});
  };

  const std::size_t count = level == Level::author ? corpus.authors().size() : corpus.units().size();
  std::vector<std::pair<std::string, std::size_t>> order;
  for (std::size_t i = 0; i < count; ++i)
    order.emplace_back(level == Level::author ? corpus.author(static_cast<AuthorIndex>(i)).id
                                              : corpus.unit(static_cast<UnitIndex>(i)).id,
                       i);
  std::sort(order.begin(), order.end());
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [id, i] : order) {
    if (papers_of(snap_a, i).empty() || papers_of(snap_b, i).empty()) continue;
    const auto a = evaluate(eval_a, snap_a, i, first);
    const auto b = evaluate(eval_b, snap_b, i, second);
    if (!a || !b) continue;
    xs.push_back(*a);
    ys.push_back(*b);
  }
  return correlate_pairs(metric, xs, ys, 0, false);
}

CorrelatorResult download_citation_correlator(const Corpus& corpus, const MonthWindow& downloads,
                                              const MonthWindow& citations) {
  for (const MonthWindow* w : {&downloads, &citations})
    if (w->start < 0 || w->degenerate())
      throw Error(ErrorCode::invalid_argument,
                  "month windows need 0 <= start < end");
  CorrelatorResult out;
  out.download_window = downloads;
  out.citation_window = citations;
  const Date snapshot = corpus.snapshot_date();
  for (PaperIndex p = 0; p < corpus.papers().size(); ++p) {
    const Paper& paper = corpus.paper(p);
    if (months_between(paper.pub_date, snapshot) < citations.start) continue;
    CorrelatorPoint point;
    point.paper_id = paper.id;
    for (Date at : corpus.downloads_of(p))
      if (downloads.contains(months_between(paper.pub_date, at))) ++point.downloads;
    for (NodeIndex c : corpus.graph().citers(p))
      if (citations.contains(months_between(paper.pub_date, corpus.paper(c).pub_date)))
        ++point.citations;
    out.points.push_back(std::move(point));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CorrelatorPoint& a, const CorrelatorPoint& b) { return a.paper_id < b.paper_id; });
  out.n = out.points.size();
  if (out.n < 3)
    throw Error(ErrorCode::unprocessable,
                "correlator needs at least 3 papers old enough for the citation window, got " +
                    std::to_string(out.n));
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& pt : out.points) {
    x.push_back(static_cast<double>(pt.downloads));
    y.push_back(static_cast<double>(pt.citations));
  }
  out.r = pearson(x, y);
  return out;
}

}  // namespace scim
