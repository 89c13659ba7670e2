#include "scimetrics/serialize.hpp"

#include <cmath>

#include "scimetrics/format.hpp"

namespace scim {

namespace {

Json reals(std::span<const double> values) {
  Json out = Json::array();
  for (double v : values) out.push_back(real_json(v));
  return out;
}

Json window_json(const MonthWindow& w) {
  Json j;
  j["from"] = w.start;
  j["to"] = w.end ? Json(*w.end) : Json(nullptr);
  return j;
}

Json matrix_rows(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(reals(m.row(r)));
  return out;
}

}  // namespace

Json real_json(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round9(value) + 0.0;  // drop negative zero
}

Json to_json(const MetricMatrix& m) {
  Json j;
  j["level"] = std::string(to_string(m.level));
  j["discipline_id"] = m.discipline_id;
  j["metric_names"] = m.metric_names;
  j["row_ids"] = m.row_ids;
  Json values = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& v = m.at(r, c);
      row.push_back(v ? real_json(*v) : Json(nullptr));
    }
    values.push_back(std::move(row));
  }
  j["values"] = std::move(values);
  return j;
}

Json to_json(const RegressionModel& model) {
  Json j;
  j["discipline_id"] = model.discipline_id;
  j["metric_names"] = model.metric_names;
  j["beta"] = reals(model.beta);
  j["intercept"] = real_json(model.intercept);
  j["r_squared"] = real_json(model.r_squared);
  j["adjusted_r_squared"] = real_json(model.adjusted_r_squared);
  j["ridge_lambda"] = real_json(model.ridge_lambda);
  j["condition_number"] = real_json(model.condition_number);
  j["n"] = model.row_ids.size();
  j["row_ids"] = model.row_ids;
  j["fitted"] = reals(model.fitted);
  j["residuals"] = reals(model.residuals);
  j["dropped_columns"] = model.dropped_columns;
  Json imputed = Json::array();
  for (const auto& cell : model.imputed_cells)
    imputed.push_back({{"row_id", cell.row_id}, {"metric", cell.metric}});
  j["imputed_cells"] = std::move(imputed);
  Json constraints = Json::object();
  for (const auto& [metric, value] : model.constraints) constraints[metric] = real_json(value);
  j["constraints"] = std::move(constraints);
  return j;
}

Json to_json(const CrossValidation& cv) {
  Json j;
  j["mean_oos_spearman"] = real_json(cv.mean_oos_spearman);
  Json folds = Json::array();
  for (const auto& f : cv.folds)
    folds.push_back({{"unit_id", f.row_id},
                     {"predicted", real_json(f.predicted)},
                     {"actual", real_json(f.actual)}});
  j["folds"] = std::move(folds);
  return j;
}

Json to_json(const FactorResult& factor) {
  Json j;
  j["metric_names"] = factor.metric_names;
  j["dropped_columns"] = factor.dropped_columns;
  j["rows_used"] = factor.rows_used;
  j["eigenvalues"] = reals(factor.eigenvalues);
  j["variance_explained"] = reals(factor.variance_explained);
  j["g_loadings"] = reals(factor.g_loadings);
  j["loadings"] = matrix_rows(factor.loadings);
  j["correlation"] = matrix_rows(factor.correlation);
  j["sweeps"] = factor.sweeps;
  return j;
}

Json to_json(const ReliabilityReport& report) {
  Json j;
  j["metric_name"] = report.metric_name;
  j["raw_r"] = real_json(report.raw_r);
  j["spearman_brown_r"] = real_json(report.spearman_brown_r);
  j["n"] = report.n;
  j["seed"] = report.seed;
  return j;
}

Json to_json(const CorrelatorResult& result) {
  Json j;
  j["r"] = real_json(result.r);
  j["n"] = result.n;
  j["dl_window"] = window_json(result.download_window);
  j["cit_window"] = window_json(result.citation_window);
  Json points = Json::array();
  for (const auto& p : result.points)
    points.push_back(
        {{"paper_id", p.paper_id}, {"downloads", p.downloads}, {"citations", p.citations}});
  j["points"] = std::move(points);
  return j;
}

Json to_json(const RankingResult& result) {
  Json j;
  j["discipline_id"] = result.discipline_id;
  if (!result.metric.empty()) j["metric"] = result.metric;
  Json rows = Json::array();
  for (const auto& row : result.rows)
    rows.push_back({{"unit_id", row.unit_id},
                    {"score", real_json(row.score)},
                    {"rank", real_json(row.rank)}});
  j["rows"] = std::move(rows);
  j["imputed"] = result.imputed;
  j["spearman_vs_criterion"] =
      result.spearman_vs_criterion ? real_json(*result.spearman_vs_criterion) : Json(nullptr);
  return j;
}

Json to_json(const OaAdvantage& result) {
  Json j;
  j["discipline_id"] = result.discipline_id;
  j["ratio"] = real_json(result.ratio);
  j["n_pairs"] = result.n_pairs;
  j["skipped_cells"] = result.skipped_cells;
  return j;
}

Json to_json(const ValidationReport& report) {
  Json j;
  j["clean"] = report.clean();
  j["anachronistic_edges"] = report.anachronistic_edges;
  j["orphan_authors"] = report.orphan_authors;
  j["units_without_papers"] = report.units_without_papers;
  j["unattributed_submissions"] = report.unattributed_submissions;
  j["details"] = report.details;
  return j;
}

Json to_json(const LoadReport& report) { return Json::parse(load_report_json(report)); }

Json corpus_summary(const Corpus& corpus) {
  Json j;
  j["papers"] = corpus.papers().size();
  j["authors"] = corpus.authors().size();
  j["units"] = corpus.units().size();
  j["journals"] = corpus.journals().size();
  j["downloads"] = corpus.data().downloads.size();
  j["citation_edges"] = corpus.graph().edge_count();
  j["disciplines"] = corpus.disciplines();
  Json criteria = Json::array();
  for (const auto& c : corpus.data().criteria) criteria.push_back(c.discipline_id);
  j["criteria"] = std::move(criteria);
  const bool empty = corpus.papers().empty() && corpus.data().downloads.empty();
  j["snapshot_date"] = empty ? Json(nullptr) : Json(format_date(corpus.snapshot_date()));
  return j;
}

}  // namespace scim
