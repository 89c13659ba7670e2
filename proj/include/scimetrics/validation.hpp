#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scimetrics/corpus.hpp"
#include "scimetrics/linalg.hpp"
#include "scimetrics/metric_matrix.hpp"

namespace scim {

/// Criterion score per row: ranks are tie-averaged over the rows, then
/// mapped to (N - r) / (N - 1) so the best unit scores 1. Throws
/// unprocessable when a row has no rank.
std::vector<double> criterion_scores(const CriterionRanking& criterion,
                                     std::span<const std::string> row_ids);

struct ImputedCell {
  std::string row_id;
  std::string metric;

  bool operator==(const ImputedCell&) const = default;
};

struct RegressionModel {
  std::string discipline_id;
  std::vector<std::string> metric_names;  // fitted columns, drops excluded
  std::vector<double> beta;               // standardized coefficients
  double intercept = 0.0;                 // criterion-score units
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  double ridge_lambda = 0.0;
  double condition_number = 1.0;
  std::vector<std::string> row_ids;
  std::vector<double> fitted;     // criterion-score units
  std::vector<double> residuals;  // criterion score minus fitted
  std::vector<std::string> dropped_columns;
  std::vector<ImputedCell> imputed_cells;
  std::map<std::string, double> constraints;  // metrics held at a fixed beta

  // Column statistics used to score new rows.
  std::vector<double> column_means;
  std::vector<double> column_sds;
  double score_mean = 0.0;
  double score_sd = 0.0;

  std::optional<double> beta_of(std::string_view metric) const;
  /// Predicted criterion score for raw metric values (missing -> mean).
  double predict(std::span<const std::optional<double>> raw_values) const;
};

inline constexpr double kDefaultRidge = 1e-8;

/// Ridge-stabilized least squares of the criterion score on z-scored
/// metric columns. Missing cells take the column mean (and are listed);
/// all-missing and constant columns are dropped.
RegressionModel fit_regression(const MetricMatrix& m, const CriterionRanking& criterion,
                               double ridge_lambda = kDefaultRidge);

/// Refit with some standardized betas pinned (typically to 0); the free
/// betas are refit on the residual criterion.
RegressionModel constrained_refit(const RegressionModel& model, const MetricMatrix& m,
                                  const CriterionRanking& criterion,
                                  const std::map<std::string, double>& constraints);

struct CrossValidationFold {
  std::string row_id;
  double predicted = 0.0;
  double actual = 0.0;
};

struct CrossValidation {
  double mean_oos_spearman = 0.0;
  std::vector<CrossValidationFold> folds;
};

/// Leave-one-out: each unit's score predicted by a model fit without it;
/// reports the Spearman correlation of predictions against actual scores.
CrossValidation cross_validate(const MetricMatrix& m, const CriterionRanking& criterion,
                               double ridge_lambda = kDefaultRidge);

struct FactorResult {
  std::vector<std::string> metric_names;  // analysed columns
  std::vector<std::string> dropped_columns;
  std::size_t rows_used = 0;
  Matrix correlation;
  std::vector<double> eigenvalues;  // descending
  Matrix loadings;                  // metrics x factors, unit eigenvectors
  std::vector<double> variance_explained;
  std::vector<double> g_loadings;  // first column of `loadings`
  int sweeps = 0;
};

/// Principal components of the metric correlation matrix over complete
/// rows. Each eigenvector is signed so its entries sum to >= 0.
FactorResult factor_analysis(const MetricMatrix& m);

struct ReliabilityReport {
  std::string metric_name;
  double raw_r = 0.0;
  double spearman_brown_r = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

enum class SplitMode {
  random,      // each author's papers shuffled and halved
  duplicated,  // every paper in both halves (diagnostic: r must be 1)
};

/// Split-half reliability across authors with at least two papers. Odd
/// counts give the extra paper to half A.
ReliabilityReport split_half_reliability(const Corpus& corpus, const std::string& metric,
                                         std::uint64_t seed, SplitMode mode = SplitMode::random);

/// Correlation across entities between the metric measured on two
/// windows; each window is evaluated on the snapshot at its end.
ReliabilityReport test_retest_reliability(const Corpus& corpus, const std::string& metric,
                                          const DateRange& first, const DateRange& second,
                                          Level level = Level::author);

struct CorrelatorPoint {
  std::string paper_id;
  std::int64_t downloads = 0;
  std::int64_t citations = 0;
};

struct CorrelatorResult {
  double r = 0.0;
  std::size_t n = 0;
  MonthWindow download_window;
  MonthWindow citation_window;
  std::vector<CorrelatorPoint> points;  // sorted by paper id
};

inline constexpr MonthWindow kDefaultDownloadWindow{0, 6};
inline constexpr MonthWindow kDefaultCitationWindow{12, std::nullopt};

/// Pearson correlation between early downloads and later citations per
/// paper, both windows in months since publication. Papers younger than
/// the start of the citation window are left out.
CorrelatorResult download_citation_correlator(const Corpus& corpus,
                                              const MonthWindow& downloads = kDefaultDownloadWindow,
                                              const MonthWindow& citations = kDefaultCitationWindow);

}  // namespace scim
