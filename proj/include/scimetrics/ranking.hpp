#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/corpus.hpp"
#include "scimetrics/metric_matrix.hpp"

namespace scim {

struct ZScored {
  MetricMatrix matrix;  // z-scores; missing cells stay missing
  std::vector<std::string> dropped_columns;  // constant or all-missing
};

/// Column-wise (x - mean) / sd with the sample sd. Throws
/// invalid_argument for an empty matrix.
ZScored zscore(const MetricMatrix& m);

struct WeightVector {
  std::vector<std::string> metric_names;
  std::vector<double> weights;
  bool normalized = false;
};

/// Parses `name:w,name:w`. Throws invalid_argument naming the offending token.
WeightVector parse_weights(std::string_view text);

/// Scales to sum |w| = 1. All-zero weights are left as zeros.
WeightVector normalize(const WeightVector& w);

struct RankedRow {
  std::string unit_id;
  double score = 0.0;
  double rank = 0.0;  // 1 is best; ties share the average rank
};

struct RankingResult {
  std::string discipline_id;
  std::string metric;                  // set by univariate_rank
  std::vector<RankedRow> rows;         // score descending, then id
  std::vector<std::string> imputed;    // rows whose value was missing
  std::optional<double> spearman_vs_criterion;

  /// `unit_id,score,rank`.
  std::string to_csv() const;
};

/// Descending order on one metric. Missing values take the column mean,
/// which is where a weight-1 composite would put them.
RankingResult univariate_rank(const MetricMatrix& m, std::string_view metric,
                              const CriterionRanking* criterion = nullptr);

/// score_i = sum_j w_j z_ij over L1-normalized weights; missing cells
/// contribute 0. Weights on dropped (constant) columns contribute 0;
/// weights naming a column the matrix never had throw invalid_argument.
RankingResult composite_rank(const ZScored& z, const WeightVector& w,
                             const CriterionRanking* criterion = nullptr);

struct OaAdvantage {
  std::string discipline_id;
  double ratio = 0.0;
  std::size_t n_pairs = 0;        // journal-year cells used
  std::size_t skipped_cells = 0;  // cells whose non-OA mean was 0
};

/// Mean over journal-year cells holding both OA and non-OA papers of
/// (OA mean citations) / (non-OA mean citations).
OaAdvantage oa_advantage(const Corpus& corpus, std::string_view discipline);

}  // namespace scim
