#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/metrics.hpp"

namespace scim {

// Rows (units, authors or papers of one discipline) by named metrics.
// Absent values stay std::nullopt.
struct MetricMatrix {
  Level level = Level::unit;
  std::string discipline_id;
  std::vector<std::string> row_ids;
  std::vector<std::string> metric_names;
  std::vector<std::optional<double>> values;  // row-major

  std::size_t rows() const noexcept { return row_ids.size(); }
  std::size_t cols() const noexcept { return metric_names.size(); }

  std::optional<double>& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
  const std::optional<double>& at(std::size_t r, std::size_t c) const {
    return values[r * cols() + c];
  }
  std::optional<std::size_t> column_index(std::string_view name) const;
  std::vector<std::optional<double>> column(std::size_t c) const;

  /// `row_id,<metric>...`; empty cells for missing values.
  std::string to_csv() const;

  bool operator==(const MetricMatrix&) const = default;
};

/// Every metric name valid at `level`, in default battery order.
const std::vector<std::string>& metric_catalog(Level level);
bool is_known_metric(std::string_view name);

// Evaluates battery metrics, caching corpus-wide intermediates (graph
// scores, journal ratios, token vectors). Not thread safe; use one per task.
class MetricEvaluator {
 public:
  explicit MetricEvaluator(const Corpus& corpus);
  ~MetricEvaluator();
  MetricEvaluator(const MetricEvaluator&) = delete;
  MetricEvaluator& operator=(const MetricEvaluator&) = delete;

  const Corpus& corpus() const noexcept { return corpus_; }

  std::optional<double> paper_value(std::string_view metric, PaperIndex p);
  /// Entity-level value; paper-level metrics are averaged over the entity's
  /// papers, skipping missing values.
  std::optional<double> value(std::string_view metric, const EntityRef& entity);
  /// Author-style value over an arbitrary paper set, for reliability
  /// analysis. Unit-only and network metrics throw.
  std::optional<double> value_on_papers(std::string_view metric,
                                        std::span<const PaperIndex> papers,
                                        const DateRange& window = {});
  bool supports_paper_sets(std::string_view metric) const;

 private:
  struct Cache;
  const Corpus& corpus_;
  std::unique_ptr<Cache> cache_;
};

/// Row ids of a discipline at `level`, sorted.
std::vector<std::string> discipline_rows(const Corpus& corpus, std::string_view discipline,
                                         Level level);

/// Empty `metrics` selects the full catalog for the level. Throws
/// not_found for an unknown discipline and invalid_argument for an unknown
/// metric name.
MetricMatrix build_metric_matrix(const Corpus& corpus, std::string_view discipline, Level level,
                                 std::span<const std::string> metrics = {});

}  // namespace scim
