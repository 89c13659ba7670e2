#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/corpus.hpp"
#include "scimetrics/metric_matrix.hpp"
#include "scimetrics/serialize.hpp"

namespace scim {

// A loaded snapshot plus derived caches. The corpus never changes; the
// matrix cache is filled lazily under a lock, so one Session can serve
// concurrent requests.
class Session {
 public:
  Session(Corpus corpus, LoadReport report);

  /// Parses the ingestion files in `dir`.
  static std::shared_ptr<Session> open(const std::filesystem::path& dir,
                                       std::optional<Date> snapshot = {});

  const Corpus& corpus() const noexcept { return corpus_; }
  const LoadReport& load_report() const noexcept { return report_; }

  std::shared_ptr<const MetricMatrix> matrix(std::string_view discipline, Level level,
                                             std::span<const std::string> metrics) const;

 private:
  Corpus corpus_;
  LoadReport report_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const MetricMatrix>> matrices_;
};

/// Unit-level battery used when a request names no metrics.
const std::vector<std::string>& core_battery();

struct OpOutput {
  std::string body;
  std::string content_type = "application/json";
};

/// Runs a named operation on a JSON request object and renders the result.
/// Operations: summary, validate, load_report, metrics, fit, calibrate,
/// rank, correlate, reliability, factor, oa_advantage, report. Unknown
/// request keys throw invalid_argument.
OpOutput run_op(const Session& session, std::string_view op, const Json& request);

/// Self-contained run summary covering every analysis.
Json report_json(const Session& session, const Json& request);
std::string report_text(const Json& report);

/// JSON text exactly as every interface prints it.
std::string dump(const Json& j);

}  // namespace scim
