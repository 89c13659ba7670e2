#pragma once

#include <json.hpp>

#include "scimetrics/corpus.hpp"
#include "scimetrics/metric_matrix.hpp"
#include "scimetrics/ranking.hpp"
#include "scimetrics/validation.hpp"

namespace scim {

// JSON views of results. Every real goes through round9 (9 significant
// digits); non-finite values become null. Arrays follow the result's own
// deterministic order.
using Json = nlohmann::ordered_json;

Json real_json(double value);
Json to_json(const MetricMatrix& m);
Json to_json(const RegressionModel& model);
Json to_json(const CrossValidation& cv);
Json to_json(const FactorResult& factor);
Json to_json(const ReliabilityReport& report);
Json to_json(const CorrelatorResult& result);
Json to_json(const RankingResult& result);
Json to_json(const OaAdvantage& result);
Json to_json(const ValidationReport& report);
Json to_json(const LoadReport& report);
Json corpus_summary(const Corpus& corpus);

}  // namespace scim
