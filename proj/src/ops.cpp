#include "scimetrics/ops.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/ranking.hpp"
#include "scimetrics/validation.hpp"

namespace scim {

Session::Session(Corpus corpus, LoadReport report)
    : corpus_(std::move(corpus)), report_(std::move(report)) {}

std::shared_ptr<Session> Session::open(const std::filesystem::path& dir,
                                       std::optional<Date> snapshot) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorCode::io, "corpus directory '" + dir.string() + "' not found");
  auto parsed = parse_corpus(CorpusPaths::in_directory(dir), snapshot);
  if (snapshot) parsed.corpus = snapshot_at(parsed.corpus, *snapshot);
  return std::make_shared<Session>(std::move(parsed.corpus), std::move(parsed.report));
}

std::shared_ptr<const MetricMatrix> Session::matrix(std::string_view discipline, Level level,
                                                    std::span<const std::string> metrics) const {
  std::string key = std::string(discipline) + '\n' + std::string(to_string(level));
  for (const auto& m : metrics) key += '\n' + m;
  {
    std::lock_guard lock(mutex_);
    if (auto it = matrices_.find(key); it != matrices_.end()) return it->second;
  }
  // built outside the lock; a racing duplicate build yields an equal matrix
  auto built = std::make_shared<const MetricMatrix>(
      build_metric_matrix(corpus_, discipline, level, metrics));
  std::lock_guard lock(mutex_);
  return matrices_.emplace(std::move(key), std::move(built)).first->second;
}

const std::vector<std::string>& core_battery() {
  static const std::vector<std::string> battery = {"citation_count", "h_index", "prior_funding",
                                                   "student_count", "coauthorship"};
  return battery;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

[[noreturn]] void bad_request(const std::string& message) {
  throw Error(ErrorCode::invalid_argument, message);
}

void check_keys(const Json& req, std::initializer_list<std::string_view> allowed) {
  if (!req.is_object()) bad_request("request must be a JSON object");
  for (const auto& [key, value] : req.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      bad_request("unknown request field '" + key + "'");
}

std::optional<std::string> opt_string(const Json& req, const char* key) {
  auto it = req.find(key);
  if (it == req.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) bad_request(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

std::string required_string(const Json& req, const char* key) {
  auto v = opt_string(req, key);
  if (!v || v->empty()) bad_request(std::string("missing '") + key + "'");
  return *v;
}

double opt_number(const Json& req, const char* key, double fallback) {
  auto it = req.find(key);
  if (it == req.end() || it->is_null()) return fallback;
  if (!it->is_number()) bad_request(std::string("'") + key + "' must be a number");
  return it->get<double>();
}

std::optional<int> opt_int(const Json& req, const char* key) {
  auto it = req.find(key);
  if (it == req.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) bad_request(std::string("'") + key + "' must be an integer");
  return it->get<int>();
}

std::uint64_t opt_seed(const Json& req, std::uint64_t fallback) {
  auto it = req.find("seed");
  if (it == req.end() || it->is_null()) return fallback;
  if (!it->is_number_integer() || (!it->is_number_unsigned() && it->get<std::int64_t>() < 0))
    bad_request("'seed' must be a nonnegative integer");
  return it->get<std::uint64_t>();
}

std::vector<std::string> metric_list(const Json& req, const std::vector<std::string>& fallback) {
  auto it = req.find("metrics");
  if (it == req.end() || it->is_null()) return fallback;
  std::vector<std::string> out;
  if (it->is_string()) {
    for (const auto& name : split(it->get<std::string>(), ','))
      if (!trim(name).empty()) out.emplace_back(trim(name));
  } else if (it->is_array()) {
    for (const auto& v : *it) {
      if (!v.is_string()) bad_request("'metrics' must list metric names");
      out.push_back(v.get<std::string>());
    }
  } else {
    bad_request("'metrics' must be a list or a comma-separated string");
  }
  return out.empty() ? fallback : out;
}

bool wants_csv(const Json& req) {
  const auto format = opt_string(req, "format").value_or("json");
  if (format == "csv") return true;
  if (format != "json") bad_request("'format' must be json or csv");
  return false;
}

Level level_of(const Json& req, Level fallback) {
  const auto text = opt_string(req, "level");
  return text ? parse_level(*text) : fallback;
}

const CriterionRanking& criterion_for(const Corpus& corpus, const std::string& discipline) {
  if (!corpus.has_discipline(discipline))
    throw Error(ErrorCode::not_found, "unknown discipline '" + discipline + "'");
  const auto* c = corpus.criterion(discipline);
  if (!c)
    throw Error(ErrorCode::unprocessable,
                "no criterion ranking for discipline '" + discipline + "'");
  return *c;
}

MonthWindow window_from(const Json& req, const char* text_key, const char* from_key,
                        const char* to_key, MonthWindow fallback) {
  if (auto text = opt_string(req, text_key)) return parse_month_window(*text);
  MonthWindow w = fallback;
  if (auto from = opt_int(req, from_key)) w.start = *from;
  if (req.contains(to_key)) w.end = opt_int(req, to_key);
  return w;
}

OpOutput json_output(const Json& j) { return {dump(j), "application/json"}; }

RegressionModel fit_for(const Session& s, const std::string& discipline,
                        const std::vector<std::string>& metrics, double ridge) {
  const auto& criterion = criterion_for(s.corpus(), discipline);
  return fit_regression(*s.matrix(discipline, Level::unit, metrics), criterion, ridge);
}

std::map<std::string, double> constraints_of(const Json& req) {
  std::map<std::string, double> out;
  auto it = req.find("constraints");
  if (it == req.end() || it->is_null()) return out;
  if (it->is_string()) {
    // same text form as weights: name:value,...
    const auto w = parse_weights(it->get<std::string>());
    for (std::size_t i = 0; i < w.metric_names.size(); ++i) out[w.metric_names[i]] = w.weights[i];
    return out;
  }
  if (!it->is_object()) bad_request("'constraints' must map metric names to betas");
  for (const auto& [name, value] : it->items()) {
    if (!value.is_number()) bad_request("constraint on '" + name + "' must be a number");
    out[name] = value.get<double>();
  }
  return out;
}

WeightVector weights_of(const Json& value) {
  if (value.is_string()) return parse_weights(value.get<std::string>());
  if (!value.is_object()) bad_request("'weights' must be name:w text or an object");
  WeightVector w;
  for (const auto& [name, v] : value.items()) {
    if (!v.is_number()) bad_request("weight on '" + name + "' must be a number");
    if (!is_known_metric(name)) bad_request("unknown metric '" + name + "'");
    w.metric_names.push_back(name);
    w.weights.push_back(v.get<double>());
  }
  if (w.metric_names.empty()) bad_request("no weights given");
  return w;
}

std::string correlator_csv(const CorrelatorResult& r) {
  std::string out = "paper_id,downloads,citations\n";
  for (const auto& p : r.points)
    out += p.paper_id + "," + std::to_string(p.downloads) + "," + std::to_string(p.citations) + "\n";
  return out;
}

Json error_json(const Error& e) {
  return {{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
}

OpOutput op_metrics(const Session& s, const Json& req) {
  check_keys(req, {"discipline", "level", "metrics", "format"});
  const auto discipline = required_string(req, "discipline");
  const auto m = s.matrix(discipline, level_of(req, Level::unit), metric_list(req, {}));
  if (wants_csv(req)) return {m->to_csv(), "text/csv"};
  return json_output(to_json(*m));
}

OpOutput op_fit(const Session& s, const Json& req) {
  check_keys(req, {"discipline", "metrics", "ridge_lambda", "cross_validate"});
  const auto discipline = required_string(req, "discipline");
  const auto metrics = metric_list(req, core_battery());
  const double ridge = opt_number(req, "ridge_lambda", kDefaultRidge);
  auto j = to_json(fit_for(s, discipline, metrics, ridge));
  auto cv = req.find("cross_validate");
  if (cv != req.end() && !cv->is_null()) {
    if (!cv->is_boolean()) bad_request("'cross_validate' must be true or false");
    if (cv->get<bool>())
      j["cross_validation"] = to_json(cross_validate(
          *s.matrix(discipline, Level::unit, metrics), criterion_for(s.corpus(), discipline), ridge));
  }
  return json_output(j);
}

OpOutput op_calibrate(const Session& s, const Json& req) {
  check_keys(req, {"discipline", "metrics", "ridge_lambda", "constraints"});
  const auto discipline = required_string(req, "discipline");
  const auto metrics = metric_list(req, core_battery());
  const double ridge = opt_number(req, "ridge_lambda", kDefaultRidge);
  const auto constraints = constraints_of(req);
  for (const auto& [name, value] : constraints)
    if (!is_known_metric(name)) bad_request("unknown metric '" + name + "'");
  const auto model = fit_for(s, discipline, metrics, ridge);
  const auto refit = constrained_refit(model, *s.matrix(discipline, Level::unit, metrics),
                                       criterion_for(s.corpus(), discipline), constraints);
  return json_output(to_json(refit));
}

OpOutput op_rank(const Session& s, const Json& req) {
  check_keys(req, {"discipline", "weights", "metric", "format"});
  const auto discipline = required_string(req, "discipline");
  if (!s.corpus().has_discipline(discipline))
    throw Error(ErrorCode::not_found, "unknown discipline '" + discipline + "'");
  const auto* criterion = s.corpus().criterion(discipline);
  const auto metric = opt_string(req, "metric");
  const bool has_weights = req.contains("weights") && !req["weights"].is_null();
  if (metric.has_value() == has_weights) bad_request("give exactly one of 'weights' or 'metric'");
  RankingResult result;
  if (metric) {
    const std::vector<std::string> names = {*metric};
    result = univariate_rank(*s.matrix(discipline, Level::unit, names), *metric, criterion);
  } else {
    const auto w = weights_of(req["weights"]);
    result = composite_rank(zscore(*s.matrix(discipline, Level::unit, w.metric_names)), w,
                            criterion);
  }
  if (wants_csv(req)) return {result.to_csv(), "text/csv"};
  return json_output(to_json(result));
}

OpOutput op_correlate(const Session& s, const Json& req) {
  check_keys(req, {"dl_window", "cit_window", "dl_from", "dl_to", "cit_from", "cit_to", "format"});
  const auto dl = window_from(req, "dl_window", "dl_from", "dl_to", kDefaultDownloadWindow);
  const auto cit = window_from(req, "cit_window", "cit_from", "cit_to", kDefaultCitationWindow);
  const auto result = download_citation_correlator(s.corpus(), dl, cit);
  if (wants_csv(req)) return {correlator_csv(result), "text/csv"};
  return json_output(to_json(result));
}

OpOutput op_reliability(const Session& s, const Json& req) {
  check_keys(req, {"kind", "metric", "seed", "window1", "window2", "level"});
  const auto kind = opt_string(req, "kind").value_or("split_half");
  const auto metric = opt_string(req, "metric").value_or("citation_count");
  Json j;
  if (kind == "split_half") {
    if (req.contains("window1") || req.contains("window2"))
      bad_request("windows apply to test_retest only");
    j = to_json(split_half_reliability(s.corpus(), metric, opt_seed(req, 42)));
  } else if (kind == "test_retest") {
    const auto w1 = opt_string(req, "window1");
    const auto w2 = opt_string(req, "window2");
    if (!w1 || !w2) bad_request("test_retest needs 'window1' and 'window2'");
    j = to_json(test_retest_reliability(s.corpus(), metric, parse_date_range(*w1),
                                        parse_date_range(*w2), level_of(req, Level::author)));
    j["window1"] = *w1;
    j["window2"] = *w2;
  } else {
    bad_request("'kind' must be split_half or test_retest");
  }
  j["kind"] = kind;
  return json_output(j);
}

OpOutput op_factor(const Session& s, const Json& req) {
  check_keys(req, {"discipline", "metrics", "level"});
  const auto discipline = required_string(req, "discipline");
  const auto m = s.matrix(discipline, level_of(req, Level::unit), metric_list(req, core_battery()));
  auto j = to_json(factor_analysis(*m));
  j["discipline_id"] = discipline;
  return json_output(j);
}

Json oa_for_all(const Corpus& corpus) {
  Json out = Json::array();
  for (const auto& d : corpus.disciplines()) {
    try {
      out.push_back(to_json(oa_advantage(corpus, d)));
    } catch (const Error& e) {
      Json j = error_json(e);
      j["discipline_id"] = d;
      out.push_back(std::move(j));
    }
  }
  return out;
}

OpOutput op_oa(const Session& s, const Json& req) {
  check_keys(req, {"discipline"});
  if (auto d = opt_string(req, "discipline")) return json_output(to_json(oa_advantage(s.corpus(), *d)));
  return json_output(oa_for_all(s.corpus()));
}

OpOutput op_validate(const Session& s, const Json& req) {
  check_keys(req, {});
  Json j;
  j["validation"] = to_json(validate_corpus(s.corpus()));
  j["load_report"] = to_json(s.load_report());
  return json_output(j);
}

// Runs one report section; a failure becomes an error entry instead of
// aborting the whole report.
template <typename Fn>
Json section(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return error_json(e);
  }
}

}  // namespace

Json report_json(const Session& s, const Json& req) {
  check_keys(req, {"discipline", "seed", "metrics", "ridge_lambda"});
  const Corpus& corpus = s.corpus();
  const std::uint64_t seed = opt_seed(req, 42);
  const auto metrics = metric_list(req, core_battery());
  const double ridge = opt_number(req, "ridge_lambda", kDefaultRidge);
  std::vector<std::string> disciplines = corpus.disciplines();
  if (auto d = opt_string(req, "discipline")) {
    if (!corpus.has_discipline(*d)) throw Error(ErrorCode::not_found, "unknown discipline '" + *d + "'");
    disciplines = {*d};
  }

  Json j;
  j["summary"] = corpus_summary(corpus);
  j["validation"] = to_json(validate_corpus(corpus));
  j["settings"] = {{"metrics", metrics}, {"ridge_lambda", real_json(ridge)}, {"seed", seed}};
  Json per = Json::array();
  for (const auto& d : disciplines) {
    Json dj;
    dj["discipline_id"] = d;
    dj["metrics"] = section([&] { return to_json(*s.matrix(d, Level::unit, metrics)); });
    dj["model"] = section([&] {
      const auto model = fit_for(s, d, metrics, ridge);
      Json mj = to_json(model);
      mj["cross_validation"] = section([&] {
        Json cv = to_json(cross_validate(*s.matrix(d, Level::unit, metrics),
                                         criterion_for(corpus, d), ridge));
        cv.erase("folds");
        return cv;
      });
      return mj;
    });
    dj["calibration"] = section([&]() -> Json {
      const auto model = fit_for(s, d, metrics, ridge);
      if (!model.beta_of("prior_funding")) return {{"skipped", "prior_funding not in the model"}};
      const auto refit = constrained_refit(model, *s.matrix(d, Level::unit, metrics),
                                           criterion_for(corpus, d), {{"prior_funding", 0.0}});
      Json cj;
      cj["constraints"] = {{"prior_funding", 0.0}};
      cj["metric_names"] = refit.metric_names;
      cj["beta"] = to_json(refit)["beta"];
      cj["r_squared"] = real_json(refit.r_squared);
      cj["unconstrained_r_squared"] = real_json(model.r_squared);
      return cj;
    });
    dj["factor"] = section([&] { return to_json(factor_analysis(*s.matrix(d, Level::unit, metrics))); });
    dj["citation_ranking"] = section([&] {
      const std::vector<std::string> names = {"citation_count"};
      return to_json(univariate_rank(*s.matrix(d, Level::unit, names), "citation_count",
                                     corpus.criterion(d)));
    });
    dj["oa_advantage"] = section([&] { return to_json(oa_advantage(corpus, d)); });
    per.push_back(std::move(dj));
  }
  j["disciplines"] = std::move(per);
  j["correlator"] = section([&] {
    Json c = to_json(download_citation_correlator(corpus));
    c.erase("points");
    return c;
  });
  j["reliability"] = section([&] {
    Json r = to_json(split_half_reliability(corpus, "citation_count", seed));
    r["kind"] = "split_half";
    return r;
  });
  return j;
}

namespace {

std::string num(const Json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_number_float()) return format9(v.get<double>());
  return v.dump();
}

bool failed(const Json& j, std::ostringstream& out, const char* label) {
  if (j.is_object() && j.contains("error")) {
    out << "  " << label << ": unavailable (" << j["error"]["message"].get<std::string>() << ")\n";
    return true;
  }
  return false;
}

}  // namespace

std::string report_text(const Json& r) {
  std::ostringstream out;
  const auto& sm = r["summary"];
  out << "Corpus: " << sm["papers"] << " papers, " << sm["authors"] << " authors, "
      << sm["units"] << " units, " << sm["journals"] << " journals, " << sm["downloads"]
      << " downloads, " << sm["citation_edges"] << " citations\n";
  out << "Snapshot date: "
      << (sm["snapshot_date"].is_null() ? "n/a" : sm["snapshot_date"].get<std::string>()) << "\n";
  const auto& v = r["validation"];
  out << "Validation: " << (v["clean"].get<bool>() ? "clean" : "findings") << " (anachronistic "
      << v["anachronistic_edges"] << ", orphan authors " << v["orphan_authors"]
      << ", units without papers " << v["units_without_papers"] << ", unattributed submissions "
      << v["unattributed_submissions"] << ")\n";
  const auto& c = r["correlator"];
  if (c.contains("error"))
    out << "Download/citation correlator: unavailable (" << c["error"]["message"].get<std::string>()
        << ")\n";
  else
    out << "Download/citation correlator: r = " << num(c["r"]) << " over " << c["n"] << " papers\n";
  const auto& rel = r["reliability"];
  if (rel.contains("error"))
    out << "Split-half reliability: unavailable (" << rel["error"]["message"].get<std::string>()
        << ")\n";
  else
    out << "Split-half reliability (citation_count, seed " << rel["seed"]
        << "): raw r = " << num(rel["raw_r"]) << ", Spearman-Brown r = "
        << num(rel["spearman_brown_r"]) << ", n = " << rel["n"] << "\n";

  for (const auto& d : r["disciplines"]) {
    out << "\nDiscipline " << d["discipline_id"].get<std::string>() << "\n";
    const auto& m = d["model"];
    if (!failed(m, out, "Regression")) {
      out << "  Regression: R^2 = " << num(m["r_squared"]) << ", adjusted R^2 = "
          << num(m["adjusted_r_squared"]) << ", condition number = "
          << num(m["condition_number"]) << ", n = " << m["n"] << "\n";
      for (std::size_t i = 0; i < m["metric_names"].size(); ++i)
        out << "    beta " << m["metric_names"][i].get<std::string>() << " = "
            << num(m["beta"][i]) << "\n";
      if (!m["dropped_columns"].empty()) out << "    dropped: " << m["dropped_columns"].dump() << "\n";
      const auto& cv = m["cross_validation"];
      if (!failed(cv, out, "Leave-one-out"))
        out << "  Leave-one-out Spearman: " << num(cv["mean_oos_spearman"]) << "\n";
    }
    const auto& cal = d["calibration"];
    if (!failed(cal, out, "Calibration")) {
      if (cal.contains("skipped"))
        out << "  Calibration: skipped (" << cal["skipped"].get<std::string>() << ")\n";
      else
        out << "  Calibration (prior_funding beta = 0): R^2 = " << num(cal["r_squared"])
            << " vs " << num(cal["unconstrained_r_squared"]) << " unconstrained\n";
    }
    const auto& f = d["factor"];
    if (!failed(f, out, "Factor analysis")) {
      out << "  Factor analysis: first factor explains " << num(f["variance_explained"][0])
          << " of variance; g loadings";
      for (std::size_t i = 0; i < f["metric_names"].size(); ++i)
        out << " " << f["metric_names"][i].get<std::string>() << "=" << num(f["g_loadings"][i]);
      out << "\n";
    }
    const auto& rk = d["citation_ranking"];
    if (!failed(rk, out, "Citation ranking")) {
      out << "  Citation ranking: Spearman vs criterion = " << num(rk["spearman_vs_criterion"])
          << "; top:";
      for (std::size_t i = 0; i < std::min<std::size_t>(5, rk["rows"].size()); ++i)
        out << " " << rk["rows"][i]["unit_id"].get<std::string>();
      out << "\n";
    }
    const auto& oa = d["oa_advantage"];
    if (!failed(oa, out, "OA advantage"))
      out << "  OA advantage: ratio = " << num(oa["ratio"]) << " over " << oa["n_pairs"]
          << " journal-year cells\n";
  }
  return out.str();
}

OpOutput run_op(const Session& session, std::string_view op, const Json& request) {
  const Json& req = request.is_null() ? Json::object() : request;
  if (op == "summary") {
    check_keys(req, {});
    return json_output(corpus_summary(session.corpus()));
  }
  if (op == "validate") return op_validate(session, req);
  if (op == "load_report") {
    check_keys(req, {});
    return json_output(to_json(session.load_report()));
  }
  if (op == "metrics") return op_metrics(session, req);
  if (op == "fit") return op_fit(session, req);
  if (op == "calibrate") return op_calibrate(session, req);
  if (op == "rank") return op_rank(session, req);
  if (op == "correlate") return op_correlate(session, req);
  if (op == "reliability") return op_reliability(session, req);
  if (op == "factor") return op_factor(session, req);
  if (op == "oa_advantage") return op_oa(session, req);
  if (op == "report") return json_output(report_json(session, req));
  throw Error(ErrorCode::not_found, "unknown operation '" + std::string(op) + "'");
}

}  // namespace scim
