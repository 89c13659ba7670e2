// The extern-C surface: status codes, ownership and parity of the wrappers.

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "scimetrics/scimetrics.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { scim_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Handle {
  scim_session* s = nullptr;
  ~Handle() { scim_session_close(s); }
};

constexpr const char* kConfig =
    "{\"seed\": 11, \"n_units\": 16, \"authors_per_unit\": 3, \"papers_per_author\": 5}";

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

// Generates once per process and opens a session on it.
const fs::path& corpus_dir() {
  static const fs::path dir = [] {
    auto d = fresh_dir("scim_capi_corpus");
    REQUIRE(scim_generate(kConfig, d.c_str()) == SCIM_OK);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(scim_version()) > 0);
  CHECK(std::string(scim_status_name(SCIM_OK)) == "ok");
  CHECK(std::string(scim_status_name(SCIM_ERR_INVALID_ARGUMENT)) == "invalid_argument");
  CHECK(std::string(scim_status_name(SCIM_ERR_NOT_FOUND)) == "not_found");
  CHECK(std::string(scim_status_name(SCIM_ERR_UNPROCESSABLE)) == "unprocessable");
  CHECK(std::string(scim_status_name(SCIM_ERR_PARSE)) == "parse");
  CHECK(std::string(scim_status_name(SCIM_ERR_IO)) == "io");
  CHECK(std::string(scim_status_name(SCIM_ERR_UNAVAILABLE)) == "unavailable");
  CHECK(std::string(scim_status_name(SCIM_ERR_INTERNAL)) == "internal");
  CHECK(std::string(scim_status_name(static_cast<scim_status>(99))) == "unknown");
  scim_string_free(nullptr);
  scim_session_close(nullptr);
}

TEST_CASE("default config round-trips through the generator") {
  Owned config;
  REQUIRE(scim_default_config(&config.p) == SCIM_OK);
  const auto j = Json::parse(config.str());
  CHECK(j.at("seed") == 42);
  CHECK(scim_default_config(nullptr) == SCIM_ERR_INVALID_ARGUMENT);

  CHECK(scim_generate("{\"n_unit\": 3}", fresh_dir("scim_capi_bad").c_str()) ==
        SCIM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(scim_last_error()).find("n_unit") != std::string::npos);
  CHECK(scim_generate(nullptr, nullptr) == SCIM_ERR_INVALID_ARGUMENT);

  const auto a = fresh_dir("scim_capi_gen_a");
  const auto b = fresh_dir("scim_capi_gen_b");
  REQUIRE(scim_generate(kConfig, a.c_str()) == SCIM_OK);
  CHECK(std::string(scim_last_error()).empty());
  REQUIRE(scim_generate(kConfig, b.c_str()) == SCIM_OK);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    CAPTURE(entry.path().filename().string());
    CHECK(read_file(entry.path()) == read_file(b / entry.path().filename()));
    ++files;
  }
  CHECK(files >= 5);
  CHECK(fs::exists(a / "truth.json"));
}

TEST_CASE("sessions open, fail cleanly and close") {
  Handle h;
  REQUIRE(scim_session_open(corpus_dir().c_str(), nullptr, &h.s) == SCIM_OK);
  REQUIRE(h.s != nullptr);

  scim_session* missing = nullptr;
  CHECK(scim_session_open("/nonexistent/scim", nullptr, &missing) == SCIM_ERR_IO);
  CHECK(missing == nullptr);
  CHECK(std::strlen(scim_last_error()) > 0);
  CHECK(scim_session_open(corpus_dir().c_str(), "2004-13-40", &missing) ==
        SCIM_ERR_INVALID_ARGUMENT);
  CHECK(scim_session_open(nullptr, nullptr, &missing) == SCIM_ERR_INVALID_ARGUMENT);

  Handle early;
  REQUIRE(scim_session_open(corpus_dir().c_str(), "2004-01-01", &early.s) == SCIM_OK);
  Owned full, cut;
  REQUIRE(scim_summary(h.s, &full.p) == SCIM_OK);
  REQUIRE(scim_summary(early.s, &cut.p) == SCIM_OK);
  CHECK(Json::parse(cut.str())["papers"] < Json::parse(full.str())["papers"]);
  CHECK(Json::parse(cut.str())["snapshot_date"] == "2004-01-01");
}

TEST_CASE("named wrappers equal scim_run") {
  Handle h;
  REQUIRE(scim_session_open(corpus_dir().c_str(), nullptr, &h.s) == SCIM_OK);
  Owned summary;
  REQUIRE(scim_summary(h.s, &summary.p) == SCIM_OK);
  const auto sj = Json::parse(summary.str());
  CHECK(sj["units"] == 16);
  CHECK(sj["authors"] == 48);
  CHECK(sj["papers"] == 240);
  const std::string d = sj["disciplines"][0];
  const std::string req = "{\"discipline\":\"" + d + "\"}";

  using Wrapper = scim_status (*)(const scim_session*, const char*, char**);
  const struct {
    const char* op;
    Wrapper fn;
    std::string request;
  } cases[] = {
      {"metrics", scim_metrics, req},
      {"fit", scim_fit, req},
      {"calibrate", scim_calibrate, req},
      {"rank", scim_rank, "{\"discipline\":\"" + d + "\",\"weights\":\"citation_count:1\"}"},
      {"correlate", scim_correlate, "{}"},
      {"reliability", scim_reliability, "{\"seed\": 3}"},
      {"factor", scim_factor, req},
      {"oa_advantage", scim_oa_advantage, ""},
  };
  for (const auto& c : cases) {
    CAPTURE(c.op);
    Owned named, run, type;
    REQUIRE(c.fn(h.s, c.request.c_str(), &named.p) == SCIM_OK);
    REQUIRE(scim_run(h.s, c.op, c.request.c_str(), &run.p, &type.p) == SCIM_OK);
    CHECK(named.str() == run.str());
    CHECK(type.str() == "application/json");
    CHECK(Json::accept(named.str()));
  }

  Owned validate, run_validate;
  REQUIRE(scim_validate(h.s, &validate.p) == SCIM_OK);
  REQUIRE(scim_run(h.s, "validate", nullptr, &run_validate.p, nullptr) == SCIM_OK);
  CHECK(validate.str() == run_validate.str());

  Owned csv, type;
  REQUIRE(scim_run(h.s, "rank",
                   ("{\"discipline\":\"" + d + "\",\"metric\":\"h_index\",\"format\":\"csv\"}").c_str(),
                   &csv.p, &type.p) == SCIM_OK);
  CHECK(type.str() == "text/csv");
  CHECK(csv.str().rfind("unit_id,score,rank\n", 0) == 0);

  Owned fit, calibrated;
  REQUIRE(scim_fit(h.s, req.c_str(), &fit.p) == SCIM_OK);
  REQUIRE(scim_calibrate(h.s,
                         ("{\"discipline\":\"" + d + "\",\"constraints\":{\"prior_funding\":0}}").c_str(),
                         &calibrated.p) == SCIM_OK);
  const auto fj = Json::parse(fit.str());
  const auto cj = Json::parse(calibrated.str());
  CHECK(cj["r_squared"].get<double>() <= fj["r_squared"].get<double>());
  for (std::size_t i = 0; i < cj["metric_names"].size(); ++i)
    if (cj["metric_names"][i] == "prior_funding") CHECK(cj["beta"][i].get<double>() == 0.0);
}

TEST_CASE("errors carry status and message") {
  Handle h;
  REQUIRE(scim_session_open(corpus_dir().c_str(), nullptr, &h.s) == SCIM_OK);
  Owned out;
  CHECK(scim_run(h.s, "divine", nullptr, &out.p, nullptr) == SCIM_ERR_NOT_FOUND);
  CHECK(std::string(scim_last_error()).find("divine") != std::string::npos);
  CHECK(out.p == nullptr);
  CHECK(scim_fit(h.s, "{\"discipline\":", &out.p) == SCIM_ERR_INVALID_ARGUMENT);
  CHECK(scim_fit(h.s, "{\"discipline\":\"alchemy\"}", &out.p) == SCIM_ERR_NOT_FOUND);
  CHECK(scim_fit(h.s, "{}", &out.p) == SCIM_ERR_INVALID_ARGUMENT);
  CHECK(scim_rank(h.s, "{\"discipline\":\"physics\",\"weights\":\"h_index:x\"}", &out.p) ==
        SCIM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(scim_last_error()).find("h_index:x") != std::string::npos);
  CHECK(scim_summary(nullptr, &out.p) == SCIM_ERR_INVALID_ARGUMENT);
  CHECK(scim_summary(h.s, nullptr) == SCIM_ERR_INVALID_ARGUMENT);
  CHECK(scim_serve(h.s, "127.0.0.1", 70000, nullptr) == SCIM_ERR_INVALID_ARGUMENT);
  CHECK(out.p == nullptr);

  // a success clears the previous message
  REQUIRE(scim_summary(h.s, &out.p) == SCIM_OK);
  CHECK(std::string(scim_last_error()).empty());
}

TEST_CASE("export writes a corpus that reloads identically") {
  Handle h;
  REQUIRE(scim_session_open(corpus_dir().c_str(), nullptr, &h.s) == SCIM_OK);
  const auto dir = fresh_dir("scim_capi_export");
  REQUIRE(scim_export_corpus(h.s, dir.c_str()) == SCIM_OK);
  Handle again;
  REQUIRE(scim_session_open(dir.c_str(), nullptr, &again.s) == SCIM_OK);
  Owned a, b;
  REQUIRE(scim_summary(h.s, &a.p) == SCIM_OK);
  REQUIRE(scim_summary(again.s, &b.p) == SCIM_OK);
  CHECK(a.str() == b.str());
  CHECK(scim_export_corpus(nullptr, dir.c_str()) == SCIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("report returns JSON and text") {
  Handle h;
  REQUIRE(scim_session_open(corpus_dir().c_str(), nullptr, &h.s) == SCIM_OK);
  Owned json, text;
  REQUIRE(scim_report(h.s, nullptr, &json.p, &text.p) == SCIM_OK);
  Owned via_run;
  REQUIRE(scim_run(h.s, "report", nullptr, &via_run.p, nullptr) == SCIM_OK);
  CHECK(json.str() == via_run.str());
  CHECK(text.str().find("R^2") != std::string::npos);
  Owned text_only;
  REQUIRE(scim_report(h.s, "{}", nullptr, &text_only.p) == SCIM_OK);
  CHECK(text_only.str() == text.str());
  CHECK(scim_report(h.s, "{\"bogus\":1}", &json.p, nullptr) == SCIM_ERR_INVALID_ARGUMENT);
}
