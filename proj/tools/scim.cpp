// scim: command-line driver over the scimetrics C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "scimetrics/scimetrics.h"

namespace {

using Json = nlohmann::ordered_json;

// Exit codes: 0 success, 1 validation or computation failure, 2 usage error
// or missing files.
int exit_code(scim_status s) {
  switch (s) {
    case SCIM_OK: return 0;
    case SCIM_ERR_INVALID_ARGUMENT:
    case SCIM_ERR_IO: return 2;
    default: return 1;
  }
}

struct Failure {
  scim_status status;
};

void check(scim_status s) {
  if (s != SCIM_OK) throw Failure{s};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { scim_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct SessionHandle {
  scim_session* s = nullptr;
  ~SessionHandle() { scim_session_close(s); }
};

struct Options {
  std::string in;
  std::string out;
  std::string snapshot;
  std::string discipline;
  std::string metrics;
  std::string level;
  std::string format = "json";
  std::optional<double> ridge;
  std::optional<std::uint64_t> seed;
  std::string dl_window;
  std::string cit_window;
  std::string weights;
  std::string metric;
  std::string constraints;
  std::string kind = "split_half";
  std::string window1;
  std::string window2;
  std::string listen = "127.0.0.1:8080";
  std::string static_dir;
  std::string params;
  bool cross_validate = false;
  Json generator = Json::object();
};

void open_session(const Options& o, SessionHandle& h) {
  check(scim_session_open(o.in.c_str(), o.snapshot.empty() ? nullptr : o.snapshot.c_str(), &h.s));
}

void put_if(Json& j, const char* key, const std::string& value) {
  if (!value.empty()) j[key] = value;
}

// Runs one operation and prints its body on stdout.
void run_and_print(const Options& o, const char* op, const Json& request) {
  SessionHandle h;
  open_session(o, h);
  OwnedString out;
  check(scim_run(h.s, op, request.dump().c_str(), &out.p, nullptr));
  std::fputs(out.p, stdout);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.string().c_str());
    throw Failure{SCIM_ERR_IO};
  }
}

void cmd_generate(const Options& o) {
  Json config = Json::object();
  if (!o.params.empty()) {
    std::ifstream f(o.params);
    if (!f) {
      std::fprintf(stderr, "error: cannot read '%s'\n", o.params.c_str());
      throw Failure{SCIM_ERR_IO};
    }
    try {
      config = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      std::fprintf(stderr, "error: %s: %s\n", o.params.c_str(), e.what());
      throw Failure{SCIM_ERR_INVALID_ARGUMENT};
    }
  }
  for (const auto& [k, v] : o.generator.items()) config[k] = v;  // flags win over the file
  if (o.seed) config["seed"] = *o.seed;
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create '%s': %s\n", o.out.c_str(), ec.message().c_str());
    throw Failure{SCIM_ERR_IO};
  }
  check(scim_generate(config.dump().c_str(), o.out.c_str()));
  std::fprintf(stderr, "wrote corpus to %s\n", o.out.c_str());
}

void cmd_ingest(const Options& o) {
  SessionHandle h;
  open_session(o, h);
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    check(scim_export_corpus(h.s, o.out.c_str()));
  }
  OwnedString out;
  check(scim_run(h.s, "load_report", nullptr, &out.p, nullptr));
  std::fputs(out.p, stdout);
}

void cmd_validate(const Options& o) {
  SessionHandle h;
  open_session(o, h);
  OwnedString out;
  check(scim_validate(h.s, &out.p));
  std::fputs(out.p, stdout);
  const auto j = Json::parse(out.str());
  if (!j["validation"]["clean"].get<bool>() || !j["load_report"]["issues"].empty())
    throw Failure{SCIM_ERR_UNPROCESSABLE};
}

void cmd_report(const Options& o) {
  Json req = Json::object();
  put_if(req, "discipline", o.discipline);
  put_if(req, "metrics", o.metrics);
  if (o.ridge) req["ridge_lambda"] = *o.ridge;
  if (o.seed) req["seed"] = *o.seed;
  SessionHandle h;
  open_session(o, h);
  OwnedString json, text;
  check(scim_report(h.s, req.dump().c_str(), &json.p, &text.p));
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    write_file(std::filesystem::path(o.out) / "report.json", json.str());
    write_file(std::filesystem::path(o.out) / "report.txt", text.str());
  }
  std::fputs(text.p, stdout);
}

void cmd_serve(const Options& o) {
  const auto colon = o.listen.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    std::fprintf(stderr, "error: --listen must be host:port\n");
    throw Failure{SCIM_ERR_INVALID_ARGUMENT};
  }
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(o.listen.substr(colon + 1), &used);
    if (used != o.listen.size() - colon - 1) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    std::fprintf(stderr, "error: bad port in --listen '%s'\n", o.listen.c_str());
    throw Failure{SCIM_ERR_INVALID_ARGUMENT};
  }
  SessionHandle h;
  open_session(o, h);
  const std::string host = o.listen.substr(0, colon);
  std::fprintf(stderr, "serving on http://%s:%d/\n", host.c_str(), port);
  check(scim_serve(h.s, host.c_str(), port, o.static_dir.empty() ? nullptr : o.static_dir.c_str()));
}

CLI::App* corpus_command(CLI::App& app, const char* name, const char* help, Options& o) {
  auto* cmd = app.add_subcommand(name, help);
  cmd->add_option("--in", o.in, "corpus directory")->required();
  cmd->add_option("--snapshot", o.snapshot, "snapshot date YYYY-MM-DD (default: latest)");
  return cmd;
}

template <typename T>
void generator_flag(CLI::App* cmd, Options& o, const std::string& flag, const std::string& key,
                    const std::string& help) {
  cmd->add_option_function<T>(flag, [&o, key](const T& v) { o.generator[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scientometric ranking and validation engine"};
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(scim_version()));
  Options o;

  auto* gen = app.add_subcommand("generate", "write a synthetic corpus with planted ground truth");
  gen->add_option("--out", o.out, "output directory")->required();
  gen->add_option("--seed", o.seed, "random seed");
  gen->add_option("--params", o.params, "JSON generator settings");
  generator_flag<int>(gen, o, "--units", "n_units", "number of units");
  generator_flag<int>(gen, o, "--authors-per-unit", "authors_per_unit", "authors per unit");
  generator_flag<int>(gen, o, "--papers-per-author", "papers_per_author", "papers per author");
  generator_flag<int>(gen, o, "--disciplines", "n_disciplines", "number of disciplines");
  generator_flag<double>(gen, o, "--noise", "noise_sigma", "metric noise sigma");
  generator_flag<double>(gen, o, "--oa-fraction", "oa_fraction", "share of OA papers");
  generator_flag<double>(gen, o, "--oa-multiplier", "oa_citation_multiplier",
                         "citation multiplier of OA papers");
  generator_flag<double>(gen, o, "--coupling", "dl_cit_coupling",
                         "correlation of early downloads with later citations");
  generator_flag<int>(gen, o, "--years", "years", "publication span in years");
  generator_flag<int>(gen, o, "--start-year", "start_year", "first publication year");

  auto* ingest = corpus_command(app, "ingest", "load a corpus and print its load report", o);
  ingest->add_option("--out", o.out, "write the canonical corpus here");

  corpus_command(app, "validate", "check corpus integrity (exit 1 on findings)", o);

  auto* metrics = corpus_command(app, "metrics", "print a metric matrix", o);
  metrics->add_option("--discipline", o.discipline, "discipline id")->required();
  metrics->add_option("--level", o.level, "unit, author or paper (default unit)");
  metrics->add_option("--metrics", o.metrics, "comma-separated metric names (default: all)");
  metrics->add_option("--format", o.format, "json or csv");

  auto* fit = corpus_command(app, "fit", "fit the criterion regression", o);
  fit->add_option("--discipline", o.discipline, "discipline id")->required();
  fit->add_option("--metrics", o.metrics, "comma-separated predictors");
  fit->add_option("--ridge", o.ridge, "ridge lambda");
  fit->add_flag("--cv", o.cross_validate, "add leave-one-out cross-validation");

  auto* cal = corpus_command(app, "calibrate", "refit with fixed betas", o);
  cal->add_option("--discipline", o.discipline, "discipline id")->required();
  cal->add_option("--metrics", o.metrics, "comma-separated predictors");
  cal->add_option("--ridge", o.ridge, "ridge lambda");
  cal->add_option("--constraints", o.constraints, "name:beta,... (e.g. prior_funding:0)");

  auto* rank = corpus_command(app, "rank", "rank units by weighted metrics or one metric", o);
  rank->add_option("--discipline", o.discipline, "discipline id")->required();
  auto* w = rank->add_option("--weights", o.weights, "name:w,... (L1-normalized)");
  auto* m = rank->add_option("--metric", o.metric, "single metric");
  w->excludes(m);
  rank->add_option("--format", o.format, "json or csv");

  auto* cor = corpus_command(app, "correlate", "early downloads vs later citations", o);
  cor->add_option("--dl-window", o.dl_window, "download months a:b (default 0:6)");
  cor->add_option("--cit-window", o.cit_window, "citation months c: or c:d (default 12:)");
  cor->add_option("--format", o.format, "json or csv");

  auto* rel = corpus_command(app, "reliability", "split-half or test-retest reliability", o);
  rel->add_option("--kind", o.kind, "split_half or test_retest");
  rel->add_option("--metric", o.metric, "metric (default citation_count)");
  rel->add_option("--seed", o.seed, "split seed");
  rel->add_option("--window1", o.window1, "first window YYYY-MM-DD:YYYY-MM-DD");
  rel->add_option("--window2", o.window2, "second window YYYY-MM-DD:YYYY-MM-DD");
  rel->add_option("--level", o.level, "entity level for test_retest (default author)");

  auto* fac = corpus_command(app, "factor", "principal components of a metric battery", o);
  fac->add_option("--discipline", o.discipline, "discipline id")->required();
  fac->add_option("--metrics", o.metrics, "comma-separated metric names");
  fac->add_option("--level", o.level, "unit, author or paper (default unit)");

  auto* oa = corpus_command(app, "oa-advantage", "OA vs non-OA citation ratio", o);
  oa->add_option("--discipline", o.discipline, "discipline id (default: all)");

  auto* serve = corpus_command(app, "serve", "serve the HTTP API", o);
  serve->add_option("--listen", o.listen, "host:port")->capture_default_str();
  serve->add_option("--static-dir", o.static_dir, "directory served at /");

  auto* rep = corpus_command(app, "report", "full run summary (text; JSON and text with --out)", o);
  rep->add_option("--discipline", o.discipline, "limit to one discipline");
  rep->add_option("--metrics", o.metrics, "comma-separated battery");
  rep->add_option("--ridge", o.ridge, "ridge lambda");
  rep->add_option("--seed", o.seed, "split-half seed");
  rep->add_option("--out", o.out, "directory for report.json and report.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Json req = Json::object();
    if (name == "generate") {
      cmd_generate(o);
    } else if (name == "ingest") {
      cmd_ingest(o);
    } else if (name == "validate") {
      cmd_validate(o);
    } else if (name == "metrics") {
      req["discipline"] = o.discipline;
      put_if(req, "level", o.level);
      put_if(req, "metrics", o.metrics);
      req["format"] = o.format;
      run_and_print(o, "metrics", req);
    } else if (name == "fit") {
      req["discipline"] = o.discipline;
      put_if(req, "metrics", o.metrics);
      if (o.ridge) req["ridge_lambda"] = *o.ridge;
      if (o.cross_validate) req["cross_validate"] = true;
      run_and_print(o, "fit", req);
    } else if (name == "calibrate") {
      req["discipline"] = o.discipline;
      put_if(req, "metrics", o.metrics);
      if (o.ridge) req["ridge_lambda"] = *o.ridge;
      put_if(req, "constraints", o.constraints);
      run_and_print(o, "calibrate", req);
    } else if (name == "rank") {
      req["discipline"] = o.discipline;
      put_if(req, "weights", o.weights);
      put_if(req, "metric", o.metric);
      req["format"] = o.format;
      run_and_print(o, "rank", req);
    } else if (name == "correlate") {
      put_if(req, "dl_window", o.dl_window);
      put_if(req, "cit_window", o.cit_window);
      req["format"] = o.format;
      run_and_print(o, "correlate", req);
    } else if (name == "reliability") {
      req["kind"] = o.kind;
      put_if(req, "metric", o.metric);
      if (o.seed) req["seed"] = *o.seed;
      put_if(req, "window1", o.window1);
      put_if(req, "window2", o.window2);
      put_if(req, "level", o.level);
      run_and_print(o, "reliability", req);
    } else if (name == "factor") {
      req["discipline"] = o.discipline;
      put_if(req, "metrics", o.metrics);
      put_if(req, "level", o.level);
      run_and_print(o, "factor", req);
    } else if (name == "oa-advantage") {
      put_if(req, "discipline", o.discipline);
      run_and_print(o, "oa_advantage", req);
    } else if (name == "serve") {
      cmd_serve(o);
    } else if (name == "report") {
      cmd_report(o);
    }
  } catch (const Failure& f) {
    if (f.status != SCIM_OK && *scim_last_error())
      std::fprintf(stderr, "error (%s): %s\n", scim_status_name(f.status), scim_last_error());
    if (exit_code(f.status) == 2) std::fprintf(stderr, "run 'scim --help' for usage\n");
    return exit_code(f.status);
  }
  return 0;
}
