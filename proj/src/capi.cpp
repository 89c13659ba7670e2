#include "scimetrics/scimetrics.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "scimetrics/error.hpp"
#include "scimetrics/ops.hpp"
#include "scimetrics/service.hpp"
#include "scimetrics/synth.hpp"

struct scim_session {
  std::shared_ptr<const scim::Session> session;
};

namespace {

thread_local std::string last_error;

scim_status status_of(scim::ErrorCode code) {
  using scim::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return SCIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::not_found: return SCIM_ERR_NOT_FOUND;
    case ErrorCode::unprocessable: return SCIM_ERR_UNPROCESSABLE;
    case ErrorCode::parse: return SCIM_ERR_PARSE;
    case ErrorCode::io: return SCIM_ERR_IO;
    case ErrorCode::unavailable: return SCIM_ERR_UNAVAILABLE;
    case ErrorCode::internal: break;
  }
  return SCIM_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into a status plus last_error.
template <typename Fn>
scim_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SCIM_OK;
  } catch (const scim::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return SCIM_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw scim::Error(scim::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

scim::Json request_of(const char* text) {
  if (!text || !*text) return scim::Json::object();
  try {
    return scim::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw scim::Error(scim::ErrorCode::invalid_argument,
                      std::string("malformed JSON request: ") + e.what());
  }
}

scim_status run_json(const scim_session* s, const char* op, const char* request, char** out) {
  return guarded([&] {
    require(s, "session");
    require(out, "output pointer");
    *out = copy_out(scim::run_op(*s->session, op, request_of(request)).body);
  });
}

}  // namespace

extern "C" {

const char* scim_version(void) { return "1.0.0"; }

const char* scim_last_error(void) { return last_error.c_str(); }

const char* scim_status_name(scim_status status) {
  switch (status) {
    case SCIM_OK: return "ok";
    case SCIM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SCIM_ERR_NOT_FOUND: return "not_found";
    case SCIM_ERR_UNPROCESSABLE: return "unprocessable";
    case SCIM_ERR_PARSE: return "parse";
    case SCIM_ERR_IO: return "io";
    case SCIM_ERR_UNAVAILABLE: return "unavailable";
    case SCIM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void scim_string_free(char* s) { std::free(s); }

scim_status scim_default_config(char** out_json) {
  return guarded([&] {
    require(out_json, "output pointer");
    *out_json = copy_out(scim::config_json(scim::GeneratorConfig{}));
  });
}

scim_status scim_generate(const char* config_json, const char* out_dir) {
  return guarded([&] {
    require(out_dir, "output directory");
    const auto config = scim::config_from_json(config_json && *config_json ? config_json : "{}");
    scim::write_generated(scim::generate(config), out_dir);
  });
}

scim_status scim_session_open(const char* dir, const char* snapshot_date, scim_session** out) {
  return guarded([&] {
    require(dir, "corpus directory");
    require(out, "output pointer");
    std::optional<scim::Date> snapshot;
    if (snapshot_date && *snapshot_date) snapshot = scim::parse_date(snapshot_date);
    *out = new scim_session{scim::Session::open(dir, snapshot)};
  });
}

void scim_session_close(scim_session* session) { delete session; }

scim_status scim_export_corpus(const scim_session* s, const char* out_dir) {
  return guarded([&] {
    require(s, "session");
    require(out_dir, "output directory");
    scim::write_corpus(s->session->corpus().data(), out_dir);
  });
}

scim_status scim_run(const scim_session* s, const char* op, const char* request_json, char** out,
                     char** out_content_type) {
  return guarded([&] {
    require(s, "session");
    require(op, "operation");
    require(out, "output pointer");
    const auto result = scim::run_op(*s->session, op, request_of(request_json));
    char* body = copy_out(result.body);
    if (out_content_type) {
      try {
        *out_content_type = copy_out(result.content_type);
      } catch (...) {
        std::free(body);
        throw;
      }
    }
    *out = body;
  });
}

scim_status scim_summary(const scim_session* s, char** out) {
  return run_json(s, "summary", nullptr, out);
}
scim_status scim_validate(const scim_session* s, char** out) {
  return run_json(s, "validate", nullptr, out);
}
scim_status scim_metrics(const scim_session* s, const char* req, char** out) {
  return run_json(s, "metrics", req, out);
}
scim_status scim_fit(const scim_session* s, const char* req, char** out) {
  return run_json(s, "fit", req, out);
}
scim_status scim_calibrate(const scim_session* s, const char* req, char** out) {
  return run_json(s, "calibrate", req, out);
}
scim_status scim_rank(const scim_session* s, const char* req, char** out) {
  return run_json(s, "rank", req, out);
}
scim_status scim_correlate(const scim_session* s, const char* req, char** out) {
  return run_json(s, "correlate", req, out);
}
scim_status scim_reliability(const scim_session* s, const char* req, char** out) {
  return run_json(s, "reliability", req, out);
}
scim_status scim_factor(const scim_session* s, const char* req, char** out) {
  return run_json(s, "factor", req, out);
}
scim_status scim_oa_advantage(const scim_session* s, const char* req, char** out) {
  return run_json(s, "oa_advantage", req, out);
}

scim_status scim_report(const scim_session* s, const char* request_json, char** out_json,
                        char** out_text) {
  return guarded([&] {
    require(s, "session");
    const auto report = scim::report_json(*s->session, request_of(request_json));
    char* json = out_json ? copy_out(scim::dump(report)) : nullptr;
    if (out_text) {
      try {
        *out_text = copy_out(scim::report_text(report));
      } catch (...) {
        std::free(json);
        throw;
      }
    }
    if (out_json) *out_json = json;
  });
}

scim_status scim_serve(const scim_session* s, const char* host, int port, const char* static_dir) {
  return guarded([&] {
    require(s, "session");
    require(host, "host");
    if (port < 0 || port > 65535)
      throw scim::Error(scim::ErrorCode::invalid_argument, "bad port " + std::to_string(port));
    scim::Service service(s->session);
    service.serve(host, port, static_dir ? static_dir : "");
  });
}

}  // extern "C"
