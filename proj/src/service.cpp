#include "scimetrics/service.hpp"

#include <charconv>
#include <set>

#include <httplib.h>

#include "scimetrics/error.hpp"

namespace scim {

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::parse: return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::unprocessable: return 422;
    case ErrorCode::unavailable: return 503;
    case ErrorCode::io:
    case ErrorCode::internal: break;
  }
  return 500;
}

std::pair<std::string, int> parse_listen(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw Error(ErrorCode::invalid_argument, "listen address must be host:port");
  const auto port_text = text.substr(colon + 1);
  int port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 || port > 65535)
    throw Error(ErrorCode::invalid_argument, "bad port '" + std::string(port_text) + "'");
  return {std::string(text.substr(0, colon)), port};
}

void Service::reload(std::shared_ptr<const Session> session) {
  std::lock_guard lock(mutex_);
  session_ = std::move(session);
}

std::shared_ptr<const Session> Service::session() const {
  std::lock_guard lock(mutex_);
  return session_;
}

namespace {

struct Route {
  const char* method;
  const char* op;
};

const std::map<std::string, Route, std::less<>>& routes() {
  static const std::map<std::string, Route, std::less<>> table = {
      {"/api/summary", {"GET", "summary"}},
      {"/api/validate", {"GET", "validate"}},
      {"/api/load-report", {"GET", "load_report"}},
      {"/api/metrics", {"GET", "metrics"}},
      {"/api/fit", {"POST", "fit"}},
      {"/api/calibrate", {"POST", "calibrate"}},
      {"/api/rank", {"GET", "rank"}},
      {"/api/correlator", {"GET", "correlate"}},
      {"/api/reliability", {"GET", "reliability"}},
      {"/api/factor", {"GET", "factor"}},
      {"/api/oa-advantage", {"GET", "oa_advantage"}},
      {"/api/report", {"GET", "report"}},
  };
  return table;
}

// Query parameters that carry integers; everything else stays text and is
// checked by the operation itself.
Json query_json(const std::map<std::string, std::string>& query) {
  static const std::set<std::string, std::less<>> integers = {"dl_from", "dl_to", "cit_from",
                                                              "cit_to", "seed"};
  Json j = Json::object();
  for (const auto& [key, value] : query) {
    if (!integers.count(key)) {
      j[key] = value;
      continue;
    }
    if (value.empty()) {
      j[key] = nullptr;  // open-ended window bound
      continue;
    }
    long long n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      throw Error(ErrorCode::invalid_argument, "'" + key + "' must be an integer");
    if (key == "seed") {
      if (n < 0) throw Error(ErrorCode::invalid_argument, "'seed' must be a nonnegative integer");
      j[key] = static_cast<std::uint64_t>(n);
    } else {
      j[key] = n;
    }
  }
  return j;
}

HttpResponse error_response(ErrorCode code, const std::string& message) {
  Json j = {{"error", {{"code", to_string(code)}, {"message", message}}}};
  return {http_status(code), dump(j), "application/json"};
}

const char* kPlaceholderPage =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>scimetrics</title></head>\n"
    "<body><h1>scimetrics</h1><p>The API is under <code>/api/</code>. Start the server with "
    "<code>--static-dir</code> to serve a client here.</p></body></html>\n";

}  // namespace

HttpResponse Service::handle(const HttpRequest& request) const {
  try {
    const auto it = routes().find(request.path);
    if (it == routes().end())
      return error_response(ErrorCode::not_found, "no endpoint '" + request.path + "'");
    if (request.method != it->second.method)
      return {405, dump({{"error", {{"code", "method_not_allowed"},
                                    {"message", "use " + std::string(it->second.method)}}}}),
              "application/json"};
    const auto snapshot = session();
    if (!snapshot) return error_response(ErrorCode::unavailable, "no corpus loaded");
    Json body = query_json(request.query);
    if (request.method == "POST") {
      if (!request.query.empty())
        throw Error(ErrorCode::invalid_argument, "POST endpoints take a JSON body, not a query");
      if (!request.body.empty()) {
        try {
          body = Json::parse(request.body);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorCode::invalid_argument, std::string("malformed JSON body: ") + e.what());
        }
      }
    }
    auto out = run_op(*snapshot, it->second.op, body);
    return {200, std::move(out.body), std::move(out.content_type)};
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(ErrorCode::internal, e.what());
  }
}

void Service::serve(const std::string& host, int port, const std::filesystem::path& static_dir) {
  auto server = std::make_shared<httplib::Server>();
  {
    std::lock_guard lock(mutex_);
    server_ = server;
  }
  server->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                               {"Access-Control-Allow-Headers", "Content-Type"},
                               {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    const auto out = handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server->Get(R"(/api/.*)", forward);
  server->Post(R"(/api/.*)", forward);
  server->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  if (!static_dir.empty()) {
    if (!server->set_mount_point("/", static_dir.string()))
      throw Error(ErrorCode::io, "static directory '" + static_dir.string() + "' not found");
  } else {
    server->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
  const int bound = port == 0 ? server->bind_to_any_port(host) : (server->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(ErrorCode::io, "cannot listen on " + host + ":" + std::to_string(port));
  bound_port_ = bound;
  const bool ok = server->listen_after_bind();
  bound_port_ = 0;
  if (!ok) throw Error(ErrorCode::io, "server on " + host + ":" + std::to_string(bound) + " failed");
}

void Service::stop() {
  std::shared_ptr<void> server;
  {
    std::lock_guard lock(mutex_);
    server = server_;
  }
  if (server) static_cast<httplib::Server*>(server.get())->stop();
}

}  // namespace scim
