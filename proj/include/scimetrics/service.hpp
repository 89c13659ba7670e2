#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "scimetrics/error.hpp"
#include "scimetrics/ops.hpp"

namespace scim {

struct HttpRequest {
  std::string method;  // GET, POST, OPTIONS
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// HTTP status for an error class.
int http_status(ErrorCode code) noexcept;

// Routes /api requests onto run_op against the current session. The session
// pointer is swapped whole on reload, so a request holds one snapshot from
// start to finish.
class Service {
 public:
  Service() = default;
  explicit Service(std::shared_ptr<const Session> session) : session_(std::move(session)) {}

  void reload(std::shared_ptr<const Session> session);
  std::shared_ptr<const Session> session() const;

  /// Pure dispatch, no sockets involved.
  HttpResponse handle(const HttpRequest& request) const;

  /// Blocks serving HTTP until stop() or a bind failure. Static files come
  /// from `static_dir` when given, else a built-in placeholder page. Port 0
  /// picks a free port; see bound_port().
  void serve(const std::string& host, int port, const std::filesystem::path& static_dir = {});
  void stop();
  /// The listening port once serve() is accepting connections, else 0.
  int bound_port() const noexcept { return bound_port_.load(); }

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const Session> session_;
  std::shared_ptr<void> server_;
  std::atomic<int> bound_port_{0};
};

/// Splits "host:port"; throws invalid_argument on a bad port.
std::pair<std::string, int> parse_listen(std::string_view text);

}  // namespace scim
