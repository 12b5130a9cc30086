#pragma once

#include <map>
#include <memory>
#include <semaphore>
#include <string>

#include "gterrain/session.hpp"

namespace gterrain {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  std::size_t layout_vertex_cap = 5000;
  std::size_t layout_workers = 4;  // concurrent force layouts
  std::size_t http_threads = 8;
  std::uint64_t layout_seed = 42;
};

/// Read-only query handlers over one session. Handlers are thread-safe and
/// usable without a socket.
class Service {
public:
  using Query = std::map<std::string, std::string>;

  explicit Service(const Session& session, ServiceOptions options = {});

  Response health() const;
  Response mesh() const;
  Response tree() const;
  Response fields() const;
  Response cut(const Query& query) const;
  Response peak(const Query& query) const;
  Response layout2d(const std::string& body) const;

  /// Dispatch by method and path; unknown routes give 404.
  Response handle(const std::string& method, const std::string& path, const Query& query,
                  const std::string& body) const;

  /// Blocks serving HTTP until stop() is called or the socket fails.
  /// Returns false when the address could not be bound.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port and returns it; serve with listen_after_bind().
  int bind_any(const std::string& host);
  bool listen_after_bind();
  void stop();

  const ServiceOptions& options() const noexcept { return options_; }

private:
  struct Server;

  const Session& session_;
  ServiceOptions options_;
  std::string mesh_body_;
  std::string tree_body_;
  std::string fields_body_;
  mutable std::unique_ptr<std::counting_semaphore<>> layout_slots_;
  std::shared_ptr<Server> server_;

  void ensure_server();
};

}  // namespace gterrain
