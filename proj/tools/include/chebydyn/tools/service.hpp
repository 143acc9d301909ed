#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace chebydyn::tools {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

struct ServiceOptions {
  std::size_t cache_entries = 64;  // 0 disables the URL-keyed cache
  unsigned threads = 0;            // render workers per request; CHEBYDYN_THREADS caps it
};

// Request handling without sockets, so the API is testable in-process.
// Handlers are stateless apart from the optional response cache.
class ApiHandler {
 public:
  explicit ApiHandler(ServiceOptions opts = {});

  HttpResponse handle(std::string_view path, const QueryParams& query);

  std::size_t cache_size() const;

 private:
  HttpResponse dispatch(std::string_view path, const QueryParams& query) const;

  ServiceOptions opts_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, HttpResponse> cache_;
  std::deque<std::string> order_;
};

// Blocks serving GET /api/{param-plane,dyn-plane,classify,meta}. Returns
// false if the socket could not be bound.
bool serve_http(const std::string& host, int port, ServiceOptions opts = {});

}  // namespace chebydyn::tools
