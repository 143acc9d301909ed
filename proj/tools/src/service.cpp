#include "chebydyn/tools/service.hpp"

#include <mutex>
#include <set>
#include <stdexcept>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "chebydyn/image.hpp"
#include "chebydyn/render.hpp"
#include "chebydyn/tools/wire.hpp"

namespace chebydyn::tools {

namespace {

// 400: the request cannot be parsed; 422: parsed but out of range.
struct BadRequest : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct Unprocessable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

HttpResponse error(int status, const std::string& message) {
  return {status, "application/json", nlohmann::json{{"error", message}}.dump()};
}

class Query {
 public:
  Query(const QueryParams& q, std::set<std::string> allowed) : q_(q) {
    for (const auto& [key, value] : q) {
      if (!allowed.contains(key)) throw BadRequest("unknown parameter '" + key + "'");
      if (q.count(key) > 1) throw BadRequest("repeated parameter '" + key + "'");
    }
  }

  bool has(const std::string& key) const { return q_.contains(key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    try {
      return parse_double(q_.find(key)->second);
    } catch (const std::invalid_argument& e) {
      throw BadRequest(key + ": " + e.what());
    }
  }

  double required_number(const std::string& key) const {
    if (!has(key)) throw BadRequest("missing parameter '" + key + "'");
    return number(key, 0.0);
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    try {
      return parse_int(q_.find(key)->second);
    } catch (const std::invalid_argument& e) {
      throw BadRequest(key + ": " + e.what());
    }
  }

 private:
  const QueryParams& q_;
};

PlaneSpec plane_from(const Query& q, PlaneSpec spec) {
  const double re0 = q.number("re0", spec.center.real() - spec.half_width);
  const double re1 = q.number("re1", spec.center.real() + spec.half_width);
  const double im0 = q.number("im0", spec.center.imag() - spec.half_height);
  const double im1 = q.number("im1", spec.center.imag() + spec.half_height);
  if (!(re0 < re1) || !(im0 < im1)) throw BadRequest("viewport needs re0 < re1 and im0 < im1");
  const long long w = q.integer("w", spec.width_px);
  const long long h = q.integer("h", spec.height_px);
  if (w < 1 || h < 1) throw Unprocessable("w and h must be >= 1");
  if (w * h > kMaxPixels) throw Unprocessable("w*h exceeds " + std::to_string(kMaxPixels) + " pixels");
  const long long max_iter = q.integer("max_iter", spec.iteration.max_iter);
  if (max_iter < 1 || max_iter > kMaxIterLimit) {
    throw Unprocessable("max_iter must be in [1, " + std::to_string(kMaxIterLimit) + "]");
  }
  spec.center = {0.5 * (re0 + re1), 0.5 * (im0 + im1)};
  spec.half_width = 0.5 * (re1 - re0);
  spec.half_height = 0.5 * (im1 - im0);
  spec.width_px = static_cast<int>(w);
  spec.height_px = static_cast<int>(h);
  spec.iteration = iteration_for(static_cast<int>(max_iter));
  return spec;
}

HttpResponse png_response(const ClassificationGrid& grid) {
  const auto bytes = encode_png(grid, default_palette(grid));
  return {200, "image/png", std::string(bytes.begin(), bytes.end())};
}

// Cache key: path plus parameters in sorted order.
std::string cache_key(std::string_view path, const QueryParams& query) {
  std::string key(path);
  char sep = '?';
  for (const auto& [k, v] : query) {
    key += sep;
    key += k + "=" + v;
    sep = '&';
  }
  return key;
}

}  // namespace

ApiHandler::ApiHandler(ServiceOptions opts) : opts_(opts) {}

std::size_t ApiHandler::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

HttpResponse ApiHandler::handle(std::string_view path, const QueryParams& query) {
  if (opts_.cache_entries == 0) return dispatch(path, query);
  const std::string key = cache_key(path, query);
  {
    std::shared_lock lock(mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  HttpResponse response = dispatch(path, query);
  if (response.status != 200) return response;
  std::unique_lock lock(mutex_);
  if (cache_.emplace(key, response).second) {
    order_.push_back(key);
    while (order_.size() > opts_.cache_entries) {
      cache_.erase(order_.front());
      order_.pop_front();
    }
  }
  return response;
}

HttpResponse ApiHandler::dispatch(std::string_view path, const QueryParams& query) const {
  try {
    const RenderOptions render{opts_.threads, false};
    if (path == "/api/param-plane") {
      const Query q(query, {"re0", "re1", "im0", "im1", "w", "h", "max_iter"});
      return png_response(render_parameter_plane(plane_from(q, default_parameter_plane()), render));
    }
    if (path == "/api/dyn-plane") {
      const Query q(query, {"are", "aim", "re0", "re1", "im0", "im1", "w", "h", "max_iter"});
      const Complex alpha{q.required_number("are"), q.number("aim", 0.0)};
      return png_response(render_dynamical_plane(plane_from(q, default_dynamical_plane(alpha)), render));
    }
    if (path == "/api/classify") {
      const Query q(query, {"are", "aim", "max_iter"});
      const Complex alpha{q.required_number("are"), q.number("aim", 0.0)};
      const long long max_iter = q.integer("max_iter", IterationConfig{}.max_iter);
      if (max_iter < 1 || max_iter > kMaxIterLimit) throw Unprocessable("max_iter out of range");
      return {200, "application/json", classify_json(alpha, iteration_for(static_cast<int>(max_iter)))};
    }
    if (path == "/api/meta") {
      const Query q(query, {});
      return {200, "application/json", meta_json()};
    }
    return error(404, "no such endpoint");
  } catch (const Unprocessable& e) {
    return error(422, e.what());
  } catch (const BadRequest& e) {
    return error(400, e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

bool serve_http(const std::string& host, int port, ServiceOptions opts) {
  ApiHandler handler(opts);
  httplib::Server server;
  server.Get(R"(/api/[a-z\-]+)", [&](const httplib::Request& req, httplib::Response& res) {
    QueryParams query(req.params.begin(), req.params.end());
    const HttpResponse r = handler.handle(req.path, query);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    if (r.status == 200) res.set_header("Cache-Control", "public, max-age=86400");
    res.set_content(r.body, r.content_type);
  });
  return server.listen(host, port);
}

}  // namespace chebydyn::tools
