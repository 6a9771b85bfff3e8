#include <httplib.h>

#include "arena/errors.hpp"
#include "arena/platform/service.hpp"

namespace arena::platform {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(ApiService& api) : impl_(std::make_unique<Impl>()) {
  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    const auto out = api.handle(req.method, req.target, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const bool ok = port == 0 ? (port = impl_->server.bind_to_any_port(host)) > 0 : impl_->server.bind_to_port(host, port);
  if (!ok) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() {
  if (!impl_->server.listen_after_bind()) throw IoError("HTTP server stopped unexpectedly");
}

void HttpServer::wait_until_ready() { impl_->server.wait_until_ready(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve_http(ApiService& api, const std::string& host, int port) {
  HttpServer server(api);
  server.bind(host, port);
  server.listen();
}

}  // namespace arena::platform
