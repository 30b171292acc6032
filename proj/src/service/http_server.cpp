#include "unani/service/http_server.hpp"

#include <httplib.h>

namespace unani::service {

struct HttpServer::Impl {
  Api& api;
  HttpOptions options;
  httplib::Server server;

  Impl(Api& a, HttpOptions o) : api(a), options(std::move(o)) {
    server.set_payload_max_length(options.max_body_bytes);
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
    auto handler = [this](const httplib::Request& req, httplib::Response& res) { serve(req, res); };
    const std::string any = R"(/.*)";
    server.Get(any, handler);
    server.Post(any, handler);
    server.Put(any, handler);
    server.Delete(any, handler);
    server.Patch(any, handler);
    server.Options(any, [this](const httplib::Request&, httplib::Response& res) {
      add_cors(res);
      res.status = 204;
    });
  }

  void add_cors(httplib::Response& res) const {
    if (options.cors_origin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", options.cors_origin);
    res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
  }

  void serve(const httplib::Request& req, httplib::Response& res) {
    ApiRequest r{req.method, req.path, req.body, req.get_header_value("Authorization")};
    const ApiResponse out = api.handle(r);
    res.status = out.status;
    add_cors(res);
    res.set_content(out.body.dump(), "application/json");
  }
};

HttpServer::HttpServer(Api& api, HttpOptions options) : impl_(std::make_unique<Impl>(api, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) throw Error("bind_failed", "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace unani::service
