#include "cdsort/http_server.hpp"

#include "httplib.h"

namespace cdsort {

HttpServer::HttpServer(GameService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  const auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = service_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const char* pattern = R"(/sessions(/[^/]+)?(/[a-z-]+)?)";
  server_->Get(pattern, route);
  server_->Post(pattern, route);
  // Browser clients served from another origin.
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server_->Options(pattern, [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) return -1;
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

void HttpServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace cdsort
