#pragma once

#include <memory>
#include <string>
#include <thread>

#include "cdsort/service.hpp"

namespace httplib {
class Server;
}

namespace cdsort {

// cpp-httplib front end over GameService::handle.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port, or -1 on failure.
  int start(const std::string& host, int port);
  // Blocks serving on the calling thread.
  bool listen(const std::string& host, int port);
  void stop();

 private:
  GameService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace cdsort
