#pragma once

// HTTP+JSON service over the engine and the workspace session. Routing is
// exposed as `Service::handle` so it can be driven without sockets; the
// `HttpServer` adapter binds it to cpp-httplib.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "json.hpp"
#include "xview/bundle.hpp"
#include "xview/dataset.hpp"
#include "xview/error.hpp"
#include "xview/session.hpp"

namespace httplib {
class Server;
}

namespace xview {

int http_status(ErrorKind kind);
nlohmann::json error_body(const Error& e);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

struct ServiceConfig {
  std::optional<std::filesystem::path> bundle;   // loaded at startup
  std::optional<std::filesystem::path> persist;  // command log file
};

class Service {
 public:
  explicit Service(ServiceConfig config = {});

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

  // Id of the dataset the workspace is bound to, if any.
  std::optional<std::string> active_dataset() const;

 private:
  struct DatasetEntry {
    DatasetBundle bundle;
    std::shared_ptr<const Dataset> dataset;
    std::optional<std::filesystem::path> source;
  };

  ApiResponse route(std::string_view method, std::string_view path, const nlohmann::json& body);
  std::string load_dataset(DatasetBundle bundle, std::optional<std::filesystem::path> source);
  Session& session();
  nlohmann::json run(const std::string& op, const nlohmann::json& args);
  void persist() const;
  void restore(const std::filesystem::path& file);

  ServiceConfig config_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, DatasetEntry> datasets_;
  std::optional<std::string> active_;
  std::unique_ptr<Session> session_;
};

class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace xview
