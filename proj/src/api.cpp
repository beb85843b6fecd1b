#include "xview/api.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <vector>

#include "httplib.h"
#include "xview/serialize.hpp"

namespace xview {

using nlohmann::json;

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::precondition: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::parse: return 422;
    case ErrorKind::internal: return 500;
  }
  return 500;
}

json error_body(const Error& e) {
  json detail = json::object();
  for (const auto& [k, v] : e.detail()) detail[k] = v;
  return {{"error", {{"code", std::string(e.name())}, {"message", e.what()}, {"detail", detail}}}};
}

namespace {

std::vector<std::string_view> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    auto slash = path.find('/');
    parts.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

std::string decode(std::string_view part) { return httplib::detail::decode_url(std::string(part), false); }

[[noreturn]] void no_route(std::string_view method, std::string_view path) {
  throw Error(Errc::unknown_route, "no route for " + std::string(method) + " " + std::string(path));
}

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  if (config_.persist && std::filesystem::exists(*config_.persist)) {
    restore(*config_.persist);
    return;
  }
  if (config_.bundle) {
    load_dataset(load_bundle(*config_.bundle), *config_.bundle);
    persist();
  }
}

std::optional<std::string> Service::active_dataset() const {
  std::shared_lock lock(mutex_);
  return active_;
}

std::string Service::load_dataset(DatasetBundle bundle, std::optional<std::filesystem::path> source) {
  auto dataset = std::make_shared<const Dataset>(Dataset::from_bundle(bundle));
  std::string id = bundle.dataset_id;
  datasets_[id] = DatasetEntry{std::move(bundle), dataset, std::move(source)};
  active_ = id;
  session_ = std::make_unique<Session>(dataset);
  return id;
}

Session& Service::session() {
  if (!session_) throw Error(Errc::unknown_dataset, "no dataset loaded; POST /datasets first");
  return *session_;
}

json Service::run(const std::string& op, const json& args) {
  json result = session().execute(op, args);
  persist();
  return result;
}

void Service::persist() const {
  if (!config_.persist || !active_) return;
  const auto& entry = datasets_.at(*active_);
  json bundle_ref = entry.source ? json{{"path", std::filesystem::absolute(*entry.source).string()}}
                                 : json{{"inline", bundle_to_json(entry.bundle)}};
  json commands = json::array();
  for (const auto& c : session_->log()) commands.push_back(command_to_json(c));
  json file{{"bundle", bundle_ref}, {"dataset_id", *active_}, {"commands", commands}};

  auto tmp = *config_.persist;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::internal, "cannot write persistence file " + tmp.string());
    out << file.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, *config_.persist);
}

void Service::restore(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, "persistence file: " + std::string(e.what()), {{"position", std::to_string(e.byte)}});
  }
  const json& ref = doc.at("bundle");
  if (ref.contains("path")) {
    std::filesystem::path p = ref["path"].get<std::string>();
    load_dataset(load_bundle(p), p);
  } else {
    load_dataset(bundle_from_json(ref.at("inline")), std::nullopt);
  }
  std::vector<Command> commands;
  for (const auto& c : doc.at("commands")) commands.push_back(command_from_json(c));
  session_ = Session::replay(datasets_.at(*active_).dataset, commands);
}

ApiResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    json parsed;
    if (!body.empty()) {
      try {
        parsed = json::parse(body.begin(), body.end());
      } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, e.what(), {{"position", std::to_string(e.byte)}});
      }
    }
    return route(method, path, parsed);
  } catch (const Error& e) {
    return {http_status(e.kind()), error_body(e)};
  } catch (const json::exception& e) {
    Error err(Errc::invalid_argument, e.what());
    return {http_status(err.kind()), error_body(err)};
  } catch (const std::exception& e) {
    Error err(Errc::internal, e.what());
    return {500, error_body(err)};
  }
}

ApiResponse Service::route(std::string_view method, std::string_view path, const json& body) {
  const auto parts = split_path(path);
  const auto n = parts.size();

  if (method == "GET" && n == 1 && parts[0] == "healthz") return {200, {{"status", "ok"}}};

  if (n >= 1 && parts[0] == "datasets") {
    if (method == "POST" && n == 1) {
      auto bundle = bundle_from_json(body);
      std::unique_lock lock(mutex_);
      auto id = load_dataset(std::move(bundle), std::nullopt);
      persist();
      return {201, {{"dataset_id", id}}};
    }
    if (n >= 3) {
      std::string id = decode(parts[1]);
      if (method == "GET" && n == 3 && parts[2] == "views") {
        std::shared_lock lock(mutex_);
        auto it = datasets_.find(id);
        if (it == datasets_.end()) throw Error(Errc::unknown_dataset, "unknown dataset '" + id + "'");
        json views = json::array();
        for (const auto& v : it->second.dataset->views()) views.push_back(to_json(v));
        return {200, {{"dataset_id", id}, {"views", views}}};
      }
      if (method == "POST" && n == 3 && parts[2] == "relationship-views") {
        std::unique_lock lock(mutex_);
        if (!datasets_.contains(id)) throw Error(Errc::unknown_dataset, "unknown dataset '" + id + "'");
        if (active_ != id) throw Error(Errc::dataset_not_active, "dataset '" + id + "' is not bound to the workspace");
        json args{{"views", body.value("views", json::array())}};
        if (body.contains("threshold")) args["threshold"] = body["threshold"];
        return {201, run("create_relationship_view", args)["result"]};
      }
    }
    no_route(method, path);
  }

  if (n >= 2 && parts[0] == "relationship-views") {
    std::string rv_id = decode(parts[1]);
    if (method == "GET" && n == 2) {
      std::shared_lock lock(mutex_);
      return {200, session().read([&](const Workspace& ws) { return relationship_view_json(ws.relationship_view(rv_id)); })};
    }
    if (method == "PATCH" && n == 2) {
      std::unique_lock lock(mutex_);
      session().read([&](const Workspace& ws) { return ws.relationship_view(rv_id).rv_id; });
      if (!body.is_object()) throw Error(Errc::invalid_argument, "PATCH body must be an object");
      json result;
      if (body.contains("threshold")) {
        result = run("set_threshold", {{"rv_id", rv_id}, {"threshold", body["threshold"]}})["result"];
      }
      if (body.contains("display_mode")) {
        const json& dm = body["display_mode"];
        json args{{"rv_id", rv_id}};
        if (dm.is_string()) {
          args["mode"] = dm;
        } else {
          args["mode"] = dm.value("mode", json());
          if (dm.contains("relationship_id")) args["relationship_id"] = dm["relationship_id"];
        }
        result = run("set_display_mode", args)["result"];
      }
      if (body.contains("positions")) {
        result = run("move_relationships", {{"rv_id", rv_id}, {"positions", body["positions"]}})["result"];
      }
      if (result.is_null()) throw Error(Errc::invalid_argument, "PATCH needs threshold, positions or display_mode");
      return {200, result};
    }
    if (method == "GET" && n == 5 && parts[2] == "relationships" && parts[4] == "documents") {
      std::shared_lock lock(mutex_);
      std::string rel_id = decode(parts[3]);
      return {200, session().read([&](const Workspace& ws) {
                json docs = json::array();
                for (const auto& d : ws.retrieve_documents(rv_id, rel_id)) docs.push_back(to_json(d));
                return json{{"rv_id", rv_id}, {"relationship_id", rel_id}, {"documents", docs}};
              })};
    }
    no_route(method, path);
  }

  if (method == "POST" && n == 1 && parts[0] == "search") {
    if (!body.is_object() || !body.contains("origin")) throw Error(Errc::invalid_argument, "search body needs 'origin'");
    Origin origin = origin_from_json(body["origin"]);
    std::shared_lock lock(mutex_);
    return {200, session().read([&](const Workspace& ws) { return to_json(ws.four_way_search(origin)); })};
  }

  if (n >= 1 && parts[0] == "workspace") {
    if (method == "GET" && n == 1) {
      std::shared_lock lock(mutex_);
      return {200, session().snapshot()};
    }
    if (method == "POST" && n == 2 && parts[1] == "commands") {
      std::unique_lock lock(mutex_);
      if (body.is_object() && body.contains("commands")) {
        json applied = json::array();
        for (const auto& c : body["commands"]) {
          auto cmd = command_from_json(c);
          applied.push_back(run(cmd.op, cmd.args));
        }
        return {200, {{"applied", applied}}};
      }
      auto cmd = command_from_json(body);
      return {200, run(cmd.op, cmd.args)};
    }
    no_route(method, path);
  }

  no_route(method, path);
}

// ---------------------------------------------------------------------------

HttpServer::HttpServer(Service& service) : server_(std::make_unique<httplib::Server>()) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    auto out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(canonical_dump(out.body), "application/json");
  };
  const char* pattern = R"(/.*)";
  server_->Get(pattern, handler);
  server_->Post(pattern, handler);
  server_->Patch(pattern, handler);
  server_->Put(pattern, handler);
  server_->Delete(pattern, handler);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace xview
