// xview: batch CLI over the cross-view relationship engine plus the HTTP
// service entry point.
//
//   xview ingest --bundle data.json
//   xview mine   --bundle data.json --views A,B [--min-rows 2 --min-cols 2]
//   xview chain  --bundle data.json --views A,B,C --threshold 0.4
//   xview layout --bundle data.json --views A,B,C --threshold 0.4
//   xview serve  --port 8080 --bundle data.json --persist log.json

#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xview/api.hpp"
#include "xview/chains.hpp"
#include "xview/dataset.hpp"
#include "xview/layout.hpp"
#include "xview/miner.hpp"
#include "xview/serialize.hpp"
#include "xview/session.hpp"

namespace {

using nlohmann::json;
using namespace xview;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct EngineFlags {
  std::string bundle;
  std::vector<std::string> views;
  std::optional<double> threshold;
  std::size_t min_rows = 2;
  std::size_t min_cols = 2;
  std::size_t path_limit = kDefaultPathLimit;
  bool serial = false;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f, bool needs_views) {
  cmd->add_option("--bundle", f.bundle, "Dataset bundle (JSON)")->required();
  if (!needs_views) return;
  cmd->add_option("--views", f.views, "Comma-separated view ids")->required()->delimiter(',');
  cmd->add_option("--min-rows", f.min_rows, "Minimum rows per bicluster")->check(CLI::PositiveNumber);
  cmd->add_option("--min-cols", f.min_cols, "Minimum columns per bicluster")->check(CLI::PositiveNumber);
  cmd->add_flag("--serial", f.serial, "Use the serial reference kernels");
}

void print(const json& j) { std::cout << canonical_dump(j) << '\n'; }

MinerOptions miner_options(const EngineFlags& f) {
  return {f.min_rows, f.min_cols, f.serial ? Execution::serial : Execution::parallel};
}

int run_ingest(const EngineFlags& f) {
  auto bundle = load_bundle(f.bundle);
  auto ds = Dataset::from_bundle(bundle);
  json views = json::array();
  for (const auto& v : ds.views()) {
    views.push_back({{"view_id", v.id()}, {"view_type", std::string(to_string(v.descriptor.view_type))},
                     {"elements", v.elements.size()}});
  }
  json relations = json::array();
  for (const auto& [pair, m] : ds.relation_matrices()) {
    relations.push_back({{"view_a", pair.first}, {"view_b", pair.second}, {"pairs", m.count_ones()}});
  }
  print({{"dataset_id", ds.dataset_id()}, {"views", views}, {"relations", relations},
         {"documents", ds.documents().size()}});
  return 0;
}

int run_mine(const EngineFlags& f) {
  if (f.views.size() != 2) throw Error(Errc::invalid_argument, "mine takes exactly two views");
  auto ds = Dataset::from_bundle(load_bundle(f.bundle));
  auto pair = ds.canonical_pair(f.views[0], f.views[1]);
  auto biclusters = enumerate_closed_biclusters(ds.relation_matrix(pair.first, pair.second), miner_options(f));
  print({{"view_a", pair.first}, {"view_b", pair.second}, {"biclusters", biclusters_json(biclusters)}});
  return 0;
}

int run_chain(const EngineFlags& f) {
  auto ds = Dataset::from_bundle(load_bundle(f.bundle));
  const double threshold = f.threshold.value_or(kDefaultChainThreshold);
  ChainOptions opts{f.path_limit, f.serial ? Execution::serial : Execution::parallel};
  auto chains = compute_chains(ds, f.views, threshold, miner_options(f), opts);
  print({{"views", ds.canonical_views(f.views)}, {"threshold", threshold}, {"chains", chains_json(chains)}});
  return 0;
}

int run_layout(const EngineFlags& f) {
  auto ds = Dataset::from_bundle(load_bundle(f.bundle));
  auto views = ds.canonical_views(f.views);
  std::vector<LayoutItem> items;
  json relationships;
  if (views.size() == 2) {
    auto biclusters = enumerate_closed_biclusters(ds.relation_matrix(views[0], views[1]), miner_options(f));
    for (const auto& b : biclusters) items.push_back(Relationship::from(b).layout_item());
    relationships = biclusters_json(biclusters);
  } else {
    ChainOptions opts{f.path_limit, f.serial ? Execution::serial : Execution::parallel};
    auto chains = compute_chains(ds, views, f.threshold.value_or(kDefaultChainThreshold), miner_options(f), opts);
    for (const auto& c : chains) items.push_back(Relationship::from(c).layout_item());
    relationships = chains_json(chains);
  }
  LayoutOptions lo;
  lo.exec = f.serial ? Execution::serial : Execution::parallel;
  auto layout = compute_layout(items, views, lo);
  print({{"views", views}, {"relationships", relationships}, {"layout", to_json(layout)}});
  return 0;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const std::string& host, int port, const std::string& bundle, const std::string& persist) {
  ServiceConfig cfg;
  if (!bundle.empty()) cfg.bundle = bundle;
  if (!persist.empty()) cfg.persist = persist;
  Service service(cfg);
  HttpServer server(service);
  int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << '\n';
    return kExitData;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << host << ":" << bound << '\n';
  server.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-view relationship engine: biclusters, bicluster-chains, layout and workspace service"};
  app.require_subcommand(1);

  EngineFlags ingest_f, mine_f, chain_f, layout_f;
  auto* ingest = app.add_subcommand("ingest", "Validate a dataset bundle and print a summary");
  add_engine_flags(ingest, ingest_f, false);

  auto* mine = app.add_subcommand("mine", "Closed biclusters of one view pair");
  add_engine_flags(mine, mine_f, true);

  auto* chain = app.add_subcommand("chain", "Cleaned bicluster-chains over three or more views");
  add_engine_flags(chain, chain_f, true);
  chain->add_option("--threshold", chain_f.threshold, "Matching threshold as a fraction")->check(CLI::Range(0.0, 1.0));
  chain->add_option("--path-limit", chain_f.path_limit, "Candidate paths per sequence before aborting");

  auto* layout = app.add_subcommand("layout", "Relationship-view coordinates, radii and bar summaries");
  add_engine_flags(layout, layout_f, true);
  layout->add_option("--threshold", layout_f.threshold, "Matching threshold (three or more views)")
      ->check(CLI::Range(0.0, 1.0));

  std::string host = "0.0.0.0";
  int port = 8080;
  std::string serve_bundle;
  std::string persist;
  auto* serve = app.add_subcommand("serve", "Run the HTTP+JSON workspace service");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port")->envname("APP_PORT")->check(CLI::Range(0, 65535));
  serve->add_option("--bundle", serve_bundle, "Bundle to load at startup")->envname("APP_BUNDLE");
  serve->add_option("--persist", persist, "Workspace command-log file")->envname("APP_PERSIST");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) return run_ingest(ingest_f);
    if (*mine) return run_mine(mine_f);
    if (*chain) return run_chain(chain_f);
    if (*layout) return run_layout(layout_f);
    if (*serve) return run_serve(host, port, serve_bundle, persist);
  } catch (const Error& e) {
    std::cerr << canonical_dump(error_body(e)) << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  std::cerr << app.help() << '\n';
  return kExitUsage;
}
