#pragma once

// Interactive workspace: relationship-view lifecycle, relationship states,
// panel geometry with pinning and dust-and-magnet dragging, manual links,
// four-way link search and document retrieval. `Session` wraps a Workspace
// as the single writer of an ordered command log.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "xview/chains.hpp"
#include "xview/dataset.hpp"
#include "xview/layout.hpp"
#include "xview/miner.hpp"

namespace xview {

enum class Level { bi_group, multi_group };
enum class RelState { normal, focused, selected, marked };
enum class DisplayMode { circle, summary };
enum class PanelKind { view, relationship_view, document };
enum class LinkKind { automatic, manual };

std::string_view to_string(Level v);
std::string_view to_string(RelState v);
std::string_view to_string(DisplayMode v);
std::string_view to_string(PanelKind v);
std::string_view to_string(LinkKind v);
RelState parse_state(std::string_view text);       // throws InvalidArgument
DisplayMode parse_display_mode(std::string_view text);

inline constexpr double kMinPanelWidth = 120.0;
inline constexpr double kMinPanelHeight = 90.0;
inline constexpr double kCanvasWidth = 1600.0;
inline constexpr double kPlacementStep = 20.0;
inline constexpr std::size_t kNeighborCount = 3;

// A bicluster (bi-group level) or a cleaned chain (multi-group level).
struct Relationship {
  std::string id;
  std::variant<Bicluster, BiclusterChain> content;
  std::map<std::string, std::vector<std::string>> entity_sets;
  std::vector<ElementRef> members;  // sorted

  static Relationship from(Bicluster b);
  static Relationship from(BiclusterChain c);
  bool contains(const ElementRef& ref) const;
  LayoutItem layout_item() const { return {id, entity_sets}; }
};

struct Diagnostic {
  std::string code;
  std::string message;
};

struct RelationshipView {
  std::string rv_id;
  Level level = Level::bi_group;
  std::vector<std::string> source_views;  // insertion order
  std::optional<double> threshold;        // multi_group only
  std::vector<Relationship> relationships;
  LayoutResult layout;
  DisplayMode default_mode = DisplayMode::circle;
  std::map<std::string, DisplayMode> display_modes;
  std::map<std::string, RelState> states;
  std::map<std::string, Point2> positions;  // user overrides of layout coordinates
  bool manually_edited = false;
  std::optional<Diagnostic> diagnostic;

  const Relationship* find(std::string_view relationship_id) const;
  Point2 position(const std::string& relationship_id) const;
  DisplayMode mode(const std::string& relationship_id) const;
};

struct Panel {
  std::string panel_id;
  PanelKind kind = PanelKind::view;
  Point2 position;
  double width = 0.0;
  double height = 0.0;
  bool pinned = false;
};

struct RelationshipRef {
  std::string rv_id;
  std::string relationship_id;

  auto operator<=>(const RelationshipRef&) const = default;
  bool operator==(const RelationshipRef&) const = default;
};

using Origin = std::variant<ElementRef, RelationshipRef>;

struct LinkedElement {
  ElementRef ref;
  LinkKind kind = LinkKind::automatic;

  auto operator<=>(const LinkedElement&) const = default;
};

struct LinkedRelationship {
  RelationshipRef ref;
  std::string task;  // which exploration found it: T3, T4 or T6

  auto operator<=>(const LinkedRelationship&) const = default;
};

struct LinkSet {
  Origin origin;
  std::set<LinkedElement> same_view_elements;
  std::set<LinkedElement> cross_view_elements;
  std::set<LinkedRelationship> related_relationships;

  bool has_element(const ElementRef& ref) const;
  bool has_relationship(const RelationshipRef& ref) const;
};

struct Highlight {
  ElementRef element;
  std::vector<Occurrence> spans;
};

struct RetrievedDocument {
  const Document* document = nullptr;
  std::size_t member_count = 0;
  std::vector<Highlight> highlights;  // one group per member element present
};

struct DocumentPanel {
  std::string panel_id;
  std::string rv_id;
  std::string relationship_id;
  std::vector<std::string> doc_ids;
};

class Workspace {
 public:
  explicit Workspace(std::shared_ptr<const Dataset> dataset);

  const Dataset& dataset() const { return *dataset_; }
  std::shared_ptr<const Dataset> dataset_ptr() const { return dataset_; }

  // Throws TooFewViews, UnknownView or InvalidThreshold (threshold is
  // required for three or more views and rejected for two). An empty result
  // still creates the view, with a NoRelationshipsFound diagnostic.
  const RelationshipView& create_relationship_view(std::span<const std::string> views,
                                                   std::optional<double> threshold = std::nullopt);
  const RelationshipView& set_threshold(const std::string& rv_id, double threshold);
  const RelationshipView& set_state(const std::string& rv_id, const std::string& relationship_id, RelState state);
  const RelationshipView& set_display_mode(const std::string& rv_id, const std::optional<std::string>& relationship_id,
                                           DisplayMode mode);
  // Relationship-level dragging; only allowed while the rv panel is pinned.
  const RelationshipView& move_relationships(const std::string& rv_id, const std::map<std::string, Point2>& positions);

  // Returns every panel that moved, dragged panel first.
  std::vector<std::pair<std::string, Point2>> drag_panel(const std::string& panel_id, double dx, double dy);
  void pin(const std::string& panel_id, bool on);
  void resize(const std::string& panel_id, double width, double height);
  void close_panel(const std::string& panel_id);

  // Returns false when the link already existed.
  bool add_manual_link(const ElementRef& a, const ElementRef& b);
  const DocumentPanel& open_documents(const std::string& rv_id, const std::string& relationship_id);

  LinkSet four_way_search(const Origin& origin) const;
  std::vector<RetrievedDocument> retrieve_documents(const std::string& rv_id, const std::string& relationship_id) const;

  const RelationshipView& relationship_view(std::string_view rv_id) const;  // throws UnknownPanel
  const std::map<std::string, RelationshipView>& relationship_views() const { return rvs_; }
  const Panel& panel(std::string_view panel_id) const;  // throws UnknownPanel
  const std::vector<Panel>& panels() const { return panels_; }
  const std::set<std::pair<ElementRef, ElementRef>>& manual_links() const { return manual_links_; }
  const std::vector<DocumentPanel>& document_panels() const { return document_panels_; }

  nlohmann::json snapshot() const;

 private:
  RelationshipView& mutable_rv(std::string_view rv_id);
  Panel& mutable_panel(std::string_view panel_id);
  Panel& place_panel(std::string panel_id, PanelKind kind, double width, double height);
  void fill_relationships(RelationshipView& rv) const;
  std::string next_panel_id(std::string_view prefix);

  std::shared_ptr<const Dataset> dataset_;
  PairBiclusters dataset_biclusters_;
  std::vector<Panel> panels_;  // placement order
  std::map<std::string, RelationshipView> rvs_;
  std::set<std::pair<ElementRef, ElementRef>> manual_links_;
  std::vector<DocumentPanel> document_panels_;
  std::uint64_t panel_counter_ = 0;
};

struct Command {
  std::uint64_t seq = 0;
  std::string op;
  nlohmann::json args;
};

nlohmann::json command_to_json(const Command& c);
Command command_from_json(const nlohmann::json& j);

// Single-writer wrapper: commands apply strictly in log order under an
// exclusive lock; reads take a shared lock and see whole commands only.
class Session {
 public:
  explicit Session(std::shared_ptr<const Dataset> dataset);

  // Applies one command and appends it to the log. Returns the state delta.
  // Failed commands leave state and log untouched.
  nlohmann::json execute(const std::string& op, const nlohmann::json& args);

  nlohmann::json snapshot() const;
  std::vector<Command> log() const;

  template <typename F>
  auto read(F&& fn) const {
    std::shared_lock lock(mutex_);
    return fn(workspace_);
  }

  static std::unique_ptr<Session> replay(std::shared_ptr<const Dataset> dataset, std::span<const Command> commands);

 private:
  mutable std::shared_mutex mutex_;
  Workspace workspace_;
  std::vector<Command> log_;
};

nlohmann::json relationship_view_json(const RelationshipView& rv);
nlohmann::json to_json(const LinkSet& links);
nlohmann::json to_json(const RetrievedDocument& doc);
Origin origin_from_json(const nlohmann::json& j);  // throws InvalidArgument

// Applies one command to a workspace without logging.
nlohmann::json apply_command(Workspace& workspace, const std::string& op, const nlohmann::json& args);

}  // namespace xview
