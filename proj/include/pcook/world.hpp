#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcook/ast.hpp"
#include "pcook/items.hpp"

namespace pcook {

inline constexpr int kMaxSide = 8;
inline constexpr int kMaxCells = kMaxSide * kMaxSide;

enum class TileKind : std::uint8_t {
  Floor,
  Counter,
  OnionSupply,
  TomatoSupply,
  PlateStation,
  ChoppingBlock,
  Sink,
  DeliveryStar,
  ExtinguisherStation,
};

inline constexpr int kTileKindCount = 9;

std::string_view tile_name(TileKind kind);
char tile_char(TileKind kind);
std::optional<TileKind> tile_from_char(char c);

// Counters, chopping blocks and sinks hold at most one surface item.
constexpr bool is_surface(TileKind kind) {
  return kind == TileKind::Counter || kind == TileKind::ChoppingBlock || kind == TileKind::Sink;
}

// The item a supply hands out, if `kind` is a supply.
std::optional<Item> supply_item(TileKind kind);

struct Tile {
  TileKind kind = TileKind::Floor;
  std::optional<Item> item;
  bool on_fire = false;
  bool operator==(const Tile&) const = default;
};

struct AgentState {
  int row = 0;
  int col = 0;
  std::optional<Item> holding;
  bool operator==(const AgentState&) const = default;
};

enum class Dir : std::uint8_t { Up, Down, Left, Right };
enum class Op : std::uint8_t { Move, Pick, Place, Serve, Merge, Interact };

inline constexpr int kActionCount = 24;

struct Action {
  Op op = Op::Move;
  Dir dir = Dir::Up;

  int encode() const { return static_cast<int>(op) * 4 + static_cast<int>(dir); }
  static Action decode(int code);
  bool operator==(const Action&) const = default;
};

std::string to_string(Action a);
std::optional<Action> action_from_string(std::string_view text);

constexpr int kDirRow[4] = {-1, 1, 0, 0};
constexpr int kDirCol[4] = {0, 0, -1, 1};

inline constexpr std::array<Item, kOrderCount> kOrderDish = {
    Item::ChoppedOnionPlate, Item::ChoppedTomatoPlate, Item::ChoppedOnionTomatoPlate};

struct WorldState {
  int rows = kMaxSide;
  int cols = kMaxSide;
  std::array<Tile, kMaxCells> tiles{};  // row-major, stride kMaxSide
  std::vector<AgentState> agents;
  std::array<bool, kOrderCount> orders{};
  std::uint64_t tick = 0;
  std::uint64_t fire_seed = 0;
  double fire_prob = 0.0;
  int return_counter = -1;  // cell where served dishes come back as dirty plates

  static constexpr int cell(int r, int c) { return r * kMaxSide + c; }
  static constexpr int row_of(int cell) { return cell / kMaxSide; }
  static constexpr int col_of(int cell) { return cell % kMaxSide; }

  bool in_bounds(int r, int c) const { return r >= 0 && c >= 0 && r < rows && c < cols; }
  Tile& at(int r, int c) { return tiles[static_cast<std::size_t>(cell(r, c))]; }
  const Tile& at(int r, int c) const { return tiles[static_cast<std::size_t>(cell(r, c))]; }
  Tile& at(int c) { return tiles[static_cast<std::size_t>(c)]; }
  const Tile& at(int c) const { return tiles[static_cast<std::size_t>(c)]; }

  // Cell index of the neighbour in `d`, or -1 off the map.
  int neighbor(int cell_index, Dir d) const;
  int agent_cell(std::size_t i) const { return cell(agents[i].row, agents[i].col); }
  int agent_at(int cell_index) const;  // -1 when free

  bool operator==(const WorldState&) const = default;
};

enum class WorldEventKind : std::uint8_t { SubtaskCompleted, FireIgnited, DishServed, OrderPlaced };

std::string_view to_string(WorldEventKind kind);

struct WorldEvent {
  WorldEventKind kind = WorldEventKind::SubtaskCompleted;
  std::uint64_t tick = 0;
  int agent = -1;
  std::optional<Behavior> behavior;
  std::optional<Item> item;
  int cell = -1;
  bool operator==(const WorldEvent&) const = default;
};

struct StepResult {
  WorldState state;
  std::vector<WorldEvent> events;
};

struct StepOptions {
  bool ignite = true;  // planners simulate with a static fire layout
};

// Movement first (agent-index order, a cell taken by an earlier agent or
// still occupied blocks later ones), then object operations in agent-index
// order, then fire ignition. Illegal actions do nothing.
StepResult step(const WorldState& s, const std::vector<Action>& joint, StepOptions opt = {});

// An action guaranteed to leave the world unchanged for agent `i`.
Action noop_action(const WorldState& s, std::size_t i);

// Deterministic per-(seed, tick, cell) ignition draw in [0, 1).
double fire_draw(std::uint64_t seed, std::uint64_t tick, int cell);

// Observation.
inline constexpr int kObsChannels = 20;
inline constexpr int kInventorySize = 6;

// Channel layout: 0-7 non-floor tile kinds (Counter..ExtinguisherStation),
// 8-17 items (nine program items and DirtyPlate, whether on a surface or in
// an agent's hands), 18 fire, 19 agent.
int tile_channel(TileKind kind);
int item_channel(Item item);
inline constexpr int kFireChannel = 18;
inline constexpr int kAgentChannel = 19;

struct Observation {
  std::array<float, kObsChannels * kMaxCells> map{};
  std::array<float, kInventorySize> inventory{};

  float at(int channel, int r, int c) const {
    return map[static_cast<std::size_t>(channel * kMaxCells + WorldState::cell(r, c))];
  }
};

struct ObserveMode {
  std::optional<int> radius;  // Chebyshev radius; absent means full view
  static ObserveMode full() { return {}; }
  static ObserveMode partial(int r) { return ObserveMode{r}; }
};

Observation observe(const WorldState& s, std::size_t agent, ObserveMode mode = ObserveMode::full());

inline constexpr double kSubtaskReward = 0.2;
inline constexpr double kFinalReward = 1.0;

double reward(int correct_completions, bool final_completed);

// Map generation.
class GenerationFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MapConfig {
  int rows = kMaxSide;
  int cols = kMaxSide;
  int n_agents = 2;
  double wall_density = 0.1;
  std::vector<TileKind> stations = {TileKind::OnionSupply,   TileKind::TomatoSupply,
                                    TileKind::PlateStation,  TileKind::ChoppingBlock,
                                    TileKind::Sink,          TileKind::DeliveryStar,
                                    TileKind::ExtinguisherStation};
  double fire_prob = 0.0;
  std::array<bool, kOrderCount> orders{};
  std::vector<Item> counter_items;  // placed on free counters
  int initial_fires = 0;            // burning counters at tick 0
  int max_retries = 200;
};

WorldState generate_map(std::uint64_t seed, const MapConfig& cfg);

// Floor connected components (4-neighbour); -1 for non-floor cells.
std::array<int, kMaxCells> floor_components(const WorldState& s);

// Map text.
//   line 1:  "map <rows> <cols>"
//   line 2:  "orders <o> <t> <ot> fire_prob <p> fire_seed <n> tick <n> return <r> <c>"
//   grid:    one line per row, one char per tile (see tile_char), agents as
//            digits standing on floor
//   then any of: "item <r> <c> <Item>", "hold <agent> <Item>", "fire <r> <c>"
//   outside the grid, blank lines and lines starting with '#' are ignored.
std::string write_map(const WorldState& s);
WorldState read_map(const std::string& text);

// Plain grid rendering for logs.
std::string render(const WorldState& s);

}  // namespace pcook
