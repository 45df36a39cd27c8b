#include "pcook/world.hpp"

#include <cmath>

namespace pcook {

namespace {

constexpr std::array<std::string_view, kTileKindCount> kTileNames = {
    "Floor", "Counter", "OnionSupply", "TomatoSupply", "PlateStation",
    "ChoppingBlock", "Sink", "DeliveryStar", "ExtinguisherStation"};
constexpr std::array<char, kTileKindCount> kTileChars = {'.', '#', 'O', 'T', 'P', 'C', 'S', '*', 'E'};
constexpr std::array<std::string_view, 6> kOpNames = {"Move", "Pick", "Place", "Serve", "Merge", "Interact"};
constexpr std::array<std::string_view, 4> kDirNames = {"Up", "Down", "Left", "Right"};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Stepper {
 public:
  Stepper(const WorldState& s, StepOptions opt) : s_(s), opt_(opt) {}

  StepResult run(const std::vector<Action>& joint) {
    if (joint.size() != s_.agents.size()) throw std::invalid_argument("joint action size mismatch");
    for (std::size_t i = 0; i < joint.size(); ++i) {
      if (joint[i].op == Op::Move) move(i, joint[i].dir);
    }
    for (std::size_t i = 0; i < joint.size(); ++i) {
      if (joint[i].op != Op::Move) operate(i, joint[i]);
    }
    if (opt_.ignite) ignite();
    s_.tick++;
    return StepResult{std::move(s_), std::move(events_)};
  }

 private:
  void emit(WorldEventKind kind, int agent, std::optional<Item> item, int cell) {
    WorldEvent e;
    e.kind = kind;
    e.tick = s_.tick;
    e.agent = agent;
    e.item = item;
    e.cell = cell;
    events_.push_back(std::move(e));
  }

  void completed(int agent, const Behavior& b, std::optional<Item> item, int cell) {
    emit(WorldEventKind::SubtaskCompleted, agent, item, cell);
    events_.back().behavior = b;
  }

  void move(std::size_t i, Dir d) {
    const int target = s_.neighbor(s_.agent_cell(i), d);
    if (target < 0 || s_.at(target).kind != TileKind::Floor || s_.agent_at(target) >= 0) return;
    s_.agents[i].row = WorldState::row_of(target);
    s_.agents[i].col = WorldState::col_of(target);
  }

  void operate(std::size_t i, Action a) {
    const int target = s_.neighbor(s_.agent_cell(i), a.dir);
    if (target < 0) return;
    Tile& t = s_.at(target);
    AgentState& ag = s_.agents[i];
    const int who = static_cast<int>(i);
    switch (a.op) {
      case Op::Move: return;
      case Op::Pick: {
        if (ag.holding || t.on_fire) return;
        if (const auto sup = supply_item(t.kind)) {
          ag.holding = *sup;
          if (is_dsl_item(*sup)) completed(who, pick(*sup), *sup, target);
        } else if (is_surface(t.kind) && t.item) {
          ag.holding = t.item;
          t.item.reset();
        }
        return;
      }
      case Op::Place: {
        if (!ag.holding || t.on_fire) return;
        if (is_surface(t.kind) && !t.item) {
          t.item = ag.holding;
          ag.holding.reset();
        } else if (t.kind == TileKind::ExtinguisherStation && ag.holding == Item::FireExtinguisher) {
          ag.holding.reset();
        }
        return;
      }
      case Op::Serve: {
        if (t.kind != TileKind::DeliveryStar || t.on_fire || !ag.holding || !is_servable(*ag.holding)) return;
        const auto slot = order_slot(*ag.holding);
        if (!slot || !s_.orders[static_cast<std::size_t>(*slot)]) return;
        const Item dish = *ag.holding;
        ag.holding.reset();
        s_.orders[static_cast<std::size_t>(*slot)] = false;
        completed(who, serve(dish), dish, target);
        emit(WorldEventKind::DishServed, who, dish, target);
        return_dirty_plate();
        return;
      }
      case Op::Merge: {
        if (!ag.holding || t.on_fire || !is_surface(t.kind) || !t.item) return;
        const auto result = merge_result(*ag.holding, *t.item);
        if (!result) return;
        const Behavior b = merge(*ag.holding, *t.item);
        ag.holding = *result;
        t.item.reset();
        completed(who, b, *result, target);
        return;
      }
      case Op::Interact: {
        if (t.on_fire) {
          if (ag.holding == Item::FireExtinguisher) {
            t.on_fire = false;
            completed(who, put_out_fire(), std::nullopt, target);
          }
          return;
        }
        if (t.kind == TileKind::ChoppingBlock && t.item && is_fresh(*t.item)) {
          const Item fresh = *t.item;
          t.item = chopped_form(fresh);
          completed(who, chop(fresh), t.item, target);
        } else if (t.kind == TileKind::Sink && ag.holding == Item::DirtyPlate) {
          ag.holding = Item::Plate;
          completed(who, wash_dirty_plate(), Item::Plate, target);
        }
        return;
      }
    }
  }

  // The dirty plate lands on the return counter, or the free counter
  // nearest to it (row-major on ties). It is lost when every counter is
  // taken.
  void return_dirty_plate() {
    if (s_.return_counter < 0) return;
    int best = -1;
    int best_d = 1 << 30;
    const int rr = WorldState::row_of(s_.return_counter);
    const int rc = WorldState::col_of(s_.return_counter);
    for (int r = 0; r < s_.rows; ++r) {
      for (int c = 0; c < s_.cols; ++c) {
        const Tile& t = s_.at(r, c);
        if (t.kind != TileKind::Counter || t.item || t.on_fire) continue;
        const int d = std::abs(r - rr) + std::abs(c - rc);
        if (d < best_d) {
          best_d = d;
          best = WorldState::cell(r, c);
        }
      }
    }
    if (best >= 0) s_.at(best).item = Item::DirtyPlate;
  }

  void ignite() {
    if (s_.fire_prob <= 0.0) return;
    for (int r = 0; r < s_.rows; ++r) {
      for (int c = 0; c < s_.cols; ++c) {
        Tile& t = s_.at(r, c);
        if (t.kind == TileKind::Floor || t.on_fire) continue;
        const int cell = WorldState::cell(r, c);
        if (fire_draw(s_.fire_seed, s_.tick, cell) < s_.fire_prob) {
          t.on_fire = true;
          emit(WorldEventKind::FireIgnited, -1, std::nullopt, cell);
        }
      }
    }
  }

  WorldState s_;
  StepOptions opt_;
  std::vector<WorldEvent> events_;
};

}  // namespace

std::string_view tile_name(TileKind kind) { return kTileNames[static_cast<std::size_t>(kind)]; }
char tile_char(TileKind kind) { return kTileChars[static_cast<std::size_t>(kind)]; }

std::optional<TileKind> tile_from_char(char c) {
  for (std::size_t k = 0; k < kTileChars.size(); ++k) {
    if (kTileChars[k] == c) return static_cast<TileKind>(k);
  }
  return std::nullopt;
}

std::optional<Item> supply_item(TileKind kind) {
  switch (kind) {
    case TileKind::OnionSupply: return Item::FreshOnion;
    case TileKind::TomatoSupply: return Item::FreshTomato;
    case TileKind::PlateStation: return Item::Plate;
    case TileKind::ExtinguisherStation: return Item::FireExtinguisher;
    default: return std::nullopt;
  }
}

Action Action::decode(int code) {
  if (code < 0 || code >= kActionCount) throw std::out_of_range("action code out of range");
  return Action{static_cast<Op>(code / 4), static_cast<Dir>(code % 4)};
}

std::string to_string(Action a) {
  return std::string(kOpNames[static_cast<std::size_t>(a.op)]) + "." +
         std::string(kDirNames[static_cast<std::size_t>(a.dir)]);
}

std::optional<Action> action_from_string(std::string_view text) {
  for (int code = 0; code < kActionCount; ++code) {
    const Action a = Action::decode(code);
    if (to_string(a) == text) return a;
  }
  return std::nullopt;
}

int WorldState::neighbor(int cell_index, Dir d) const {
  const int r = row_of(cell_index) + kDirRow[static_cast<int>(d)];
  const int c = col_of(cell_index) + kDirCol[static_cast<int>(d)];
  return in_bounds(r, c) ? cell(r, c) : -1;
}

int WorldState::agent_at(int cell_index) const {
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (agent_cell(i) == cell_index) return static_cast<int>(i);
  }
  return -1;
}

std::string_view to_string(WorldEventKind kind) {
  switch (kind) {
    case WorldEventKind::SubtaskCompleted: return "subtask";
    case WorldEventKind::FireIgnited: return "fire";
    case WorldEventKind::DishServed: return "served";
    case WorldEventKind::OrderPlaced: return "order";
  }
  return "?";
}

StepResult step(const WorldState& s, const std::vector<Action>& joint, StepOptions opt) {
  return Stepper(s, opt).run(joint);
}

Action noop_action(const WorldState& s, std::size_t i) {
  // Place needs something in hand and Pick needs empty hands.
  return s.agents[i].holding ? Action{Op::Pick, Dir::Up} : Action{Op::Place, Dir::Up};
}

double fire_draw(std::uint64_t seed, std::uint64_t tick, int cell) {
  const std::uint64_t h = splitmix(splitmix(seed ^ 0x6a09e667f3bcc909ULL) ^ (tick * 0x100000001b3ULL) ^
                                   static_cast<std::uint64_t>(cell));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double reward(int correct_completions, bool final_completed) {
  return kSubtaskReward * correct_completions + (final_completed ? kFinalReward : 0.0);
}

}  // namespace pcook
