#include "pcook/planner.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace pcook {

std::vector<Item> task_items(const Behavior& task) {
  switch (task.kind) {
    case BehaviorKind::Pick: return {};
    case BehaviorKind::Chop:
    case BehaviorKind::Serve: return {task.args.at(0)};
    case BehaviorKind::Merge: {
      std::vector<Item> out = task.args;
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case BehaviorKind::WashDirtyPlate: return {Item::DirtyPlate};
    case BehaviorKind::PutOutFire: return {Item::FireExtinguisher};
  }
  return {};
}

namespace {

// Hand and surface codes.
constexpr std::uint8_t kNone = 0;
constexpr std::uint8_t kJunk = 1;
constexpr std::uint8_t kRel = 2;  // kRel + k is relevant item k

constexpr std::int8_t kWait = -1;

struct Node {
  std::array<std::uint64_t, 2> surf{};  // 2 bits per tracked surface
  std::array<std::uint8_t, 2> pos{};
  std::array<std::uint8_t, 2> hold{};

  std::uint8_t get(int t) const {
    return static_cast<std::uint8_t>((surf[static_cast<std::size_t>(t >> 5)] >> ((t & 31) * 2)) & 3U);
  }
  void set(int t, std::uint8_t v) {
    auto& w = surf[static_cast<std::size_t>(t >> 5)];
    const int sh = (t & 31) * 2;
    w = (w & ~(std::uint64_t{3} << sh)) | (std::uint64_t{v} << sh);
  }
  bool operator==(const Node&) const = default;
};

struct NodeHash {
  std::size_t operator()(const Node& n) const {
    std::uint64_t h = n.surf[0] * 0x9e3779b97f4a7c15ULL;
    h ^= (n.surf[1] + 0x632be59bd9b4e019ULL) * 0xbf58476d1ce4e5b9ULL;
    h ^= (static_cast<std::uint64_t>(n.pos[0]) | static_cast<std::uint64_t>(n.pos[1]) << 8 |
          static_cast<std::uint64_t>(n.hold[0]) << 16 | static_cast<std::uint64_t>(n.hold[1]) << 24) *
         0x94d049bb133111ebULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

enum class OpResult { Nothing, Changed, Goal };

class Search {
 public:
  Search(const WorldState& w, int lead, int helper, const Behavior& task, SearchLimits limits)
      : w_(w), task_(task), limits_(limits), rel_(task_items(task)) {
    if (lead < 0 || static_cast<std::size_t>(lead) >= w.agents.size()) throw std::out_of_range("lead");
    pair_ = helper >= 0;
    if (pair_ && (helper == lead || static_cast<std::size_t>(helper) >= w.agents.size())) {
      throw std::out_of_range("helper");
    }
    n_ = pair_ ? 2 : 1;
    agent_[0] = pair_ ? std::min(lead, helper) : lead;
    agent_[1] = pair_ ? std::max(lead, helper) : -1;
    lead_slot_ = agent_[0] == lead ? 0 : 1;
    for (std::size_t i = 0; i < w.agents.size(); ++i) {
      const int id = static_cast<int>(i);
      if (id != agent_[0] && id != agent_[1]) frozen_ |= std::uint64_t{1} << w.agent_cell(i);
    }
    track_.fill(-1);
    for (int c = 0; c < kMaxCells; ++c) {
      const int r = WorldState::row_of(c);
      const int col = WorldState::col_of(c);
      if (!w.in_bounds(r, col)) continue;
      const Tile& t = w.at(c);
      if (!is_surface(t.kind) || t.on_fire) continue;
      const std::uint8_t code = t.item ? code_of(*t.item) : kNone;
      if (t.item && code == kJunk) continue;  // unrelated objects stay put
      bool tracked = false;
      if (pair_) {
        tracked = touches_floor(c);
      } else {
        tracked = code != kNone || (task.kind == BehaviorKind::Chop && t.kind == TileKind::ChoppingBlock);
      }
      if (tracked) {
        if (n_tracked_ >= 64) throw std::logic_error("too many tracked surfaces");
        track_[static_cast<std::size_t>(c)] = n_tracked_++;
        initial_surf_.push_back(code);
      } else {
        spare_[static_cast<std::size_t>(c)] = true;
      }
    }
  }

  JointPlan run() {
    JointPlan out;
    out.agents = {agent_[lead_slot_]};
    if (pair_) out.agents.push_back(agent_[1 - lead_slot_]);

    Node start;
    for (int k = 0; k < n_; ++k) {
      const auto& a = w_.agents[static_cast<std::size_t>(agent_[k])];
      start.pos[k] = static_cast<std::uint8_t>(w_.agent_cell(static_cast<std::size_t>(agent_[k])));
      start.hold[k] = a.holding ? code_of(*a.holding) : kNone;
      if (start.hold[k] == kJunk) junk_[k] = *a.holding;
    }
    for (int t = 0; t < n_tracked_; ++t) start.set(t, initial_surf_[static_cast<std::size_t>(t)]);
    prepare_bounds();

    // A* over ticks with a consistent bound, so the first goal taken from
    // the queue is a shortest plan.
    std::vector<std::vector<int>> bucket(static_cast<std::size_t>(limits_.horizon) + 2);
    auto push = [&](int v, int f) { bucket[static_cast<std::size_t>(f)].push_back(v); };
    const int h0 = bound(start);
    if (h0 > limits_.horizon) return out;
    record(start, -1, {kWait, kWait}, 0, false);
    seen_.reserve(1024);
    seen_.emplace(start, 0);
    push(0, h0);

    std::vector<std::int8_t> cands[2];
    for (int f = 0; f <= limits_.horizon; ++f) {
      auto& b = bucket[static_cast<std::size_t>(f)];
      while (!b.empty()) {
        const int v = b.back();
        b.pop_back();
        const Rec& rec = recs_[static_cast<std::size_t>(v)];
        if (rec.goal) {
          finish(out, v);
          return out;
        }
        if (rec.closed || rec.g + rec.h != f) continue;
        recs_[static_cast<std::size_t>(v)].closed = true;
        out.expanded++;
        const Node cur = rec.node;
        const int g = rec.g;
        for (int k = 0; k < n_; ++k) candidates(cur, k, cands[k]);
        if (!pair_) cands[1] = {kWait};
        for (std::int8_t c0 : cands[0]) {
          for (std::int8_t c1 : cands[1]) {
            Node next = cur;
            if (apply(next, {c0, c1})) {
              if (g + 1 <= limits_.horizon) push(record(next, v, {c0, c1}, g + 1, true), g + 1);
              continue;
            }
            if (next == cur) continue;
            const int h = bound(next);
            if (g + 1 + h > limits_.horizon) continue;
            auto it = seen_.find(next);
            if (it != seen_.end()) {
              Rec& old = recs_[static_cast<std::size_t>(it->second)];
              if (old.closed || old.g <= g + 1) continue;
              old.g = g + 1;
              old.parent = v;
              old.choice = {c0, c1};
              old.h = h;
              push(it->second, g + 1 + h);
              continue;
            }
            if (recs_.size() >= limits_.max_nodes) {
              out.truncated = true;
              return out;
            }
            const int id = record(next, v, {c0, c1}, g + 1, false);
            seen_.emplace(next, id);
            push(id, g + 1 + h);
          }
        }
      }
    }
    return out;
  }

 private:
  std::uint8_t code_of(Item item) const {
    for (std::size_t k = 0; k < rel_.size(); ++k) {
      if (rel_[k] == item) return static_cast<std::uint8_t>(kRel + k);
    }
    return kJunk;
  }

  Item rel_item(std::uint8_t code) const { return rel_[static_cast<std::size_t>(code - kRel)]; }

  bool touches_floor(int c) const {
    for (int d = 0; d < 4; ++d) {
      const int n = w_.neighbor(c, static_cast<Dir>(d));
      if (n >= 0 && w_.at(n).kind == TileKind::Floor) return true;
    }
    return false;
  }

  bool walkable(int c) const {
    return c >= 0 && w_.at(c).kind == TileKind::Floor && (frozen_ >> c & 1U) == 0;
  }

  bool is_lead(int k) const { return k == lead_slot_; }

  // Could finishing `task` happen with this hand toward cell `c`?
  bool goal_op(const Node& n, int k, int c, Op& op) const {
    const Tile& t = w_.at(c);
    const std::uint8_t h = n.hold[k];
    const int tr = track_[static_cast<std::size_t>(c)];
    switch (task_.kind) {
      case BehaviorKind::Pick:
        op = Op::Pick;
        return h == kNone && !t.on_fire && supply_item(t.kind) == task_.args[0];
      case BehaviorKind::Chop:
        op = Op::Interact;
        return t.kind == TileKind::ChoppingBlock && tr >= 0 && n.get(tr) == kRel;
      case BehaviorKind::Merge: {
        op = Op::Merge;
        if (h < kRel || tr < 0 || n.get(tr) < kRel) return false;
        const Item a = rel_item(h);
        const Item b = rel_item(n.get(tr));
        return merge_result(a, b) && same_subtask(task_, merge(a, b));
      }
      case BehaviorKind::Serve: {
        op = Op::Serve;
        const auto slot = order_slot(task_.args[0]);
        return h == kRel && t.kind == TileKind::DeliveryStar && !t.on_fire && is_servable(task_.args[0]) &&
               slot && w_.orders[static_cast<std::size_t>(*slot)];
      }
      case BehaviorKind::WashDirtyPlate:
        op = Op::Interact;
        return h == kRel && t.kind == TileKind::Sink && !t.on_fire;
      case BehaviorKind::PutOutFire:
        op = Op::Interact;
        return h == kRel && t.on_fire;
    }
    return false;
  }

  static std::int8_t code(Op op, int d) { return static_cast<std::int8_t>(Action{op, static_cast<Dir>(d)}.encode()); }

  void candidates(const Node& n, int k, std::vector<std::int8_t>& out) const {
    out.clear();
    const int p = n.pos[k];
    const std::uint8_t h = n.hold[k];
    for (int d = 0; d < 4; ++d) {
      const int c = w_.neighbor(p, static_cast<Dir>(d));
      if (c < 0) continue;
      const Tile& t = w_.at(c);
      if (t.kind == TileKind::Floor) {
        if (walkable(c)) out.push_back(code(Op::Move, d));
        continue;
      }
      Op op;
      if (is_lead(k) && goal_op(n, k, c, op)) out.push_back(code(op, d));
      if (t.on_fire) continue;
      const int tr = track_[static_cast<std::size_t>(c)];
      if (h == kNone) {
        if (tr >= 0 && n.get(tr) >= kRel) out.push_back(code(Op::Pick, d));
        if (t.kind == TileKind::ExtinguisherStation && task_.kind == BehaviorKind::PutOutFire) {
          out.push_back(code(Op::Pick, d));
        }
      } else if (can_place(n, k, c)) {
        out.push_back(code(Op::Place, d));
      }
    }
    if (pair_) out.push_back(kWait);
  }

  bool can_place(const Node& n, int k, int c) const {
    const Tile& t = w_.at(c);
    if (t.on_fire) return false;
    const std::uint8_t h = n.hold[k];
    const int tr = track_[static_cast<std::size_t>(c)];
    if (h == kJunk) {
      if (tr >= 0) return n.get(tr) == kNone;
      if (spare_[static_cast<std::size_t>(c)]) return true;
      return t.kind == TileKind::ExtinguisherStation && junk_[k] == Item::FireExtinguisher;
    }
    if (tr < 0 || n.get(tr) != kNone) return false;
    // Alone, the only reason to put down a task item is to chop it.
    return pair_ || (task_.kind == BehaviorKind::Chop && t.kind == TileKind::ChoppingBlock);
  }

  // Advances `n` by one joint choice in agent-index order; true when the
  // lead finishes the task.
  bool apply(Node& n, std::array<std::int8_t, 2> ch) const {
    for (int k = 0; k < n_; ++k) {
      if (ch[k] == kWait) continue;
      const Action a = Action::decode(ch[k]);
      if (a.op != Op::Move) continue;
      const int c = w_.neighbor(n.pos[k], a.dir);
      if (!walkable(c)) continue;
      if (n_ == 2 && n.pos[1 - k] == c) continue;
      n.pos[k] = static_cast<std::uint8_t>(c);
    }
    for (int k = 0; k < n_; ++k) {
      if (ch[k] == kWait) continue;
      const Action a = Action::decode(ch[k]);
      if (a.op == Op::Move) continue;
      if (operate(n, k, a) == OpResult::Goal) return true;
    }
    return false;
  }

  OpResult operate(Node& n, int k, Action a) const {
    const int c = w_.neighbor(n.pos[k], a.dir);
    if (c < 0) return OpResult::Nothing;
    const Tile& t = w_.at(c);
    Op gop;
    if (is_lead(k) && goal_op(n, k, c, gop) && gop == a.op) return OpResult::Goal;
    const int tr = track_[static_cast<std::size_t>(c)];
    std::uint8_t& h = n.hold[k];
    if (t.on_fire) return OpResult::Nothing;
    if (a.op == Op::Pick && h == kNone) {
      if (tr >= 0 && n.get(tr) >= kRel) {
        h = n.get(tr);
        n.set(tr, kNone);
        return OpResult::Changed;
      }
      if (t.kind == TileKind::ExtinguisherStation && task_.kind == BehaviorKind::PutOutFire) {
        h = kRel;
        return OpResult::Changed;
      }
    } else if (a.op == Op::Place && h != kNone && can_place(n, k, c)) {
      if (tr >= 0) n.set(tr, h);
      h = kNone;
      return OpResult::Changed;
    }
    return OpResult::Nothing;
  }

  int record(const Node& n, int parent, std::array<std::int8_t, 2> ch, int g, bool goal) {
    recs_.push_back(Rec{n, parent, ch, g, goal ? 0 : bound(n), goal, false});
    return static_cast<int>(recs_.size()) - 1;
  }

  void finish(JointPlan& out, int goal) const {
    std::vector<int> chain;
    for (int v = goal; recs_[static_cast<std::size_t>(v)].parent >= 0; v = recs_[static_cast<std::size_t>(v)].parent) {
      chain.push_back(v);
    }
    std::reverse(chain.begin(), chain.end());
    out.found = true;
    out.cost = static_cast<int>(chain.size());
    for (int v : chain) {
      const Rec& r = recs_[static_cast<std::size_t>(v)];
      const Node& before = recs_[static_cast<std::size_t>(r.parent)].node;
      std::vector<Action> joint;
      for (int slot : {lead_slot_, 1 - lead_slot_}) {
        if (slot >= n_) continue;
        if (r.choice[slot] == kWait) {
          joint.push_back(before.hold[slot] != kNone ? Action{Op::Pick, Dir::Up} : Action{Op::Place, Dir::Up});
        } else {
          joint.push_back(Action::decode(r.choice[slot]));
        }
      }
      out.steps.push_back(std::move(joint));
    }
  }

  // Lower bounds on the ticks still needed. Every term changes by at most
  // one per tick, which keeps the combined bound consistent.
  void prepare_bounds() {
    for (auto& row : dist_) row.fill(kFar);
    for (int src = 0; src < kMaxCells; ++src) {
      if (!walkable(src)) continue;
      auto& d = dist_[static_cast<std::size_t>(src)];
      std::vector<int> q{src};
      d[static_cast<std::size_t>(src)] = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (int dir = 0; dir < 4; ++dir) {
          const int n = w_.neighbor(q[i], static_cast<Dir>(dir));
          if (!walkable(n) || d[static_cast<std::size_t>(n)] != kFar) continue;
          d[static_cast<std::size_t>(n)] = static_cast<std::uint8_t>(d[static_cast<std::size_t>(q[i])] + 1);
          q.push_back(n);
        }
      }
    }

    std::vector<int> targets;
    for (int c = 0; c < kMaxCells; ++c) {
      if (!w_.in_bounds(WorldState::row_of(c), WorldState::col_of(c))) continue;
      const Tile& t = w_.at(c);
      const bool tracked = track_[static_cast<std::size_t>(c)] >= 0;
      bool target = false;
      switch (task_.kind) {
        case BehaviorKind::Pick: target = !t.on_fire && supply_item(t.kind) == task_.args[0]; break;
        case BehaviorKind::Chop: target = tracked && t.kind == TileKind::ChoppingBlock; break;
        case BehaviorKind::Merge: target = tracked; break;
        case BehaviorKind::Serve: target = !t.on_fire && t.kind == TileKind::DeliveryStar; break;
        case BehaviorKind::WashDirtyPlate: target = !t.on_fire && t.kind == TileKind::Sink; break;
        case BehaviorKind::PutOutFire: target = t.on_fire; break;
      }
      if (target) targets.push_back(c);
      if (tracked || (task_.kind == BehaviorKind::PutOutFire && !t.on_fire &&
                      t.kind == TileKind::ExtinguisherStation)) {
        sites_.push_back(Site{c, tracked ? track_[static_cast<std::size_t>(c)] : -1, adjacent_floor(c)});
      }
    }

    auto near = [&](const std::vector<int>& cells) {
      std::array<int, kMaxCells> out;
      out.fill(kInf);
      for (int c : cells) {
        for (int f : adjacent_floor(c)) {
          for (int p = 0; p < kMaxCells; ++p) {
            const int d = dist_[static_cast<std::size_t>(f)][static_cast<std::size_t>(p)];
            if (d != kFar) out[static_cast<std::size_t>(p)] = std::min(out[static_cast<std::size_t>(p)], d);
          }
        }
      }
      return out;
    };
    const auto to_goal = near(targets);
    for (int p = 0; p < kMaxCells; ++p) {
      lead_ready_[static_cast<std::size_t>(p)] = to_goal[static_cast<std::size_t>(p)] + 1;
      lead_fetch_[static_cast<std::size_t>(p)] = kInf;
    }
    for (const Site& s : sites_) {
      for (int f : s.floor) {
        const int via = 1 + lead_ready_[static_cast<std::size_t>(f)];
        for (int p = 0; p < kMaxCells; ++p) {
          const int d = dist_[static_cast<std::size_t>(f)][static_cast<std::size_t>(p)];
          if (d != kFar) lead_fetch_[static_cast<std::size_t>(p)] = std::min(lead_fetch_[static_cast<std::size_t>(p)], d + via);
        }
      }
    }

    // Carrying the key item: it moves one cell per tick in someone's hands,
    // or crosses a shared surface in two (place, take).
    carry_.fill(kInf);
    switch (task_.kind) {
      case BehaviorKind::Chop: carry_from(targets, 2); break;
      case BehaviorKind::Serve:
      case BehaviorKind::WashDirtyPlate:
      case BehaviorKind::PutOutFire: carry_from(targets, 1); break;
      case BehaviorKind::Merge:
        if (rel_.size() == 2) prepare_meeting();
        return;
      default: return;
    }
    item_bound_ = true;
  }

  // The two merge inputs move one step per tick each (floor to floor, or
  // on and off a surface), and must end one step apart.
  void prepare_meeting() {
    for (auto& row : meet_) row.fill(kFar);
    auto node = [&](int c) { return walkable(c) || (c >= 0 && track_[static_cast<std::size_t>(c)] >= 0); };
    for (int src = 0; src < kMaxCells; ++src) {
      if (!node(src)) continue;
      auto& d = meet_[static_cast<std::size_t>(src)];
      std::vector<int> q{src};
      d[static_cast<std::size_t>(src)] = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const bool from_floor = walkable(q[i]);
        for (int dir = 0; dir < 4; ++dir) {
          const int n = w_.neighbor(q[i], static_cast<Dir>(dir));
          if (!node(n) || d[static_cast<std::size_t>(n)] != kFar) continue;
          if (!from_floor && !walkable(n)) continue;
          d[static_cast<std::size_t>(n)] = static_cast<std::uint8_t>(d[static_cast<std::size_t>(q[i])] + 1);
          q.push_back(n);
        }
      }
    }
    meeting_ = true;
  }

  int meeting_bound(const Node& n) const {
    std::array<std::vector<int>, 2> where;
    for (int k = 0; k < n_; ++k) {
      if (n.hold[k] >= kRel) where[static_cast<std::size_t>(n.hold[k] - kRel)].push_back(n.pos[k]);
    }
    for (const Site& s : sites_) {
      const std::uint8_t v = n.get(s.track);
      if (v >= kRel) where[static_cast<std::size_t>(v - kRel)].push_back(s.cell);
    }
    int best = kInf;
    for (int x : where[0]) {
      for (int y : where[1]) {
        const int d = meet_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        if (d != kFar) best = std::min(best, d / 2 + 1);
      }
    }
    return best;
  }

  std::vector<int> adjacent_floor(int c) const {
    std::vector<int> out;
    for (int d = 0; d < 4; ++d) {
      const int n = w_.neighbor(c, static_cast<Dir>(d));
      if (walkable(n)) out.push_back(n);
    }
    return out;
  }

  void carry_from(const std::vector<int>& targets, int extra) {
    std::array<int, kMaxCells> d;
    d.fill(kInf);
    for (int c : targets) {
      for (int f : adjacent_floor(c)) d[static_cast<std::size_t>(f)] = 0;
    }
    // Small graph; relax until stable.
    for (bool changed = true; changed;) {
      changed = false;
      for (int p = 0; p < kMaxCells; ++p) {
        if (!walkable(p)) continue;
        int best = d[static_cast<std::size_t>(p)];
        for (int dir = 0; dir < 4; ++dir) {
          const int n = w_.neighbor(p, static_cast<Dir>(dir));
          if (walkable(n)) best = std::min(best, d[static_cast<std::size_t>(n)] + 1);
        }
        for (const Site& s : sites_) {
          if (s.track < 0 || std::find(s.floor.begin(), s.floor.end(), p) == s.floor.end()) continue;
          for (int f : s.floor) best = std::min(best, d[static_cast<std::size_t>(f)] + 2);
        }
        if (best < d[static_cast<std::size_t>(p)]) {
          d[static_cast<std::size_t>(p)] = best;
          changed = true;
        }
      }
    }
    for (int p = 0; p < kMaxCells; ++p) {
      if (d[static_cast<std::size_t>(p)] < kInf) carry_[static_cast<std::size_t>(p)] = d[static_cast<std::size_t>(p)] + extra;
    }
  }

  int item_bound(const Node& n) const {
    int best = kInf;
    for (int k = 0; k < n_; ++k) {
      if (n.hold[k] == kRel) best = std::min(best, carry_[n.pos[k]]);
    }
    for (const Site& s : sites_) {
      if (s.track >= 0 && n.get(s.track) != kRel) continue;
      if (task_.kind == BehaviorKind::Chop && w_.at(s.cell).kind == TileKind::ChoppingBlock) {
        best = std::min(best, 1);
        continue;
      }
      for (int f : s.floor) {
        int reach = kInf;
        for (int k = 0; k < n_; ++k) {
          const int d = dist_[n.pos[k]][static_cast<std::size_t>(f)];
          if (d != kFar) reach = std::min(reach, d);
        }
        best = std::min(best, reach + 1 + carry_[static_cast<std::size_t>(f)]);
      }
    }
    return best;
  }

  int bound(const Node& n) const {
    const int k = lead_slot_;
    const int p = n.pos[k];
    const std::uint8_t h = n.hold[k];
    int b = 0;
    switch (task_.kind) {
      case BehaviorKind::Pick: b = lead_ready_[p] + (h != kNone ? 1 : 0); break;
      case BehaviorKind::Chop: b = lead_ready_[p]; break;
      case BehaviorKind::Merge: b = h >= kRel ? lead_ready_[p] : lead_fetch_[p] + (h == kJunk ? 1 : 0); break;
      default: b = h == kRel ? lead_ready_[p] : lead_fetch_[p] + (h == kJunk ? 1 : 0); break;
    }
    if (item_bound_) b = std::max(b, item_bound(n));
    if (meeting_) b = std::max(b, meeting_bound(n));
    return std::min(b, kInf);
  }

  struct Rec {
    Node node;
    int parent;
    std::array<std::int8_t, 2> choice;
    int g;
    int h;
    bool goal;
    bool closed;
  };

  struct Site {
    int cell;
    int track;  // -1 for an extinguisher station
    std::vector<int> floor;
  };

  static constexpr std::uint8_t kFar = 255;
  static constexpr int kInf = 1 << 20;

  const WorldState& w_;
  Behavior task_;
  SearchLimits limits_;
  std::vector<Item> rel_;
  bool pair_ = false;
  int n_ = 1;
  std::array<int, 2> agent_{};
  int lead_slot_ = 0;
  std::array<std::optional<Item>, 2> junk_{};
  std::uint64_t frozen_ = 0;
  std::array<int, kMaxCells> track_{};
  std::array<bool, kMaxCells> spare_{};
  int n_tracked_ = 0;
  std::vector<std::uint8_t> initial_surf_;

  std::array<std::array<std::uint8_t, kMaxCells>, kMaxCells> dist_{};
  std::array<int, kMaxCells> lead_ready_{};
  std::array<int, kMaxCells> lead_fetch_{};
  std::array<int, kMaxCells> carry_{};
  std::vector<Site> sites_;
  bool item_bound_ = false;
  std::array<std::array<std::uint8_t, kMaxCells>, kMaxCells> meet_{};
  bool meeting_ = false;

  std::vector<Rec> recs_;
  std::unordered_map<Node, int, NodeHash> seen_;
};

}  // namespace

JointPlan plan_solo(const WorldState& s, int lead, const Behavior& task, SearchLimits limits) {
  return Search(s, lead, -1, task, limits).run();
}

JointPlan plan_pair(const WorldState& s, int lead, int helper, const Behavior& task, SearchLimits limits) {
  return Search(s, lead, helper, task, limits).run();
}

bool plan_possible(const WorldState& s, int lead, const std::vector<int>& group, const Behavior& task) {
  const auto comp = floor_components(s);
  const int lead_comp = comp[static_cast<std::size_t>(s.agent_cell(static_cast<std::size_t>(lead)))];
  std::vector<int> comps;
  for (int g : group) comps.push_back(comp[static_cast<std::size_t>(s.agent_cell(static_cast<std::size_t>(g)))]);

  auto touches = [&](int c, auto pred) {
    for (int d = 0; d < 4; ++d) {
      const int n = s.neighbor(c, static_cast<Dir>(d));
      if (n >= 0 && comp[static_cast<std::size_t>(n)] >= 0 && pred(comp[static_cast<std::size_t>(n)])) return true;
    }
    return false;
  };
  auto by_lead = [&](int c) { return touches(c, [&](int k) { return k == lead_comp; }); };
  auto by_group = [&](int c) {
    return touches(c, [&](int k) { return std::find(comps.begin(), comps.end(), k) != comps.end(); });
  };
  auto target_exists = [&](auto pred) {
    for (int r = 0; r < s.rows; ++r) {
      for (int c = 0; c < s.cols; ++c) {
        const int cell = WorldState::cell(r, c);
        if (pred(s.at(cell)) && by_lead(cell)) return true;
      }
    }
    return false;
  };
  auto item_count = [&](Item item) {
    int n = 0;
    for (int g : group) n += s.agents[static_cast<std::size_t>(g)].holding == item ? 1 : 0;
    for (int r = 0; r < s.rows; ++r) {
      for (int c = 0; c < s.cols; ++c) {
        const int cell = WorldState::cell(r, c);
        const Tile& t = s.at(cell);
        if (is_surface(t.kind) && !t.on_fire && t.item == item && by_group(cell)) n++;
      }
    }
    return n;
  };

  switch (task.kind) {
    case BehaviorKind::Pick: {
      const Item want = task.args.at(0);
      return target_exists([&](const Tile& t) { return !t.on_fire && supply_item(t.kind) == want; });
    }
    case BehaviorKind::Chop:
      return item_count(task.args.at(0)) > 0 &&
             target_exists([](const Tile& t) { return t.kind == TileKind::ChoppingBlock && !t.on_fire; });
    case BehaviorKind::Merge: {
      const Item a = task.args.at(0);
      const Item b = task.args.at(1);
      if (!merge_result(a, b)) return false;
      const bool items = a == b ? item_count(a) >= 2 : item_count(a) > 0 && item_count(b) > 0;
      return items && target_exists([](const Tile& t) { return is_surface(t.kind) && !t.on_fire; });
    }
    case BehaviorKind::Serve: {
      const Item dish = task.args.at(0);
      const auto slot = order_slot(dish);
      if (!is_servable(dish) || !slot || !s.orders[static_cast<std::size_t>(*slot)]) return false;
      return item_count(dish) > 0 &&
             target_exists([](const Tile& t) { return t.kind == TileKind::DeliveryStar && !t.on_fire; });
    }
    case BehaviorKind::WashDirtyPlate:
      return item_count(Item::DirtyPlate) > 0 &&
             target_exists([](const Tile& t) { return t.kind == TileKind::Sink && !t.on_fire; });
    case BehaviorKind::PutOutFire: {
      if (!target_exists([](const Tile& t) { return t.on_fire; })) return false;
      if (item_count(Item::FireExtinguisher) > 0) return true;
      for (int r = 0; r < s.rows; ++r) {
        for (int c = 0; c < s.cols; ++c) {
          const int cell = WorldState::cell(r, c);
          if (s.at(cell).kind == TileKind::ExtinguisherStation && !s.at(cell).on_fire && by_group(cell)) return true;
        }
      }
      return false;
    }
  }
  return false;
}

}  // namespace pcook
