#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "pcook/world.hpp"

namespace pcook {

int tile_channel(TileKind kind) { return kind == TileKind::Floor ? -1 : static_cast<int>(kind) - 1; }

int item_channel(Item item) {
  if (item == Item::FireExtinguisher) return -1;
  return 8 + index_of(item);
}

Observation observe(const WorldState& s, std::size_t agent, ObserveMode mode) {
  Observation o;
  const AgentState& me = s.agents.at(agent);
  auto visible = [&](int r, int c) {
    return !mode.radius || std::max(std::abs(r - me.row), std::abs(c - me.col)) <= *mode.radius;
  };
  auto set = [&](int channel, int r, int c) {
    if (channel >= 0 && visible(r, c)) o.map[static_cast<std::size_t>(channel * kMaxCells + WorldState::cell(r, c))] = 1.0f;
  };
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const Tile& t = s.at(r, c);
      set(tile_channel(t.kind), r, c);
      if (t.item) set(item_channel(*t.item), r, c);
      if (t.on_fire) set(kFireChannel, r, c);
    }
  }
  for (const auto& a : s.agents) {
    set(kAgentChannel, a.row, a.col);
    if (a.holding) set(item_channel(*a.holding), a.row, a.col);
  }
  o.inventory = {static_cast<float>(me.row), static_cast<float>(me.col), me.holding ? 1.0f : 0.0f,
                 s.orders[0] ? 1.0f : 0.0f, s.orders[1] ? 1.0f : 0.0f, s.orders[2] ? 1.0f : 0.0f};
  return o;
}

std::array<int, kMaxCells> floor_components(const WorldState& s) {
  std::array<int, kMaxCells> comp;
  comp.fill(-1);
  int next = 0;
  std::vector<int> stack;
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const int start = WorldState::cell(r, c);
      if (s.at(start).kind != TileKind::Floor || comp[static_cast<std::size_t>(start)] >= 0) continue;
      comp[static_cast<std::size_t>(start)] = next;
      stack.push_back(start);
      while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        for (int d = 0; d < 4; ++d) {
          const int nb = s.neighbor(cur, static_cast<Dir>(d));
          if (nb < 0 || s.at(nb).kind != TileKind::Floor || comp[static_cast<std::size_t>(nb)] >= 0) continue;
          comp[static_cast<std::size_t>(nb)] = next;
          stack.push_back(nb);
        }
      }
      ++next;
    }
  }
  return comp;
}

namespace {

// Components of floor cells adjacent to `cell`.
std::vector<int> touching(const WorldState& s, const std::array<int, kMaxCells>& comp, int cell) {
  std::vector<int> out;
  for (int d = 0; d < 4; ++d) {
    const int nb = s.neighbor(cell, static_cast<Dir>(d));
    if (nb >= 0 && comp[static_cast<std::size_t>(nb)] >= 0) out.push_back(comp[static_cast<std::size_t>(nb)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool touches_any(const std::vector<int>& comps, const std::vector<int>& wanted) {
  return std::any_of(comps.begin(), comps.end(),
                     [&](int c) { return std::find(wanted.begin(), wanted.end(), c) != wanted.end(); });
}

std::optional<WorldState> attempt(std::mt19937_64& rng, const MapConfig& cfg) {
  WorldState s;
  s.rows = cfg.rows;
  s.cols = cfg.cols;
  s.orders = cfg.orders;
  s.fire_prob = cfg.fire_prob;
  s.fire_seed = rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const bool border = r == 0 || c == 0 || r == s.rows - 1 || c == s.cols - 1;
      const bool wall = !border && unit(rng) < cfg.wall_density;
      s.at(r, c).kind = border || wall ? TileKind::Counter : TileKind::Floor;
    }
  }
  const auto comp = floor_components(s);

  std::vector<int> floor;
  for (int cell = 0; cell < kMaxCells; ++cell) {
    if (comp[static_cast<std::size_t>(cell)] >= 0) floor.push_back(cell);
  }
  if (floor.size() < static_cast<std::size_t>(cfg.n_agents)) return std::nullopt;
  std::shuffle(floor.begin(), floor.end(), rng);
  std::vector<int> agent_comps;
  for (int i = 0; i < cfg.n_agents; ++i) {
    const int cell = floor[static_cast<std::size_t>(i)];
    s.agents.push_back(AgentState{WorldState::row_of(cell), WorldState::col_of(cell), std::nullopt});
    agent_comps.push_back(comp[static_cast<std::size_t>(cell)]);
  }
  std::sort(agent_comps.begin(), agent_comps.end());
  agent_comps.erase(std::unique(agent_comps.begin(), agent_comps.end()), agent_comps.end());

  // Stations go on non-corner border cells facing an agent's floor.
  std::vector<int> slots;
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const bool border = r == 0 || c == 0 || r == s.rows - 1 || c == s.cols - 1;
      const bool corner = (r == 0 || r == s.rows - 1) && (c == 0 || c == s.cols - 1);
      const int cell = WorldState::cell(r, c);
      if (border && !corner && touches_any(touching(s, comp, cell), agent_comps)) slots.push_back(cell);
    }
  }
  if (slots.size() < cfg.stations.size()) return std::nullopt;
  std::shuffle(slots.begin(), slots.end(), rng);
  for (std::size_t k = 0; k < cfg.stations.size(); ++k) s.at(slots[k]).kind = cfg.stations[k];

  // Every agent's component must touch a counter, and the agent components
  // must be linked through counters shared by two of them.
  std::vector<int> counters;
  std::vector<std::pair<int, int>> links;
  std::vector<bool> has_counter(agent_comps.size(), false);
  for (int cell = 0; cell < kMaxCells; ++cell) {
    if (!s.in_bounds(WorldState::row_of(cell), WorldState::col_of(cell))) continue;
    if (s.at(cell).kind != TileKind::Counter) continue;
    std::vector<int> t = touching(s, comp, cell);
    std::erase_if(t, [&](int c) { return std::find(agent_comps.begin(), agent_comps.end(), c) == agent_comps.end(); });
    if (t.empty()) continue;
    counters.push_back(cell);
    for (int c : t) {
      has_counter[static_cast<std::size_t>(std::find(agent_comps.begin(), agent_comps.end(), c) - agent_comps.begin())] = true;
    }
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = a + 1; b < t.size(); ++b) links.emplace_back(t[a], t[b]);
    }
  }
  if (std::find(has_counter.begin(), has_counter.end(), false) != has_counter.end()) return std::nullopt;
  std::vector<int> reached = {agent_comps.front()};
  for (bool grew = true; grew;) {
    grew = false;
    for (auto [a, b] : links) {
      const bool ha = std::find(reached.begin(), reached.end(), a) != reached.end();
      const bool hb = std::find(reached.begin(), reached.end(), b) != reached.end();
      if (ha != hb) {
        reached.push_back(ha ? b : a);
        grew = true;
      }
    }
  }
  if (reached.size() != agent_comps.size()) return std::nullopt;

  // Return counter: the usable counter closest to the first sink (or the
  // delivery star), row-major on ties.
  int anchor = -1;
  for (TileKind want : {TileKind::Sink, TileKind::DeliveryStar}) {
    for (int cell = 0; cell < kMaxCells && anchor < 0; ++cell) {
      if (s.in_bounds(WorldState::row_of(cell), WorldState::col_of(cell)) && s.at(cell).kind == want) anchor = cell;
    }
    if (anchor >= 0) break;
  }
  if (anchor >= 0 && !counters.empty()) {
    int best_d = 1 << 30;
    for (int cell : counters) {
      const int d = std::abs(WorldState::row_of(cell) - WorldState::row_of(anchor)) +
                    std::abs(WorldState::col_of(cell) - WorldState::col_of(anchor));
      if (d < best_d) {
        best_d = d;
        s.return_counter = cell;
      }
    }
  }

  std::vector<int> free_counters;
  for (int cell : counters) {
    if (cell != s.return_counter) free_counters.push_back(cell);
  }
  if (free_counters.size() < cfg.counter_items.size() + static_cast<std::size_t>(cfg.initial_fires)) {
    return std::nullopt;
  }
  std::shuffle(free_counters.begin(), free_counters.end(), rng);
  std::size_t k = 0;
  for (Item item : cfg.counter_items) {
    s.at(free_counters[k++]).item = item;
  }
  for (int f = 0; f < cfg.initial_fires; ++f) s.at(free_counters[k++]).on_fire = true;
  return s;
}

}  // namespace

WorldState generate_map(std::uint64_t seed, const MapConfig& cfg) {
  if (cfg.rows < 3 || cfg.cols < 3 || cfg.rows > kMaxSide || cfg.cols > kMaxSide) {
    throw GenerationFailure("map side must be in 3..8");
  }
  if (cfg.n_agents < 1) throw GenerationFailure("at least one agent is required");
  std::mt19937_64 rng(seed);
  for (int tries = 0; tries < cfg.max_retries; ++tries) {
    if (auto s = attempt(rng, cfg)) return *s;
  }
  throw GenerationFailure("no map satisfied the constraints after " + std::to_string(cfg.max_retries) +
                          " attempts (seed " + std::to_string(seed) + ")");
}

std::string write_map(const WorldState& s) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "map " << s.rows << " " << s.cols << "\n";
  out << "orders " << s.orders[0] << " " << s.orders[1] << " " << s.orders[2] << " fire_prob " << s.fire_prob
      << " fire_seed " << s.fire_seed << " tick " << s.tick << " return ";
  if (s.return_counter >= 0) {
    out << WorldState::row_of(s.return_counter) << " " << WorldState::col_of(s.return_counter);
  } else {
    out << "-1 -1";
  }
  out << "\n";
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const int a = s.agent_at(WorldState::cell(r, c));
      out << (a >= 0 ? static_cast<char>('0' + a) : tile_char(s.at(r, c).kind));
    }
    out << "\n";
  }
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      if (s.at(r, c).item) out << "item " << r << " " << c << " " << item_name(*s.at(r, c).item) << "\n";
      if (s.at(r, c).on_fire) out << "fire " << r << " " << c << "\n";
    }
  }
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    if (s.agents[i].holding) out << "hold " << i << " " << item_name(*s.agents[i].holding) << "\n";
  }
  return out.str();
}

WorldState read_map(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  // Grid rows are read verbatim; elsewhere blank and '#' lines are skipped.
  auto next_line = [&](bool verbatim = false) -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (verbatim || (!line.empty() && line[0] != '#')) return true;
    }
    return false;
  };
  auto fail = [](const std::string& why) -> void { throw std::invalid_argument("map text: " + why); };

  WorldState s;
  if (!next_line()) fail("empty input");
  {
    std::istringstream h(line);
    std::string tag;
    if (!(h >> tag >> s.rows >> s.cols) || tag != "map") fail("expected 'map <rows> <cols>'");
    if (s.rows < 1 || s.cols < 1 || s.rows > kMaxSide || s.cols > kMaxSide) fail("map side out of range");
  }
  if (!next_line()) fail("missing orders line");
  {
    std::istringstream h(line);
    std::string tag;
    int o0 = 0, o1 = 0, o2 = 0, rr = -1, rc = -1;
    std::string k1, k2, k3, k4;
    if (!(h >> tag >> o0 >> o1 >> o2 >> k1 >> s.fire_prob >> k2 >> s.fire_seed >> k3 >> s.tick >> k4 >> rr >> rc) ||
        tag != "orders" || k1 != "fire_prob" || k2 != "fire_seed" || k3 != "tick" || k4 != "return") {
      fail("malformed orders line");
    }
    s.orders = {o0 != 0, o1 != 0, o2 != 0};
    s.return_counter = rr >= 0 ? WorldState::cell(rr, rc) : -1;
  }
  std::vector<std::pair<int, int>> agent_cells;
  for (int r = 0; r < s.rows; ++r) {
    if (!next_line(true)) fail("missing grid row " + std::to_string(r));
    if (static_cast<int>(line.size()) != s.cols) fail("grid row " + std::to_string(r) + " has wrong width");
    for (int c = 0; c < s.cols; ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch >= '0' && ch <= '9') {
        const auto id = static_cast<std::size_t>(ch - '0');
        if (agent_cells.size() <= id) agent_cells.resize(id + 1, {-1, -1});
        agent_cells[id] = {r, c};
        s.at(r, c).kind = TileKind::Floor;
      } else if (auto kind = tile_from_char(ch)) {
        s.at(r, c).kind = *kind;
      } else {
        fail(std::string("unknown tile character '") + ch + "'");
      }
    }
  }
  for (auto [r, c] : agent_cells) {
    if (r < 0) fail("agent ids must be contiguous");
    s.agents.push_back(AgentState{r, c, std::nullopt});
  }
  while (next_line()) {
    std::istringstream h(line);
    std::string tag;
    h >> tag;
    if (tag == "item") {
      int r = 0, c = 0;
      std::string name;
      h >> r >> c >> name;
      const auto item = item_from_name(name);
      if (!item || !s.in_bounds(r, c) || !is_surface(s.at(r, c).kind)) fail("bad item line: " + line);
      s.at(r, c).item = item;
    } else if (tag == "fire") {
      int r = 0, c = 0;
      h >> r >> c;
      if (!s.in_bounds(r, c) || s.at(r, c).kind == TileKind::Floor) fail("bad fire line: " + line);
      s.at(r, c).on_fire = true;
    } else if (tag == "hold") {
      std::size_t a = 0;
      std::string name;
      h >> a >> name;
      const auto item = item_from_name(name);
      if (!item || a >= s.agents.size()) fail("bad hold line: " + line);
      s.agents[a].holding = item;
    } else {
      fail("unknown line: " + line);
    }
  }
  return s;
}

std::string render(const WorldState& s) {
  std::string out;
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const Tile& t = s.at(r, c);
      const int a = s.agent_at(WorldState::cell(r, c));
      char ch = a >= 0 ? static_cast<char>('0' + a) : tile_char(t.kind);
      if (t.on_fire) ch = '!';
      else if (t.item && t.kind == TileKind::Counter) ch = 'o';
      out += ch;
    }
    out += '\n';
  }
  return out;
}

}  // namespace pcook
