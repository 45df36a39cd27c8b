#include "pcook/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcook {

namespace {

constexpr double kTie = 1e-9;
constexpr double kBarred = 1e12;

bool flag(const std::vector<std::vector<bool>>& table, std::size_t i, int agent) {
  if (i >= table.size()) return false;
  const auto& row = table[i];
  return static_cast<std::size_t>(agent) < row.size() && row[static_cast<std::size_t>(agent)];
}

struct Parts {
  double feas;
  double cost;
  double reach;
};

Parts group_parts(const AllocationProblem& p, std::size_t i, int lead, int size, const AllocatorWeights& w) {
  const AuxResult& r = p.aux.at(i).at(static_cast<std::size_t>(lead));
  double f = r.cost ? static_cast<double>(*r.cost) : w.missing_cost;
  f += -w.c_r * (flag(p.ongoing, i, lead) ? 1.0 : 0.0) + w.c_i * (flag(p.stuck, i, lead) ? 1.0 : 0.0);
  const double n = static_cast<double>(size);
  Parts out{};
  out.feas = -n * w.w_feas * std::log(r.p_feas);
  if (w.literal_paper_signs) {
    out.cost = -n * w.w_cost * f;
    out.reach = size == 1 ? w.w_reach * std::log(r.p_reach) : 0.0;
  } else {
    out.cost = n * w.w_cost * std::max(0.0, f);
    out.reach = size == 1 ? -w.w_reach * std::log(r.p_reach) : 0.0;
  }
  return out;
}

bool better(double cost, const Allocation& a, double best, const Allocation& best_alloc, bool have) {
  if (!have || cost < best - kTie) return true;
  return cost <= best + kTie && a.groups < best_alloc.groups;
}

}  // namespace

void validate(const AllocatorWeights& w) {
  if (w.w_feas < 0 || w.w_cost < 0 || w.w_reach < 0) throw std::invalid_argument("allocator weights must be >= 0");
  if (w.t_o < 1) throw std::invalid_argument("t_o must be >= 1");
  if (!(w.feas_threshold > 0.0 && w.feas_threshold < 1.0)) throw std::invalid_argument("feas_threshold must be in (0,1)");
}

void check_legal(const AllocationProblem& p, const Allocation& a) {
  if (a.groups.size() != p.tasks()) throw IllegalAllocation("one group per subtask expected");
  std::vector<bool> used(static_cast<std::size_t>(p.n_agents), false);
  for (const auto& g : a.groups) {
    for (int agent : g) {
      if (agent < 0 || agent >= p.n_agents) throw IllegalAllocation("unknown agent " + std::to_string(agent));
      if (used[static_cast<std::size_t>(agent)]) {
        throw IllegalAllocation("agent " + std::to_string(agent) + " assigned twice");
      }
      used[static_cast<std::size_t>(agent)] = true;
    }
  }
}

double group_cost(const AllocationProblem& p, std::size_t i, int lead, int size, const AllocatorWeights& w) {
  const Parts c = group_parts(p, i, lead, size, w);
  return c.feas + c.cost + c.reach;
}

CostBreakdown cost_breakdown(const AllocationProblem& p, const Allocation& a, const AllocatorWeights& w) {
  check_legal(p, a);
  CostBreakdown out;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    const auto& g = a.groups[i];
    if (g.empty()) continue;
    const Parts c = group_parts(p, i, g.front(), static_cast<int>(g.size()), w);
    out.feas += c.feas;
    out.cost += c.cost;
    out.reach += c.reach;
  }
  return out;
}

double allocation_cost(const AllocationProblem& p, const Allocation& a, const AllocatorWeights& w) {
  return cost_breakdown(p, a, w).total();
}

bool may_lead(const AllocationProblem& p, std::size_t i, int lead, int size, const AllocatorWeights& w) {
  return size == 1 || p.aux.at(i).at(static_cast<std::size_t>(lead)).p_reach < w.feas_threshold;
}

int required_groups(const AllocationProblem& p, const AllocatorWeights& w) {
  int useful = 0;
  for (const auto& row : p.aux) {
    const bool any = std::any_of(row.begin(), row.end(), [&](const AuxResult& r) { return r.p_feas >= w.feas_threshold; });
    useful += any ? 1 : 0;
  }
  return std::min(p.n_agents, useful);
}

Allocation allocate_bruteforce(const AllocationProblem& p, const AllocatorWeights& w, SolverStats* stats) {
  const int n = p.n_agents;
  const int m = static_cast<int>(p.tasks());
  const int need = required_groups(p, w);
  SolverStats local;
  SolverStats& st = stats != nullptr ? *stats : local;

  Allocation best;
  best.groups.assign(static_cast<std::size_t>(m), {});
  double best_cost = 0.0;
  bool have = false;

  std::vector<int> choice(static_cast<std::size_t>(n), -1);  // -1 idle
  while (true) {
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (int c : choice) {
      if (c >= 0) used[static_cast<std::size_t>(c)] = true;
    }
    if (std::count(used.begin(), used.end(), true) >= need) {
      Allocation a;
      a.groups.assign(static_cast<std::size_t>(m), {});
      for (int agent = 0; agent < n; ++agent) {
        if (choice[static_cast<std::size_t>(agent)] >= 0) a.groups[static_cast<std::size_t>(choice[static_cast<std::size_t>(agent)])].push_back(agent);
      }
      double total = 0.0;
      bool ok = true;
      for (std::size_t i = 0; i < a.groups.size() && ok; ++i) {
        auto& g = a.groups[i];
        if (g.empty()) continue;
        // Only the lead and the group size matter; take the cheapest lead.
        std::size_t lead = g.size();
        double lead_cost = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < g.size(); ++k) {
          if (!may_lead(p, i, g[k], static_cast<int>(g.size()), w)) continue;
          const double c = group_cost(p, i, g[k], static_cast<int>(g.size()), w);
          st.evaluations++;
          if (c < lead_cost - kTie) {
            lead_cost = c;
            lead = k;
          }
        }
        if (lead == g.size()) {
          ok = false;
          break;
        }
        std::rotate(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(lead), g.begin() + static_cast<std::ptrdiff_t>(lead) + 1);
        total += lead_cost;
      }
      if (ok && better(total, a, best_cost, best, have)) {
        best = std::move(a);
        best_cost = total;
        have = true;
      }
    }
    int k = 0;
    while (k < n && ++choice[static_cast<std::size_t>(k)] == m) choice[static_cast<std::size_t>(k++)] = -1;
    if (k == n) break;
  }
  return best;
}

Allocation allocate_matching(const AllocationProblem& p, const AllocatorWeights& w, SolverStats* stats) {
  SolverStats local;
  SolverStats& st = stats != nullptr ? *stats : local;
  const int n = p.n_agents;
  const std::size_t m = p.tasks();

  std::vector<std::size_t> kept;
  std::vector<std::size_t> pruned;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = p.aux[i];
    const bool any = std::any_of(row.begin(), row.end(), [&](const AuxResult& r) { return r.p_feas >= w.feas_threshold; });
    (any ? kept : pruned).push_back(i);
  }
  auto fall_back = [&] {
    st.fell_back = true;
    return allocate_bruteforce(p, w, &st);
  };
  if (n == 0) return allocate_bruteforce(p, w, &st);
  if (static_cast<std::size_t>(n) > kept.size()) return fall_back();

  std::vector<std::vector<double>> solo(m), each(m);
  for (std::size_t i : kept) {
    for (int a = 0; a < n; ++a) {
      solo[i].push_back(group_cost(p, i, a, 1, w));
      each[i].push_back(may_lead(p, i, a, 2, w) ? group_cost(p, i, a, 2, w) / 2.0 : kBarred);
      st.evaluations++;
    }
  }
  // Dropping the pruned subtasks is safe when moving a pruned group's lead
  // onto a free kept subtask (there is one, since N <= L) and idling its
  // assistants can never cost more. Costs are nonnegative without the
  // literal signs, so a pair bounds every larger group from below.
  if (!pruned.empty()) {
    if (w.literal_paper_signs) return fall_back();
    for (int a = 0; a < n; ++a) {
      double worst_kept = 0.0;
      for (std::size_t i : kept) worst_kept = std::max(worst_kept, solo[i][static_cast<std::size_t>(a)]);
      for (std::size_t i : pruned) {
        if (group_cost(p, i, a, 1, w) < worst_kept) return fall_back();
        if (may_lead(p, i, a, 2, w) && group_cost(p, i, a, 2, w) < worst_kept) return fall_back();
      }
    }
  }

  const std::size_t L = kept.size();
  const int need = required_groups(p, w);
  std::vector<int> size(L, 0);
  Allocation best;
  double best_cost = 0.0;
  bool have = false;

  // Every way of splitting the N agents over the kept subtasks as group
  // sizes; leads are then an assignment problem, assistants are free.
  auto evaluate = [&] {
    if (std::count_if(size.begin(), size.end(), [](int k) { return k > 0; }) < need) return;
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::vector<std::size_t> lead_col;
    for (std::size_t k = 0; k < L; ++k) {
      if (size[k] == 0) continue;
      const std::size_t i = kept[k];
      for (int a = 0; a < n; ++a) {
        cost[static_cast<std::size_t>(a)][lead_col.size()] =
            size[k] == 1 ? solo[i][static_cast<std::size_t>(a)] : size[k] * each[i][static_cast<std::size_t>(a)];
      }
      lead_col.push_back(k);
    }
    const auto pick = solve_assignment(cost);
    st.assignments++;
    Allocation a;
    a.groups.assign(m, {});
    double total = 0.0;
    std::vector<int> spare;
    for (int agent = 0; agent < n; ++agent) {
      const auto col = static_cast<std::size_t>(pick[static_cast<std::size_t>(agent)]);
      if (col < lead_col.size()) {
        a.groups[kept[lead_col[col]]].push_back(agent);
        total += cost[static_cast<std::size_t>(agent)][col];
      } else {
        spare.push_back(agent);
      }
    }
    for (std::size_t k = 0; k < L; ++k) {
      auto& g = a.groups[kept[k]];
      if (size[k] < 2) continue;
      const int lead_class = static_cast<std::size_t>(g[0]) < p.classes.size() ? p.classes[static_cast<std::size_t>(g[0])] : 0;
      auto other = [&](int agent) {
        return static_cast<std::size_t>(agent) < p.classes.size() && p.classes[static_cast<std::size_t>(agent)] != lead_class;
      };
      std::stable_partition(spare.begin(), spare.end(), other);
      const auto take = static_cast<std::ptrdiff_t>(size[k] - 1);
      std::vector<int> helpers(spare.begin(), spare.begin() + take);
      spare.erase(spare.begin(), spare.begin() + take);
      std::sort(spare.begin(), spare.end());
      std::sort(helpers.begin(), helpers.end());
      g.insert(g.end(), helpers.begin(), helpers.end());
    }
    if (total < kBarred && better(total, a, best_cost, best, have)) {
      best = std::move(a);
      best_cost = total;
      have = true;
    }
  };

  auto split = [&](auto&& self, std::size_t k, int left) -> void {
    if (k + 1 == L) {
      size[k] = left;
      evaluate();
      return;
    }
    for (int s = 0; s <= left; ++s) {
      size[k] = s;
      self(self, k + 1, left - s);
    }
  };
  split(split, 0, n);
  return best;
}

std::vector<int> role_classes(const WorldState& s) {
  const auto comp = floor_components(s);
  std::vector<int> seen;
  std::vector<int> out;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const int c = comp[static_cast<std::size_t>(s.agent_cell(i))];
    auto it = std::find(seen.begin(), seen.end(), c);
    if (it == seen.end()) {
      seen.push_back(c);
      it = seen.end() - 1;
    }
    out.push_back(static_cast<int>(it - seen.begin()));
  }
  return out;
}

AllocationProblem build_problem(const WorldState& s, const std::vector<Behavior>& tasks, const AuxOracle& oracle) {
  AllocationProblem p;
  p.n_agents = static_cast<int>(s.agents.size());
  for (const auto& t : tasks) {
    std::vector<AuxResult> row;
    for (int a = 0; a < p.n_agents; ++a) row.push_back(oracle.evaluate(s, a, t));
    p.aux.push_back(std::move(row));
  }
  p.classes = role_classes(s);
  return p;
}

std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  // Shortest augmenting path Hungarian method, 1-based internally.
  const std::size_t n = cost.size();
  for (const auto& row : cost) {
    if (row.size() != n) throw std::invalid_argument("assignment matrix must be square");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[r0 - 1][j - 1] - u[r0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> out(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (match[j] != 0) out[match[j] - 1] = static_cast<int>(j - 1);
  }
  return out;
}

}  // namespace pcook
