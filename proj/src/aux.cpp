#include "pcook/aux.hpp"

#include <mutex>
#include <stdexcept>

namespace pcook {

double eps_map(bool value, double eps) { return value ? 1.0 - eps : eps; }

namespace {

// Everything a plan can depend on; tick, fire settings and the return
// counter only matter after a plan ends.
std::string state_key(const WorldState& s, int agent, int helper, const Behavior& task) {
  std::string k;
  k.reserve(2 * kMaxCells + 2 * s.agents.size() + 16);
  k.push_back(static_cast<char>(s.rows));
  k.push_back(static_cast<char>(s.cols));
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const Tile& t = s.at(r, c);
      k.push_back(static_cast<char>(static_cast<int>(t.kind) | (t.on_fire ? 0x10 : 0)));
      k.push_back(static_cast<char>(t.item ? 1 + index_of(*t.item) : 0));
    }
  }
  for (const auto& a : s.agents) {
    k.push_back(static_cast<char>(a.row * kMaxSide + a.col));
    k.push_back(static_cast<char>(a.holding ? 1 + index_of(*a.holding) : 0));
  }
  for (bool o : s.orders) k.push_back(static_cast<char>(o));
  const Behavior c = canonical(task);
  k.push_back(static_cast<char>(agent));
  k.push_back(static_cast<char>(helper + 1));
  k.push_back(static_cast<char>(c.kind));
  for (Item a : c.args) k.push_back(static_cast<char>(index_of(a)));
  return k;
}

}  // namespace

AuxOracle::AuxOracle(AuxConfig cfg) : cfg_(cfg) {
  if (!(cfg_.epsilon > 0.0 && cfg_.epsilon < 0.5)) throw std::invalid_argument("epsilon must be in (0, 0.5)");
  if (cfg_.horizon < 1) throw std::invalid_argument("horizon must be positive");
}

std::shared_ptr<const AuxOracle::Entry> AuxOracle::entry(const WorldState& s, int agent, int helper,
                                                         const Behavior& task) const {
  if (agent < 0 || static_cast<std::size_t>(agent) >= s.agents.size()) throw std::out_of_range("agent id");
  const std::string key = state_key(s, agent, helper, task);
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      hits_++;
      return it->second;
    }
  }
  misses_++;
  auto e = std::make_shared<const Entry>(helper < 0 ? compute(s, agent, task) : compute_pair(s, agent, helper, task));
  std::unique_lock lock(mu_);
  if (cache_.size() >= cfg_.cache_limit) cache_.clear();
  cache_.emplace(key, e);
  return e;
}

AuxOracle::Entry AuxOracle::compute_pair(const WorldState& s, int lead, int helper, const Behavior& task) const {
  Entry e;
  if (!plan_possible(s, lead, {lead, helper}, task)) return e;
  JointPlan p = plan_pair(s, lead, helper, task, SearchLimits{cfg_.horizon, cfg_.node_budget});
  if (p.truncated) truncated_++;
  if (p.found) {
    e.result.feas = true;
    e.result.cost = p.cost;
    e.plan = std::move(p);
  }
  return e;
}

AuxOracle::Entry AuxOracle::compute(const WorldState& s, int agent, const Behavior& task) const {
  Entry e;
  const SearchLimits limits{cfg_.horizon, cfg_.node_budget};
  if (plan_possible(s, agent, {agent}, task)) {
    JointPlan p = plan_solo(s, agent, task, limits);
    if (p.truncated) truncated_++;
    if (p.found) {
      e.result.reach = true;
      e.result.feas = true;
      e.result.cost = p.cost;
      e.plan = std::move(p);
    }
  }
  if (!e.result.reach) {
    for (int j = 0; j < static_cast<int>(s.agents.size()); ++j) {
      if (j == agent) continue;
      const auto pe = entry(s, agent, j, task);
      if (pe->plan && (!e.plan || pe->plan->cost < e.plan->cost)) {
        e.result.feas = true;
        e.result.cost = pe->plan->cost;
        e.plan = pe->plan;
      }
    }
  }
  e.result.p_reach = eps_map(e.result.reach, cfg_.epsilon);
  e.result.p_feas = eps_map(e.result.feas, cfg_.epsilon);
  return e;
}

AuxResult AuxOracle::evaluate(const WorldState& s, int agent, const Behavior& task) const {
  return entry(s, agent, -1, task)->result;
}

bool AuxOracle::reachability(const WorldState& s, int agent, const Behavior& task) const {
  return evaluate(s, agent, task).reach;
}

bool AuxOracle::feasibility(const WorldState& s, int agent, const Behavior& task) const {
  return evaluate(s, agent, task).feas;
}

std::optional<int> AuxOracle::cost_to_go(const WorldState& s, int agent, const Behavior& task) const {
  return evaluate(s, agent, task).cost;
}

int AuxOracle::assistive_reward(const WorldState& s, const WorldState& s2, int lead, const Behavior& task) const {
  return (reachability(s2, lead, task) ? 1 : 0) - (reachability(s, lead, task) ? 1 : 0);
}

std::optional<JointPlan> AuxOracle::lead_plan(const WorldState& s, int agent, const Behavior& task) const {
  return entry(s, agent, -1, task)->plan;
}

std::optional<JointPlan> AuxOracle::pair_plan(const WorldState& s, int lead, int helper, const Behavior& task) const {
  if (helper == lead || helper < 0 || static_cast<std::size_t>(helper) >= s.agents.size()) {
    throw std::out_of_range("helper id");
  }
  return entry(s, lead, helper, task)->plan;
}

}  // namespace pcook
