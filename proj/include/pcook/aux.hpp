#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "pcook/planner.hpp"

namespace pcook {

struct AuxConfig {
  int horizon = 128;
  double epsilon = 1e-3;
  std::size_t node_budget = 300000;  // per search; running out counts as no plan
  std::size_t cache_limit = 100000;  // entries kept before the cache is flushed
};

struct AuxResult {
  bool reach = false;
  bool feas = false;
  std::optional<int> cost;
  double p_reach = 0.0;
  double p_feas = 0.0;
};

// 1 - eps for true, eps for false.
double eps_map(bool value, double eps);

// Reachability, feasibility and cost-to-go by search. cost is the solo plan
// length when the agent can finish alone, otherwise the shortest plan with
// one helper (best helper over all other agents).
class AuxOracle {
 public:
  explicit AuxOracle(AuxConfig cfg = {});

  const AuxConfig& config() const { return cfg_; }

  AuxResult evaluate(const WorldState& s, int agent, const Behavior& task) const;
  bool reachability(const WorldState& s, int agent, const Behavior& task) const;
  bool feasibility(const WorldState& s, int agent, const Behavior& task) const;
  std::optional<int> cost_to_go(const WorldState& s, int agent, const Behavior& task) const;

  // reach(s2) - reach(s) for the lead.
  int assistive_reward(const WorldState& s, const WorldState& s2, int lead, const Behavior& task) const;

  // The plan behind cost_to_go (solo, or the best pair). Empty when infeasible.
  std::optional<JointPlan> lead_plan(const WorldState& s, int agent, const Behavior& task) const;

  // Shortest plan with the given lead and helper. Empty when there is none.
  std::optional<JointPlan> pair_plan(const WorldState& s, int lead, int helper, const Behavior& task) const;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t truncated() const { return truncated_; }

 private:
  struct Entry {
    AuxResult result;
    std::optional<JointPlan> plan;
  };

  std::shared_ptr<const Entry> entry(const WorldState& s, int agent, int helper, const Behavior& task) const;
  Entry compute(const WorldState& s, int agent, const Behavior& task) const;
  Entry compute_pair(const WorldState& s, int lead, int helper, const Behavior& task) const;

  AuxConfig cfg_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, std::shared_ptr<const Entry>> cache_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
  mutable std::atomic<std::size_t> truncated_{0};
};

}  // namespace pcook
