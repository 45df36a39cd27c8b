#include "pcook/policy.hpp"

#include <string>

namespace pcook {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Leading:
      return "leading";
    case Role::Assistive:
      return "assistive";
    case Role::Idle:
      return "idle";
  }
  return "?";
}

std::pair<JointPlan, std::size_t> ScriptedPolicy::joint(const WorldState& s, int agent, const Assignment& a) const {
  std::optional<JointPlan> p;
  std::size_t slot = 0;
  if (a.role == Role::Leading) {
    p = oracle_.lead_plan(s, agent, a.subtask);
  } else {
    if (a.lead < 0 || a.lead == agent || static_cast<std::size_t>(a.lead) >= s.agents.size()) {
      throw std::invalid_argument("assistive assignment needs another agent as lead");
    }
    p = oracle_.pair_plan(s, a.lead, agent, a.subtask);
    slot = 1;
  }
  if (!p) {
    throw NoPlan("no plan for agent " + std::to_string(agent) + " on " + to_string(a.subtask));
  }
  return {std::move(*p), slot};
}

Action ScriptedPolicy::act(const WorldState& s, int agent, const Assignment& a) {
  if (a.role == Role::Idle) return noop_action(s, static_cast<std::size_t>(agent));
  auto [p, slot] = joint(s, agent, a);
  return p.first(slot);
}

std::vector<PlanStep> ScriptedPolicy::plan(const WorldState& s, int agent, const Assignment& a) const {
  if (a.role == Role::Idle) return {};
  const auto [p, slot] = joint(s, agent, a);
  std::vector<PlanStep> out;
  WorldState cur = s;
  for (const auto& tick : p.steps) {
    std::vector<Action> acts;
    for (std::size_t i = 0; i < cur.agents.size(); ++i) acts.push_back(noop_action(cur, i));
    for (std::size_t k = 0; k < p.agents.size(); ++k) acts[static_cast<std::size_t>(p.agents[k])] = tick[k];
    cur = step(cur, acts, StepOptions{false}).state;
    const auto& me = cur.agents[static_cast<std::size_t>(agent)];
    out.push_back(PlanStep{me.row, me.col, tick[slot]});
  }
  return out;
}

}  // namespace pcook
