#pragma once

#include <cstddef>
#include <vector>

#include "pcook/ast.hpp"
#include "pcook/world.hpp"

namespace pcook {

// Rules every plan obeys:
//   - the only subtask event is `task`, performed by the lead, and it ends
//     the plan;
//   - objects that do not take part in `task` stay where they are, except
//     that an agent may put down whatever unrelated thing it starts holding;
//   - fire does not spread or appear while planning.
// The items that take part in a task are its arguments, the dirty plate
// for WashDirtyPlate and the extinguisher for PutOutFire.
std::vector<Item> task_items(const Behavior& task);

struct SearchLimits {
  int horizon = 128;
  std::size_t max_nodes = 300000;
};

struct JointPlan {
  bool found = false;
  bool truncated = false;  // node budget ran out before the search finished
  int cost = -1;           // ticks, including the finishing action
  std::vector<int> agents; // searched agents, lead first
  std::vector<std::vector<Action>> steps;  // per tick, one action per searched agent
  std::size_t expanded = 0;

  Action first(std::size_t slot = 0) const { return steps.at(0).at(slot); }
};

// Shortest plan for `lead` alone; every other agent stands still.
JointPlan plan_solo(const WorldState& s, int lead, const Behavior& task, SearchLimits limits = {});

// Shortest joint plan for `lead` finishing `task` with `helper` moving and
// passing items; every other agent stands still.
JointPlan plan_pair(const WorldState& s, int lead, int helper, const Behavior& task, SearchLimits limits = {});

// Necessary conditions checked before searching: the finishing target is
// next to the lead's floor and the needed items exist somewhere the group
// can touch. A false answer means no plan exists.
bool plan_possible(const WorldState& s, int lead, const std::vector<int>& group, const Behavior& task);

}  // namespace pcook
