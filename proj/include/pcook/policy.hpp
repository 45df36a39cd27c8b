#pragma once

#include <stdexcept>
#include <vector>

#include "pcook/aux.hpp"

namespace pcook {

enum class Role : std::uint8_t { Leading, Assistive, Idle };

std::string_view to_string(Role r);

struct Assignment {
  Behavior subtask;
  int handle = -1;  // subroutine handle the subtask came from
  Role role = Role::Idle;
  int lead = -1;    // for Assistive: the leading agent

  static Assignment idle() { return {}; }
  static Assignment leading(Behavior b, int handle) { return {std::move(b), handle, Role::Leading, -1}; }
  static Assignment assisting(Behavior b, int handle, int lead) { return {std::move(b), handle, Role::Assistive, lead}; }
};

// Where the agent stands after the step, and the action taken.
struct PlanStep {
  int row = 0;
  int col = 0;
  Action action;
};

class NoPlan : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const WorldState& s, int agent, const Assignment& a) = 0;
};

// Follows the oracle's shortest plans, replanning from scratch every call.
// A lead that cannot finish alone follows its part of the best pair plan; an
// assistant follows its part of the pair plan with its lead.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(const AuxOracle& oracle) : oracle_(oracle) {}

  Action act(const WorldState& s, int agent, const Assignment& a) override;

  // The agent's own steps, simulated with everyone else following the same
  // joint plan (agents outside it stand still). Empty for Idle.
  std::vector<PlanStep> plan(const WorldState& s, int agent, const Assignment& a) const;

 private:
  // The joint plan and this agent's slot in it.
  std::pair<JointPlan, std::size_t> joint(const WorldState& s, int agent, const Assignment& a) const;

  const AuxOracle& oracle_;
};

}  // namespace pcook
