#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pcook/aux.hpp"
#include "pcook/world.hpp"

namespace pcook {

struct AllocatorWeights {
  double w_feas = 1.0;
  double w_cost = 0.05;
  double w_reach = 1.0;
  double c_r = 2.0;    // subtracted from cost-to-go for the ongoing lead
  double c_i = 100.0;  // added to cost-to-go for a lead stuck past t_o
  int t_o = 64;
  double feas_threshold = 0.5;
  bool literal_paper_signs = false;
  double missing_cost = 128.0;  // cost-to-go used when the oracle has none
};

void validate(const AllocatorWeights& w);

// groups[i] lists the agents on subtask i, leading agent first.
struct Allocation {
  std::vector<std::vector<int>> groups;
  bool operator==(const Allocation&) const = default;
};

class IllegalAllocation : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Everything the solvers look at, per subtask row and agent column.
struct AllocationProblem {
  int n_agents = 0;
  std::vector<std::vector<AuxResult>> aux;  // [subtask][agent]
  std::vector<std::vector<bool>> ongoing;   // optional, [subtask][agent]
  std::vector<std::vector<bool>> stuck;     // optional, [subtask][agent]
  std::vector<int> classes;                 // optional role class per agent

  std::size_t tasks() const { return aux.size(); }
};

struct CostBreakdown {
  double feas = 0.0;
  double cost = 0.0;
  double reach = 0.0;
  double total() const { return feas + cost + reach; }
};

// Throws IllegalAllocation on a wrong group count, unknown agent ids or an
// agent in two groups.
void check_legal(const AllocationProblem& p, const Allocation& a);

CostBreakdown cost_breakdown(const AllocationProblem& p, const Allocation& a, const AllocatorWeights& w);
double allocation_cost(const AllocationProblem& p, const Allocation& a, const AllocatorWeights& w);

// Cost of group i with `lead` leading and `size` agents in total.
double group_cost(const AllocationProblem& p, std::size_t i, int lead, int size, const AllocatorWeights& w);

// Groups of two or more are only formed around a lead that cannot reach the
// subtask alone (p_reach below the threshold); assistants exist to fix that.
bool may_lead(const AllocationProblem& p, std::size_t i, int lead, int size, const AllocatorWeights& w);

// Fewest subtasks that must get a group: min(N, number of subtasks some agent
// finds feasible at the threshold). Without it leaving everyone idle would
// always be cheapest. Agents therefore only assist when there are more of
// them than feasible subtasks.
int required_groups(const AllocationProblem& p, const AllocatorWeights& w);

struct SolverStats {
  std::size_t evaluations = 0;  // per-(agent, subtask) cost evaluations
  std::size_t assignments = 0;  // assignment problems solved
  bool fell_back = false;       // matching handed over to brute force
};

Allocation allocate_bruteforce(const AllocationProblem& p, const AllocatorWeights& w, SolverStats* stats = nullptr);
Allocation allocate_matching(const AllocationProblem& p, const AllocatorWeights& w, SolverStats* stats = nullptr);

// Agents grouped by floor component, numbered in order of first agent.
std::vector<int> role_classes(const WorldState& s);

// Fills aux (and classes) for the given subtasks.
AllocationProblem build_problem(const WorldState& s, const std::vector<Behavior>& tasks, const AuxOracle& oracle);

// Square min-cost assignment; result[row] is the chosen column.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace pcook
