#include "pcook/harness.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "pcook/dsl.hpp"

namespace pcook {

using nlohmann::json;

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Completed:
      return "completed";
    case Outcome::Violated:
      return "violated";
    case Outcome::TimedOut:
      return "timed_out";
  }
  return "?";
}

void validate(const RunConfig& c) {
  if (c.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (!(c.gamma > 0.0 && c.gamma <= 1.0)) throw ConfigError("gamma must be in (0, 1]");
  if (c.n_agents < 1 || c.n_agents > 9) throw ConfigError("n_agents must be in 1..9");
  if (c.n_maps < 1) throw ConfigError("n_maps must be >= 1");
  if (c.repeat_target < 1) throw ConfigError("repeat_target must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.obs_radius < -1) throw ConfigError("obs_radius must be -1 (full) or >= 0");
  try {
    validate(c.weights);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(c.aux.epsilon > 0.0 && c.aux.epsilon < 0.5)) throw ConfigError("aux epsilon must be in (0, 0.5)");
  if (c.aux.horizon < 1) throw ConfigError("aux horizon must be >= 1");
}

namespace {

// Items and fire outside every agent's view are hidden from perception.
WorldState visible_part(const WorldState& s, int radius) {
  if (radius < 0) return s;
  WorldState out = s;
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const bool seen = std::any_of(s.agents.begin(), s.agents.end(), [&](const AgentState& a) {
        return std::max(std::abs(a.row - r), std::abs(a.col - c)) <= radius;
      });
      if (!seen) {
        out.at(r, c).item.reset();
        out.at(r, c).on_fire = false;
      }
    }
  }
  return out;
}

ExecutorState resolve_all(ExecutorState e, const WorldState& s, int radius) {
  ExecEvents events;
  e = settle(e, &events);
  const WorldState view = visible_part(s, radius);
  std::vector<ExecutorState> seen;
  while (e.status == ExecStatus::Running) {
    const auto pending = pending_perceptions(e);
    if (pending.empty()) break;
    // An endless loop whose guard fails comes back to the same state.
    if (std::find(seen.begin(), seen.end(), e) != seen.end()) break;
    seen.push_back(e);
    const Query q = *pending.begin();
    e = settle(resolve_perception(e, q, eval(q, view), &events), &events);
  }
  return e;
}

json event_json(const WorldEvent& e) {
  json j{{"type", "event"}, {"tick", e.tick}, {"agent", e.agent}, {"kind", to_string(e.kind)}, {"cell", e.cell}};
  if (e.behavior) {
    j["payload"] = to_string(*e.behavior);
  } else if (e.item) {
    j["payload"] = std::string(item_name(*e.item));
  } else {
    j["payload"] = "";
  }
  return j;
}

std::vector<Action> idle_actions(const WorldState& s) {
  std::vector<Action> acts;
  for (std::size_t i = 0; i < s.agents.size(); ++i) acts.push_back(noop_action(s, i));
  return acts;
}

double median_cost(const AllocationProblem& p, double missing) {
  std::vector<int> costs;
  for (const auto& row : p.aux) {
    for (const auto& r : row) {
      if (r.cost) costs.push_back(*r.cost);
    }
  }
  if (costs.empty()) return missing;
  std::sort(costs.begin(), costs.end());
  return costs[(costs.size() - 1) / 2];
}

void apply_ablations(AllocationProblem& p, const Ablations& a, double missing) {
  const int neutral_cost = static_cast<int>(std::lround(median_cost(p, missing)));
  for (auto& row : p.aux) {
    for (auto& r : row) {
      if (a.no_feas) r.p_feas = 0.5;
      if (a.no_reach) r.p_reach = 0.5;
      if (a.no_cost) r.cost = neutral_cost;
    }
  }
}

struct LeadRecord {
  int agent = -1;
  int since = 0;
};

}  // namespace

EpisodeResult run_episode(const RunConfig& cfg, const Episode& ep, Policy* policy) {
  validate(cfg);
  if (static_cast<int>(ep.map.agents.size()) < 1) throw ConfigError("map has no agents");
  if (!validate(ep.program).empty()) throw ConfigError("program has diagnostics");
  const Program program = cfg.ablate.sequentialize ? sequentialize(ep.program, cfg.repeat_target) : ep.program;

  AuxOracle oracle(cfg.aux);
  ScriptedPolicy scripted(oracle);
  Policy& pol = policy != nullptr ? *policy : scripted;

  EpisodeResult out;
  std::string& trace = out.trace;
  auto emit = [&](const json& j) {
    trace += j.dump();
    trace += '\n';
  };

  WorldState s = ep.map;
  const std::uint64_t t0 = s.tick;
  emit(json{{"type", "header"},
            {"schema", 1},
            {"task", ep.task},
            {"seed", ep.seed},
            {"gamma", cfg.gamma},
            {"horizon", cfg.horizon},
            {"ablate",
             {{"no_feas", cfg.ablate.no_feas},
              {"no_reach", cfg.ablate.no_reach},
              {"no_cost", cfg.ablate.no_cost},
              {"sequentialize", cfg.ablate.sequentialize}}},
            {"program", format_program(program)},
            {"map", write_map(s)}});

  ExecutorState exec = resolve_all(init(program, cfg.repeat_target), s, cfg.obs_radius);
  std::map<PointerId, LeadRecord> leads;
  bool violated = false;
  // Agent states one and two ticks back, for spotting back-and-forth moves.
  std::vector<AgentState> prev1 = s.agents;
  std::vector<AgentState> prev2 = s.agents;

  for (int t = 0; t < cfg.horizon && exec.status == ExecStatus::Running; ++t) {
    const auto handles = possible_subroutines(exec);
    std::vector<Behavior> tasks;
    for (const auto& h : handles) tasks.push_back(h.behavior);
    const int n = static_cast<int>(s.agents.size());

    std::vector<Assignment> assign(static_cast<std::size_t>(n), Assignment::idle());
    json alloc = json::array();
    if (!tasks.empty()) {
      AllocationProblem p = build_problem(s, tasks, oracle);
      p.ongoing.assign(tasks.size(), std::vector<bool>(static_cast<std::size_t>(n), false));
      p.stuck = p.ongoing;
      for (std::size_t i = 0; i < handles.size(); ++i) {
        if (auto it = leads.find(handles[i].pointer); it != leads.end() && it->second.agent >= 0) {
          const auto a = static_cast<std::size_t>(it->second.agent);
          p.ongoing[i][a] = true;
          p.stuck[i][a] = t - it->second.since > cfg.weights.t_o;
        }
      }
      apply_ablations(p, cfg.ablate, cfg.weights.missing_cost);
      const Allocation a = cfg.solver == SolverKind::Matching ? allocate_matching(p, cfg.weights)
                                                              : allocate_bruteforce(p, cfg.weights);
      std::map<PointerId, LeadRecord> next;
      for (std::size_t i = 0; i < a.groups.size(); ++i) {
        const auto& g = a.groups[i];
        if (g.empty()) continue;
        const PointerId pid = handles[i].pointer;
        const int lead = g.front();
        const int handle = static_cast<int>(pid);
        assign[static_cast<std::size_t>(lead)] = Assignment::leading(tasks[i], handle);
        for (std::size_t k = 1; k < g.size(); ++k) {
          assign[static_cast<std::size_t>(g[k])] = Assignment::assisting(tasks[i], handle, lead);
        }
        LeadRecord rec{lead, t};
        if (auto it = leads.find(pid); it != leads.end() && it->second.agent == lead) rec.since = it->second.since;
        next[pid] = rec;
        Allocation single;
        single.groups.assign(a.groups.size(), {});
        single.groups[i] = g;
        const CostBreakdown c = cost_breakdown(p, single, cfg.weights);
        alloc.push_back(json{{"handle", pid},
                             {"subtask", to_string(tasks[i])},
                             {"agents", g},
                             {"c_feas", c.feas},
                             {"c_cost", c.cost},
                             {"c_reach", c.reach},
                             {"c_total", c.total()}});
      }
      leads = std::move(next);
      // A lead that needs a hand gets the helper of its best pair plan when
      // that agent was left idle.
      for (std::size_t i = 0; i < a.groups.size(); ++i) {
        const auto& g = a.groups[i];
        if (g.empty() || oracle.evaluate(s, g.front(), tasks[i]).reach) continue;
        const auto plan = oracle.lead_plan(s, g.front(), tasks[i]);
        if (!plan || plan->agents.size() < 2) continue;
        const auto h = static_cast<std::size_t>(plan->agents[1]);
        if (assign[h].role != Role::Idle) continue;
        assign[h] = Assignment::assisting(tasks[i], static_cast<int>(handles[i].pointer), g.front());
        out.recruited++;
      }
    } else {
      leads.clear();
    }

    std::vector<Action> acts = idle_actions(s);
    for (int i = 0; i < n; ++i) {
      try {
        acts[static_cast<std::size_t>(i)] = pol.act(s, i, assign[static_cast<std::size_t>(i)]);
      } catch (const NoPlan& e) {
        out.no_plan++;
        emit(json{{"type", "no_plan"}, {"tick", s.tick}, {"agent", i}, {"subtask", to_string(assign[static_cast<std::size_t>(i)].subtask)}});
        assign[static_cast<std::size_t>(i)] = Assignment::idle();
      }
    }

    // Two agents that keep stepping back and forth around each other: all but
    // the lowest-index one wait a tick.
    bool have_lower = false;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const bool swinging = t >= 2 && s.agents[k] == prev2[k] && !(s.agents[k] == prev1[k]);
      if (!swinging) continue;
      if (have_lower) {
        out.yielded++;
        emit(json{{"type", "yield"}, {"tick", s.tick}, {"agent", i}});
        acts[k] = noop_action(s, k);
      }
      have_lower = true;
    }

    StepResult r = step(s, acts);
    if (cfg.safety_filter) {
      // Suppress whichever action would complete a subtask the program does
      // not accept, and try again.
      for (int round = 0; round < n; ++round) {
        ExecutorState probe = exec;
        int bad = -1;
        for (const auto& e : r.events) {
          if (e.kind != WorldEventKind::SubtaskCompleted) continue;
          probe = notify_completion(probe, *e.behavior);
          if (probe.status == ExecStatus::Violated) {
            bad = e.agent;
            break;
          }
        }
        if (bad < 0) break;
        out.filtered++;
        emit(json{{"type", "filtered"}, {"tick", s.tick}, {"agent", bad}, {"action", to_string(acts[static_cast<std::size_t>(bad)])}});
        acts[static_cast<std::size_t>(bad)] = noop_action(s, static_cast<std::size_t>(bad));
        r = step(s, acts);
      }
    }

    json names = json::array();
    json roles = json::array();
    for (int i = 0; i < n; ++i) {
      names.push_back(to_string(acts[static_cast<std::size_t>(i)]));
      roles.push_back(std::string(to_string(assign[static_cast<std::size_t>(i)].role)));
    }

    int correct = 0;
    std::vector<json> events;
    for (const auto& e : r.events) {
      json j = event_json(e);
      if (e.kind == WorldEventKind::SubtaskCompleted && !violated) {
        exec = notify_completion(exec, *e.behavior);
        if (exec.status == ExecStatus::Violated) {
          violated = true;
          j["correct"] = false;
        } else {
          correct++;
          out.completions.push_back(*e.behavior);
          j["correct"] = true;
        }
      }
      events.push_back(std::move(j));
    }
    prev2 = std::move(prev1);
    prev1 = s.agents;
    s = std::move(r.state);
    if (!violated) exec = resolve_all(exec, s, cfg.obs_radius);
    const bool final_done = exec.status == ExecStatus::Completed;
    const double rt = reward(correct, final_done);
    out.score += std::pow(cfg.gamma, static_cast<double>(t)) * rt;
    out.correct += correct;
    out.timesteps = t + 1;

    emit(json{{"type", "step"},
              {"tick", t0 + static_cast<std::uint64_t>(t)},
              {"actions", names},
              {"roles", roles},
              {"allocation", alloc},
              {"reward", rt}});
    for (const auto& j : events) emit(j);
  }

  if (violated || exec.status == ExecStatus::Violated) {
    out.outcome = Outcome::Violated;
  } else if (exec.status == ExecStatus::Completed) {
    out.outcome = Outcome::Completed;
  } else {
    out.outcome = Outcome::TimedOut;
  }
  out.remaining = out.outcome == Outcome::Completed ? 0 : static_cast<int>(possible_subroutines(exec).size());
  out.subtask_fraction = out.outcome == Outcome::Completed
                             ? 1.0
                             : (out.correct + out.remaining == 0
                                    ? 0.0
                                    : static_cast<double>(out.correct) / (out.correct + out.remaining));
  out.truncated_searches = oracle.truncated();
  emit(json{{"type", "final"},
            {"outcome", to_string(out.outcome)},
            {"score", out.score},
            {"timesteps", out.timesteps},
            {"correct", out.correct},
            {"subtask_fraction", out.subtask_fraction},
            {"no_plan", out.no_plan},
            {"filtered", out.filtered},
            {"yielded", out.yielded},
            {"recruited", out.recruited},
            {"truncated_searches", out.truncated_searches}});
  return out;
}

namespace {

Block sequential_block(const Block& b, int m);

void append_sequential(Block& out, const Statement& st, int m) {
  if (const auto* par = std::get_if<ParallelStmt>(&st.node)) {
    for (const auto& blk : par->blocks) {
      for (const auto& x : sequential_block(blk, m)) out.push_back(x);
    }
  } else if (const auto* rep = std::get_if<RepeatStmt>(&st.node)) {
    const Block body = sequential_block(rep->body, m);
    for (int k = 0; k < rep->count.value_or(m); ++k) {
      for (const auto& x : body) out.push_back(x);
    }
  } else if (const auto* node = std::get_if<IfStmt>(&st.node)) {
    IfStmt copy{node->cond, sequential_block(node->then_block, m), std::nullopt};
    if (node->else_block) copy.else_block = sequential_block(*node->else_block, m);
    out.push_back(Statement{std::move(copy)});
  } else if (const auto* node = std::get_if<WhileStmt>(&st.node)) {
    out.push_back(Statement{WhileStmt{node->cond, sequential_block(node->body, m)}});
  } else {
    out.push_back(st);
  }
}

Block sequential_block(const Block& b, int m) {
  Block out;
  for (const auto& st : b) append_sequential(out, st, m);
  return out;
}

}  // namespace

Program sequentialize(const Program& p, int repeat_target) {
  if (repeat_target < 1) throw std::invalid_argument("repeat target must be at least 1");
  return Program{sequential_block(p.body, repeat_target)};
}

}  // namespace pcook
