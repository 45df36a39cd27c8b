#include <cmath>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pcook/harness.hpp"

namespace pcook {

using nlohmann::json;

namespace {

template <typename T>
void take(json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for ") + key + ": " + e.what());
  }
  j.erase(key);
}

template <typename T>
void take_opt(json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
    j.erase(key);
    return;
  }
  T v{};
  take(j, key, v);
  out = v;
}

void no_leftovers(const json& j, const std::string& where) {
  if (!j.empty()) throw ConfigError("unknown key " + where + j.begin().key());
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be an object");
  RunConfig c;
  take(j, "programs", c.programs);
  take_opt(j, "map_file", c.map_file);
  take(j, "suite", c.suite);
  take(j, "seed", c.seed);
  take(j, "n_maps", c.n_maps);
  take(j, "n_agents", c.n_agents);
  take(j, "repeat_target", c.repeat_target);
  take(j, "horizon", c.horizon);
  take(j, "gamma", c.gamma);
  take(j, "obs_radius", c.obs_radius);
  take(j, "safety_filter", c.safety_filter);
  take(j, "workers", c.workers);
  take_opt(j, "trace_dir", c.trace_dir);
  take(j, "programs_dir", c.programs_dir);
  if (j.contains("solver")) {
    std::string s;
    take(j, "solver", s);
    if (s == "matching") {
      c.solver = SolverKind::Matching;
    } else if (s == "bruteforce") {
      c.solver = SolverKind::BruteForce;
    } else {
      throw ConfigError("solver must be matching or bruteforce");
    }
  }
  if (j.contains("weights")) {
    json w = j.at("weights");
    j.erase("weights");
    take(w, "w_feas", c.weights.w_feas);
    take(w, "w_cost", c.weights.w_cost);
    take(w, "w_reach", c.weights.w_reach);
    take(w, "c_r", c.weights.c_r);
    take(w, "c_i", c.weights.c_i);
    take(w, "t_o", c.weights.t_o);
    take(w, "feas_threshold", c.weights.feas_threshold);
    take(w, "literal_paper_signs", c.weights.literal_paper_signs);
    take(w, "missing_cost", c.weights.missing_cost);
    no_leftovers(w, "weights.");
  }
  if (j.contains("ablate")) {
    json a = j.at("ablate");
    j.erase("ablate");
    take(a, "no_feas", c.ablate.no_feas);
    take(a, "no_reach", c.ablate.no_reach);
    take(a, "no_cost", c.ablate.no_cost);
    take(a, "sequentialize", c.ablate.sequentialize);
    no_leftovers(a, "ablate.");
  }
  if (j.contains("aux")) {
    json a = j.at("aux");
    j.erase("aux");
    take(a, "horizon", c.aux.horizon);
    take(a, "epsilon", c.aux.epsilon);
    take(a, "node_budget", c.aux.node_budget);
    take(a, "cache_limit", c.aux.cache_limit);
    no_leftovers(a, "aux.");
  }
  no_leftovers(j, "");
  validate(c);
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j{{"programs", c.programs},
         {"map_file", c.map_file ? json(*c.map_file) : json(nullptr)},
         {"suite", c.suite},
         {"seed", c.seed},
         {"n_maps", c.n_maps},
         {"n_agents", c.n_agents},
         {"repeat_target", c.repeat_target},
         {"horizon", c.horizon},
         {"gamma", c.gamma},
         {"obs_radius", c.obs_radius},
         {"safety_filter", c.safety_filter},
         {"workers", c.workers},
         {"trace_dir", c.trace_dir ? json(*c.trace_dir) : json(nullptr)},
         {"programs_dir", c.programs_dir},
         {"solver", c.solver == SolverKind::Matching ? "matching" : "bruteforce"},
         {"weights",
          {{"w_feas", c.weights.w_feas},
           {"w_cost", c.weights.w_cost},
           {"w_reach", c.weights.w_reach},
           {"c_r", c.weights.c_r},
           {"c_i", c.weights.c_i},
           {"t_o", c.weights.t_o},
           {"feas_threshold", c.weights.feas_threshold},
           {"literal_paper_signs", c.weights.literal_paper_signs},
           {"missing_cost", c.weights.missing_cost}}},
         {"ablate",
          {{"no_feas", c.ablate.no_feas},
           {"no_reach", c.ablate.no_reach},
           {"no_cost", c.ablate.no_cost},
           {"sequentialize", c.ablate.sequentialize}}},
         {"aux",
          {{"horizon", c.aux.horizon},
           {"epsilon", c.aux.epsilon},
           {"node_budget", c.aux.node_budget},
           {"cache_limit", c.aux.cache_limit}}}};
  return j.dump(2) + "\n";
}

ReplayResult replay_trace(const std::string& trace) {
  ReplayResult out;
  std::istringstream in(trace);
  std::string line;
  std::vector<json> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::exception& e) {
      out.mismatch = "line " + std::to_string(records.size() + 1) + " is not JSON";
      return out;
    }
  }
  if (records.empty() || records.front().value("type", "") != "header") {
    out.mismatch = "missing header";
    return out;
  }
  const json& header = records.front();
  if (header.value("schema", 0) != 1) {
    out.mismatch = "unsupported schema";
    return out;
  }
  if (records.back().value("type", "") != "final") {
    out.mismatch = "missing final record";
    return out;
  }
  const double gamma = header.at("gamma").get<double>();
  WorldState s = read_map(header.at("map").get<std::string>());
  const std::uint64_t t0 = s.tick;

  std::vector<json> expected;
  std::vector<json> produced;
  auto event_record = [](const WorldEvent& e) {
    json j{{"tick", e.tick}, {"agent", e.agent}, {"kind", to_string(e.kind)}, {"cell", e.cell}};
    if (e.behavior) {
      j["payload"] = to_string(*e.behavior);
    } else if (e.item) {
      j["payload"] = std::string(item_name(*e.item));
    } else {
      j["payload"] = "";
    }
    return j;
  };
  double score = 0.0;
  for (const auto& r : records) {
    const std::string type = r.value("type", "");
    if (type == "step") {
      std::vector<Action> acts;
      for (const auto& a : r.at("actions")) {
        const auto act = action_from_string(a.get<std::string>());
        if (!act) {
          out.mismatch = "bad action " + a.get<std::string>();
          return out;
        }
        acts.push_back(*act);
      }
      StepResult res = step(s, acts);
      for (const auto& e : res.events) produced.push_back(event_record(e));
      s = std::move(res.state);
      out.steps++;
    } else if (type == "event") {
      json e{{"tick", r.at("tick")}, {"agent", r.at("agent")}, {"kind", r.at("kind")}, {"cell", r.at("cell")},
             {"payload", r.at("payload")}};
      expected.push_back(e);
      if (r.value("correct", false)) {
        const double t = static_cast<double>(r.at("tick").get<std::uint64_t>() - t0);
        score += kSubtaskReward * std::pow(gamma, t);
      }
    }
  }
  const json& fin = records.back();
  if (fin.at("outcome").get<std::string>() == "completed" && fin.at("timesteps").get<int>() > 0) {
    score += kFinalReward * std::pow(gamma, fin.at("timesteps").get<int>() - 1);
  }
  out.trace_score = fin.at("score").get<double>();
  out.recomputed_score = score;
  out.score_matches = std::abs(out.trace_score - out.recomputed_score) <= 1e-9;
  out.events_match = produced == expected;
  if (!out.events_match) {
    std::size_t k = 0;
    while (k < produced.size() && k < expected.size() && produced[k] == expected[k]) ++k;
    out.mismatch = "event " + std::to_string(k) + " differs";
  } else if (!out.score_matches) {
    out.mismatch = "score differs";
  }
  return out;
}

}  // namespace pcook
