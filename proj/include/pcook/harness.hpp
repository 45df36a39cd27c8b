#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcook/allocator.hpp"
#include "pcook/executor.hpp"
#include "pcook/perception.hpp"
#include "pcook/policy.hpp"

namespace pcook {

class ConfigError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class SolverKind : std::uint8_t { Matching, BruteForce };

struct Ablations {
  bool no_feas = false;
  bool no_reach = false;
  bool no_cost = false;
  bool sequentialize = false;
  bool operator==(const Ablations&) const = default;
};

struct RunConfig {
  std::vector<std::string> programs;  // program files for `run`
  std::optional<std::string> map_file;
  std::string suite = "easy";         // map setup used for seeded maps
  std::uint64_t seed = 0;             // first map seed
  int n_maps = 1;
  int n_agents = 2;
  int repeat_target = 2;
  int horizon = 128;
  double gamma = 0.99;
  int obs_radius = -1;                // -1 full view
  AllocatorWeights weights;
  SolverKind solver = SolverKind::Matching;
  Ablations ablate;
  AuxConfig aux;
  bool safety_filter = true;
  int workers = 1;
  std::optional<std::string> trace_dir;
  std::string programs_dir = PCOOK_PROGRAM_DIR;
};

// Throws ConfigError.
void validate(const RunConfig& c);

// Structured-text config (JSON). Missing keys keep their defaults; unknown
// keys are an error.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& c);

enum class Outcome : std::uint8_t { Completed, Violated, TimedOut };

std::string_view to_string(Outcome o);

struct EpisodeResult {
  Outcome outcome = Outcome::TimedOut;
  double score = 0.0;
  int timesteps = 0;
  int correct = 0;                // subtask completions the program accepted
  int remaining = 0;              // behaviors still waiting at the end
  double subtask_fraction = 0.0;  // correct / (correct + remaining); 1 when completed
  int no_plan = 0;                // agents idled because the oracle had no plan
  int filtered = 0;               // actions suppressed by the safety filter
  int recruited = 0;              // idle agents sent to help a lead that needs them
  int yielded = 0;                // moves swapped for a wait to break a back-and-forth
  std::size_t truncated_searches = 0;
  std::vector<Behavior> completions;  // accepted completions, in order
  std::string trace;                  // line-delimited JSON records
};

// Inputs to one episode besides the config.
struct Episode {
  Program program;
  WorldState map;
  std::string task = "program";
  std::uint64_t seed = 0;
};

// One run of the program on the map. `policy` overrides the scripted
// controllers when given.
EpisodeResult run_episode(const RunConfig& cfg, const Episode& ep, Policy* policy = nullptr);

// Parallel blocks run one after another; repeat bodies are copied.
Program sequentialize(const Program& p, int repeat_target);

struct SuiteTask {
  std::string name;
  Program program;
  MapConfig maps;  // the task's initial setup
};

struct Suite {
  std::string name;
  std::vector<SuiteTask> tasks;
};

// easy, medium, hard, parallel (the parallel medium programs) and
// hard-parallel (hard programs without an endless loop).
std::vector<std::string> suite_names();
Suite builtin_suite(const std::string& name, const RunConfig& cfg);

WorldState task_map(const SuiteTask& task, std::uint64_t seed);

struct EpisodeRow {
  std::string task;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::TimedOut;
  double score = 0.0;
  int timesteps = 0;
  double subtask_fraction = 0.0;
  std::size_t truncated_searches = 0;
};

struct TaskRow {
  std::string task;
  int episodes = 0;
  double completed = 0.0;  // fraction of episodes that completed
  double subtask_fraction = 0.0;
  double mean_score = 0.0;
  double std_score = 0.0;
  double mean_timesteps = 0.0;
  int violated = 0;
  int timed_out = 0;
  std::size_t truncated_searches = 0;
};

struct SuiteReport {
  std::string suite;
  double gamma = 0.99;
  std::vector<TaskRow> rows;  // per task, then "all"
  std::vector<EpisodeRow> episodes;  // sorted by (task, seed)
};

// Runs every task on maps cfg.seed .. cfg.seed + cfg.n_maps - 1. Traces go
// to cfg.trace_dir when set, and to `traces` (same order as episodes) when
// given.
SuiteReport run_suite(const RunConfig& cfg, const Suite& suite, std::vector<std::string>* traces = nullptr);

std::string format_report(const SuiteReport& r);
std::string report_json(const SuiteReport& r);

struct AblationRow {
  std::string flag;
  SuiteReport report;
  double worse_or_equal = 0.0;  // share of paired episodes with timesteps >= full
};

struct AblationReport {
  SuiteReport full;
  std::vector<AblationRow> rows;
};

AblationReport run_ablations(const RunConfig& cfg, const Suite& suite);
std::string format_ablations(const AblationReport& r);

// Trace checks.
struct ReplayResult {
  bool events_match = false;
  bool score_matches = false;
  double trace_score = 0.0;      // reported in the final record
  double recomputed_score = 0.0; // from event records alone
  int steps = 0;
  std::string mismatch;          // first difference, if any
};

ReplayResult replay_trace(const std::string& trace);

}  // namespace pcook
