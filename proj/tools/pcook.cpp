#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcook/dsl.hpp"
#include "pcook/harness.hpp"

using namespace pcook;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

struct Flags {
  std::string config;
  std::string solver;
  bool literal = false;
  bool no_feas = false;
  bool no_reach = false;
  bool no_cost = false;
  bool sequential = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_maps;
  std::optional<int> n_agents;
  std::optional<int> horizon;
  std::optional<double> gamma;
  std::optional<int> repeat;
  std::optional<int> radius;
  std::optional<int> workers;
  std::optional<std::string> programs_dir;
};

void common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run configuration");
  app->add_option("--solver", f.solver, "matching or bruteforce")->check(CLI::IsMember({"matching", "bruteforce"}));
  app->add_flag("--literal-signs", f.literal, "use the cost formulas with their printed signs");
  app->add_flag("--no-feas", f.no_feas, "replace feasibility by 0.5");
  app->add_flag("--no-reach", f.no_reach, "replace reachability by 0.5");
  app->add_flag("--no-cost", f.no_cost, "replace cost-to-go by the median cost");
  app->add_flag("--sequential", f.sequential, "run parallel blocks one after another");
  app->add_option("--seed", f.seed, "first map seed");
  app->add_option("--maps", f.n_maps, "number of maps");
  app->add_option("--agents", f.n_agents, "agents per map");
  app->add_option("--horizon", f.horizon, "ticks per episode");
  app->add_option("--gamma", f.gamma, "score discount");
  app->add_option("--repeat", f.repeat, "copies made by a bare repeat");
  app->add_option("--radius", f.radius, "observation radius, -1 for full view");
  app->add_option("--workers", f.workers, "episode worker threads");
  app->add_option("--programs-dir", f.programs_dir, "directory of the suite programs");
}

RunConfig build(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : config_from_json(slurp(f.config));
  if (!f.solver.empty()) c.solver = f.solver == "matching" ? SolverKind::Matching : SolverKind::BruteForce;
  c.weights.literal_paper_signs = c.weights.literal_paper_signs || f.literal;
  c.ablate.no_feas = c.ablate.no_feas || f.no_feas;
  c.ablate.no_reach = c.ablate.no_reach || f.no_reach;
  c.ablate.no_cost = c.ablate.no_cost || f.no_cost;
  c.ablate.sequentialize = c.ablate.sequentialize || f.sequential;
  if (f.seed) c.seed = *f.seed;
  if (f.n_maps) c.n_maps = *f.n_maps;
  if (f.n_agents) c.n_agents = *f.n_agents;
  if (f.horizon) c.horizon = *f.horizon;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.repeat) c.repeat_target = *f.repeat;
  if (f.radius) c.obs_radius = *f.radius;
  if (f.workers) c.workers = *f.workers;
  if (f.programs_dir) c.programs_dir = *f.programs_dir;
  validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs cooking-task programs on gridworld kitchens"};
  app.require_subcommand(1);

  Flags run_f;
  std::string program_path;
  std::string map_path;
  std::string run_suite_name = "easy";
  std::string trace_out;
  int verbose = 0;
  auto* run = app.add_subcommand("run", "one episode");
  common(run, run_f);
  run->add_option("program", program_path, "program file")->required();
  run->add_option("--map", map_path, "map file (otherwise a seeded map)");
  run->add_option("--suite", run_suite_name, "map setup for the seeded map");
  run->add_option("--trace", trace_out, "write the trace here");
  run->add_flag("-v", verbose, "print the map each tick");

  Flags suite_f;
  std::string suite_name;
  std::string report_json_path;
  std::string trace_dir;
  auto* suite = app.add_subcommand("suite", "a task suite over seeded maps");
  common(suite, suite_f);
  suite->add_option("name", suite_name, "suite name")->required();
  suite->add_option("--json", report_json_path, "write the report as JSON");
  suite->add_option("--traces", trace_dir, "directory for episode traces");

  Flags abl_f;
  std::string abl_name = "hard";
  auto* ablate = app.add_subcommand("ablate", "full system against each ablation flag");
  common(ablate, abl_f);
  ablate->add_option("name", abl_name, "suite name");

  std::vector<std::string> replay_paths;
  auto* replay = app.add_subcommand("replay", "re-simulate traces and check events and score");
  replay->add_option("traces", replay_paths, "trace files")->required();

  std::string maps_dir;
  std::string maps_setup = "medium";
  std::string maps_task;
  std::uint64_t maps_seed = 0;
  int maps_count = 10;
  int maps_agents = 2;
  auto* gen = app.add_subcommand("gen-maps", "write seeded maps");
  gen->add_option("dir", maps_dir, "output directory")->required();
  gen->add_option("--suite", maps_setup, "suite");
  gen->add_option("--task", maps_task, "task whose setup to use (default: the suite's first)");
  gen->add_option("--seed", maps_seed, "first seed");
  gen->add_option("--count", maps_count, "number of maps");
  gen->add_option("--agents", maps_agents, "agents per map");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      RunConfig cfg = build(run_f);
      cfg.suite = run_suite_name;
      Episode ep;
      ep.program = parse_program(slurp(program_path));
      ep.task = std::filesystem::path(program_path).stem().string();
      ep.seed = cfg.seed;
      if (!map_path.empty()) {
        ep.map = read_map(slurp(map_path));
      } else {
        // The setup of the suite task with the same name, else the first.
        const Suite su = builtin_suite(run_suite_name, cfg);
        const SuiteTask* t = &su.tasks.front();
        for (const auto& x : su.tasks) {
          if (x.name == ep.task) t = &x;
        }
        ep.map = task_map(*t, cfg.seed);
      }
      const EpisodeResult r = run_episode(cfg, ep);
      if (!trace_out.empty()) spit(trace_out, r.trace);
      if (verbose > 0) std::cout << render(ep.map) << "\n";
      std::cout << "outcome " << to_string(r.outcome) << "\nscore " << r.score << " (gamma " << cfg.gamma
                << ")\ntimesteps " << r.timesteps << "\nsubtask_fraction " << r.subtask_fraction
                << "\ntruncated_searches " << r.truncated_searches << "\n";
      return r.outcome == Outcome::Completed ? 0 : 1;
    }
    if (*suite) {
      RunConfig cfg = build(suite_f);
      cfg.suite = suite_name;
      if (!trace_dir.empty()) cfg.trace_dir = trace_dir;
      const SuiteReport rep = run_suite(cfg, builtin_suite(suite_name, cfg));
      std::cout << format_report(rep);
      if (!report_json_path.empty()) spit(report_json_path, report_json(rep));
      return 0;
    }
    if (*ablate) {
      RunConfig cfg = build(abl_f);
      std::cout << format_ablations(run_ablations(cfg, builtin_suite(abl_name, cfg)));
      return 0;
    }
    if (*replay) {
      int bad = 0;
      for (const auto& p : replay_paths) {
        const ReplayResult r = replay_trace(slurp(p));
        const bool ok = r.events_match && r.score_matches;
        bad += ok ? 0 : 1;
        std::cout << (ok ? "ok   " : "FAIL ") << p << "  steps " << r.steps << "  score " << r.trace_score;
        if (!ok) std::cout << "  " << r.mismatch;
        std::cout << "\n";
      }
      return bad == 0 ? 0 : 1;
    }
    if (*gen) {
      RunConfig cfg;
      cfg.n_agents = maps_agents;
      const Suite s = builtin_suite(maps_setup, cfg);
      const SuiteTask* t = &s.tasks.front();
      if (!maps_task.empty()) {
        t = nullptr;
        for (const auto& x : s.tasks) {
          if (x.name == maps_task) t = &x;
        }
        if (t == nullptr) throw ConfigError("no task " + maps_task + " in suite " + maps_setup);
      }
      std::filesystem::create_directories(maps_dir);
      for (int k = 0; k < maps_count; ++k) {
        const std::uint64_t seed = maps_seed + static_cast<std::uint64_t>(k);
        spit(maps_dir + "/map_" + std::to_string(seed) + ".txt", write_map(task_map(*t, seed)));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
