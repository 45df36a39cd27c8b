#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "pcook/dsl.hpp"
#include "pcook/harness.hpp"

namespace pcook {

using nlohmann::json;

namespace {

Program load_program(const std::string& dir, const std::string& file) {
  const std::string path = dir + "/" + file;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read program " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

struct TaskSpec {
  const char* file;
  std::vector<Item> items;  // set out on counters
  int fires = 0;
};

struct SuiteSpec {
  const char* name;
  std::vector<TaskSpec> tasks;
  double fire_prob;
};

// Subtasks a program never picks itself need their inputs lying ready.
const TaskSpec kEasyFire{"easy_fire.prog", {}, 1};
const TaskSpec kEasyPick{"easy_pick_onion.prog", {}};
const TaskSpec kEasyServe{"easy_serve_tomato.prog", {Item::ChoppedTomatoPlate}};
const TaskSpec kPickWash{"medium_parallel_pick_wash.prog", {Item::DirtyPlate}};
const TaskSpec kTwoPicks{"medium_parallel_two_picks.prog", {}};
const TaskSpec kRepeat{"medium_repeat_tomato.prog", {}};
const TaskSpec kTomatoDish{"medium_tomato_dish.prog", {Item::FreshTomato, Item::Plate}};
const TaskSpec kThenFire{"hard_dishes_then_fire.prog", {Item::Plate, Item::Plate}, 1};
const TaskSpec kWithFire{"hard_dishes_with_fire.prog",
                         {Item::ChoppedOnion, Item::ChoppedTomato, Item::Plate, Item::Plate}};
const TaskSpec kTwoDishes{"hard_two_dishes.prog", {Item::DirtyPlate, Item::Plate, Item::Plate}};

constexpr double kHardFire = 0.0003;

const std::vector<SuiteSpec>& specs() {
  static const std::vector<SuiteSpec> all = {
      {"easy", {kEasyFire, kEasyPick, kEasyServe}, 0.0},
      {"medium", {kPickWash, kTwoPicks, kRepeat, kTomatoDish}, 0.0},
      {"hard", {kThenFire, kWithFire, kTwoDishes}, kHardFire},
      {"parallel", {kPickWash, kTwoPicks}, 0.0},
      {"hard-parallel", {kThenFire, kTwoDishes}, kHardFire},
  };
  return all;
}

std::string trace_name(const EpisodeRow& e) {
  std::string task = e.task;
  std::replace(task.begin(), task.end(), '/', '_');
  return task + "_" + std::to_string(e.seed) + ".jsonl";
}

TaskRow aggregate(const std::string& name, const std::vector<const EpisodeRow*>& rows) {
  TaskRow t;
  t.task = name;
  t.episodes = static_cast<int>(rows.size());
  if (rows.empty()) return t;
  double sum = 0.0;
  for (const auto* e : rows) {
    t.completed += e->outcome == Outcome::Completed ? 1.0 : 0.0;
    t.subtask_fraction += e->subtask_fraction;
    sum += e->score;
    t.mean_timesteps += e->timesteps;
    t.violated += e->outcome == Outcome::Violated ? 1 : 0;
    t.timed_out += e->outcome == Outcome::TimedOut ? 1 : 0;
    t.truncated_searches += e->truncated_searches;
  }
  const double n = static_cast<double>(rows.size());
  t.completed /= n;
  t.subtask_fraction /= n;
  t.mean_score = sum / n;
  t.mean_timesteps /= n;
  double var = 0.0;
  for (const auto* e : rows) var += (e->score - t.mean_score) * (e->score - t.mean_score);
  t.std_score = std::sqrt(var / n);
  return t;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : specs()) out.emplace_back(s.name);
  return out;
}

Suite builtin_suite(const std::string& name, const RunConfig& cfg) {
  for (const auto& s : specs()) {
    if (name != s.name) continue;
    Suite out;
    out.name = name;
    for (const auto& t : s.tasks) {
      std::string task = t.file;
      task = task.substr(0, task.size() - 5);
      MapConfig m;
      m.n_agents = cfg.n_agents;
      m.orders = {true, true, true};
      m.fire_prob = s.fire_prob;
      m.counter_items = t.items;
      m.initial_fires = t.fires;
      out.tasks.push_back(SuiteTask{task, load_program(cfg.programs_dir, t.file), m});
    }
    return out;
  }
  throw ConfigError("unknown suite " + name);
}

WorldState task_map(const SuiteTask& task, std::uint64_t seed) { return generate_map(seed, task.maps); }

SuiteReport run_suite(const RunConfig& cfg, const Suite& suite, std::vector<std::string>* traces) {
  validate(cfg);
  struct Job {
    std::size_t task;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < suite.tasks.size(); ++t) {
    for (int k = 0; k < cfg.n_maps; ++k) jobs.push_back(Job{t, cfg.seed + static_cast<std::uint64_t>(k)});
  }
  std::vector<EpisodeRow> rows(jobs.size());
  std::vector<std::string> texts(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    while (true) {
      const std::size_t j = next++;
      if (j >= jobs.size()) return;
      try {
        Episode ep{suite.tasks[jobs[j].task].program, task_map(suite.tasks[jobs[j].task], jobs[j].seed), suite.tasks[jobs[j].task].name,
                   jobs[j].seed};
        EpisodeResult r = run_episode(cfg, ep);
        rows[j] = EpisodeRow{ep.task, ep.seed, r.outcome, r.score, r.timesteps, r.subtask_fraction, r.truncated_searches};
        texts[j] = std::move(r.trace);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const int n_threads = std::min<int>(cfg.workers, static_cast<int>(jobs.size()));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (cfg.trace_dir) {
    std::filesystem::create_directories(*cfg.trace_dir);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::string path = *cfg.trace_dir + "/" + trace_name(rows[j]);
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write trace " + path);
      f << texts[j];
      if (!f) throw std::runtime_error("error writing trace " + path);
    }
  }

  SuiteReport rep;
  rep.suite = suite.name;
  rep.gamma = cfg.gamma;
  std::vector<std::size_t> order(rows.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(rows[a].task, rows[a].seed) < std::tie(rows[b].task, rows[b].seed);
  });
  for (std::size_t j : order) {
    rep.episodes.push_back(rows[j]);
    if (traces != nullptr) traces->push_back(std::move(texts[j]));
  }
  std::vector<const EpisodeRow*> all;
  for (const auto& task : suite.tasks) {
    std::vector<const EpisodeRow*> mine;
    for (const auto& e : rep.episodes) {
      if (e.task == task.name) mine.push_back(&e);
    }
    rep.rows.push_back(aggregate(task.name, mine));
  }
  for (const auto& e : rep.episodes) all.push_back(&e);
  rep.rows.push_back(aggregate("all", all));
  return rep;
}

std::string format_report(const SuiteReport& r) {
  std::ostringstream o;
  o << "suite " << r.suite << "  (score discounted with gamma " << r.gamma << ")\n";
  o << std::left << std::setw(28) << "task" << std::right << std::setw(9) << "episodes" << std::setw(11) << "completed"
    << std::setw(18) << "subtask_fraction" << std::setw(20) << "score" << std::setw(12) << "timesteps"
    << std::setw(10) << "violated" << std::setw(11) << "timed_out" << std::setw(20) << "truncated_searches" << "\n";
  o << std::fixed;
  for (const auto& t : r.rows) {
    std::ostringstream score;
    score << std::fixed << std::setprecision(3) << t.mean_score << " +- " << t.std_score;
    o << std::left << std::setw(28) << t.task << std::right << std::setw(9) << t.episodes << std::setw(11)
      << std::setprecision(3) << t.completed << std::setw(18) << t.subtask_fraction << std::setw(20) << score.str()
      << std::setw(12) << std::setprecision(2) << t.mean_timesteps << std::setw(10) << t.violated << std::setw(11)
      << t.timed_out << std::setw(20) << t.truncated_searches << "\n";
  }
  return o.str();
}

std::string report_json(const SuiteReport& r) {
  json rows = json::array();
  for (const auto& t : r.rows) {
    rows.push_back(json{{"task", t.task},
                        {"episodes", t.episodes},
                        {"completed", t.completed},
                        {"subtask_fraction", t.subtask_fraction},
                        {"mean_score", t.mean_score},
                        {"std_score", t.std_score},
                        {"mean_timesteps", t.mean_timesteps},
                        {"violated", t.violated},
                        {"timed_out", t.timed_out},
                        {"truncated_searches", t.truncated_searches}});
  }
  json eps = json::array();
  for (const auto& e : r.episodes) {
    eps.push_back(json{{"task", e.task},
                       {"seed", e.seed},
                       {"outcome", to_string(e.outcome)},
                       {"score", e.score},
                       {"timesteps", e.timesteps},
                       {"subtask_fraction", e.subtask_fraction}});
  }
  return json{{"suite", r.suite}, {"gamma", r.gamma}, {"rows", rows}, {"episodes", eps}}.dump(2) + "\n";
}

AblationReport run_ablations(const RunConfig& cfg, const Suite& suite) {
  AblationReport out;
  RunConfig base = cfg;
  base.ablate = Ablations{};
  base.trace_dir.reset();
  out.full = run_suite(base, suite);
  const std::vector<std::pair<std::string, Ablations>> flags = {
      {"no_feas", Ablations{true, false, false, false}},
      {"no_reach", Ablations{false, true, false, false}},
      {"no_cost", Ablations{false, false, true, false}},
      {"sequentialize", Ablations{false, false, false, true}},
  };
  for (const auto& [name, a] : flags) {
    RunConfig c = base;
    c.ablate = a;
    AblationRow row;
    row.flag = name;
    row.report = run_suite(c, suite);
    int ok = 0;
    for (std::size_t j = 0; j < row.report.episodes.size(); ++j) {
      ok += row.report.episodes[j].timesteps >= out.full.episodes[j].timesteps ? 1 : 0;
    }
    row.worse_or_equal = row.report.episodes.empty() ? 1.0 : static_cast<double>(ok) / row.report.episodes.size();
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string format_ablations(const AblationReport& r) {
  std::ostringstream o;
  const TaskRow& f = r.full.rows.back();
  o << "suite " << r.full.suite << "  (score discounted with gamma " << r.full.gamma << ")\n";
  o << std::left << std::setw(16) << "variant" << std::right << std::setw(11) << "completed" << std::setw(12)
    << "score" << std::setw(12) << "timesteps" << std::setw(16) << "worse_or_equal" << "\n";
  o << std::fixed << std::setprecision(3);
  o << std::left << std::setw(16) << "full" << std::right << std::setw(11) << f.completed << std::setw(12)
    << f.mean_score << std::setw(12) << f.mean_timesteps << std::setw(16) << "-" << "\n";
  for (const auto& row : r.rows) {
    const TaskRow& t = row.report.rows.back();
    o << std::left << std::setw(16) << row.flag << std::right << std::setw(11) << t.completed << std::setw(12)
      << t.mean_score << std::setw(12) << t.mean_timesteps << std::setw(16) << row.worse_or_equal << "\n";
  }
  return o.str();
}

}  // namespace pcook
