#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pcook/dsl.hpp"
#include "pcook/harness.hpp"
#include "support/maps.hpp"

using namespace pcook;
using namespace pcook::testing;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program program_file(const std::string& name) {
  return parse_program(slurp(std::string(PCOOK_SOURCE_DIR) + "/programs/" + name + ".prog"));
}

std::vector<json> records(const std::string& trace) {
  std::vector<json> out;
  std::istringstream in(trace);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

const SuiteTask& suite_task(const Suite& s, const std::string& name) {
  for (const auto& t : s.tasks) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no task " + name);
}

Episode suite_episode(const std::string& suite, const std::string& task, std::uint64_t seed) {
  RunConfig cfg;
  const Suite s = builtin_suite(suite, cfg);
  const SuiteTask& t = suite_task(s, task);
  return Episode{t.program, task_map(t, seed), task, seed};
}

std::vector<std::string> sorted_completions(const EpisodeResult& r) {
  std::vector<std::string> out;
  for (const auto& b : r.completions) out.push_back(to_string(canonical(b)));
  std::sort(out.begin(), out.end());
  return out;
}

// Always picks facing up.
class GrabPolicy : public Policy {
 public:
  Action act(const WorldState&, int, const Assignment&) override { return Action{Op::Pick, Dir::Up}; }
};

}  // namespace

TEST_CASE("a fire branch with nothing burning completes before the first tick") {
  RunConfig cfg;
  Episode ep{program_file("easy_fire"), grid({"#O###", "#0..#", "#####"}), "easy_fire", 0};
  const EpisodeResult r = run_episode(cfg, ep);
  CHECK(r.outcome == Outcome::Completed);
  CHECK(r.timesteps == 0);
  CHECK(r.score == 0.0);
  CHECK(r.subtask_fraction == 1.0);
  const auto recs = records(r.trace);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["type"] == "header");
  CHECK(recs[1]["type"] == "final");
}

TEST_CASE("score equals the discounted rewards read back from the trace") {
  RunConfig cfg;
  cfg.gamma = 0.97;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Episode ep = suite_episode("medium", "medium_parallel_pick_wash", seed);
    const EpisodeResult r = run_episode(cfg, ep);
    double score = 0.0;
    int k = 0;
    int correct_events = 0;
    for (const auto& j : records(r.trace)) {
      if (j["type"] == "step") {
        score += std::pow(0.97, k) * j["reward"].get<double>();
        ++k;
      } else if (j["type"] == "event" && j.value("correct", false)) {
        ++correct_events;
      }
    }
    CHECK(k == r.timesteps);
    CHECK(correct_events == r.correct);
    CHECK(std::abs(score - r.score) < 1e-9);
    if (r.outcome == Outcome::Completed) {
      CHECK(r.score > std::pow(0.97, r.timesteps - 1));
    }
  }
}

TEST_CASE("an unaccepted completion violates the program unless filtered") {
  const Program p = parse_program("Pick(FreshOnion)\n");
  Episode ep{p, grid({"#T#O#", "#0..#", "#####"}), "sabotage", 0};
  GrabPolicy grab;
  RunConfig cfg;
  cfg.horizon = 6;

  cfg.safety_filter = false;
  const EpisodeResult bad = run_episode(cfg, ep, &grab);
  CHECK(bad.outcome == Outcome::Violated);
  CHECK(bad.timesteps == 1);
  CHECK(bad.correct == 0);
  bool flagged = false;
  for (const auto& j : records(bad.trace)) {
    if (j["type"] == "event" && j["kind"] == "subtask") flagged = flagged || j["correct"] == false;
  }
  CHECK(flagged);

  cfg.safety_filter = true;
  const EpisodeResult kept = run_episode(cfg, ep, &grab);
  CHECK(kept.outcome == Outcome::TimedOut);
  CHECK(kept.filtered == 6);
  const ReplayResult rr = replay_trace(kept.trace);
  CHECK(rr.events_match);
  CHECK(rr.score_matches);
}

TEST_CASE("suite reports and traces are identical across worker counts") {
  RunConfig cfg;
  cfg.n_maps = 6;
  const Suite s = builtin_suite("medium", cfg);
  std::vector<std::string> a;
  std::vector<std::string> b;
  const std::string ja = report_json(run_suite(cfg, s, &a));
  cfg.workers = 3;
  const std::string jb = report_json(run_suite(cfg, s, &b));
  CHECK(ja == jb);
  CHECK(a == b);
  CHECK(a.size() == s.tasks.size() * 6);
}

TEST_CASE("sequentialize inlines parallel blocks and copies repeats") {
  const Program par = parse_program("parallel:\n    1:\n        Pick(FreshOnion)\n    2:\n        Pick(Plate)\n");
  CHECK(format_program(sequentialize(par, 2)) == format_program(parse_program("Pick(FreshOnion)\nPick(Plate)\n")));

  const Program rep = parse_program("repeat:\n    Pick(FreshTomato)\n");
  CHECK(format_program(sequentialize(rep, 3)) ==
        format_program(parse_program("Pick(FreshTomato)\nPick(FreshTomato)\nPick(FreshTomato)\n")));

  const Program nested = parse_program(
      "if IsOnFire():\n    parallel:\n        1:\n            PutOutFire()\n        2:\n            Pick(Plate)\nelse:\n"
      "    Pick(FreshOnion)\n");
  CHECK(format_program(sequentialize(nested, 2)) ==
        format_program(parse_program("if IsOnFire():\n    PutOutFire()\n    Pick(Plate)\nelse:\n    Pick(FreshOnion)\n")));

  CHECK_THROWS_AS(sequentialize(par, 0), std::invalid_argument);
}

TEST_CASE("sequential and parallel runs accept the same completions") {
  RunConfig cfg;
  RunConfig seq = cfg;
  seq.ablate.sequentialize = true;
  int compared = 0;
  for (const char* task : {"medium_parallel_pick_wash", "medium_parallel_two_picks"}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const Episode ep = suite_episode("medium", task, seed);
      const EpisodeResult a = run_episode(cfg, ep);
      const EpisodeResult b = run_episode(seq, ep);
      if (a.outcome != Outcome::Completed || b.outcome != Outcome::Completed) continue;
      CHECK(sorted_completions(a) == sorted_completions(b));
      ++compared;
    }
  }
  CHECK(compared >= 10);
}

TEST_CASE("config round trip and rejects") {
  RunConfig c;
  c.seed = 17;
  c.n_agents = 3;
  c.solver = SolverKind::BruteForce;
  c.weights.c_r = 4.5;
  c.ablate.no_reach = true;
  c.aux.epsilon = 1e-4;
  c.trace_dir = "/tmp/x";
  const std::string text = config_to_json(c);
  const RunConfig back = config_from_json(text);
  CHECK(config_to_json(back) == text);
  CHECK(back.seed == 17);
  CHECK(back.solver == SolverKind::BruteForce);
  CHECK(back.ablate == c.ablate);

  CHECK_THROWS_AS(config_from_json("{\"sneed\": 1}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{\"weights\": {\"w_fees\": 1}}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{\"solver\": \"greedy\"}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{\"horizon\": \"long\"}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{\"horizon\": 0}"), ConfigError);
  CHECK_THROWS_AS(config_from_json("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{"), ConfigError);
}

TEST_CASE("traces replay and tampering is caught") {
  RunConfig cfg;
  const Episode ep = suite_episode("medium", "medium_tomato_dish", 3);
  const EpisodeResult r = run_episode(cfg, ep);
  REQUIRE(r.outcome == Outcome::Completed);
  const ReplayResult ok = replay_trace(r.trace);
  CHECK(ok.events_match);
  CHECK(ok.score_matches);
  CHECK(ok.steps == r.timesteps);

  auto recs = records(r.trace);
  std::string tampered;
  for (auto& j : recs) {
    if (j["type"] == "final") j["score"] = j["score"].get<double>() + 0.01;
    tampered += j.dump() + "\n";
  }
  CHECK_FALSE(replay_trace(tampered).score_matches);

  // Dropping the step that produced the last event breaks the event stream.
  recs = records(r.trace);
  std::size_t last_step = 0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (recs[k]["type"] == "step") last_step = k;
  }
  tampered.clear();
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (k != last_step) tampered += recs[k].dump() + "\n";
  }
  CHECK_FALSE(replay_trace(tampered).events_match);
  CHECK_FALSE(replay_trace("").events_match);
}

TEST_CASE("allocation records add up") {
  RunConfig cfg;
  int groups = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const EpisodeResult r = run_episode(cfg, suite_episode("hard", "hard_two_dishes", seed));
    for (const auto& j : records(r.trace)) {
      if (j["type"] != "step") continue;
      for (const auto& g : j["allocation"]) {
        const double sum = g["c_feas"].get<double>() + g["c_cost"].get<double>() + g["c_reach"].get<double>();
        CHECK(std::abs(sum - g["c_total"].get<double>()) < 1e-9);
        CHECK(g["agents"].size() >= 1);
        ++groups;
      }
      CHECK(j["actions"].size() == 2);
      CHECK(j["roles"].size() == 2);
    }
  }
  CHECK(groups > 0);
}

TEST_CASE("the hard suite puts fires out") {
  RunConfig cfg;
  int put_out = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const EpisodeResult r = run_episode(cfg, suite_episode("hard", "hard_dishes_then_fire", seed));
    for (const auto& b : r.completions) put_out += to_string(b) == "PutOutFire()" ? 1 : 0;
    CHECK(replay_trace(r.trace).events_match);
  }
  CHECK(put_out > 0);
}

TEST_CASE("idle helpers are recruited and back-and-forth moves get broken up") {
  RunConfig cfg;
  cfg.n_agents = 4;
  const Suite s = builtin_suite("hard-parallel", cfg);
  const SuiteTask& t = suite_task(s, "hard_dishes_then_fire");
  int recruited = 0;
  int yielded = 0;
  int completed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const EpisodeResult r = run_episode(cfg, Episode{t.program, task_map(t, seed), t.name, seed});
    recruited += r.recruited;
    yielded += r.yielded;
    completed += r.outcome == Outcome::Completed ? 1 : 0;
    int yield_records = 0;
    for (const auto& j : records(r.trace)) yield_records += j["type"] == "yield" ? 1 : 0;
    CHECK(yield_records == r.yielded);
    CHECK(replay_trace(r.trace).events_match);
  }
  CHECK(recruited > 0);
  CHECK(yielded > 0);
  CHECK(completed >= 8);
}
