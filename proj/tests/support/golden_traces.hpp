#pragma once

#include <optional>

#include "support/corpus.hpp"
#include "support/exec_trace.hpp"

namespace pcook::testing {

inline const std::vector<GoldenTrace>& golden_traces() {
  static const std::vector<GoldenTrace> traces = {
      {"easy fire, burning",
       "@easy_fire.prog",
       2,
       "running 0?IsOnFire()",
       {{"IsOnFire()=true", "running 0:PutOutFire()"}, {"PutOutFire()", "completed"}}},
      {"easy fire, calm", "@easy_fire.prog", 2, "running 0?IsOnFire()", {{"IsOnFire()=false", "completed"}}},
      {"easy serve tomato",
       "@easy_serve_tomato.prog",
       2,
       "running 0?is_ordered(ChoppedTomato)",
       {{"is_ordered(ChoppedTomato)=true", "running 0:Serve(ChoppedTomato+Plate)"},
        {"Serve(ChoppedTomato+Plate)", "completed"}}},
      {"easy pick onion, wrong ingredient",
       "@easy_pick_onion.prog",
       2,
       "running 0?is_ordered(ChoppedOnion)",
       {{"is_ordered(ChoppedOnion)=true", "running 0:Pick(FreshOnion)"},
        {"Pick(FreshTomato)", "violated 0:Pick(FreshOnion)"},
        {"Pick(FreshOnion)", "violated 0:Pick(FreshOnion)"}}},
      {"medium repeat, M=2",
       "@medium_repeat_tomato.prog",
       2,
       "running 1:Pick(FreshTomato) 2:Pick(FreshTomato)",
       {{"Pick(FreshTomato)", "running 2:Pick(FreshTomato)"}, {"Pick(FreshTomato)", "completed"}}},
      {"medium repeat, M=3",
       "@medium_repeat_tomato.prog",
       3,
       "running 1:Pick(FreshTomato) 2:Pick(FreshTomato) 3:Pick(FreshTomato)",
       {{"Pick(FreshTomato)", "running 2:Pick(FreshTomato) 3:Pick(FreshTomato)"},
        {"Chop(FreshTomato)", "violated 2:Pick(FreshTomato) 3:Pick(FreshTomato)"}}},
      {"medium parallel pick and wash",
       "@medium_parallel_pick_wash.prog",
       2,
       "running 1:Pick(FreshOnion) 2:Pick(FreshTomato) 3:WashDirtyPlate()",
       {{"WashDirtyPlate()", "running 1:Pick(FreshOnion) 2:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "running 1:Pick(FreshOnion)"},
        {"Pick(FreshOnion)", "completed"}}},
      {"medium tomato dish",
       "@medium_tomato_dish.prog",
       2,
       "running 0?is_ordered(ChoppedTomato)",
       {{"is_ordered(ChoppedTomato)=true", "running 0:Chop(FreshTomato)"},
        {"Chop(FreshTomato)", "running 0:Merge(ChoppedTomato,Plate)"},
        {"Merge(Plate,ChoppedTomato)", "running 0:Serve(ChoppedTomato+Plate)"},
        {"Serve(ChoppedTomato+Plate)", "completed"}}},
      {"hard dishes with fire loop",
       "@hard_dishes_with_fire.prog",
       2,
       "running 1?is_ordered(ChoppedOnion) 2?is_ordered(ChoppedOnion) 3?IsOnFire()",
       {{"is_ordered(ChoppedOnion)=true",
         "running 1:Merge(ChoppedOnion,Plate) 2:Merge(ChoppedTomato,Plate) 3?IsOnFire()"},
        {"IsOnFire()=false", "running 1:Merge(ChoppedOnion,Plate) 2:Merge(ChoppedTomato,Plate) 3?IsOnFire()"},
        {"IsOnFire()=true", "running 1:Merge(ChoppedOnion,Plate) 2:Merge(ChoppedTomato,Plate) 3:PutOutFire()"},
        {"PutOutFire()", "running 1:Merge(ChoppedOnion,Plate) 2:Merge(ChoppedTomato,Plate) 3?IsOnFire()"},
        {"Merge(Plate,ChoppedOnion)",
         "running 1:Serve(ChoppedOnion+Plate) 2:Merge(ChoppedTomato,Plate) 3?IsOnFire()"},
        {"Serve(ChoppedOnion+Plate)", "running 2:Merge(ChoppedTomato,Plate) 3?IsOnFire()"},
        {"Merge(ChoppedTomato,Plate)", "running 2:Serve(ChoppedTomato+Plate) 3?IsOnFire()"},
        {"Serve(ChoppedTomato+Plate)", "running 3?IsOnFire()"},
        {"PutOutFire()", "violated 3?IsOnFire()"}}},
      {"hard dishes, nothing ordered",
       "@hard_dishes_with_fire.prog",
       2,
       "running 1?is_ordered(ChoppedOnion) 2?is_ordered(ChoppedOnion) 3?IsOnFire()",
       {{"is_ordered(ChoppedOnion)=false", "running 3?IsOnFire()"},
        {"IsOnFire()=true", "running 3:PutOutFire()"},
        {"PutOutFire()", "running 3?IsOnFire()"}}},
      {"hard two dishes",
       "@hard_two_dishes.prog",
       2,
       "running 1:Pick(FreshOnion) 2:Pick(FreshTomato) 3:WashDirtyPlate() 4:Merge(ChoppedOnion,Plate) "
       "5:Merge(ChoppedTomato,Plate)",
       {{"Pick(FreshOnion)",
         "running 1:Chop(FreshOnion) 2:Pick(FreshTomato) 3:WashDirtyPlate() 4:Merge(ChoppedOnion,Plate) "
         "5:Merge(ChoppedTomato,Plate)"},
        {"Chop(FreshOnion)",
         "running 2:Pick(FreshTomato) 3:WashDirtyPlate() 4:Merge(ChoppedOnion,Plate) 5:Merge(ChoppedTomato,Plate)"},
        {"Merge(ChoppedOnion,Plate)",
         "running 2:Pick(FreshTomato) 3:WashDirtyPlate() 4:Serve(ChoppedOnion+Plate) 5:Merge(ChoppedTomato,Plate)"},
        {"Pick(FreshTomato)",
         "running 2:Chop(FreshTomato) 3:WashDirtyPlate() 4:Serve(ChoppedOnion+Plate) 5:Merge(ChoppedTomato,Plate)"},
        {"Chop(FreshTomato)", "running 3:WashDirtyPlate() 4:Serve(ChoppedOnion+Plate) 5:Merge(ChoppedTomato,Plate)"},
        {"WashDirtyPlate()", "running 4:Serve(ChoppedOnion+Plate) 5:Merge(ChoppedTomato,Plate)"},
        {"Serve(ChoppedOnion+Plate)", "running 5:Merge(ChoppedTomato,Plate)"},
        {"Merge(ChoppedTomato,Plate)", "running 5:Serve(ChoppedTomato+Plate)"},
        {"Serve(ChoppedTomato+Plate)", "completed"}}},
      {"hard two dishes, chop before pick",
       "@hard_two_dishes.prog",
       2,
       "running 1:Pick(FreshOnion) 2:Pick(FreshTomato) 3:WashDirtyPlate() 4:Merge(ChoppedOnion,Plate) "
       "5:Merge(ChoppedTomato,Plate)",
       {{"Chop(FreshTomato)",
         "violated 1:Pick(FreshOnion) 2:Pick(FreshTomato) 3:WashDirtyPlate() 4:Merge(ChoppedOnion,Plate) "
         "5:Merge(ChoppedTomato,Plate)"}}},

      {"nested parallel",
       "parallel:\n"
       "    1:\n"
       "        parallel:\n"
       "            1:\n"
       "                Pick(FreshOnion)\n"
       "            2:\n"
       "                Pick(FreshTomato)\n"
       "    2:\n"
       "        parallel:\n"
       "            1:\n"
       "                Pick(Plate)\n"
       "            2:\n"
       "                WashDirtyPlate()\n"
       "Serve(ChoppedOnion+Plate)\n",
       2,
       "running 3:Pick(FreshOnion) 4:Pick(FreshTomato) 5:Pick(Plate) 6:WashDirtyPlate()",
       {{"Pick(FreshTomato)", "running 3:Pick(FreshOnion) 5:Pick(Plate) 6:WashDirtyPlate()"},
        {"Pick(FreshOnion)", "running 5:Pick(Plate) 6:WashDirtyPlate()"},
        {"WashDirtyPlate()", "running 5:Pick(Plate)"},
        {"Pick(Plate)", "running 9:Serve(ChoppedOnion+Plate)"},
        {"Serve(ChoppedOnion+Plate)", "completed"}}},
      {"repeat inside while",
       "while IsOnFire():\n"
       "    repeat:\n"
       "        PutOutFire()\n"
       "Pick(Plate)\n",
       2,
       "running 0?IsOnFire()",
       {{"IsOnFire()=true", "running 1:PutOutFire() 2:PutOutFire()"},
        {"PutOutFire()", "running 2:PutOutFire()"},
        {"PutOutFire()", "running 3?IsOnFire()"},
        {"IsOnFire()=true", "running 4:PutOutFire() 5:PutOutFire()"},
        {"PutOutFire()", "running 5:PutOutFire()"},
        {"PutOutFire()", "running 6?IsOnFire()"},
        {"IsOnFire()=false", "running 6:Pick(Plate)"},
        {"Pick(Plate)", "completed"}}},
      {"if without else, false",
       "if is_there(ChoppedOnion):\n"
       "    Merge(ChoppedOnion,Plate)\n"
       "Pick(FreshOnion)\n",
       2,
       "running 0?is_there(ChoppedOnion)",
       {{"is_there(ChoppedOnion)=false", "running 0:Pick(FreshOnion)"}, {"Pick(FreshOnion)", "completed"}}},
      {"else branch",
       "if is_ordered(ChoppedOnion):\n"
       "    Pick(FreshOnion)\n"
       "else:\n"
       "    Pick(FreshTomato)\n"
       "    Chop(FreshTomato)\n"
       "WashDirtyPlate()\n",
       2,
       "running 0?is_ordered(ChoppedOnion)",
       {{"is_ordered(ChoppedOnion)=false", "running 0:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "running 0:Chop(FreshTomato)"},
        {"Chop(FreshTomato)", "running 0:WashDirtyPlate()"},
        {"WashDirtyPlate()", "completed"}}},
      {"explicit repeat count overrides M",
       "repeat(3):\n"
       "    Pick(FreshOnion)\n"
       "    Chop(FreshOnion)\n",
       2,
       "running 1:Pick(FreshOnion) 2:Pick(FreshOnion) 3:Pick(FreshOnion)",
       {{"Pick(FreshOnion)", "running 1:Chop(FreshOnion) 2:Pick(FreshOnion) 3:Pick(FreshOnion)"},
        {"Chop(FreshOnion)", "running 2:Pick(FreshOnion) 3:Pick(FreshOnion)"},
        {"Pick(FreshOnion)", "running 2:Chop(FreshOnion) 3:Pick(FreshOnion)"},
        {"Pick(FreshOnion)", "running 2:Chop(FreshOnion) 3:Chop(FreshOnion)"},
        {"Chop(FreshOnion)", "running 3:Chop(FreshOnion)"},
        {"Chop(FreshOnion)", "completed"}}},
      {"repeat once is a plain block",
       "repeat(1):\n"
       "    Pick(Plate)\n"
       "WashDirtyPlate()\n",
       5,
       "running 1:Pick(Plate)",
       {{"Pick(Plate)", "running 2:WashDirtyPlate()"}, {"WashDirtyPlate()", "completed"}}},
      {"parallel inside repeat",
       "repeat:\n"
       "    parallel:\n"
       "        1:\n"
       "            Pick(FreshOnion)\n"
       "        2:\n"
       "            Pick(FreshTomato)\n",
       2,
       "running 3:Pick(FreshOnion) 4:Pick(FreshTomato) 5:Pick(FreshOnion) 6:Pick(FreshTomato)",
       {{"Pick(FreshOnion)", "running 4:Pick(FreshTomato) 5:Pick(FreshOnion) 6:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "running 5:Pick(FreshOnion) 6:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "running 5:Pick(FreshOnion)"},
        {"Pick(FreshOnion)", "completed"}}},
      {"violation in one branch ends the program",
       "parallel:\n"
       "    1:\n"
       "        Pick(FreshOnion)\n"
       "        Chop(FreshOnion)\n"
       "    2:\n"
       "        Pick(FreshTomato)\n",
       2,
       "running 1:Pick(FreshOnion) 2:Pick(FreshTomato)",
       {{"Pick(FreshOnion)", "running 1:Chop(FreshOnion) 2:Pick(FreshTomato)"},
        {"Chop(FreshTomato)", "violated 1:Chop(FreshOnion) 2:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "violated 1:Chop(FreshOnion) 2:Pick(FreshTomato)"}}},
      {"while loop with behaviors",
       "while is_ordered(ChoppedTomato):\n"
       "    Pick(FreshTomato)\n"
       "    Chop(FreshTomato)\n"
       "Pick(Plate)\n",
       2,
       "running 0?is_ordered(ChoppedTomato)",
       {{"is_ordered(ChoppedTomato)=true", "running 0:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "running 0:Chop(FreshTomato)"},
        {"Chop(FreshTomato)", "running 0?is_ordered(ChoppedTomato)"},
        {"is_ordered(ChoppedTomato)=true", "running 0:Pick(FreshTomato)"},
        {"Pick(FreshTomato)", "running 0:Chop(FreshTomato)"},
        {"Chop(FreshTomato)", "running 0?is_ordered(ChoppedTomato)"},
        {"is_ordered(ChoppedTomato)=false", "running 0:Pick(Plate)"},
        {"Pick(Plate)", "completed"}}},
      {"tautology if then parallel with a gated branch",
       "if True:\n"
       "    Pick(Plate)\n"
       "parallel:\n"
       "    1:\n"
       "        if IsOnFire():\n"
       "            PutOutFire()\n"
       "    2:\n"
       "        WashDirtyPlate()\n"
       "Serve(ChoppedTomato+Plate)\n",
       2,
       "running 0:Pick(Plate)",
       {{"Pick(Plate)", "running 1?IsOnFire() 2:WashDirtyPlate()"},
        {"WashDirtyPlate()", "running 1?IsOnFire()"},
        {"IsOnFire()=true", "running 1:PutOutFire()"},
        {"PutOutFire()", "running 3:Serve(ChoppedTomato+Plate)"},
        {"Serve(ChoppedTomato+Plate)", "completed"}}},
      {"gated branches share one query",
       "parallel:\n"
       "    1:\n"
       "        if is_there(Plate):\n"
       "            Pick(Plate)\n"
       "    2:\n"
       "        while is_there(Plate):\n"
       "            WashDirtyPlate()\n"
       "    3:\n"
       "        Pick(FreshOnion)\n",
       2,
       "running 1?is_there(Plate) 2?is_there(Plate) 3:Pick(FreshOnion)",
       {{"is_there(Plate)=true", "running 1:Pick(Plate) 2:WashDirtyPlate() 3:Pick(FreshOnion)"},
        {"WashDirtyPlate()", "running 1:Pick(Plate) 2?is_there(Plate) 3:Pick(FreshOnion)"},
        {"is_there(Plate)=false", "running 1:Pick(Plate) 3:Pick(FreshOnion)"},
        {"Pick(FreshOnion)", "running 1:Pick(Plate)"},
        {"Pick(Plate)", "completed"}}},
  };
  return traces;
}

inline Program golden_program(const GoldenTrace& t) {
  if (!t.program.empty() && t.program[0] == '@') return parse_program(program_text(t.program.substr(1)));
  return parse_program(t.program);
}

// Returns a description of the first mismatch, or nothing when the trace
// reproduces exactly.
inline std::optional<std::string> check_golden(const GoldenTrace& t) {
  ExecutorState s = init(golden_program(t), t.repeat_target);
  if (describe(s) != t.initial) return "init: got '" + describe(s) + "', want '" + t.initial + "'";
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& [step, want] = t.steps[k];
    try {
      s = apply_step(s, step);
    } catch (const std::exception& e) {
      return "step " + std::to_string(k) + " (" + step + ") threw: " + e.what();
    }
    if (describe(s) != want) {
      return "step " + std::to_string(k) + " (" + step + "): got '" + describe(s) + "', want '" + want + "'";
    }
  }
  return std::nullopt;
}

}  // namespace pcook::testing
