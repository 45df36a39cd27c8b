#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcook/ast.hpp"

namespace pcook {

using PointerId = std::uint32_t;

enum class ExecStatus : std::uint8_t { Running, Completed, Violated };

std::string_view to_string(ExecStatus status);

enum class FrameKind : std::uint8_t { Root, IfBranch, WhileBody, Spawned };

// One level of a pointer's continuation: the block being executed and the
// index of the statement the pointer rests on within it.
struct Frame {
  const Block* block = nullptr;
  std::size_t index = 0;
  FrameKind kind = FrameKind::Root;
  int branch = 0;           // which child block of the parent statement
  std::uint32_t group = 0;  // spawn group, for Spawned frames

  bool operator==(const Frame&) const = default;
};

struct Pointer {
  PointerId id = 0;
  std::vector<Frame> frames;

  const Statement& statement() const { return frames.back().block->at(frames.back().index); }
  std::string path() const;
  bool operator==(const Pointer&) const = default;
};

// The pointers spawned by one parallel/repeat routine. When the last one
// finishes, a pointer resumes at `continuation` just past the routine.
struct SpawnGroup {
  int remaining = 0;
  int size = 0;
  std::vector<Frame> continuation;
  bool operator==(const SpawnGroup&) const = default;
};

struct SubroutineHandle {
  PointerId pointer = 0;
  Behavior behavior;
  bool operator==(const SubroutineHandle&) const = default;
};

enum class ExecEventKind : std::uint8_t { Perception, Completion, Spawn, Remove, Violate };

std::string_view to_string(ExecEventKind kind);

struct ExecEvent {
  ExecEventKind kind = ExecEventKind::Perception;
  std::vector<PointerId> pointers;
  std::string detail;
};

class UnknownQuery : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Program-side state. Transitions are pure: each returns a new state and
// optionally appends the event records it produced.
struct ExecutorState {
  std::shared_ptr<const Program> program;
  std::vector<Pointer> pointers;  // sorted by id
  std::map<std::uint32_t, SpawnGroup> groups;
  ExecStatus status = ExecStatus::Running;
  int repeat_target = 2;
  PointerId next_pointer = 0;
  std::uint32_t next_group = 1;

  bool operator==(const ExecutorState& o) const {
    return *program == *o.program && pointers == o.pointers && groups == o.groups &&
           status == o.status && repeat_target == o.repeat_target &&
           next_pointer == o.next_pointer && next_group == o.next_group;
  }
};

using ExecEvents = std::vector<ExecEvent>;

ExecutorState init(std::shared_ptr<const Program> program, int repeat_target,
                   ExecEvents* events = nullptr);
ExecutorState init(const Program& program, int repeat_target, ExecEvents* events = nullptr);

std::set<Query> pending_perceptions(const ExecutorState& s);

// Throws UnknownQuery if no pointer waits on `q`.
ExecutorState resolve_perception(const ExecutorState& s, const Query& q, bool answer,
                                 ExecEvents* events = nullptr);

// Expands parallel/repeat heads and enters tautology conditions until every
// pointer rests on a behavior or a perception-gated routine.
ExecutorState settle(const ExecutorState& s, ExecEvents* events = nullptr);

std::vector<SubroutineHandle> possible_subroutines(const ExecutorState& s);

// Advances the lowest-id pointer resting on `done`; marks the program
// Violated when none matches.
ExecutorState notify_completion(const ExecutorState& s, const Behavior& done,
                                ExecEvents* events = nullptr);

inline ExecStatus status(const ExecutorState& s) { return s.status; }

}  // namespace pcook
