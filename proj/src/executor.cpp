#include "pcook/executor.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcook {

std::string_view to_string(ExecStatus status) {
  switch (status) {
    case ExecStatus::Running: return "running";
    case ExecStatus::Completed: return "completed";
    case ExecStatus::Violated: return "violated";
  }
  return "?";
}

std::string_view to_string(ExecEventKind kind) {
  switch (kind) {
    case ExecEventKind::Perception: return "perception";
    case ExecEventKind::Completion: return "completion";
    case ExecEventKind::Spawn: return "spawn";
    case ExecEventKind::Remove: return "remove";
    case ExecEventKind::Violate: return "violate";
  }
  return "?";
}

std::string Pointer::path() const {
  std::string out;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const Frame& f = frames[k];
    switch (f.kind) {
      case FrameKind::Root: out += "body"; break;
      case FrameKind::IfBranch: out += f.branch == 0 ? ".then" : ".else"; break;
      case FrameKind::WhileBody: out += ".while"; break;
      case FrameKind::Spawned: {
        const Statement& parent = frames[k - 1].block->at(frames[k - 1].index);
        out += std::holds_alternative<ParallelStmt>(parent.node) ? ".parallel[" : ".repeat[";
        out += std::to_string(f.branch) + "]";
        break;
      }
    }
    out += "[" + std::to_string(f.index) + "]";
  }
  return out;
}

namespace {

class Machine {
 public:
  Machine(ExecutorState state, ExecEvents* events) : s_(std::move(state)), events_(events) {}

  ExecutorState finish() {
    if (s_.status == ExecStatus::Running && s_.pointers.empty()) s_.status = ExecStatus::Completed;
    return std::move(s_);
  }

  ExecutorState& state() { return s_; }

  void emit(ExecEventKind kind, std::vector<PointerId> ids, std::string detail) {
    if (events_ != nullptr) events_->push_back(ExecEvent{kind, std::move(ids), std::move(detail)});
  }

  Pointer* find(PointerId id) {
    auto it = std::lower_bound(s_.pointers.begin(), s_.pointers.end(), id,
                               [](const Pointer& p, PointerId v) { return p.id < v; });
    return it != s_.pointers.end() && it->id == id ? &*it : nullptr;
  }

  PointerId add(std::vector<Frame> frames) {
    const PointerId id = s_.next_pointer++;
    s_.pointers.push_back(Pointer{id, std::move(frames)});
    return id;
  }

  void remove(PointerId id) {
    std::erase_if(s_.pointers, [id](const Pointer& p) { return p.id == id; });
  }

  // Moves a pointer past the statement it rests on.
  void advance(PointerId id) {
    find(id)->frames.back().index++;
    unwind(id);
  }

  void settle() {
    std::size_t guard = 0;
    std::size_t i = 0;
    while (i < s_.pointers.size()) {
      if (++guard > 1'000'000) throw std::logic_error("executor settle did not converge");
      Pointer& p = s_.pointers[i];
      const Statement& stmt = p.statement();
      if (const auto* node = std::get_if<IfStmt>(&stmt.node)) {
        if (node->cond.is_tautology()) {
          p.frames.push_back(Frame{&node->then_block, 0, FrameKind::IfBranch, 0, 0});
          continue;
        }
      } else if (const auto* node = std::get_if<WhileStmt>(&stmt.node)) {
        if (node->cond.is_tautology()) {
          p.frames.push_back(Frame{&node->body, 0, FrameKind::WhileBody, 0, 0});
          continue;
        }
      } else if (const auto* node = std::get_if<ParallelStmt>(&stmt.node)) {
        std::vector<const Block*> blocks;
        for (const auto& b : node->blocks) blocks.push_back(&b);
        split(i, blocks);
        continue;
      } else if (const auto* node = std::get_if<RepeatStmt>(&stmt.node)) {
        const int copies = node->count.value_or(s_.repeat_target);
        split(i, std::vector<const Block*>(static_cast<std::size_t>(copies), &node->body));
        continue;
      }
      ++i;
    }
  }

 private:
  void split(std::size_t index, const std::vector<const Block*>& blocks) {
    const PointerId parent = s_.pointers[index].id;
    std::vector<Frame> continuation = s_.pointers[index].frames;
    s_.pointers.erase(s_.pointers.begin() + static_cast<std::ptrdiff_t>(index));
    emit(ExecEventKind::Remove, {parent}, "split");
    const std::uint32_t group = s_.next_group++;
    s_.groups[group] = SpawnGroup{static_cast<int>(blocks.size()), static_cast<int>(blocks.size()),
                                  continuation};
    std::vector<PointerId> spawned;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      auto frames = continuation;
      frames.push_back(Frame{blocks[k], 0, FrameKind::Spawned, static_cast<int>(k), group});
      spawned.push_back(add(std::move(frames)));
    }
    emit(ExecEventKind::Spawn, spawned, "group " + std::to_string(group));
  }

  void unwind(PointerId id) {
    while (true) {
      Pointer* p = find(id);
      Frame& top = p->frames.back();
      if (top.index < top.block->size()) return;
      switch (top.kind) {
        case FrameKind::Root:
          remove(id);
          emit(ExecEventKind::Remove, {id}, "end of program");
          return;
        case FrameKind::IfBranch:
          p->frames.pop_back();
          p->frames.back().index++;
          break;
        case FrameKind::WhileBody:
          p->frames.pop_back();
          return;
        case FrameKind::Spawned: {
          const std::uint32_t group = top.group;
          remove(id);
          emit(ExecEventKind::Remove, {id}, "end of block in group " + std::to_string(group));
          auto it = s_.groups.find(group);
          if (--it->second.remaining > 0) return;
          auto continuation = std::move(it->second.continuation);
          s_.groups.erase(it);
          const PointerId next = add(std::move(continuation));
          emit(ExecEventKind::Spawn, {next}, "resume after group " + std::to_string(group));
          id = next;
          find(id)->frames.back().index++;
          break;
        }
      }
    }
  }

  ExecutorState s_;
  ExecEvents* events_;
};

const Condition* resting_condition(const Pointer& p) {
  const Statement& stmt = p.statement();
  if (const auto* node = std::get_if<IfStmt>(&stmt.node)) return &node->cond;
  if (const auto* node = std::get_if<WhileStmt>(&stmt.node)) return &node->cond;
  return nullptr;
}

}  // namespace

ExecutorState init(std::shared_ptr<const Program> program, int repeat_target, ExecEvents* events) {
  if (repeat_target < 1) throw std::invalid_argument("repeat target must be at least 1");
  ExecutorState s;
  s.program = std::move(program);
  s.repeat_target = repeat_target;
  Machine m(std::move(s), events);
  if (!m.state().program->body.empty()) {
    const PointerId id = m.add({Frame{&m.state().program->body, 0, FrameKind::Root, 0, 0}});
    m.emit(ExecEventKind::Spawn, {id}, "init");
    m.settle();
  }
  return m.finish();
}

ExecutorState init(const Program& program, int repeat_target, ExecEvents* events) {
  return init(std::make_shared<const Program>(program), repeat_target, events);
}

std::set<Query> pending_perceptions(const ExecutorState& s) {
  std::set<Query> out;
  if (s.status != ExecStatus::Running) return out;
  for (const auto& p : s.pointers) {
    if (const Condition* c = resting_condition(p); c != nullptr && c->query) out.insert(*c->query);
  }
  return out;
}

ExecutorState resolve_perception(const ExecutorState& s, const Query& q, bool answer,
                                 ExecEvents* events) {
  std::vector<PointerId> waiting;
  if (s.status == ExecStatus::Running) {
    for (const auto& p : s.pointers) {
      if (const Condition* c = resting_condition(p); c != nullptr && c->query == q) {
        waiting.push_back(p.id);
      }
    }
  }
  if (waiting.empty()) throw UnknownQuery("query " + to_string(q) + " is not pending");

  Machine m(s, events);
  m.emit(ExecEventKind::Perception, waiting, to_string(q) + (answer ? "=true" : "=false"));
  for (PointerId id : waiting) {
    Pointer* p = m.find(id);
    const Statement& stmt = p->statement();
    if (const auto* node = std::get_if<IfStmt>(&stmt.node)) {
      if (answer) {
        p->frames.push_back(Frame{&node->then_block, 0, FrameKind::IfBranch, 0, 0});
      } else if (node->else_block) {
        p->frames.push_back(Frame{&*node->else_block, 0, FrameKind::IfBranch, 1, 0});
      } else {
        m.advance(id);
      }
    } else {
      const auto& loop = std::get<WhileStmt>(stmt.node);
      if (answer) {
        p->frames.push_back(Frame{&loop.body, 0, FrameKind::WhileBody, 0, 0});
      } else {
        m.advance(id);
      }
    }
  }
  m.settle();
  return m.finish();
}

ExecutorState settle(const ExecutorState& s, ExecEvents* events) {
  Machine m(s, events);
  m.settle();
  return m.finish();
}

std::vector<SubroutineHandle> possible_subroutines(const ExecutorState& s) {
  std::vector<SubroutineHandle> out;
  if (s.status != ExecStatus::Running) return out;
  for (const auto& p : s.pointers) {
    if (const auto* b = std::get_if<Behavior>(&p.statement().node)) out.push_back({p.id, *b});
  }
  return out;
}

ExecutorState notify_completion(const ExecutorState& s, const Behavior& done, ExecEvents* events) {
  if (s.status != ExecStatus::Running) return s;
  Machine m(s, events);
  const Pointer* match = nullptr;
  for (const auto& p : s.pointers) {
    const auto* b = std::get_if<Behavior>(&p.statement().node);
    if (b != nullptr && same_subtask(*b, done)) {
      match = &p;
      break;
    }
  }
  if (match == nullptr) {
    m.state().status = ExecStatus::Violated;
    m.emit(ExecEventKind::Violate, {}, to_string(done));
    return m.finish();
  }
  const PointerId id = match->id;
  m.emit(ExecEventKind::Completion, {id}, to_string(done));
  m.advance(id);
  m.settle();
  return m.finish();
}

}  // namespace pcook
