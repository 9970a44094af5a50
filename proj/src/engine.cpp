#include "mg/engine.hpp"

#include <charconv>
#include <sstream>

namespace mg {

std::string_view to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::accepted: return "accepted";
    case Outcome::Kind::answered: return "answered";
    case Outcome::Kind::found: return "found";
    case Outcome::Kind::emitted: return "emitted";
    case Outcome::Kind::exhausted: return "exhausted";
  }
  return "unknown";
}

namespace {

struct DovetailAnd {
  std::vector<SemiDecider> live;
  std::size_t cursor = 0;

  Verdict step() {
    if (live.empty()) return Verdict::accepted;
    if (cursor >= live.size()) cursor = 0;
    if (live[cursor].step() == Verdict::accepted) {
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(cursor));
      if (live.empty()) return Verdict::accepted;
    } else {
      ++cursor;
    }
    return Verdict::running;
  }

  bool stalled() const {
    for (const auto& c : live)
      if (c.stalled()) return true;
    return false;
  }
};

struct RaceImpl {
  std::vector<std::pair<std::size_t, SemiDecider>> live;
  std::size_t cursor = 0;

  std::optional<std::size_t> step_once() {
    for (std::size_t probe = 0, n = live.size(); probe < n && !live.empty(); ++probe) {
      if (cursor >= live.size()) cursor = 0;
      auto& [label, child] = live[cursor];
      if (child.stalled()) {
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(cursor));
        continue;
      }
      if (child.step() == Verdict::accepted) return label;
      ++cursor;
      return std::nullopt;
    }
    return std::nullopt;
  }

  bool stalled() const {
    for (const auto& entry : live)
      if (!entry.second.stalled()) return false;
    return true;
  }
};

struct RaceFinder {
  RaceImpl impl;
  Found<std::size_t> step() { return {impl.step_once()}; }
  bool stalled() const { return impl.stalled(); }
};

struct RaceOr {
  RaceImpl impl;
  Verdict step() { return impl.step_once() ? Verdict::accepted : Verdict::running; }
  bool stalled() const { return impl.stalled(); }
};

RaceImpl make_race(std::vector<SemiDecider> children) {
  RaceImpl r;
  r.live.reserve(children.size());
  for (std::size_t i = 0; i < children.size(); ++i) r.live.emplace_back(i, std::move(children[i]));
  return r;
}

struct AllOf {
  std::vector<Decider> children;
  std::size_t index = 0;

  Answer step() {
    if (index >= children.size()) return Answer::yes;
    Answer a = children[index].step();
    if (a == Answer::no) return Answer::no;
    if (a == Answer::yes && ++index == children.size()) return Answer::yes;
    return Answer::running;
  }
  bool stalled() const { return index < children.size() && children[index].stalled(); }
};

struct AcceptIf {
  Decider d;
  bool target;
  bool rejected = false;

  Verdict step() {
    if (rejected) return Verdict::running;
    Answer a = d.step();
    if (a == Answer::running) return Verdict::running;
    if ((a == Answer::yes) == target) return Verdict::accepted;
    rejected = true;
    return Verdict::running;
  }
  bool stalled() const { return rejected || d.stalled(); }
};

struct Never {
  Verdict step() { return Verdict::running; }
  bool stalled() const { return true; }
};

struct Spin {
  Verdict step() { return Verdict::running; }
};

struct AcceptAfter {
  std::uint64_t remaining;
  Verdict step() { return --remaining == 0 ? Verdict::accepted : Verdict::running; }
};

struct MachineRun {
  MachineRunner runner;
  Verdict step() { return runner.step() ? Verdict::accepted : Verdict::running; }
  bool stalled() const { return runner.stuck(); }
};

}  // namespace

SemiDecider dovetail_and(std::vector<SemiDecider> children) { return SemiDecider(DovetailAnd{std::move(children)}); }

SemiDecider dovetail_or(std::vector<SemiDecider> children) { return SemiDecider(RaceOr{make_race(std::move(children))}); }

Finder<std::size_t> race(std::vector<SemiDecider> children) {
  return Finder<std::size_t>(RaceFinder{make_race(std::move(children))});
}

Decider all_of(std::vector<Decider> children) { return Decider(AllOf{std::move(children)}); }

SemiDecider accept_if(Decider d, bool target) { return SemiDecider(AcceptIf{std::move(d), target}); }

SemiDecider never_accepts() { return SemiDecider(Never{}); }
SemiDecider spin_forever() { return SemiDecider(Spin{}); }

SemiDecider accept_after(std::uint64_t n) {
  if (n == 0) throw UsageError("accept_after needs at least one step");
  return SemiDecider(AcceptAfter{n});
}

// ---------------------------------------------------------------------------
// Machines

Machine::Machine(std::vector<Instruction> program) : program_(std::move(program)) {
  for (std::size_t i = 0; i < program_.size(); ++i) {
    const auto& ins = program_[i];
    if (ins.op != Instruction::Op::halt && (ins.counter < 0 || ins.counter > 1))
      throw InputError("instruction " + std::to_string(i) + ": counter must be 0 or 1");
    if (ins.op == Instruction::Op::djz && (ins.target < 0 || static_cast<std::size_t>(ins.target) >= program_.size()))
      throw InputError("instruction " + std::to_string(i) + ": jump target out of range");
  }
}

Machine parse_machine(std::string_view text) {
  std::vector<Instruction> program;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string line(text.substr(line_start, line_end - line_start));
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string op;
    if (in >> op) {
      Instruction ins;
      auto read_int = [&](int& v, const char* what) {
        std::string tok;
        if (!(in >> tok)) throw InputError("line " + std::to_string(line_no + 1) + ": missing " + what, line_start);
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
          throw InputError("line " + std::to_string(line_no + 1) + ": bad " + what + " '" + tok + "'", line_start);
      };
      if (op == "inc") {
        ins.op = Instruction::Op::inc;
        read_int(ins.counter, "counter");
      } else if (op == "djz") {
        ins.op = Instruction::Op::djz;
        read_int(ins.counter, "counter");
        read_int(ins.target, "target");
      } else if (op == "halt") {
        ins.op = Instruction::Op::halt;
      } else {
        throw InputError("line " + std::to_string(line_no + 1) + ": unknown instruction '" + op + "'", line_start);
      }
      std::string extra;
      if (in >> extra) throw InputError("line " + std::to_string(line_no + 1) + ": trailing text", line_start);
      program.push_back(ins);
    }
    ++line_no;
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  if (program.empty()) throw InputError("machine has no instructions");
  return Machine(std::move(program));
}

std::string format_machine(const Machine& m) {
  std::string out;
  for (const auto& ins : m.program()) {
    switch (ins.op) {
      case Instruction::Op::inc: out += "inc " + std::to_string(ins.counter); break;
      case Instruction::Op::djz: out += "djz " + std::to_string(ins.counter) + " " + std::to_string(ins.target); break;
      case Instruction::Op::halt: out += "halt"; break;
    }
    out += '\n';
  }
  return out;
}

MachineRunner::MachineRunner(std::shared_ptr<const Machine> m) : machine_(std::move(m)) {}

bool MachineRunner::step() {
  if (halted_) throw UsageError("machine already halted");
  ++executed_;
  const auto& program = machine_->program();
  if (pc_ >= program.size()) {
    halted_ = true;
    return true;
  }
  const Instruction& ins = program[pc_];
  switch (ins.op) {
    case Instruction::Op::halt:
      halted_ = true;
      return true;
    case Instruction::Op::inc:
      ++counters_[ins.counter];
      ++pc_;
      break;
    case Instruction::Op::djz:
      if (counters_[ins.counter] == 0) {
        pc_ = static_cast<std::size_t>(ins.target);
      } else {
        --counters_[ins.counter];
        ++pc_;
      }
      break;
  }
  return false;
}

bool MachineRunner::stuck() const {
  if (halted_) return false;
  const auto& program = machine_->program();
  if (pc_ >= program.size()) return false;
  const Instruction& ins = program[pc_];
  return ins.op == Instruction::Op::djz && static_cast<std::size_t>(ins.target) == pc_ && counters_[ins.counter] == 0;
}

SemiDecider machine_run(const Machine& m) {
  return SemiDecider(MachineRun{MachineRunner(std::make_shared<const Machine>(m))});
}

}  // namespace mg
