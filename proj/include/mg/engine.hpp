#pragma once

// Resumable, deterministic, step-budgeted computations and the cooperative
// combinators that interleave them.
//
// A computation is a value. Copying it snapshots its full state; stepping the
// copy never affects the original. Every call to step() is one step, and a
// combinator's step delegates exactly one step to one child, so budgets
// compose additively.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "mg/errors.hpp"

namespace mg {

enum class Verdict { running, accepted };
enum class Answer { running, yes, no };

template <class T>
struct Emit {
  std::optional<T> item;
};

template <class T>
struct Found {
  std::optional<T> value;
};

template <class Out>
struct StepTraits;

template <>
struct StepTraits<Verdict> {
  static bool terminal(Verdict v) noexcept { return v == Verdict::accepted; }
};

template <>
struct StepTraits<Answer> {
  static bool terminal(Answer a) noexcept { return a != Answer::running; }
};

template <class T>
struct StepTraits<Emit<T>> {
  static bool terminal(const Emit<T>&) noexcept { return false; }
};

template <class T>
struct StepTraits<Found<T>> {
  static bool terminal(const Found<T>& f) noexcept { return f.value.has_value(); }
};

/// Type-erased resumable computation producing `Out` on every step.
///
/// Implementations are copyable types with `Out step()` and optionally
/// `bool stalled() const`. A stalled computation promises that no future step
/// produces a terminal status or an emission; schedulers skip it and `run`
/// fast-forwards over it.
template <class Out>
class Computation {
 public:
  template <class Impl>
    requires(!std::same_as<std::remove_cvref_t<Impl>, Computation>)
  explicit Computation(Impl impl) : self_(std::make_unique<Model<Impl>>(std::move(impl))) {}

  Computation(const Computation& other)
      : self_(other.self_->clone()), steps_(other.steps_), terminal_(other.terminal_) {}
  Computation(Computation&&) noexcept = default;
  Computation& operator=(const Computation& other) {
    if (this != &other) *this = Computation(other);
    return *this;
  }
  Computation& operator=(Computation&&) noexcept = default;
  ~Computation() = default;

  Out step() {
    if (terminal_) throw UsageError("step() on a computation that already terminated");
    ++steps_;
    Out out = self_->step();
    if (StepTraits<Out>::terminal(out)) terminal_ = true;
    return out;
  }

  bool stalled() const { return !terminal_ && self_->stalled(); }
  bool terminal() const noexcept { return terminal_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }

  /// Accounts `n` steps of a stalled computation without executing them.
  void idle(std::uint64_t n) {
    if (terminal_) throw UsageError("idle() on a computation that already terminated");
    steps_ += n;
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual Out step() = 0;
    virtual bool stalled() const = 0;
    virtual std::unique_ptr<Concept> clone() const = 0;
  };

  template <class Impl>
  struct Model final : Concept {
    explicit Model(Impl i) : impl(std::move(i)) {}
    Out step() override { return impl.step(); }
    bool stalled() const override {
      if constexpr (requires(const Impl& x) { { x.stalled() } -> std::convertible_to<bool>; }) {
        return impl.stalled();
      } else {
        return false;
      }
    }
    std::unique_ptr<Concept> clone() const override { return std::make_unique<Model>(*this); }
    Impl impl;
  };

  std::unique_ptr<Concept> self_;
  std::uint64_t steps_ = 0;
  bool terminal_ = false;
};

using SemiDecider = Computation<Verdict>;
using Decider = Computation<Answer>;
template <class T>
using Enumerator = Computation<Emit<T>>;
template <class T>
using Finder = Computation<Found<T>>;

/// Wraps a copyable nullary callable as a leaf computation.
template <class Out, class F>
Computation<Out> from_function(F f) {
  struct Impl {
    F f;
    Out step() { return f(); }
  };
  return Computation<Out>(Impl{std::move(f)});
}

// ---------------------------------------------------------------------------
// Running under a budget

struct Budget {
  std::uint64_t max_steps = 0;
};

/// Result of stepping a computation at most `max_steps` times.
template <class Out>
struct RunResult {
  Out last{};
  std::uint64_t steps = 0;  // steps consumed by this call
  bool terminal = false;

  bool exhausted() const noexcept { return !terminal; }
};

template <class Out>
RunResult<Out> run(Computation<Out>& c, Budget b) {
  RunResult<Out> r;
  while (r.steps < b.max_steps) {
    if (c.stalled()) {
      c.idle(b.max_steps - r.steps);
      r.steps = b.max_steps;
      break;
    }
    r.last = c.step();
    ++r.steps;
    if (StepTraits<Out>::terminal(r.last)) {
      r.terminal = true;
      break;
    }
  }
  return r;
}

template <class T>
struct Collected {
  std::vector<T> items;
  std::uint64_t steps = 0;
};

/// Runs an enumerator for exactly the budget, collecting emissions.
template <class T>
Collected<T> collect(Enumerator<T>& e, Budget b) {
  Collected<T> out;
  while (out.steps < b.max_steps) {
    if (e.stalled()) {
      e.idle(b.max_steps - out.steps);
      out.steps = b.max_steps;
      break;
    }
    Emit<T> em = e.step();
    ++out.steps;
    if (em.item) out.items.push_back(std::move(*em.item));
  }
  return out;
}

/// Runs an enumerator until it has emitted `count` items or the budget ends.
template <class T>
Collected<T> collect_first(Enumerator<T>& e, std::size_t count, Budget b) {
  Collected<T> out;
  while (out.items.size() < count && out.steps < b.max_steps && !e.stalled()) {
    Emit<T> em = e.step();
    ++out.steps;
    if (em.item) out.items.push_back(std::move(*em.item));
  }
  return out;
}

/// Uniform summary used by reports: what happened and after how many steps.
struct Outcome {
  enum class Kind { accepted, answered, found, emitted, exhausted };
  Kind kind = Kind::exhausted;
  bool answer = false;
  std::uint64_t steps = 0;
};

inline Outcome summarize(const RunResult<Verdict>& r) {
  return {r.terminal ? Outcome::Kind::accepted : Outcome::Kind::exhausted, r.terminal, r.steps};
}
inline Outcome summarize(const RunResult<Answer>& r) {
  return {r.terminal ? Outcome::Kind::answered : Outcome::Kind::exhausted, r.last == Answer::yes, r.steps};
}
template <class T>
Outcome summarize(const RunResult<Found<T>>& r) {
  return {r.terminal ? Outcome::Kind::found : Outcome::Kind::exhausted, r.terminal, r.steps};
}

std::string_view to_string(Outcome::Kind k);

// ---------------------------------------------------------------------------
// Combinators

/// Accepts once every child has accepted. Children are stepped round-robin,
/// one child step per step; accepted children leave the rotation. The empty
/// conjunction accepts on its first step.
SemiDecider dovetail_and(std::vector<SemiDecider> children);

/// Accepts as soon as any child accepts.
SemiDecider dovetail_or(std::vector<SemiDecider> children);

/// Round-robin race: finds the index of the first child to accept. In a round
/// where several children would accept, the lowest index is stepped first and
/// wins.
Finder<std::size_t> race(std::vector<SemiDecider> children);

/// Decides each child in order; answers no at the first no, yes when all said
/// yes. The empty list answers yes on its first step.
Decider all_of(std::vector<Decider> children);

/// Accepts when the decider answers `target`; stalls forever on the other answer.
SemiDecider accept_if(Decider d, bool target = true);

/// Accepts when the finder finds.
template <class T>
SemiDecider accept_when_found(Finder<T> f) {
  struct Impl {
    Finder<T> f;
    Verdict step() { return f.step().value ? Verdict::accepted : Verdict::running; }
    bool stalled() const { return f.stalled(); }
  };
  return SemiDecider(Impl{std::move(f)});
}

/// Maps every output of a computation; stalling passes through.
template <class A, class B>
Computation<B> transform(Computation<A> c, std::function<B(const A&)> f) {
  struct Impl {
    Computation<A> c;
    std::function<B(const A&)> f;
    B step() { return f(c.step()); }
    bool stalled() const { return c.stalled(); }
  };
  return Computation<B>(Impl{std::move(c), std::move(f)});
}

/// Runs `first` to termination, then continues with `next(result)`. The step on
/// which `first` terminates reports a running (default) output.
template <class A, class B>
Computation<B> then(Computation<A> first, std::function<Computation<B>(const A&)> next) {
  struct Impl {
    std::optional<Computation<A>> first;
    std::function<Computation<B>(const A&)> next;
    std::optional<Computation<B>> second;
    B step() {
      if (second) return second->step();
      A a = first->step();
      if (StepTraits<A>::terminal(a)) {
        second.emplace(next(a));
        first.reset();
      }
      return B{};
    }
    bool stalled() const { return second ? second->stalled() : first->stalled(); }
  };
  return Computation<B>(Impl{std::move(first), std::move(next), std::nullopt});
}

/// Emits exactly the domain items whose semi-decider accepts, each once, by
/// interleaving one domain step with one step of each live semi-decider.
template <class T>
Enumerator<T> semidecider_to_enumerator(std::function<SemiDecider(const T&)> family, Enumerator<T> domain) {
  struct Impl {
    std::function<SemiDecider(const T&)> family;
    Enumerator<T> domain;
    std::vector<std::pair<T, SemiDecider>> live;
    std::size_t cursor = 0;  // 0: domain, i > 0: live[i - 1]

    Emit<T> step() {
      const std::size_t slots = live.size() + 1;
      for (std::size_t probe = 0; probe < slots; ++probe) {
        if (cursor >= live.size() + 1) cursor = 0;
        if (cursor == 0) {
          if (domain.stalled()) {
            cursor = 1;
            continue;
          }
          cursor = 1;
          Emit<T> e = domain.step();
          if (e.item) {
            SemiDecider d = family(*e.item);
            live.emplace_back(std::move(*e.item), std::move(d));
          }
          return {};
        }
        auto& [item, decider] = live[cursor - 1];
        if (decider.stalled()) {
          live.erase(live.begin() + static_cast<std::ptrdiff_t>(cursor - 1));
          continue;
        }
        if (decider.step() == Verdict::accepted) {
          T out = std::move(item);
          live.erase(live.begin() + static_cast<std::ptrdiff_t>(cursor - 1));
          return {std::move(out)};
        }
        ++cursor;
        return {};
      }
      return {};
    }

    bool stalled() const {
      if (!domain.stalled()) return false;
      for (const auto& entry : live)
        if (!entry.second.stalled()) return false;
      return true;
    }
  };
  return Enumerator<T>(Impl{std::move(family), std::move(domain), {}, 0});
}

/// Finds the first emission of an enumerator.
template <class T>
Finder<T> first_emission(Enumerator<T> e) {
  struct Impl {
    Enumerator<T> e;
    Found<T> step() {
      Emit<T> em = e.step();
      return {std::move(em.item)};
    }
    bool stalled() const { return e.stalled(); }
  };
  return Finder<T>(Impl{std::move(e)});
}

/// Finds some domain item whose semi-decider accepts (dovetailed search).
template <class T>
Finder<T> find_accepted(std::function<SemiDecider(const T&)> family, Enumerator<T> domain) {
  return first_emission(semidecider_to_enumerator<T>(std::move(family), std::move(domain)));
}

/// Sequential search: pulls items one at a time and runs each item's decider to
/// its answer before pulling the next. Finds the first item answered yes.
template <class T>
Finder<T> find_first(Enumerator<T> items, std::function<Decider(const T&)> test) {
  struct Impl {
    Enumerator<T> items;
    std::function<Decider(const T&)> test;
    std::optional<std::pair<T, Decider>> current;

    Found<T> step() {
      if (current) {
        Answer a = current->second.step();
        if (a == Answer::yes) {
          T out = std::move(current->first);
          current.reset();
          return {std::move(out)};
        }
        if (a == Answer::no) current.reset();
        return {};
      }
      Emit<T> e = items.step();
      if (e.item) {
        Decider d = test(*e.item);
        current.emplace(std::move(*e.item), std::move(d));
      }
      return {};
    }
    bool stalled() const { return !current && items.stalled(); }
  };
  return Finder<T>(Impl{std::move(items), std::move(test), std::nullopt});
}

/// Decides whether some item of a finite enumerator passes `test`. The answer
/// is no once the enumerator stalls with no passing item.
template <class T>
Decider any_of_finite(Enumerator<T> items, std::function<Decider(const T&)> test) {
  struct Impl {
    Finder<T> search;
    Answer step() {
      if (search.stalled()) return Answer::no;
      return search.step().value ? Answer::yes : Answer::running;
    }
  };
  return Decider(Impl{find_first<T>(std::move(items), std::move(test))});
}

/// Concatenates the finite enumerators produced for each outer item.
template <class T, class U>
Enumerator<U> concat_map(Enumerator<T> outer, std::function<Enumerator<U>(const T&)> inner_of) {
  struct Impl {
    Enumerator<T> outer;
    std::function<Enumerator<U>(const T&)> inner_of;
    std::optional<Enumerator<U>> inner;
    Emit<U> step() {
      if (inner && !inner->stalled()) return inner->step();
      inner.reset();
      Emit<T> e = outer.step();
      if (e.item) inner.emplace(inner_of(*e.item));
      return {};
    }
    bool stalled() const { return (!inner || inner->stalled()) && outer.stalled(); }
  };
  return Enumerator<U>(Impl{std::move(outer), std::move(inner_of), std::nullopt});
}

/// Emits the items of a list, one per step, then stalls.
template <class T>
Enumerator<T> enumerate_list(std::vector<T> items) {
  struct Impl {
    std::shared_ptr<const std::vector<T>> items;
    std::size_t next = 0;
    Emit<T> step() {
      if (next >= items->size()) return {};
      return {(*items)[next++]};
    }
    bool stalled() const { return next >= items->size(); }
  };
  return Enumerator<T>(Impl{std::make_shared<const std::vector<T>>(std::move(items)), 0});
}

/// Semi-decider that never accepts and reports itself stalled.
SemiDecider never_accepts();

/// Semi-decider that spins without stalling (an honest infinite loop).
SemiDecider spin_forever();

/// Semi-decider accepting on its n-th step (n >= 1).
SemiDecider accept_after(std::uint64_t n);

// ---------------------------------------------------------------------------
// Two-counter machines

/// One instruction of a two-counter machine.
struct Instruction {
  enum class Op { inc, djz, halt };
  Op op = Op::halt;
  int counter = 0;  // 0 or 1
  int target = 0;   // djz jump target when the counter is zero

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// A deterministic machine over two counters, both starting at zero.
///
/// `inc c` increments c; `djz c t` jumps to t when c is zero and otherwise
/// decrements c and falls through; `halt` stops. Falling off the end of the
/// program executes an implicit halt.
class Machine {
 public:
  Machine() = default;
  /// Throws InputError on a jump target outside the program or a bad counter.
  explicit Machine(std::vector<Instruction> program);

  const std::vector<Instruction>& program() const noexcept { return program_; }
  std::size_t size() const noexcept { return program_.size(); }

 private:
  std::vector<Instruction> program_;
};

/// Parses one instruction per line: `inc 0|1`, `djz 0|1 <line>`, `halt`.
/// Blank lines and `#` comments are ignored; line numbers count instructions.
Machine parse_machine(std::string_view text);
std::string format_machine(const Machine& m);

/// Executes a machine one instruction at a time.
class MachineRunner {
 public:
  explicit MachineRunner(std::shared_ptr<const Machine> m);

  /// Executes one instruction; returns true when that instruction halts.
  bool step();
  bool halted() const noexcept { return halted_; }
  std::uint64_t instructions() const noexcept { return executed_; }
  /// True when the machine provably never halts from here (a zero-counter
  /// self-jump).
  bool stuck() const;
  std::uint64_t counter(int i) const { return counters_[i]; }

 private:
  std::shared_ptr<const Machine> machine_;
  std::size_t pc_ = 0;
  std::uint64_t counters_[2] = {0, 0};
  std::uint64_t executed_ = 0;
  bool halted_ = false;
};

/// Accepts exactly when the machine executes halt; one step per instruction.
SemiDecider machine_run(const Machine& m);

}  // namespace mg
