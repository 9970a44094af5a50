#include "mg/gadgets.hpp"

#include <deque>

namespace mg {

namespace {

std::shared_ptr<const Machine> share(const Machine& m) { return std::make_shared<const Machine>(m); }

long long exponent(const Word& w) {
  long long k = 0;
  for (Letter l : w.letters()) k += l > 0 ? 1 : -1;
  return k;
}

struct TrivialOrZ2 {
  MachineRunner runner;
  bool started = false;
  bool done = false;

  Emit<Word> step() {
    const Word a = generator(1, 1);
    if (!started) {
      started = true;
      return {a * a};
    }
    if (done) return {};
    if (runner.step()) {
      done = true;
      return {a};
    }
    return {};
  }
  bool stalled() const { return started && (done || runner.stuck()); }
};

// Alternates machine steps with a stream; `on_halt` decides what the stream
// becomes when the machine halts.
struct MachineThenSwitch {
  MachineRunner runner;
  Enumerator<Word> stream;
  std::function<Enumerator<Word>(const std::vector<Word>& seen)> on_halt;
  std::vector<Word> seen = {};
  bool machine_turn = true;
  bool switched = false;

  Emit<Word> step() {
    if (switched) return stream.step();
    const bool machine_can_run = !runner.stuck();
    if ((machine_turn && machine_can_run) || stream.stalled()) {
      machine_turn = false;
      if (machine_can_run && runner.step()) {
        stream = on_halt(seen);
        switched = true;
      }
      return {};
    }
    machine_turn = true;
    Emit<Word> e = stream.step();
    if (e.item) seen.push_back(*e.item);
    return e;
  }

  bool stalled() const {
    if (switched) return stream.stalled();
    return runner.stuck() && stream.stalled();
  }
};

// Emits the given words one per step, then continues with the tail.
struct ListThen {
  std::deque<Word> head;
  Enumerator<Word> tail;

  Emit<Word> step() {
    if (!head.empty()) {
      Word w = std::move(head.front());
      head.pop_front();
      return {std::move(w)};
    }
    return tail.step();
  }
  bool stalled() const { return head.empty() && tail.stalled(); }
};

struct Lockhart {
  MachineRunner runner;
  long long k;

  Answer step() {
    const unsigned long long limit = static_cast<unsigned long long>(k < 0 ? -k : k);
    if (runner.halted()) {
      const auto p = static_cast<long long>(runner.instructions());
      return k % p == 0 ? Answer::yes : Answer::no;
    }
    if (k == 0) return Answer::yes;
    if (runner.instructions() >= limit || runner.stuck()) return Answer::no;
    if (runner.step()) {
      const auto p = static_cast<long long>(runner.instructions());
      return k % p == 0 ? Answer::yes : Answer::no;
    }
    return Answer::running;
  }
};

}  // namespace

Machine halt_at(std::uint64_t p) {
  if (p < 1) throw InputError("a machine halts on step 1 at the earliest");
  std::vector<Instruction> program(p - 1, Instruction{Instruction::Op::inc, 0, 0});
  program.push_back(Instruction{Instruction::Op::halt, 0, 0});
  return Machine(std::move(program));
}

std::vector<FleetMachine> fleet() {
  using Op = Instruction::Op;
  std::vector<FleetMachine> out;
  for (std::uint64_t p : {1, 3, 5, 6, 17}) out.push_back({"halt-" + std::to_string(p), halt_at(p), p});
  out.push_back({"loop", Machine({{Op::djz, 0, 0}}), std::nullopt});
  out.push_back({"slow-loop", Machine({{Op::inc, 1, 0}, {Op::inc, 1, 0}, {Op::inc, 1, 0}, {Op::djz, 0, 0}}),
                 std::nullopt});
  out.push_back({"count-loop", Machine({{Op::inc, 0, 0}, {Op::djz, 1, 0}}), std::nullopt});
  return out;
}

FleetMachine fleet_machine(const std::string& name) {
  for (auto& m : fleet())
    if (m.name == name) return m;
  throw InputError("no fleet machine named '" + name + "'");
}

RelatorEnumerator trivial_or_z2(const Machine& m) {
  return {1, Enumerator<Word>(TrivialOrZ2{MachineRunner(share(m))})};
}

RelatorEnumerator quotient_pair(const Machine& m, const FinitePresentation& g, const std::vector<Word>& h_extra) {
  for (const Word& w : h_extra)
    if (w.arity() != g.arity) throw InputError("extra relator has the wrong arity");
  FinitePresentation h = g;
  h.relators.insert(h.relators.end(), h_extra.begin(), h_extra.end());
  auto on_halt = [h, h_extra](const std::vector<Word>&) {
    return Enumerator<Word>(
        ListThen{std::deque<Word>(h_extra.begin(), h_extra.end()), consequences(h).enumerate()});
  };
  return {g.arity, Enumerator<Word>(MachineThenSwitch{MachineRunner(share(m)), consequences(g).enumerate(), on_halt})};
}

CoReDescription co_re_gadget(const Machine& m) {
  return CoReDescription(1, [m](const Word& w) {
    const long long k = exponent(w);
    if (k == 0) return never_accepts();
    if (k % 2 != 0) return machine_run(m);
    return then<Verdict, Verdict>(machine_run(m), [](const Verdict&) { return never_accepts(); });
  });
}

QuotientDescription quotient_algo_gadget(const Machine& m) {
  return QuotientDescription(1, [m](const ReDescription& h, const Substitution& f) {
    const Word a = f.images[0];
    std::vector<SemiDecider> branches;
    branches.push_back(h.accepts(a));
    branches.push_back(then<Verdict, Verdict>(machine_run(m), [h, a](const Verdict&) { return h.accepts(a * a); }));
    return dovetail_or(std::move(branches));
  });
}

WpDescription lockhart_wp_gadget(const Machine& m) {
  auto shared = share(m);
  return WpDescription(1, [shared](const Word& w) { return Decider(Lockhart{MachineRunner(shared), exponent(w)}); });
}

RelatorEnumerator freeze_gadget(const Machine& m, const RelatorEnumerator& re_enum) {
  const int arity = re_enum.arity;
  auto on_halt = [arity](const std::vector<Word>& seen) {
    return consequences(FinitePresentation(arity, seen)).enumerate();
  };
  return {arity, Enumerator<Word>(MachineThenSwitch{MachineRunner(share(m)), re_enum.stream, on_halt})};
}

}  // namespace mg
