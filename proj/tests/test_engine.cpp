#include <set>

#include "doctest.h"
#include "mg/engine.hpp"
#include "mg/words.hpp"

using namespace mg;

namespace {

// Counts the steps it receives; accepts after `delay` of them (0 = never).
struct Counting {
  std::shared_ptr<std::uint64_t> seen;
  std::uint64_t delay;
  Verdict step() {
    ++*seen;
    return delay != 0 && *seen >= delay ? Verdict::accepted : Verdict::running;
  }
};

Machine program(std::vector<Instruction> ins) { return Machine(std::move(ins)); }

Instruction inc(int c) { return {Instruction::Op::inc, c, 0}; }
Instruction djz(int c, int t) { return {Instruction::Op::djz, c, t}; }
Instruction halt() { return {Instruction::Op::halt, 0, 0}; }

}  // namespace

TEST_CASE("run respects the budget and reports termination") {
  SemiDecider now = accept_after(1);
  auto r = run(now, Budget{1});
  CHECK(r.terminal);
  CHECK(r.steps == 1);
  CHECK_THROWS_AS(now.step(), UsageError);

  SemiDecider loop = spin_forever();
  auto e = run(loop, Budget{1000});
  CHECK(e.exhausted());
  CHECK(e.steps == 1000);
  CHECK(loop.steps_taken() == 1000);

  SemiDecider stalled = never_accepts();
  auto s = run(stalled, Budget{1'000'000'000});
  CHECK(s.exhausted());
  CHECK(s.steps == 1'000'000'000);

  SemiDecider zero = spin_forever();
  CHECK(run(zero, Budget{0}).steps == 0);
}

TEST_CASE("runs are deterministic and monotone in the budget") {
  auto make = [] {
    return dovetail_and({accept_after(7), accept_after(30), accept_after(2)});
  };
  SemiDecider a = make(), b = make();
  auto ra = run(a, Budget{1000});
  auto rb = run(b, Budget{1000});
  CHECK(ra.terminal);
  CHECK(ra.steps == rb.steps);
  for (std::uint64_t budget : {ra.steps, ra.steps + 1, 5000ul}) {
    SemiDecider c = make();
    auto rc = run(c, Budget{budget});
    CHECK(rc.terminal);
    CHECK(rc.steps == ra.steps);
  }
  SemiDecider d = make();
  CHECK(run(d, Budget{ra.steps - 1}).exhausted());
}

TEST_CASE("copies are independent snapshots") {
  SemiDecider a = accept_after(10);
  run(a, Budget{4});
  SemiDecider b = a;
  CHECK(b.steps_taken() == 4);
  CHECK(run(a, Budget{6}).terminal);
  CHECK(b.steps_taken() == 4);
  CHECK(run(b, Budget{5}).exhausted());
  CHECK(run(b, Budget{1}).terminal);
}

TEST_CASE("dovetail_and") {
  SemiDecider all = dovetail_and({accept_after(1), accept_after(1), accept_after(1)});
  auto r = run(all, Budget{9});
  CHECK(r.terminal);
  CHECK(r.steps == 3);

  SemiDecider blocked = dovetail_and({accept_after(1), spin_forever()});
  CHECK(run(blocked, Budget{100000}).exhausted());

  SemiDecider delays = dovetail_and({accept_after(3), accept_after(1000)});
  auto rd = run(delays, Budget{3000});
  CHECK(rd.terminal);
  CHECK(rd.steps <= 2 * 1000 + 2);

  SemiDecider empty = dovetail_and({});
  CHECK(run(empty, Budget{1}).terminal);

  SUBCASE("fairness: each live child gets floor(B/n) - 1 steps") {
    const int n = 5;
    const std::uint64_t budget = 997;
    std::vector<std::shared_ptr<std::uint64_t>> counters;
    std::vector<SemiDecider> kids;
    for (int i = 0; i < n; ++i) {
      counters.push_back(std::make_shared<std::uint64_t>(0));
      kids.emplace_back(Counting{counters.back(), 0});
    }
    SemiDecider d = dovetail_and(std::move(kids));
    run(d, Budget{budget});
    for (const auto& c : counters) CHECK(*c + 1 >= budget / n);
  }
}

TEST_CASE("race returns the first acceptor's label") {
  auto r1 = race({accept_after(5), spin_forever()});
  auto o1 = run(r1, Budget{100});
  REQUIRE(o1.terminal);
  CHECK(*o1.last.value == 0);

  auto r2 = race({spin_forever(), accept_after(5)});
  auto o2 = run(r2, Budget{100});
  REQUIRE(o2.terminal);
  CHECK(*o2.last.value == 1);

  auto r3 = race({accept_after(4), accept_after(4)});
  auto o3 = run(r3, Budget{100});
  REQUIRE(o3.terminal);
  CHECK(*o3.last.value == 0);

  auto r4 = race({never_accepts(), accept_after(3)});
  auto o4 = run(r4, Budget{100});
  REQUIRE(o4.terminal);
  CHECK(*o4.last.value == 1);
  CHECK(o4.steps == 3);
}

TEST_CASE("semidecider_to_enumerator") {
  auto only_empty = [](const Word& w) { return w.empty() ? accept_after(1) : spin_forever(); };
  auto e = semidecider_to_enumerator<Word>(only_empty, enumerate_words(1));
  auto got = collect(e, Budget{2000});
  REQUIRE(got.items.size() == 1);
  CHECK(got.items[0].empty());

  auto table = [](const Word& w) {
    const std::size_t n = w.size();
    bool positive = !w.empty() && w[0] > 0;
    return positive && (n == 2 || n == 4) ? accept_after(n * 3) : never_accepts();
  };
  auto e2 = semidecider_to_enumerator<Word>(table, enumerate_words(1));
  auto got2 = collect(e2, Budget{5000});
  std::set<std::string> names;
  for (const auto& w : got2.items) names.insert(format_word(w));
  CHECK(names == std::set<std::string>{"a^2", "a^4"});
  CHECK(got2.items.size() == 2);
}

TEST_CASE("sequential combinators") {
  auto items = enumerate_list<int>({3, 8, 5, 12});
  auto f = find_first<int>(items, [](const int& x) {
    return from_function<Answer>([x] { return x > 6 && x % 2 == 0 ? Answer::yes : Answer::no; });
  });
  auto r = run(f, Budget{100});
  REQUIRE(r.terminal);
  CHECK(*r.last.value == 8);

  auto none = any_of_finite<int>(enumerate_list<int>({1, 3}), [](const int& x) {
    return from_function<Answer>([x] { return x % 2 == 0 ? Answer::yes : Answer::no; });
  });
  auto rn = run(none, Budget{100});
  REQUIRE(rn.terminal);
  CHECK(rn.last == Answer::no);

  auto pairs = concat_map<int, int>(enumerate_list<int>({1, 2, 3}), [](const int& n) {
    std::vector<int> v;
    for (int i = 0; i < n; ++i) v.push_back(n * 10 + i);
    return enumerate_list(v);
  });
  auto all = collect(pairs, Budget{100});
  CHECK(all.items == std::vector<int>{10, 20, 21, 30, 31, 32});

  Decider yes_no = all_of({from_function<Answer>([] { return Answer::yes; }),
                           from_function<Answer>([] { return Answer::no; })});
  auto ra = run(yes_no, Budget{10});
  CHECK(ra.last == Answer::no);
  CHECK(ra.steps == 2);

  SemiDecider rejected = accept_if(from_function<Answer>([] { return Answer::no; }));
  CHECK(run(rejected, Budget{50}).exhausted());
  CHECK(rejected.stalled());
}

TEST_CASE("machines") {
  SUBCASE("immediate halt accepts at step 1") {
    SemiDecider m = machine_run(program({halt()}));
    auto r = run(m, Budget{10});
    CHECK(r.terminal);
    CHECK(r.steps == 1);
  }
  SUBCASE("an increment-and-jump loop never halts") {
    SemiDecider m = machine_run(program({inc(0), djz(1, 0)}));
    for (std::uint64_t b : {1ul, 10ul, 1000ul, 100000ul}) {
      SemiDecider copy = m;
      CHECK(run(copy, Budget{b}).exhausted());
    }
  }
  SUBCASE("five increments then halt accepts at step 6") {
    SemiDecider m = machine_run(program({inc(0), inc(0), inc(0), inc(0), inc(0), halt()}));
    auto r = run(m, Budget{100});
    CHECK(r.terminal);
    CHECK(r.steps == 6);
  }
  SUBCASE("decrement falls through, zero jumps") {
    MachineRunner runner(std::make_shared<const Machine>(program({inc(1), inc(1), djz(1, 4), djz(0, 2), halt()})));
    int steps = 0;
    while (!runner.step()) ++steps;
    // inc, inc, (djz dec, djz jump) x2, djz jump to halt, halt
    CHECK(runner.instructions() == 8);
    CHECK(runner.counter(1) == 0);
  }
  SUBCASE("falling off the end halts") {
    SemiDecider m = machine_run(program({inc(0)}));
    auto r = run(m, Budget{10});
    CHECK(r.terminal);
    CHECK(r.steps == 2);
  }
  SUBCASE("text format") {
    Machine m = parse_machine("inc 0\n# comment\n\ndjz 1 0  # loop\nhalt\n");
    CHECK(m.size() == 3);
    CHECK(parse_machine(format_machine(m)).program() == m.program());
    CHECK_THROWS_AS(parse_machine("djz 0 7"), InputError);
    CHECK_THROWS_AS(parse_machine("inc 2"), InputError);
    CHECK_THROWS_AS(parse_machine("jump 0"), InputError);
    CHECK_THROWS_AS(parse_machine(""), InputError);
    CHECK_THROWS_AS(parse_machine("inc 0 1"), InputError);
  }
}
