#include <numeric>
#include <set>

#include "doctest.h"
#include "mg/presentations.hpp"

using namespace mg;

namespace {

bool accepted_within(const ReDescription& d, const Word& w, std::uint64_t budget) {
  SemiDecider s = d.accepts(w);
  return run(s, Budget{budget}).terminal;
}

bool accepted_within(const ReDescription& d, std::string_view w, std::uint64_t budget) {
  return accepted_within(d, parse_word(w, d.arity()), budget);
}

// Independent oracles: exponent sums modulo n in each coordinate.
bool cyclic_identity(const Word& w, long long n) {
  long long s = 0;
  for (Letter l : w.letters()) s += l > 0 ? 1 : -1;
  return n == 0 ? s == 0 : s % n == 0;
}

bool free_abelian_identity(const Word& w) {
  std::vector<long long> sums(static_cast<std::size_t>(w.arity()), 0);
  for (Letter l : w.letters()) sums[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return std::all_of(sums.begin(), sums.end(), [](long long x) { return x == 0; });
}

// Permutations acting on {0..n-1}; words evaluate left to right.
using Perm = std::vector<int>;
Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<std::size_t>(p[i])];
  return r;
}
Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}
bool perm_identity(const Word& w, const std::vector<Perm>& gens) {
  Perm acc(gens[0].size());
  std::iota(acc.begin(), acc.end(), 0);
  for (Letter l : w.letters()) {
    const Perm& g = gens[static_cast<std::size_t>(std::abs(l) - 1)];
    acc = compose(acc, l > 0 ? g : invert(g));
  }
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (acc[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<Word> words_up_to(int arity, std::size_t len) {
  ShortlexWords src(arity);
  std::vector<Word> out;
  for (Word w = src.next(); w.size() <= len; w = src.next()) out.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("presentation text format") {
  FinitePresentation p = parse_presentation("< a, b | a^2, [a,b] >");
  CHECK(p.arity == 2);
  REQUIRE(p.relators.size() == 2);
  CHECK(p.relators[1] == parse_word("[a,b]", 2));
  CHECK(format_presentation(p) == "< a, b | a^2, ABab >");
  CHECK(parse_presentation(format_presentation(p)) == p);
  CHECK(parse_presentation("<a|a^2,a^4>").relators.size() == 2);
  FinitePresentation free2 = parse_presentation("< a, b | >");
  CHECK(free2.relators.empty());
  CHECK(format_presentation(free2) == "< a, b | >");
  CHECK_THROWS_AS(parse_presentation("< a, c | >"), InputError);
  CHECK_THROWS_AS(parse_presentation("< a | b >"), InputError);
  CHECK_THROWS_AS(parse_presentation("< a | a^2"), InputError);
  CHECK_THROWS_AS(parse_presentation("< a | a,, a >"), InputError);

  FinitePresentation dup = parse_presentation("<a|a^3, a^2, a^3>").canonical();
  CHECK(format_presentation(dup) == "< a | a^2, a^3 >");
}

TEST_CASE("laws") {
  Law comm = parse_law("[a,b]");
  CHECK(comm.variable_count == 2);
  CHECK(format_law(comm) == "ABab");
  CHECK(parse_law("a^2").variable_count == 1);
}

TEST_CASE("consequences of a finite presentation") {
  ReDescription z2 = consequences(parse_presentation("<a|a^2>"));
  CHECK(accepted_within(z2, "a^4", 1000));
  CHECK(accepted_within(z2, "1", 1));
  CHECK_FALSE(cyclic_identity(parse_word("a^3", 1), 2));
  CHECK_FALSE(accepted_within(z2, "a^3", 100000));

  ReDescription z2x = consequences(parse_presentation("<a,b|[a,b]>"));
  Word w = parse_word("[a^2,b]", 2);
  CHECK(free_abelian_identity(w));
  CHECK(accepted_within(z2x, w, 100000));
  CHECK_THROWS_AS(z2x.accepts(parse_word("a", 1)), InputError);
}

TEST_CASE("re_from_enumerator") {
  ReDescription z2 = re_from_enumerator(relator_list(1, {parse_word("a^2", 1)}));
  CHECK(accepted_within(z2, "a^4", 1000));
  CHECK(accepted_within(z2, "a^-6", 1000));
  CHECK_FALSE(accepted_within(z2, "a^3", 100000));

  ReDescription free1 = re_from_enumerator(relator_list(1, {}));
  CHECK(accepted_within(free1, "1", 10));
  CHECK_FALSE(accepted_within(free1, "a", 100000));

  SUBCASE("an infinite stream: the lamplighter relators") {
    struct Stream {
      int n = 0;
      Emit<Word> step() {
        Word e = generator(2, 2), a = generator(1, 2);
        if (n++ == 0) return {e * e};
        return {commutator(e, a.power(-(n - 1)) * e * a.power(n - 1))};
      }
    };
    ReDescription lamp = re_from_enumerator({2, Enumerator<Word>(Stream{})});
    CHECK(accepted_within(lamp, "[b, A^2 b a^2]", 100000));
    CHECK(accepted_within(lamp, "b^-2", 100000));
  }
}

TEST_CASE("variety_consequences") {
  std::vector<Law> abelian{parse_law("[a,b]")};
  ReDescription z2x = variety_consequences(parse_presentation("<a,b|>"), abelian);
  CHECK(accepted_within(z2x, "[a,b]", 100000));
  CHECK(accepted_within(z2x, "[a^2,b]", 100000));

  ReDescription burnside = variety_consequences(parse_presentation("<a|>"), {parse_law("a^2")});
  CHECK(accepted_within(burnside, "a^2", 1000));

  ReDescription z = variety_consequences(parse_presentation("<a,b|a>"), abelian);
  CHECK(accepted_within(z, "abAB", 100000));
  CHECK(accepted_within(z, "bab^-1", 100000));
  CHECK_FALSE(accepted_within(z, "b", 100000));
}

TEST_CASE("soundness against trusted oracles on short words") {
  struct Case {
    const char* presentation;
    std::function<bool(const Word&)> identity;
    std::size_t max_len;
  };
  const Perm s3a{1, 0, 2}, s3b{0, 2, 1};
  const Perm a5a{1, 0, 3, 2, 4}, a5b{0, 2, 4, 3, 1};
  REQUIRE(perm_identity(parse_word("(ab)^5", 2), {a5a, a5b}));
  REQUIRE(perm_identity(parse_word("(ab)^3", 2), {s3a, s3b}));
  std::vector<Case> cases = {
      {"<a|a^2>", [](const Word& w) { return cyclic_identity(w, 2); }, 6},
      {"<a|a^5>", [](const Word& w) { return cyclic_identity(w, 5); }, 6},
      {"<a,b|[a,b]>", free_abelian_identity, 4},
      {"<a,b|a^2,b^2,(ab)^3>", [=](const Word& w) { return perm_identity(w, {s3a, s3b}); }, 4},
      {"<a,b|a^2,b^3,(ab)^5>", [=](const Word& w) { return perm_identity(w, {a5a, a5b}); }, 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.presentation);
    FinitePresentation p = parse_presentation(c.presentation);
    ReDescription d = consequences(p);
    for (const Word& w : words_up_to(p.arity, c.max_len)) {
      CAPTURE(format_word(w));
      bool identity = c.identity(w);
      bool accepted = accepted_within(d, w, identity ? 1'000'000 : 3000);
      CHECK(accepted == identity);
    }
  }
}

TEST_CASE("enumerator view agrees with the semi-decider") {
  ReDescription z3 = consequences(parse_presentation("<a|a^3>"));
  Enumerator<Word> e = z3.enumerate();
  auto got = collect(e, Budget{20000});
  std::set<Word> emitted(got.items.begin(), got.items.end());
  CHECK(emitted.size() == got.items.size());
  CHECK(emitted.count(Word(1)) == 1);
  CHECK(emitted.count(parse_word("a^3", 1)) == 1);
  CHECK(emitted.count(parse_word("a^-3", 1)) == 1);
  for (const auto& w : got.items) CHECK(cyclic_identity(w, 3));
  for (const Word& w : words_up_to(1, 6))
    if (!emitted.count(w)) CHECK_FALSE(accepted_within(z3, w, 2000));

  ReDescription z2 = consequences(parse_presentation("<a|a^2>"));
  Enumerator<Word> e2 = z2.enumerate();
  auto first = collect_first(e2, 3, Budget{100000});
  REQUIRE(first.items.size() == 3);
  for (const auto& w : first.items) CHECK(cyclic_identity(w, 2));
}
