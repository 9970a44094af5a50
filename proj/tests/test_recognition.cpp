#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "mg/recognition.hpp"

using namespace mg;

namespace {

bool accepted_within(SemiDecider s, std::uint64_t budget) { return run(s, Budget{budget}).terminal; }

FinitePresentation P(std::string_view s) { return parse_presentation(s); }

std::vector<Word> words_up_to(int arity, std::size_t len) {
  ShortlexWords src(arity);
  std::vector<Word> out;
  for (Word w = src.next(); w.size() <= len; w = src.next()) out.push_back(w);
  return out;
}

// Permutations on {0..n-1} multiplied left to right, written out by hand.
using Perm = std::vector<int>;
bool perm_identity(const Word& w, const std::vector<Perm>& gens) {
  Perm acc(gens[0].size());
  std::iota(acc.begin(), acc.end(), 0);
  for (Letter l : w.letters()) {
    const Perm& g = gens[static_cast<std::size_t>(std::abs(l) - 1)];
    Perm next(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
      int image = acc[i];
      if (l > 0) {
        image = g[static_cast<std::size_t>(image)];
      } else {
        image = static_cast<int>(std::find(g.begin(), g.end(), image) - g.begin());
      }
      next[i] = image;
    }
    acc = next;
  }
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (acc[i] != static_cast<int>(i)) return false;
  return true;
}

long long exponent_sum(const Word& w, int g) {
  long long s = 0;
  for (Letter l : w.letters())
    if (std::abs(l) == g) s += l > 0 ? 1 : -1;
  return s;
}

std::optional<bool> answer(const WpDescription& wp, const Word& w, std::uint64_t budget = 10'000'000) {
  return is_identity(wp, w, Budget{budget});
}

}  // namespace

TEST_CASE("marked_iso_semidecider") {
  CHECK(accepted_within(marked_iso_semidecider(P("<a|a^2>"), P("<a|a^2,a^4>")), 100000));
  CHECK_FALSE(accepted_within(marked_iso_semidecider(P("<a|a^2>"), P("<a|a^3>")), 1'000'000));
  CHECK(accepted_within(marked_iso_semidecider(P("<a,b|[a,b]>"), P("<a,b|[b,a]>")), 100000));
  CHECK_THROWS_AS(marked_iso_semidecider(P("<a|>"), P("<a,b|>")), InputError);

  SUBCASE("reflexive and symmetric") {
    const std::vector<const char*> catalog{"<a|a>", "<a|a^2>", "<a|a^5>", "<a|a^6>", "<a|>",
                                           "<a,b|[a,b]>", "<a,b|a^2,b^2,(ab)^3>", "<a,b|a^2,b^3,(ab)^5>"};
    for (const char* s : catalog) {
      CAPTURE(s);
      CHECK(accepted_within(marked_iso_semidecider(P(s), P(s)), 1'000'000));
    }
    for (const char* x : {"<a|a^2>", "<a|a^6>", "<a|>"})
      for (const char* y : {"<a|a^2>", "<a|a^6>", "<a|a^4,a^6>"}) {
        CAPTURE(x);
        CAPTURE(y);
        CHECK(accepted_within(marked_iso_semidecider(P(x), P(y)), 1'000'000) ==
              accepted_within(marked_iso_semidecider(P(y), P(x)), 1'000'000));
      }
  }
}

TEST_CASE("abstract_iso_semidecider") {
  Finder<IsoWitness> f = abstract_iso_find(P("<a,b|b>"), P("<a|>"));
  RunResult<Found<IsoWitness>> r = run(f, Budget{1'000'000});
  REQUIRE(r.terminal);
  const IsoWitness& w = *r.last.value;
  // Check the witness by hand: phi kills b, and the composites fix a.
  CHECK(exponent_sum(substitute(parse_word("b", 2), w.phi), 1) == 0);
  CHECK(substitute(substitute(parse_word("a", 2), w.phi), w.psi) == parse_word("a", 2));

  Finder<IsoWitness> same = abstract_iso_find(P("<a|a^2>"), P("<a|a^2>"));
  RunResult<Found<IsoWitness>> s = run(same, Budget{1'000'000});
  REQUIRE(s.terminal);
  CHECK(s.last.value->phi == Substitution::identity(1));
  CHECK(s.last.value->psi == Substitution::identity(1));

  CHECK_FALSE(accepted_within(abstract_iso_semidecider(P("<a|>"), P("<a|a^2>")), 1'000'000));

  SUBCASE("accepts whenever the marked version does") {
    for (const char* s : {"<a|a^2>", "<a,b|[a,b]>", "<a|a^6>"})
      CHECK(accepted_within(abstract_iso_semidecider(P(s), P(s)), 1'000'000));
    CHECK(accepted_within(abstract_iso_semidecider(P("<a,b|[a,b]>"), P("<a,b|[b,a]>")), 1'000'000));
  }
}

TEST_CASE("kuznetsov_wp") {
  const Perm a5a{1, 0, 3, 2, 4}, a5b{0, 2, 4, 3, 1};
  REQUIRE(perm_identity(parse_word("a^2", 2), {a5a, a5b}));
  REQUIRE(perm_identity(parse_word("b^3", 2), {a5a, a5b}));
  REQUIRE(perm_identity(parse_word("(ab)^5", 2), {a5a, a5b}));

  FinitePresentation a5 = P("<a,b|a^2,b^3,(ab)^5>");
  WpDescription wp = kuznetsov_wp(relator_list(2, a5.relators));
  CHECK(answer(wp, parse_word("a^2", 2)) == true);
  CHECK(answer(wp, parse_word("a", 2)) == false);

  WpDescription z5 = kuznetsov_wp(relator_list(1, {parse_word("a^5", 1)}));
  CHECK(answer(z5, parse_word("a^2", 1)) == false);
  CHECK(answer(z5, parse_word("a^5", 1)) == true);
  CHECK(answer(z5, parse_word("a^-10", 1)) == true);

  SUBCASE("agrees with the permutation representation of A5 up to length 3") {
    for (const Word& w : words_up_to(2, 3)) {
      CAPTURE(format_word(w));
      CHECK(answer(wp, w) == perm_identity(w, {a5a, a5b}));
    }
  }
}

TEST_CASE("mckinsey_nontrivial") {
  // Z: the first table with a marking that separates a is Z/2.
  Finder<Marking> f = mckinsey_certificate(P("<a|>"), parse_word("a", 1));
  RunResult<Found<Marking>> r = run(f, Budget{1'000'000});
  REQUIRE(r.terminal);
  CHECK(r.last.value->table->order() == 2);

  // Z^2 and a^2 b^-2: Z/2 quotients kill it; the certificate is Z/3 with a
  // generator sent to 0 and the other to a generator, so the image is +-2.
  Finder<Marking> g = mckinsey_certificate(P("<a,b|[a,b]>"), parse_word("a^2B^2", 2));
  RunResult<Found<Marking>> s = run(g, Budget{1'000'000});
  REQUIRE(s.terminal);
  const Marking& m = *s.last.value;
  CHECK(m.table->order() == 3);
  CHECK(m.tuple == std::vector<int>{0, 1});
  CHECK(evaluate(m, parse_word("[a,b]", 2)) == 0);
  CHECK(evaluate(m, parse_word("a^2B^2", 2)) != 0);

  CHECK_FALSE(accepted_within(mckinsey_nontrivial(P("<a|a^2>")).accepts(parse_word("a^2", 1)), 1'000'000));
}

TEST_CASE("mckinsey_wp matches trusted oracles") {
  SUBCASE("free abelian of rank 2, length 4") {
    WpDescription wp = mckinsey_wp(P("<a,b|[a,b]>"));
    for (const Word& w : words_up_to(2, 4)) {
      CAPTURE(format_word(w));
      CHECK(answer(wp, w) == (exponent_sum(w, 1) == 0 && exponent_sum(w, 2) == 0));
    }
  }
  SUBCASE("Z/2, length 8") {
    WpDescription wp = mckinsey_wp(P("<a|a^2>"));
    for (const Word& w : words_up_to(1, 8)) CHECK(answer(wp, w) == (exponent_sum(w, 1) % 2 == 0));
  }
  SUBCASE("S3, length 4") {
    const Perm s = {1, 0, 2}, t = {0, 2, 1};
    WpDescription wp = mckinsey_wp(P("<a,b|a^2,b^2,(ab)^3>"));
    for (const Word& w : words_up_to(2, 4)) {
      CAPTURE(format_word(w));
      CHECK(answer(wp, w) == perm_identity(w, {s, t}));
    }
  }
}
