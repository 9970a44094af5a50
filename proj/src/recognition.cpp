#include "mg/recognition.hpp"

#include <climits>

namespace mg {

namespace {

Decider race_to_answer(std::vector<SemiDecider> branches) {
  return transform<Found<std::size_t>, Answer>(race(std::move(branches)), [](const Found<std::size_t>& f) {
    if (!f.value) return Answer::running;
    return *f.value == 0 ? Answer::yes : Answer::no;
  });
}

// Emits w first, then everything the stream emits.
struct Prepend {
  Word first;
  Enumerator<Word> rest;
  bool sent = false;

  Emit<Word> step() {
    if (!sent) {
      sent = true;
      return {first};
    }
    return rest.step();
  }
  bool stalled() const { return sent && rest.stalled(); }
};

// Holds back the next tuple for L^2 steps after one of total length L.
struct Paced {
  Enumerator<std::vector<Word>> inner;
  std::uint64_t wait = 0;

  Emit<std::vector<Word>> step() {
    if (wait > 0) {
      --wait;
      return {};
    }
    Emit<std::vector<Word>> e = inner.step();
    if (e.item) {
      std::uint64_t length = 0;
      for (const Word& w : *e.item) length += w.size();
      wait = length * length;
    }
    return e;
  }
  bool stalled() const { return inner.stalled(); }
};

// Decides whether the marking is a quotient of the presentation, then whether
// it sends w to a non-identity element.
struct QuotientThenEvaluate {
  Decider quotient;
  Marking marking;
  Word w;
  bool is_quotient = false;

  Answer step() {
    if (!is_quotient) {
      Answer a = quotient.step();
      if (a == Answer::no) return Answer::no;
      is_quotient = a == Answer::yes;
      return Answer::running;
    }
    return evaluate(marking, w) != 0 ? Answer::yes : Answer::no;
  }
  bool stalled() const { return !is_quotient && quotient.stalled(); }
};

}  // namespace

SemiDecider marked_iso_semidecider(const FinitePresentation& p1, const FinitePresentation& p2) {
  if (p1.arity != p2.arity) throw InputError("marked isomorphism needs presentations of equal arity");
  std::vector<SemiDecider> both;
  both.push_back(fp_quotient(p1).accepts(consequences(p2)));
  both.push_back(fp_quotient(p2).accepts(consequences(p1)));
  return dovetail_and(std::move(both));
}

Finder<IsoWitness> abstract_iso_find(const FinitePresentation& p1, const FinitePresentation& p2) {
  const int k1 = p1.arity, k2 = p2.arity;
  const ReDescription g1 = consequences(p1), g2 = consequences(p2);
  std::vector<int> slots(static_cast<std::size_t>(k1), k2);
  slots.insert(slots.end(), static_cast<std::size_t>(k2), k1);

  auto split = [k1, k2](const std::vector<Word>& tuple) {
    return IsoWitness{Substitution(std::vector<Word>(tuple.begin(), tuple.begin() + k1), k2),
                      Substitution(std::vector<Word>(tuple.begin() + k1, tuple.end()), k1)};
  };

  std::function<SemiDecider(const std::vector<Word>&)> obligations = [=](const std::vector<Word>& tuple) {
    const IsoWitness w = split(tuple);
    std::vector<SemiDecider> checks;
    for (const Word& r : p1.relators) checks.push_back(g2.accepts(substitute(r, w.phi)));
    for (const Word& r : p2.relators) checks.push_back(g1.accepts(substitute(r, w.psi)));
    for (int i = 1; i <= k1; ++i) {
      const Word x = generator(i, k1);
      checks.push_back(g1.accepts(x.inverse() * substitute(substitute(x, w.phi), w.psi)));
    }
    for (int j = 1; j <= k2; ++j) {
      const Word y = generator(j, k2);
      checks.push_back(g2.accepts(y.inverse() * substitute(substitute(y, w.psi), w.phi)));
    }
    return dovetail_and(std::move(checks));
  };

  Finder<std::vector<Word>> search = find_accepted<std::vector<Word>>(
      obligations, Enumerator<std::vector<Word>>(Paced{enumerate_word_tuples(slots)}));
  return transform<Found<std::vector<Word>>, Found<IsoWitness>>(
      std::move(search), [split](const Found<std::vector<Word>>& f) -> Found<IsoWitness> {
        if (!f.value) return {};
        return {split(*f.value)};
      });
}

SemiDecider abstract_iso_semidecider(const FinitePresentation& p1, const FinitePresentation& p2) {
  return accept_when_found(abstract_iso_find(p1, p2));
}

WpDescription kuznetsov_wp(const RelatorEnumerator& rel) {
  const ReDescription group = re_from_enumerator(rel);
  const int k = rel.arity;
  return WpDescription(k, [group, rel, k](const Word& w) {
    RelatorEnumerator killed{k, Enumerator<Word>(Prepend{w, rel.stream})};
    const ReDescription quotient = re_from_enumerator(killed);
    std::vector<SemiDecider> generators;
    for (int g = 1; g <= k; ++g) generators.push_back(quotient.accepts(generator(g, k)));
    std::vector<SemiDecider> branches;
    branches.push_back(group.accepts(w));
    branches.push_back(dovetail_and(std::move(generators)));
    return race_to_answer(std::move(branches));
  });
}

Finder<Marking> mckinsey_certificate(const FinitePresentation& p, const Word& w) {
  if (w.arity() != p.arity) throw InputError("word arity differs from the presentation's");
  const int k = p.arity;
  const WpiQuotientDescription q = fp_wpi_quotient(p);
  Enumerator<Marking> markings = concat_map<CayleyTable, Marking>(
      enumerate_finite_groups(INT_MAX), [k](const CayleyTable& t) { return enumerate_markings(t, k); });
  return find_first<Marking>(std::move(markings), [q, w, k](const Marking& m) {
    return Decider(QuotientThenEvaluate{q.decide(finite_wp(m), Substitution::identity(k)), m, w});
  });
}

CoReDescription mckinsey_nontrivial(const FinitePresentation& p) {
  return CoReDescription(p.arity, [p](const Word& w) { return accept_when_found(mckinsey_certificate(p, w)); });
}

WpDescription mckinsey_wp(const FinitePresentation& p) {
  const ReDescription identity = consequences(p);
  const CoReDescription nontrivial = mckinsey_nontrivial(p);
  return WpDescription(p.arity, [identity, nontrivial](const Word& w) {
    std::vector<SemiDecider> branches;
    branches.push_back(identity.accepts(w));
    branches.push_back(nontrivial.accepts(w));
    return race_to_answer(std::move(branches));
  });
}

}  // namespace mg
