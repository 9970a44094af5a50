#include "mg/quotients.hpp"

#include <climits>

namespace mg {

namespace {

void check_map(int source, const Substitution& f, int target) {
  if (static_cast<int>(f.images.size()) != source)
    throw InputError("the generator map has " + std::to_string(f.images.size()) + " images, expected " +
                     std::to_string(source));
  if (f.target_arity != target)
    throw InputError("the generator map targets " + std::to_string(f.target_arity) +
                     " generators but the candidate has " + std::to_string(target));
}

// Dovetails the emissions of a stream with the acceptance of each emitted
// word by the candidate. Accepts once the stream has stalled and every word it
// emitted was accepted. The stream is stepped once the steps since its last
// turn reach the total length pulled so far, which keeps the work per step
// bounded by the square root of the steps taken.
struct StreamCheck {
  Enumerator<Word> stream;
  ReDescription candidate;
  Substitution f;
  std::vector<SemiDecider> live = {};
  std::size_t cursor = 0;
  std::uint64_t pulled_length = 0;
  std::uint64_t since_pull = 0;

  bool stream_due() const { return !stream.stalled() && since_pull >= pulled_length; }

  Verdict step() {
    ++since_pull;
    if (stream_due()) {
      since_pull = 0;
      Emit<Word> e = stream.step();
      if (e.item && !e.item->empty()) {
        pulled_length += e.item->size();
        live.push_back(candidate.accepts(substitute(*e.item, f)));
      }
      return Verdict::running;
    }
    if (live.empty()) return stream.stalled() ? Verdict::accepted : Verdict::running;
    for (std::size_t probe = 0; probe < live.size(); ++probe) {
      if (cursor >= live.size()) cursor = 0;
      SemiDecider& d = live[cursor];
      if (d.stalled()) {
        ++cursor;
        continue;
      }
      if (d.step() == Verdict::accepted) {
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(cursor));
        if (live.empty() && stream.stalled()) return Verdict::accepted;
      } else {
        ++cursor;
      }
      return Verdict::running;
    }
    return Verdict::running;
  }

  bool stalled() const {
    if (!stream.stalled()) return false;
    if (live.empty()) return false;
    for (const auto& d : live)
      if (!d.stalled()) return false;
    return true;
  }
};

struct LamplighterCheck {
  WpDescription candidate;
  Substitution f;
  int m = 0;
  std::optional<Decider> probe;
  std::optional<Decider> relators;

  Answer step() {
    if (relators) return relators->step();
    if (!probe) {
      ++m;
      probe.emplace(candidate.decide(substitute(generator(1, 2).power(m), f)));
    }
    Answer a = probe->step();
    if (a == Answer::yes) {
      std::vector<Decider> checks;
      for (const Word& r : finite_lamplighter_relators(m)) checks.push_back(candidate.decide(substitute(r, f)));
      relators.emplace(all_of(std::move(checks)));
      probe.reset();
    } else if (a == Answer::no) {
      probe.reset();
    }
    return Answer::running;
  }

  bool stalled() const {
    if (relators) return relators->stalled();
    return probe && probe->stalled();
  }
};

struct Extractor {
  Enumerator<Word> stream;
  int arity;
  std::function<ReDescription(const FinitePresentation&)> describe;
  QuotientDescription q;

  struct Candidate {
    std::size_t size;
    SemiDecider check;
  };

  std::vector<Word> pulled = {};
  std::uint64_t pulled_length = 0;
  std::uint64_t since_pull = 0;
  std::size_t next_size = 0;
  std::vector<Candidate> live = {};
  std::size_t cursor = 0;

  bool stream_due() const { return !stream.stalled() && since_pull >= pulled_length; }

  Found<FinitePresentation> step() {
    ++since_pull;
    if (next_size <= pulled.size()) {
      std::vector<Word> prefix(pulled.begin(), pulled.begin() + static_cast<std::ptrdiff_t>(next_size));
      live.push_back({next_size, q.accepts(describe(FinitePresentation(arity, std::move(prefix))))});
      next_size = next_size < 16 ? next_size + 1 : next_size + next_size / 4;
      return step_candidate(live.size() - 1);
    }
    if (stream_due()) {
      since_pull = 0;
      Emit<Word> e = stream.step();
      if (e.item && !e.item->empty()) {
        pulled_length += e.item->size();
        pulled.push_back(std::move(*e.item));
      }
      return {};
    }
    for (std::size_t probe = 0; probe < live.size(); ++probe) {
      if (cursor >= live.size()) cursor = 0;
      const std::size_t i = cursor++;
      if (!live[i].check.stalled()) return step_candidate(i);
    }
    return {};
  }

  Found<FinitePresentation> step_candidate(std::size_t i) {
    if (live[i].check.step() != Verdict::accepted) return {};
    std::vector<Word> prefix(pulled.begin(), pulled.begin() + static_cast<std::ptrdiff_t>(live[i].size));
    return {FinitePresentation(arity, std::move(prefix))};
  }

  bool stalled() const {
    if (next_size <= pulled.size() || !stream.stalled()) return false;
    for (const auto& c : live)
      if (!c.check.stalled()) return false;
    return true;
  }
};

struct Xor {
  Decider first;
  Decider second;
  std::optional<bool> first_answer;

  Answer step() {
    if (!first_answer) {
      Answer a = first.step();
      if (a != Answer::running) first_answer = a == Answer::yes;
      return Answer::running;
    }
    Answer b = second.step();
    if (b == Answer::running) return b;
    return (b == Answer::yes) != *first_answer ? Answer::yes : Answer::no;
  }
  bool stalled() const { return first_answer ? second.stalled() : first.stalled(); }
};

}  // namespace

QuotientDescription::QuotientDescription(int arity, Family accepts, ClassTag tag)
    : arity_(arity), accepts_(std::move(accepts)), tag_(std::move(tag)) {
  if (arity < 1) throw InputError("arity must be at least 1");
}

SemiDecider QuotientDescription::accepts(const ReDescription& candidate, const Substitution& f) const {
  check_map(arity_, f, candidate.arity());
  return accepts_(candidate, f);
}

SemiDecider QuotientDescription::accepts(const ReDescription& candidate) const {
  return accepts(candidate, Substitution::identity(arity_));
}

WpiQuotientDescription::WpiQuotientDescription(int arity, Family decide, ClassTag tag)
    : arity_(arity), decide_(std::move(decide)), tag_(std::move(tag)) {
  if (arity < 1) throw InputError("arity must be at least 1");
}

Decider WpiQuotientDescription::decide(const WpDescription& candidate, const Substitution& f) const {
  check_map(arity_, f, candidate.arity());
  return decide_(candidate, f);
}

Decider WpiQuotientDescription::decide(const WpDescription& candidate) const {
  return decide(candidate, Substitution::identity(arity_));
}

QuotientDescription fp_quotient(const FinitePresentation& p) {
  return QuotientDescription(p.arity, [relators = p.relators](const ReDescription& h, const Substitution& f) {
    std::vector<SemiDecider> checks;
    for (const Word& r : relators) checks.push_back(h.accepts(substitute(r, f)));
    return dovetail_and(std::move(checks));
  });
}

WpiQuotientDescription fp_wpi_quotient(const FinitePresentation& p) {
  return WpiQuotientDescription(p.arity, [relators = p.relators](const WpDescription& h, const Substitution& f) {
    std::vector<Decider> checks;
    for (const Word& r : relators) checks.push_back(h.decide(substitute(r, f)));
    return all_of(std::move(checks));
  });
}

QuotientDescription stream_quotient(const RelatorEnumerator& rel) {
  return QuotientDescription(rel.arity, [stream = rel.stream](const ReDescription& h, const Substitution& f) {
    return SemiDecider(StreamCheck{stream, h, f});
  });
}

QuotientDescription change_marking(const QuotientDescription& q, const Substitution& s_in_t,
                                   const Substitution& t_in_s) {
  const int s = q.arity();
  if (static_cast<int>(s_in_t.images.size()) != s)
    throw InputError("s_in_t must have one image per generator of the original marking");
  const int t = s_in_t.target_arity;
  check_map(t, t_in_s, s);

  return QuotientDescription(t, [q, s_in_t, t_in_s, s](const ReDescription& h, const Substitution& f) {
    std::vector<Word> images;
    for (const Word& w : s_in_t.images) images.push_back(substitute(w, f));
    const Substitution s_prime(std::move(images), h.arity());

    std::vector<SemiDecider> expressions;
    for (int g = 1; g <= h.arity(); ++g) {
      const Word gen = generator(g, h.arity());
      std::function<SemiDecider(const Word&)> expresses = [h, s_prime, gen](const Word& u) {
        return h.accepts(gen.inverse() * substitute(u, s_prime));
      };
      expressions.push_back(accept_when_found(find_accepted<Word>(expresses, enumerate_words(s))));
    }

    ReDescription over_s(s, [h, s_prime](const Word& w) { return h.accepts(substitute(w, s_prime)); });

    std::vector<SemiDecider> fixes;
    for (std::size_t j = 0; j < f.images.size(); ++j)
      fixes.push_back(h.accepts(f.images[j].inverse() * substitute(t_in_s.images[j], s_prime)));

    std::vector<SemiDecider> phases;
    phases.push_back(dovetail_and(std::move(expressions)));
    phases.push_back(q.accepts(over_s, Substitution::identity(s)));
    phases.push_back(dovetail_and(std::move(fixes)));
    return dovetail_and(std::move(phases));
  }, q.tag());
}

std::vector<Word> finite_lamplighter_relators(int N) {
  const Word a = generator(1, 2), b = generator(2, 2);
  std::vector<Word> out{b * b, a.power(N)};
  for (int n = 0; n <= N; ++n) out.push_back(commutator(b, a.power(-n) * b * a.power(n)));
  return out;
}

RelatorEnumerator lamplighter_relators() {
  struct Stream {
    long long n = 0;
    Emit<Word> step() {
      const Word a = generator(1, 2), b = generator(2, 2);
      if (n++ == 0) return {b * b};
      return {commutator(b, a.power(-(n - 1)) * b * a.power(n - 1))};
    }
  };
  return {2, Enumerator<Word>(Stream{})};
}

WpiQuotientDescription lamplighter_finite_quotient() {
  return WpiQuotientDescription(
      2, [](const WpDescription& h, const Substitution& f) { return Decider(LamplighterCheck{h, f, 0, {}, {}}); },
      ClassTag{"finite"});
}

Finder<FinitePresentation> extract_presentation(const RelatorEnumerator& re_enum, const QuotientDescription& q) {
  if (re_enum.arity != q.arity()) throw InputError("the relator stream and the quotient algorithm differ in arity");
  return Finder<FinitePresentation>(Extractor{re_enum.stream, re_enum.arity,
                                              [](const FinitePresentation& p) { return consequences(p); }, q});
}

Finder<FinitePresentation> extract_in_variety(const RelatorEnumerator& re_enum, const QuotientDescription& q,
                                              const std::vector<Law>& laws) {
  if (re_enum.arity != q.arity()) throw InputError("the relator stream and the quotient algorithm differ in arity");
  return Finder<FinitePresentation>(
      Extractor{re_enum.stream, re_enum.arity,
                [laws](const FinitePresentation& p) { return variety_consequences(p, laws); }, q});
}

Decider admits_quotient(const WpiQuotientDescription& q, std::shared_ptr<const CayleyTable> t, int k) {
  std::function<Decider(const Marking&)> test = [q, k](const Marking& m) {
    return q.decide(finite_wp(m), Substitution::identity(k));
  };
  return any_of_finite<Marking>(enumerate_markings(std::move(t), k), test);
}

Finder<CayleyTable> pickel_find(const WpiQuotientDescription& gq, const WpiQuotientDescription& hq, int k,
                                int max_order) {
  if (gq.arity() != k || hq.arity() != k) throw InputError("both quotient algorithms must have arity k");
  std::function<Decider(const CayleyTable&)> separates = [gq, hq, k](const CayleyTable& t) {
    auto shared = std::make_shared<const CayleyTable>(t);
    return Decider(Xor{admits_quotient(gq, shared, k), admits_quotient(hq, shared, k), std::nullopt});
  };
  return find_first<CayleyTable>(enumerate_finite_groups(max_order > 0 ? max_order : INT_MAX), separates);
}

SemiDecider pickel_separator(const WpiQuotientDescription& gq, const WpiQuotientDescription& hq, int k,
                             int max_order) {
  return accept_when_found(pickel_find(gq, hq, k, max_order));
}

}  // namespace mg
