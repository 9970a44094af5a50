#include "mg/descriptions.hpp"

namespace mg {

namespace {

void check_query(int arity, const Word& w) {
  if (w.arity() != arity)
    throw InputError("query word has arity " + std::to_string(w.arity()) + ", description has arity " +
                     std::to_string(arity));
}

}  // namespace

ReDescription::ReDescription(int arity, Family accepts) : arity_(arity), accepts_(std::move(accepts)) {}

SemiDecider ReDescription::accepts(const Word& w) const {
  check_query(arity_, w);
  return accepts_(w);
}

Enumerator<Word> ReDescription::enumerate() const {
  return semidecider_to_enumerator<Word>(accepts_, enumerate_words(arity_));
}

CoReDescription::CoReDescription(int arity, Family accepts) : arity_(arity), accepts_(std::move(accepts)) {}

SemiDecider CoReDescription::accepts(const Word& w) const {
  check_query(arity_, w);
  return accepts_(w);
}

WpDescription::WpDescription(int arity, Family decide) : arity_(arity), decide_(std::move(decide)) {}

WpDescription WpDescription::from_predicate(int arity, std::function<bool(const Word&)> is_identity) {
  return WpDescription(arity, [pred = std::move(is_identity)](const Word& w) {
    return from_function<Answer>([pred, w, done = false]() mutable {
      if (done) return Answer::running;
      done = true;
      return pred(w) ? Answer::yes : Answer::no;
    });
  });
}

Decider WpDescription::decide(const Word& w) const {
  check_query(arity_, w);
  return decide_(w);
}

ReDescription as_re(const WpDescription& wp) {
  return ReDescription(wp.arity(), [wp](const Word& w) { return accept_if(wp.decide(w), true); });
}

CoReDescription as_co_re(const WpDescription& wp) {
  return CoReDescription(wp.arity(), [wp](const Word& w) { return accept_if(wp.decide(w), false); });
}

std::optional<bool> is_identity(const WpDescription& wp, const Word& w, Budget b) {
  Decider d = wp.decide(w);
  auto r = run(d, b);
  if (!r.terminal) return std::nullopt;
  return r.last == Answer::yes;
}

}  // namespace mg
