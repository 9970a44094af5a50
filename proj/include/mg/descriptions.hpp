#pragma once

// The three algorithmic views of a marked group: semi-deciding the identity
// words (r.e.), semi-deciding the non-identity words (co-r.e.), and deciding
// the word problem.

#include <functional>
#include <optional>

#include "mg/engine.hpp"
#include "mg/words.hpp"

namespace mg {

/// Semi-decides the words equal to the identity. The enumerator view lists
/// exactly those words.
class ReDescription {
 public:
  using Family = std::function<SemiDecider(const Word&)>;

  ReDescription(int arity, Family accepts);

  int arity() const noexcept { return arity_; }
  /// Throws InputError when w has a different arity.
  SemiDecider accepts(const Word& w) const;
  Enumerator<Word> enumerate() const;

 private:
  int arity_;
  Family accepts_;
};

/// Semi-decides the words that are not the identity.
class CoReDescription {
 public:
  using Family = std::function<SemiDecider(const Word&)>;

  CoReDescription(int arity, Family accepts);

  int arity() const noexcept { return arity_; }
  SemiDecider accepts(const Word& w) const;

 private:
  int arity_;
  Family accepts_;
};

/// Decides whether a word is the identity (yes) or not (no).
class WpDescription {
 public:
  using Family = std::function<Decider(const Word&)>;

  WpDescription(int arity, Family decide);

  /// A one-step decider per query, answered by a total predicate.
  static WpDescription from_predicate(int arity, std::function<bool(const Word&)> is_identity);

  int arity() const noexcept { return arity_; }
  Decider decide(const Word& w) const;

 private:
  int arity_;
  Family decide_;
};

ReDescription as_re(const WpDescription& wp);
CoReDescription as_co_re(const WpDescription& wp);

/// Runs the word-problem decider on w; nullopt when the budget runs out.
std::optional<bool> is_identity(const WpDescription& wp, const Word& w, Budget b = {1'000'000});

}  // namespace mg
