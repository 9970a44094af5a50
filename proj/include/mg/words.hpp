#pragma once

// Words in a free group of fixed rank: reduction, substitution, shortlex
// enumeration and the text grammar shared by every other module.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mg/engine.hpp"

namespace mg {

/// A letter is a non-zero signed generator index: i > 0 is g_i, -i is g_i^-1.
using Letter = int;

/// Maximum rank expressible in the text grammar (letters a..z).
inline constexpr int kMaxArity = 26;

/// Position of a letter in the shortlex alphabet 1 < -1 < 2 < -2 < ...
constexpr int letter_rank(Letter l) noexcept { return 2 * ((l < 0 ? -l : l) - 1) + (l < 0 ? 1 : 0); }
constexpr Letter letter_of_rank(int r) noexcept { return (r % 2 == 0) ? r / 2 + 1 : -(r / 2 + 1); }

/// A freely reduced word of a fixed arity.
class Word {
 public:
  explicit Word(int arity = 1);

  int arity() const noexcept { return arity_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(long long n) const;

  /// Reduced concatenation. Throws InputError on arity mismatch.
  friend Word operator*(const Word& u, const Word& v);

  friend bool operator==(const Word& u, const Word& v) noexcept = default;
  /// Shortlex order: shorter first, then by letter_rank position by position.
  friend std::strong_ordering operator<=>(const Word& u, const Word& v) noexcept;

 private:
  friend Word reduce(std::span<const Letter> raw, int arity);
  int arity_;
  std::vector<Letter> letters_;
};

/// Free reduction. Throws InputError for zero or out-of-range letters.
Word reduce(std::span<const Letter> raw, int arity);
Word reduce(std::initializer_list<Letter> raw, int arity);

/// The word g_i (1-based) of the given arity.
Word generator(int index, int arity);

/// [u,v] = u^-1 v^-1 u v.
Word commutator(const Word& u, const Word& v);

/// Sum of exponents of each generator (abelianization image).
std::vector<long long> exponent_sums(const Word& w);

/// A map from the generators of a free group of rank source_arity to words of
/// rank target_arity.
struct Substitution {
  int source_arity = 0;
  int target_arity = 0;
  std::vector<Word> images;

  Substitution() = default;
  /// Throws InputError when an image has an arity other than target_arity.
  Substitution(std::vector<Word> images, int target_arity);

  static Substitution identity(int arity);

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

/// The homomorphic image of w. Throws InputError on arity mismatch.
Word substitute(const Word& w, const Substitution& s);

/// Every freely reduced word of the arity exactly once, in shortlex order.
class ShortlexWords {
 public:
  explicit ShortlexWords(int arity);
  Word next();

 private:
  int arity_;
  std::vector<int> ranks_;
  bool started_ = false;
};

/// Random access into the shortlex order, materialized lazily.
class ShortlexTable {
 public:
  explicit ShortlexTable(int arity) : source_(arity), arity_(arity) {}
  const Word& at(std::size_t index);
  int arity() const noexcept { return arity_; }

 private:
  ShortlexWords source_;
  int arity_;
  std::vector<Word> words_;
};

/// Engine view of ShortlexWords: one word emitted per step.
Enumerator<Word> enumerate_words(int arity);

/// Every tuple of words (slot i ranging over words of arity slot_arities[i]),
/// each exactly once. Tuples are ordered by the largest shortlex index they
/// use, then lexicographically by index, so every tuple appears after finitely
/// many steps. One tuple is emitted per step.
Enumerator<std::vector<Word>> enumerate_word_tuples(std::vector<int> slot_arities);

/// Parses the word grammar:
///   word := term* ; term := letter | letter '^' int | '(' word ')' '^' int
///         | '[' word ',' word ']' | '1'
/// Lowercase letters are generators, uppercase their inverses.
Word parse_word(std::string_view text, int arity);

/// Parses a `word` production starting at `pos`, stopping before the first
/// character that cannot start a term. Advances `pos`.
Word parse_word_at(std::string_view text, std::size_t& pos, int arity);

/// Canonical text: runs of length >= 2 as x^n (n signed), "1" for the empty word.
std::string format_word(const Word& w);

}  // namespace mg

template <>
struct std::hash<mg::Word> {
  std::size_t operator()(const mg::Word& w) const noexcept;
};
