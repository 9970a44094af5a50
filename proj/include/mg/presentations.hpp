#pragma once

// Finite and recursive presentations, and the r.e. descriptions of the groups
// they define: semi-deciding membership in the normal closure of a relator set.

#include <string>
#include <string_view>
#include <vector>

#include "mg/descriptions.hpp"
#include "mg/words.hpp"

namespace mg {

struct FinitePresentation {
  int arity = 1;
  std::vector<Word> relators;

  FinitePresentation() = default;
  /// Throws InputError when a relator has a different arity.
  FinitePresentation(int arity, std::vector<Word> relators);

  /// Relators sorted shortlex with duplicates removed.
  FinitePresentation canonical() const;

  friend bool operator==(const FinitePresentation&, const FinitePresentation&) = default;
};

/// `< a, b | a^2, [a,b] >`; generators must be the first k letters in order.
FinitePresentation parse_presentation(std::string_view text);
std::string format_presentation(const FinitePresentation& p);

/// A law W(x1..xn) = 1, written with the letters a, b, ... as variables.
struct Law {
  int variable_count = 1;
  Word word;

  friend bool operator==(const Law&, const Law&) = default;
};

/// The variable count is the highest letter that occurs (at least 1).
Law parse_law(std::string_view text);
std::string format_law(const Law& law);

/// A possibly infinite stream of relators of fixed arity.
struct RelatorEnumerator {
  int arity = 1;
  Enumerator<Word> stream;
};

/// Emits the given relators in order, then stalls.
RelatorEnumerator relator_list(int arity, std::vector<Word> relators);

/// Membership in the normal closure of the relators. The enumerator view emits
/// the closure, each element once.
ReDescription consequences(const FinitePresentation& p);

/// Membership in the normal closure of everything the stream emits.
ReDescription re_from_enumerator(const RelatorEnumerator& rel);

/// The relators of p followed by all instances of the laws, taken over word
/// tuples in order of their largest shortlex index, laws interleaved.
RelatorEnumerator variety_relators(const FinitePresentation& p, const std::vector<Law>& laws);

/// Membership in the normal closure of p's relators and all law instances.
ReDescription variety_consequences(const FinitePresentation& p, const std::vector<Law>& laws);

}  // namespace mg
