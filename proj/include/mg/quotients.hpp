#pragma once

// Marked quotient algorithms: semi-deciding (over r.e. descriptions), deciding
// (over word-problem descriptions) and relative to a class of groups, together
// with marking change and presentation extraction.

#include <functional>
#include <string>
#include <vector>

#include "mg/oracles.hpp"
#include "mg/presentations.hpp"

namespace mg {

/// The class of candidate groups an algorithm is promised to receive. Nothing
/// is checked at run time; behaviour on candidates outside the class is
/// unspecified.
struct ClassTag {
  std::string name = "all-rp";

  friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

/// Semi-decides, for a candidate marked group H (given by an r.e. description)
/// and a map f from our generators to words of H, whether f extends to a
/// surjective homomorphism from our group onto H.
class QuotientDescription {
 public:
  using Family = std::function<SemiDecider(const ReDescription&, const Substitution&)>;

  QuotientDescription(int arity, Family accepts, ClassTag tag = {});

  int arity() const noexcept { return arity_; }
  const ClassTag& tag() const noexcept { return tag_; }

  /// Throws InputError unless f maps arity() generators to words of the
  /// candidate's arity.
  SemiDecider accepts(const ReDescription& candidate, const Substitution& f) const;
  /// Same-alphabet case, f the identity.
  SemiDecider accepts(const ReDescription& candidate) const;

 private:
  int arity_;
  Family accepts_;
  ClassTag tag_;
};

/// The deciding variant: candidates come with a solution to their word problem.
class WpiQuotientDescription {
 public:
  using Family = std::function<Decider(const WpDescription&, const Substitution&)>;

  WpiQuotientDescription(int arity, Family decide, ClassTag tag = {});

  int arity() const noexcept { return arity_; }
  const ClassTag& tag() const noexcept { return tag_; }

  Decider decide(const WpDescription& candidate, const Substitution& f) const;
  Decider decide(const WpDescription& candidate) const;

 private:
  int arity_;
  Family decide_;
  ClassTag tag_;
};

/// Checks every relator of p in the candidate, dovetailed.
QuotientDescription fp_quotient(const FinitePresentation& p);

/// Decides every relator of p in the candidate, one after another.
WpiQuotientDescription fp_wpi_quotient(const FinitePresentation& p);

/// Checks every relator the stream emits. It accepts only once the stream is
/// exhausted, so for an infinite stream it is sound but never accepts.
QuotientDescription stream_quotient(const RelatorEnumerator& rel);

/// Moves a quotient algorithm from the marking S to the marking T of the same
/// group. s_in_t writes each S generator as a T word and t_in_s each T
/// generator as an S word; the two are assumed to be mutually inverse in the
/// group.
///
/// For a candidate H and map f, three searches run together: words in the
/// images S' = f(s_in_t(S)) expressing every generator of H; the original
/// algorithm on H marked by S'; and the equalities f(t) = t_in_s(t)(S') in H.
QuotientDescription change_marking(const QuotientDescription& q, const Substitution& s_in_t,
                                   const Substitution& t_in_s);

/// The lamplighter group marked by (shift, lamp), as an infinite stream:
/// b^2, then [b, a^-n b a^n] for n = 1, 2, ...
RelatorEnumerator lamplighter_relators();

/// Relative to finite groups, for the lamplighter group marked by (shift,
/// lamp): finds the exact order N of the shift's image, then decides the
/// relators of the finite wreath product Z/N wr Z/2.
WpiQuotientDescription lamplighter_finite_quotient();

/// The relators of Z/N wr Z/2 checked by lamplighter_finite_quotient:
/// b^2, a^N and [b, a^-n b a^n] for 0 <= n <= N.
std::vector<Word> finite_lamplighter_relators(int N);

/// Searches prefixes of the stream, of sizes k = 0, 1, 2, ..., for one whose
/// finite presentation q accepts, and finds it. Every size up to 16 is tried;
/// beyond that sizes grow geometrically. New relators are pulled from the
/// stream at a rate tied to the total length already pulled. Empty relators
/// are dropped.
Finder<FinitePresentation> extract_presentation(const RelatorEnumerator& re_enum, const QuotientDescription& q);

/// As extract_presentation, with each prefix read in the variety defined by
/// the laws. The result lists the relators only; the laws stay implicit.
Finder<FinitePresentation> extract_in_variety(const RelatorEnumerator& re_enum, const QuotientDescription& q,
                                              const std::vector<Law>& laws);

/// Which finite quotients of arity k each description admits, table by table.
/// Finds the first table F (orders 1..max_order; 0 means unbounded) that is a
/// quotient of exactly one of the two groups.
Finder<CayleyTable> pickel_find(const WpiQuotientDescription& gq, const WpiQuotientDescription& hq, int k,
                                int max_order = 0);
SemiDecider pickel_separator(const WpiQuotientDescription& gq, const WpiQuotientDescription& hq, int k,
                             int max_order = 0);

/// Decides whether some marking of arity k of the table is a marked quotient.
Decider admits_quotient(const WpiQuotientDescription& q, std::shared_ptr<const CayleyTable> t, int k);

}  // namespace mg
