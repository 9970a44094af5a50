#pragma once

// Recognising groups from presentations: marked and abstract isomorphism,
// and word-problem solutions for simple groups and for residually finite
// finitely presented groups.

#include <utility>

#include "mg/quotients.hpp"

namespace mg {

/// Accepts when the two presentations define the same marked group: each is
/// a marked quotient of the other under the identity map.
SemiDecider marked_iso_semidecider(const FinitePresentation& p1, const FinitePresentation& p2);

/// A pair of generator maps phi: gens(P1) -> words of P2 and psi: gens(P2) ->
/// words of P1.
struct IsoWitness {
  Substitution phi;
  Substitution psi;
};

/// Searches pairs (phi, psi), enumerated as word tuples, and finds one that
/// maps relators to relations in both directions and whose composites fix
/// every generator. The four obligations of each pair are dovetailed, and
/// pairs are dovetailed against each other. After a pair whose words have
/// total length L, the next pair is drawn no sooner than L^2 steps later.
Finder<IsoWitness> abstract_iso_find(const FinitePresentation& p1, const FinitePresentation& p2);
SemiDecider abstract_iso_semidecider(const FinitePresentation& p1, const FinitePresentation& p2);

/// Word problem for a nontrivial simple group given by a relator stream. On w
/// it races the stream's closure accepting w (identity) against the closure
/// of the stream with w added accepting every generator (non-identity). When
/// both would finish in the same round the first branch wins.
WpDescription kuznetsov_wp(const RelatorEnumerator& rel);

/// Finds the first marking, over finite groups in table order, that is a
/// marked quotient of p and sends w to a non-identity element.
Finder<Marking> mckinsey_certificate(const FinitePresentation& p, const Word& w);

/// Accepts the words whose image is non-identity in some finite quotient.
CoReDescription mckinsey_nontrivial(const FinitePresentation& p);

/// Word problem for a residually finite group: the closure of p's relators
/// (identity) raced against mckinsey_nontrivial (non-identity).
WpDescription mckinsey_wp(const FinitePresentation& p);

}  // namespace mg
