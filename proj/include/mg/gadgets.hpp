#pragma once

// Descriptions of groups parametrised by a two-counter machine. Which group
// they describe depends on whether the machine halts, so each can be checked
// against machines whose behaviour is known.

#include <optional>
#include <string>
#include <vector>

#include "mg/quotients.hpp"

namespace mg {

/// A machine with known halting behaviour.
struct FleetMachine {
  std::string name;
  Machine machine;
  /// The step on which it executes halt, counting from 1; empty if it never halts.
  std::optional<std::uint64_t> halts_at;
};

/// p - 1 increments followed by halt, so the machine halts on step p.
Machine halt_at(std::uint64_t p);

/// The fixed test fleet: halt-1 (immediate halt), halt-3, halt-5, halt-6,
/// halt-17, loop (a zero-counter self-jump), slow-loop (three increments and a
/// jump back, forever) and count-loop (inc 0; djz 1 0).
std::vector<FleetMachine> fleet();

/// Looks up a fleet machine by name; throws InputError when there is none.
FleetMachine fleet_machine(const std::string& name);

/// Arity 1. Emits a^2, then runs the machine one instruction per step and
/// emits a on the step where it halts: the trivial group if it halts, Z/2
/// otherwise.
RelatorEnumerator trivial_or_z2(const Machine& m);

/// Alternates one machine instruction with one step of the closure of g's
/// relators. Once the machine halts it emits h_extra, one word per step, and
/// continues with the closure of g's relators together with h_extra.
RelatorEnumerator quotient_pair(const Machine& m, const FinitePresentation& g, const std::vector<Word>& h_extra);

/// Arity 1. On a^k with k != 0, runs the machine and, once it halts, accepts
/// when k is odd. Describes the non-identity elements of Z/2 if the machine
/// halts and of the trivial group otherwise.
CoReDescription co_re_gadget(const Machine& m);

/// Arity 1. Accepts a candidate when it kills the image of a, or, once the
/// machine has halted, when it kills the image of a^2. The quotient algorithm
/// of Z/2 if the machine halts and of the trivial group otherwise.
QuotientDescription quotient_algo_gadget(const Machine& m);

/// Arity 1. a^0 is the identity. For k != 0 the machine runs for at most |k|
/// steps; if it halted on step p, a^k is the identity exactly when p divides
/// k, otherwise it is not. Describes Z/p, or Z if the machine never halts.
WpDescription lockhart_wp_gadget(const Machine& m);

/// Alternates one machine instruction with one step of the stream, starting
/// with the machine. When the machine halts, the relators emitted so far are
/// frozen and the output continues with their closure.
RelatorEnumerator freeze_gadget(const Machine& m, const RelatorEnumerator& re_enum);

}  // namespace mg
