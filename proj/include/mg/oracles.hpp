#pragma once

// Trusted word-problem deciders for concrete groups, and the finite-group
// toolkit: Cayley tables, markings, laws and permutations.

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mg/descriptions.hpp"
#include "mg/presentations.hpp"

namespace mg {

/// A finite group given by its multiplication table; element 0 is the identity.
class CayleyTable {
 public:
  /// The trivial group.
  CayleyTable();
  /// Throws InputError unless the entries form a group table with identity 0.
  CayleyTable(int order, std::vector<int> entries);

  int order() const noexcept { return order_; }
  int mul(int x, int y) const { return entries_[static_cast<std::size_t>(x * order_ + y)]; }
  int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }
  int element_order(int x) const;
  const std::vector<int>& entries() const noexcept { return entries_; }

  friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  int order_;
  std::vector<int> entries_;
  std::vector<int> inverse_;
};

/// Text form: `order n` followed by n rows of n integers.
CayleyTable parse_table(std::string_view text);
std::string format_table(const CayleyTable& t);

CayleyTable cyclic_table(int n);

/// Brute-force abstract isomorphism test.
bool isomorphic(const CayleyTable& a, const CayleyTable& b);

/// A generating tuple of a finite group.
struct Marking {
  std::shared_ptr<const CayleyTable> table;
  std::vector<int> tuple;

  int arity() const noexcept { return static_cast<int>(tuple.size()); }
};

/// Throws InputError when the tuple does not generate the table's group.
Marking make_marking(const CayleyTable& t, std::vector<int> tuple);
Marking make_marking(std::shared_ptr<const CayleyTable> t, std::vector<int> tuple);

/// True when the elements generate the whole group.
bool generates(const CayleyTable& t, const std::vector<int>& elements);

/// The image of w under the marking, evaluated left to right.
int evaluate(const Marking& m, const Word& w);

/// A bijection of {0..degree-1}. Products act left to right: (p * q)(i) = q(p(i)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws InputError unless images is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree);
  static Permutation transposition(int degree, int i, int j);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const noexcept { return images_; }
  bool is_identity() const;
  Permutation inverse() const;
  int order() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// `(p0 p1 ... p_{d-1})`, the list of images.
Permutation parse_permutation(std::string_view text);
std::string format_permutation(const Permutation& p);

/// The image of w in the permutation group marked by gens.
Permutation evaluate(const std::vector<Permutation>& gens, const Word& w);

/// Multiplication table of the group generated by the permutations, with
/// elements numbered in breadth-first order from the identity, together with
/// the element number of each generator.
std::pair<CayleyTable, std::vector<int>> table_from_permutations(const std::vector<Permutation>& gens);

/// Normal form of an element of the lamplighter group: lamps lit at the
/// positions in support, lighter at position shift.
struct LamplighterElement {
  long long shift = 0;
  std::set<long long> support;

  /// Right multiplication by a letter: a^+-1 moves the lighter, the second
  /// generator toggles the lamp under it.
  void apply(Letter l);
  bool is_identity() const noexcept { return shift == 0 && support.empty(); }

  friend bool operator==(const LamplighterElement&, const LamplighterElement&) = default;
};

LamplighterElement lamplighter_evaluate(const Word& w);

/// The standard marking (shift, toggle) of the finite lamplighter group with
/// N lamps, acting on 2N points (i, lamp) numbered 2i + lamp.
std::vector<Permutation> finite_lamplighter(int N);

// Word-problem oracles.

/// Z/n marked by a generator; n = 0 means Z.
WpDescription cyclic_wp(long long n);
/// Z^k modulo the integer row span of the matrix.
WpDescription abelian_wp(int k, std::vector<std::vector<long long>> rows);
WpDescription finite_wp(const Marking& m);
WpDescription perm_wp(std::vector<Permutation> gens);
/// Arity 2: a is the shift, the second generator the lamp toggle.
WpDescription lamplighter_wp();

/// Every group table of order 1..max_order with identity 0, each order in
/// lexicographic order of the flattened table. One search node per step.
Enumerator<CayleyTable> enumerate_finite_groups(int max_order);

/// Every generating k-tuple of the table, in lexicographic order.
Enumerator<Marking> enumerate_markings(const CayleyTable& t, int k);
Enumerator<Marking> enumerate_markings(std::shared_ptr<const CayleyTable> t, int k);

/// True when the law holds for every assignment of group elements.
bool check_law(const CayleyTable& t, const Law& law);

/// The two permutations of degree 5N: the shift i -> i+2 (mod 5N) and the
/// product of the transpositions (1,2) and (2N+4,2N+5), in 1-based points.
/// Internally point p is stored as p-1. Throws InputError when 2N+5 > 5N.
std::pair<Permutation, Permutation> sigma_witness(int N);

}  // namespace mg
