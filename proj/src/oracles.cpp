#include "mg/oracles.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace mg {

// ---------------------------------------------------------------------------
// Cayley tables

CayleyTable::CayleyTable() : order_(1), entries_{0}, inverse_{0} {}

CayleyTable::CayleyTable(int order, std::vector<int> entries) : order_(order), entries_(std::move(entries)) {
  if (order < 1) throw InputError("table order must be positive");
  const auto n = static_cast<std::size_t>(order);
  if (entries_.size() != n * n) throw InputError("table needs order^2 entries");
  for (int v : entries_)
    if (v < 0 || v >= order) throw InputError("table entry " + std::to_string(v) + " out of range");
  for (int x = 0; x < order; ++x)
    if (mul(0, x) != x || mul(x, 0) != x) throw InputError("element 0 is not the identity");
  for (int x = 0; x < order; ++x) {
    std::vector<bool> row(n), col(n);
    for (int y = 0; y < order; ++y) {
      if (row[static_cast<std::size_t>(mul(x, y))]) throw InputError("row " + std::to_string(x) + " repeats a value");
      if (col[static_cast<std::size_t>(mul(y, x))]) throw InputError("column " + std::to_string(x) + " repeats a value");
      row[static_cast<std::size_t>(mul(x, y))] = col[static_cast<std::size_t>(mul(y, x))] = true;
    }
  }
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      for (int z = 0; z < order; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
          throw InputError("not associative at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                           std::to_string(z) + ")");
  inverse_.assign(n, 0);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      if (mul(x, y) == 0) inverse_[static_cast<std::size_t>(x)] = y;
}

int CayleyTable::element_order(int x) const {
  int k = 1;
  for (int p = x; p != 0; p = mul(p, x)) ++k;
  return k;
}

CayleyTable parse_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word;
  int n = 0;
  if (!(in >> word) || word != "order" || !(in >> n) || n < 1) throw InputError("expected 'order n' header", 0);
  std::vector<int> entries;
  int v;
  while (in >> v) entries.push_back(v);
  if (!in.eof()) throw InputError("non-integer table entry");
  if (entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw InputError("expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries.size()));
  return CayleyTable(n, std::move(entries));
}

std::string format_table(const CayleyTable& t) {
  std::string out = "order " + std::to_string(t.order()) + "\n";
  for (int x = 0; x < t.order(); ++x) {
    for (int y = 0; y < t.order(); ++y) {
      if (y) out += ' ';
      out += std::to_string(t.mul(x, y));
    }
    out += '\n';
  }
  return out;
}

CayleyTable cyclic_table(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  std::vector<int> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) e[static_cast<std::size_t>(x * n + y)] = (x + y) % n;
  return CayleyTable(n, std::move(e));
}

bool generates(const CayleyTable& t, const std::vector<int>& elements) {
  const auto n = static_cast<std::size_t>(t.order());
  std::vector<bool> seen(n, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int g : elements) {
      int p = t.mul(queue[i], g);
      if (!seen[static_cast<std::size_t>(p)]) {
        seen[static_cast<std::size_t>(p)] = true;
        queue.push_back(p);
      }
    }
  return queue.size() == n;
}

namespace {

// Extends gens -> images to a map on all elements along a breadth-first
// spanning tree; returns the map if it is a bijective homomorphism.
bool extends_to_isomorphism(const CayleyTable& a, const CayleyTable& b, const std::vector<int>& gens,
                            const std::vector<int>& images) {
  const auto n = static_cast<std::size_t>(a.order());
  std::vector<int> phi(n, -1);
  phi[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      int p = a.mul(queue[i], gens[g]);
      int q = b.mul(phi[static_cast<std::size_t>(queue[i])], images[g]);
      if (phi[static_cast<std::size_t>(p)] < 0) {
        phi[static_cast<std::size_t>(p)] = q;
        queue.push_back(p);
      } else if (phi[static_cast<std::size_t>(p)] != q) {
        return false;
      }
    }
  std::vector<bool> hit(n, false);
  for (int v : phi) {
    if (v < 0 || hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (phi[static_cast<std::size_t>(a.mul(x, y))] !=
          b.mul(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

}  // namespace

bool isomorphic(const CayleyTable& a, const CayleyTable& b) {
  if (a.order() != b.order()) return false;
  std::vector<int> orders_a, orders_b;
  for (int x = 0; x < a.order(); ++x) {
    orders_a.push_back(a.element_order(x));
    orders_b.push_back(b.element_order(x));
  }
  if (std::multiset<int>(orders_a.begin(), orders_a.end()) != std::multiset<int>(orders_b.begin(), orders_b.end()))
    return false;
  // A small generating set of a, built greedily.
  std::vector<int> gens;
  for (int x = 1; x < a.order() && !generates(a, gens); ++x) {
    auto with = gens;
    with.push_back(x);
    // Only keep x when it enlarges the generated subgroup.
    auto size_of = [&](const std::vector<int>& g) {
      std::vector<int> q{0};
      std::vector<bool> s(static_cast<std::size_t>(a.order()));
      s[0] = true;
      for (std::size_t i = 0; i < q.size(); ++i)
        for (int h : g) {
          int p = a.mul(q[i], h);
          if (!s[static_cast<std::size_t>(p)]) {
            s[static_cast<std::size_t>(p)] = true;
            q.push_back(p);
          }
        }
      return q.size();
    };
    if (size_of(with) > size_of(gens)) gens = with;
  }
  std::vector<int> images(gens.size());
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == gens.size()) return extends_to_isomorphism(a, b, gens, images);
    for (int y = 0; y < b.order(); ++y) {
      if (orders_b[static_cast<std::size_t>(y)] != orders_a[static_cast<std::size_t>(gens[i])]) continue;
      images[i] = y;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return search(search, 0);
}

Marking make_marking(std::shared_ptr<const CayleyTable> t, std::vector<int> tuple) {
  if (tuple.empty()) throw InputError("a marking needs at least one element");
  for (int x : tuple)
    if (x < 0 || x >= t->order()) throw InputError("marking element " + std::to_string(x) + " out of range");
  if (!generates(*t, tuple)) throw InputError("marking does not generate the group");
  return Marking{std::move(t), std::move(tuple)};
}

Marking make_marking(const CayleyTable& t, std::vector<int> tuple) {
  return make_marking(std::make_shared<const CayleyTable>(t), std::move(tuple));
}

int evaluate(const Marking& m, const Word& w) {
  if (w.arity() != m.arity())
    throw InputError("word arity " + std::to_string(w.arity()) + " differs from marking arity " +
                     std::to_string(m.arity()));
  const CayleyTable& t = *m.table;
  int e = 0;
  for (Letter l : w.letters()) {
    int g = m.tuple[static_cast<std::size_t>(std::abs(l) - 1)];
    e = t.mul(e, l > 0 ? g : t.inverse(g));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Permutations

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || hit[static_cast<std::size_t>(v)])
      throw InputError("not a permutation");
    hit[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> v(static_cast<std::size_t>(degree));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int degree, int i, int j) {
  Permutation p = identity(degree);
  if (i < 0 || j < 0 || i >= degree || j >= degree) throw InputError("transposition point out of range");
  std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[static_cast<std::size_t>(j)]);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) v[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(v);
  return p;
}

int Permutation::order() const {
  int k = 1;
  for (Permutation p = *this; !p.is_identity(); p = p * *this) ++k;
  return k;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InputError("permutation degree mismatch");
  Permutation r;
  r.images_.resize(p.images_.size());
  for (std::size_t i = 0; i < p.images_.size(); ++i) r.images_[i] = q.images_[static_cast<std::size_t>(p.images_[i])];
  return r;
}

Permutation parse_permutation(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '(') throw InputError("expected '('", pos);
  ++pos;
  std::vector<int> images;
  for (;;) {
    skip();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      break;
    }
    int v = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc()) throw InputError("expected a point or ')'", pos);
    pos = static_cast<std::size_t>(p - text.data());
    images.push_back(v);
  }
  skip();
  if (pos != text.size()) throw InputError("trailing text after permutation", pos);
  if (images.empty()) throw InputError("empty permutation");
  return Permutation(std::move(images));
}

std::string format_permutation(const Permutation& p) {
  std::string out = "(";
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p(i));
  }
  return out + ")";
}

Permutation evaluate(const std::vector<Permutation>& gens, const Word& w) {
  if (gens.empty()) throw InputError("no generators");
  if (w.arity() != static_cast<int>(gens.size())) throw InputError("word arity differs from generator count");
  Permutation acc = Permutation::identity(gens[0].degree());
  for (Letter l : w.letters()) {
    const Permutation& g = gens[static_cast<std::size_t>(std::abs(l) - 1)];
    acc = acc * (l > 0 ? g : g.inverse());
  }
  return acc;
}

std::pair<CayleyTable, std::vector<int>> table_from_permutations(const std::vector<Permutation>& gens) {
  if (gens.empty()) throw InputError("no generators");
  for (const auto& g : gens)
    if (g.degree() != gens[0].degree()) throw InputError("permutation degree mismatch");
  std::vector<Permutation> elements{Permutation::identity(gens[0].degree())};
  std::map<Permutation, int> index{{elements[0], 0}};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto& g : gens) {
      Permutation p = elements[i] * g;
      if (index.emplace(p, static_cast<int>(elements.size())).second) {
        elements.push_back(p);
        if (elements.size() > 100000) throw InputError("permutation group too large to tabulate");
      }
    }
  const int n = static_cast<int>(elements.size());
  std::vector<int> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      entries[static_cast<std::size_t>(x * n + y)] =
          index.at(elements[static_cast<std::size_t>(x)] * elements[static_cast<std::size_t>(y)]);
  std::vector<int> marks;
  for (const auto& g : gens) marks.push_back(index.at(g));
  return {CayleyTable(n, std::move(entries)), std::move(marks)};
}

// ---------------------------------------------------------------------------
// Lamplighter

void LamplighterElement::apply(Letter l) {
  switch (l) {
    case 1: ++shift; break;
    case -1: --shift; break;
    case 2:
    case -2:
      if (!support.erase(shift)) support.insert(shift);
      break;
    default: throw InputError("lamplighter words have arity 2");
  }
}

LamplighterElement lamplighter_evaluate(const Word& w) {
  if (w.arity() != 2) throw InputError("lamplighter words have arity 2");
  LamplighterElement e;
  for (Letter l : w.letters()) e.apply(l);
  return e;
}

std::vector<Permutation> finite_lamplighter(int N) {
  if (N < 1) throw InputError("the finite lamplighter needs N >= 1");
  std::vector<int> shift(static_cast<std::size_t>(2 * N)), toggle(static_cast<std::size_t>(2 * N));
  for (int i = 0; i < N; ++i)
    for (int lamp = 0; lamp < 2; ++lamp) {
      shift[static_cast<std::size_t>(2 * i + lamp)] = 2 * ((i + 1) % N) + lamp;
      toggle[static_cast<std::size_t>(2 * i + lamp)] = i == 0 ? 2 * i + (1 - lamp) : 2 * i + lamp;
    }
  return {Permutation(std::move(shift)), Permutation(std::move(toggle))};
}

// ---------------------------------------------------------------------------
// Word-problem oracles

WpDescription cyclic_wp(long long n) {
  if (n < 0) throw InputError("cyclic order must be non-negative");
  return WpDescription::from_predicate(1, [n](const Word& w) {
    long long k = exponent_sums(w)[0];
    return n == 0 ? k == 0 : k % n == 0;
  });
}

namespace {

// Row echelon form over the integers (Hermite style, without normalizing the
// entries above pivots). Each row's pivot column is strictly to the right of
// the previous row's.
struct Lattice {
  int k;
  std::vector<std::vector<long long>> rows;
  std::vector<int> pivots;

  Lattice(int cols, std::vector<std::vector<long long>> input) : k(cols) {
    for (const auto& r : input)
      if (static_cast<int>(r.size()) != k)
        throw InputError("relation row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(k));
    std::vector<std::vector<long long>> work = std::move(input);
    for (int c = 0; c < k; ++c) {
      for (;;) {
        // Smallest nonzero entry in column c among the unplaced rows.
        std::size_t best = work.size();
        for (std::size_t i = 0; i < work.size(); ++i)
          if (work[i][static_cast<std::size_t>(c)] != 0 &&
              (best == work.size() ||
               std::llabs(work[i][static_cast<std::size_t>(c)]) < std::llabs(work[best][static_cast<std::size_t>(c)])))
            best = i;
        if (best == work.size()) break;
        bool reduced = false;
        for (std::size_t i = 0; i < work.size(); ++i) {
          if (i == best || work[i][static_cast<std::size_t>(c)] == 0) continue;
          long long q = work[i][static_cast<std::size_t>(c)] / work[best][static_cast<std::size_t>(c)];
          for (int j = 0; j < k; ++j) work[i][static_cast<std::size_t>(j)] -= q * work[best][static_cast<std::size_t>(j)];
          reduced = true;
        }
        if (!reduced) {
          rows.push_back(work[best]);
          pivots.push_back(c);
          work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
          break;
        }
      }
    }
  }

  bool contains(std::vector<long long> v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto p = static_cast<std::size_t>(pivots[i]);
      const std::size_t from = i == 0 ? 0 : static_cast<std::size_t>(pivots[i - 1]) + 1;
      for (std::size_t c = from; c < p; ++c)
        if (v[c] != 0) return false;
      if (v[p] % rows[i][p] != 0) return false;
      long long q = v[p] / rows[i][p];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * rows[i][j];
    }
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
  }
};

}  // namespace

WpDescription abelian_wp(int k, std::vector<std::vector<long long>> rows) {
  if (k < 1 || k > kMaxArity) throw InputError("abelian group rank out of range");
  auto lattice = std::make_shared<const Lattice>(k, std::move(rows));
  return WpDescription::from_predicate(k, [lattice](const Word& w) { return lattice->contains(exponent_sums(w)); });
}

WpDescription finite_wp(const Marking& m) {
  return WpDescription::from_predicate(m.arity(), [m](const Word& w) { return evaluate(m, w) == 0; });
}

WpDescription perm_wp(std::vector<Permutation> gens) {
  if (gens.empty()) throw InputError("no generators");
  for (const auto& g : gens)
    if (g.degree() != gens[0].degree()) throw InputError("permutation degree mismatch");
  auto shared = std::make_shared<const std::vector<Permutation>>(std::move(gens));
  return WpDescription::from_predicate(static_cast<int>(shared->size()),
                                       [shared](const Word& w) { return evaluate(*shared, w).is_identity(); });
}

WpDescription lamplighter_wp() {
  return WpDescription::from_predicate(2, [](const Word& w) { return lamplighter_evaluate(w).is_identity(); });
}

// ---------------------------------------------------------------------------
// Enumerating group tables.
//
// Depth-first search over partial tables with identity 0, branching on the
// first undefined cell in row-major order with values in increasing order, so
// complete tables come out in lexicographic order. Every assignment x*y = z is
// propagated through the associativity equations (ab)c = a(bc) in which the
// cell occurs: whenever three of the four products involved are known the
// fourth is forced, using row and column inverse lookups.

namespace {

class TableSearch {
 public:
  explicit TableSearch(int max_order) : max_order_(max_order) {}

  Emit<CayleyTable> step() {
    if (n_ > max_order_) return {};
    if (!started_) {
      begin_order();
      if (complete()) return finish_order();
      push_frame();
      return {};
    }
    if (frames_.empty()) return {};
    Frame& f = frames_.back();
    undo_to(f.mark);
    while (f.next < n_) {
      const int v = f.next++;
      const int x = f.cell / n_, y = f.cell % n_;
      if (rowpos(x, v) >= 0 || colpos(y, v) >= 0) continue;
      if (assign(x, y, v) && propagate()) {
        if (complete()) {
          CayleyTable t = current();
          return {std::move(t)};
        }
        push_frame();
        return {};
      }
      undo_to(f.mark);
    }
    frames_.pop_back();
    if (frames_.empty()) {
      ++n_;
      started_ = false;
    }
    return {};
  }

  bool stalled() const { return n_ > max_order_; }

 private:
  struct Frame {
    int cell;
    int next;
    std::size_t mark;
  };

  int& at(int x, int y) { return cells_[static_cast<std::size_t>(x * n_ + y)]; }
  int get(int x, int y) const { return cells_[static_cast<std::size_t>(x * n_ + y)]; }
  int& rowpos(int x, int v) { return rowpos_[static_cast<std::size_t>(x * n_ + v)]; }
  int& colpos(int y, int v) { return colpos_[static_cast<std::size_t>(y * n_ + v)]; }

  void begin_order() {
    started_ = true;
    const auto sz = static_cast<std::size_t>(n_ * n_);
    cells_.assign(sz, -1);
    rowpos_.assign(sz, -1);
    colpos_.assign(sz, -1);
    trail_.clear();
    pending_.clear();
    unknown_ = static_cast<int>(sz);
    for (int x = 0; x < n_; ++x) {
      set_cell(x, 0, x);
      if (x) set_cell(0, x, x);
    }
    trail_.clear();
    pending_.clear();
  }

  Emit<CayleyTable> finish_order() {
    CayleyTable t = current();
    ++n_;
    started_ = false;
    return {std::move(t)};
  }

  bool complete() const { return unknown_ == 0; }

  CayleyTable current() const { return CayleyTable(n_, cells_); }

  void push_frame() {
    int cell = frames_.empty() ? 0 : frames_.back().cell + 1;
    while (cells_[static_cast<std::size_t>(cell)] >= 0) ++cell;
    frames_.push_back({cell, 0, trail_.size()});
  }

  void set_cell(int x, int y, int v) {
    at(x, y) = v;
    rowpos(x, v) = y;
    colpos(y, v) = x;
    --unknown_;
    trail_.push_back(x * n_ + y);
    pending_.push_back(x * n_ + y);
  }

  // Assigns x*y = v if consistent with what is known.
  bool assign(int x, int y, int v) {
    int cur = get(x, y);
    if (cur >= 0) return cur == v;
    if (rowpos(x, v) >= 0 || colpos(y, v) >= 0) return false;
    set_cell(x, y, v);
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int c = trail_.back();
      trail_.pop_back();
      int x = c / n_, y = c % n_, v = cells_[static_cast<std::size_t>(c)];
      at(x, y) = -1;
      rowpos(x, v) = -1;
      colpos(y, v) = -1;
      ++unknown_;
    }
    pending_.clear();
  }

  bool propagate() {
    while (!pending_.empty()) {
      int c = pending_.back();
      pending_.pop_back();
      if (!propagate_cell(c / n_, c % n_)) {
        pending_.clear();
        return false;
      }
    }
    return true;
  }

  bool propagate_cell(int x, int y) {
    const int z = get(x, y);
    for (int t = 0; t < n_; ++t) {
      // (x y) t = x (y t)
      {
        int yt = get(y, t), zt = get(z, t);
        if (yt >= 0) {
          int x_yt = get(x, yt);
          if (zt >= 0 && x_yt >= 0) {
            if (zt != x_yt) return false;
          } else if (zt >= 0) {
            if (!assign(x, yt, zt)) return false;
          } else if (x_yt >= 0) {
            if (!assign(z, t, x_yt)) return false;
          }
        } else if (zt >= 0) {
          int s = rowpos(x, zt);
          if (s >= 0 && !assign(y, t, s)) return false;
        }
      }
      // t (x y) = (t x) y
      {
        int tx = get(t, x), tz = get(t, z);
        if (tx >= 0) {
          int tx_y = get(tx, y);
          if (tz >= 0 && tx_y >= 0) {
            if (tz != tx_y) return false;
          } else if (tz >= 0) {
            if (!assign(tx, y, tz)) return false;
          } else if (tx_y >= 0) {
            if (!assign(t, z, tx_y)) return false;
          }
        } else if (tz >= 0) {
          int s = colpos(y, tz);
          if (s >= 0 && !assign(t, x, s)) return false;
        }
      }
      // x = p q with p = t: (p q) y = p (q y)
      {
        int q = rowpos(t, x);
        if (q >= 0) {
          int qy = get(q, y);
          if (qy >= 0) {
            int p_qy = get(t, qy);
            if (p_qy >= 0) {
              if (p_qy != z) return false;
            } else if (!assign(t, qy, z)) {
              return false;
            }
          } else {
            int s = rowpos(t, z);
            if (s >= 0 && !assign(q, y, s)) return false;
          }
        }
      }
      // y = q r with q = t: x (q r) = (x q) r
      {
        int r = rowpos(t, y);
        if (r >= 0) {
          int xq = get(x, t);
          if (xq >= 0) {
            int xq_r = get(xq, r);
            if (xq_r >= 0) {
              if (xq_r != z) return false;
            } else if (!assign(xq, r, z)) {
              return false;
            }
          } else {
            int s = colpos(r, z);
            if (s >= 0 && !assign(x, t, s)) return false;
          }
        }
      }
    }
    return true;
  }

  int max_order_;
  int n_ = 1;
  bool started_ = false;
  std::vector<int> cells_, rowpos_, colpos_;
  std::vector<int> trail_, pending_;
  std::vector<Frame> frames_;
  int unknown_ = 0;
};

}  // namespace

Enumerator<CayleyTable> enumerate_finite_groups(int max_order) {
  if (max_order < 1) throw InputError("max_order must be at least 1");
  return Enumerator<CayleyTable>(TableSearch(max_order));
}

Enumerator<Marking> enumerate_markings(std::shared_ptr<const CayleyTable> t, int k) {
  if (k < 1) throw InputError("marking arity must be at least 1");
  struct Impl {
    std::shared_ptr<const CayleyTable> table;
    std::vector<int> tuple;
    bool done = false;
    Emit<Marking> step() {
      if (done) return {};
      Emit<Marking> out;
      if (generates(*table, tuple)) out.item = Marking{table, tuple};
      std::size_t i = tuple.size();
      while (i > 0 && tuple[i - 1] == table->order() - 1) tuple[--i] = 0;
      if (i == 0)
        done = true;
      else
        ++tuple[i - 1];
      return out;
    }
    bool stalled() const { return done; }
  };
  return Enumerator<Marking>(Impl{t, std::vector<int>(static_cast<std::size_t>(k), 0)});
}

Enumerator<Marking> enumerate_markings(const CayleyTable& t, int k) {
  return enumerate_markings(std::make_shared<const CayleyTable>(t), k);
}

bool check_law(const CayleyTable& t, const Law& law) {
  const auto k = static_cast<std::size_t>(law.variable_count);
  auto shared = std::make_shared<const CayleyTable>(t);
  std::vector<int> tuple(k, 0);
  for (;;) {
    Marking m{shared, tuple};
    if (evaluate(m, law.word) != 0) return false;
    std::size_t i = k;
    while (i > 0 && tuple[i - 1] == t.order() - 1) tuple[--i] = 0;
    if (i == 0) return true;
    ++tuple[i - 1];
  }
}

std::pair<Permutation, Permutation> sigma_witness(int N) {
  if (N < 1) throw InputError("N must be positive");
  const int d = 5 * N;
  if (2 * N + 5 > d)
    throw InputError("transposition (" + std::to_string(2 * N + 4) + "," + std::to_string(2 * N + 5) +
                     ") lies outside 1.." + std::to_string(d));
  std::vector<int> shift(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) shift[static_cast<std::size_t>(i - 1)] = (i <= d - 2 ? i + 2 : i + 2 - d) - 1;
  Permutation s1 = Permutation::transposition(d, 0, 1) * Permutation::transposition(d, 2 * N + 3, 2 * N + 4);
  return {Permutation(std::move(shift)), s1};
}

}  // namespace mg
