#include "mg/presentations.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <unordered_set>

namespace mg {

FinitePresentation::FinitePresentation(int k, std::vector<Word> rels) : arity(k), relators(std::move(rels)) {
  if (arity < 1 || arity > kMaxArity) throw InputError("presentation arity out of range");
  for (const auto& r : relators)
    if (r.arity() != arity) throw InputError("relator " + format_word(r) + " has the wrong arity");
}

FinitePresentation FinitePresentation::canonical() const {
  FinitePresentation out = *this;
  std::sort(out.relators.begin(), out.relators.end());
  out.relators.erase(std::unique(out.relators.begin(), out.relators.end()), out.relators.end());
  return out;
}

namespace {

void skip_ws(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

void expect(std::string_view text, std::size_t& pos, char c) {
  skip_ws(text, pos);
  if (pos >= text.size() || text[pos] != c) throw InputError(std::string("expected '") + c + "'", pos);
  ++pos;
}

}  // namespace

FinitePresentation parse_presentation(std::string_view text) {
  std::size_t pos = 0;
  expect(text, pos, '<');
  int arity = 0;
  for (;;) {
    skip_ws(text, pos);
    if (pos >= text.size()) throw InputError("unterminated presentation", pos);
    char c = text[pos];
    if (c != 'a' + arity) throw InputError(std::string("expected generator '") + char('a' + arity) + "'", pos);
    ++arity;
    ++pos;
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  expect(text, pos, '|');
  std::vector<Word> relators;
  skip_ws(text, pos);
  if (pos < text.size() && text[pos] != '>') {
    for (;;) {
      std::size_t start = pos;
      relators.push_back(parse_word_at(text, pos, arity));
      skip_ws(text, pos);
      if (pos == start) throw InputError("expected a relator", pos);
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  expect(text, pos, '>');
  skip_ws(text, pos);
  if (pos != text.size()) throw InputError("trailing text after presentation", pos);
  return FinitePresentation(arity, std::move(relators));
}

std::string format_presentation(const FinitePresentation& p) {
  std::string out = "< ";
  for (int i = 0; i < p.arity; ++i) {
    if (i) out += ", ";
    out += static_cast<char>('a' + i);
  }
  out += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += i ? ", " : " ";
    out += format_word(p.relators[i]);
  }
  out += " >";
  return out;
}

Law parse_law(std::string_view text) {
  int arity = 1;
  for (char c : text)
    if (std::isalpha(static_cast<unsigned char>(c)))
      arity = std::max(arity, std::tolower(static_cast<unsigned char>(c)) - 'a' + 1);
  return Law{arity, parse_word(text, arity)};
}

std::string format_law(const Law& law) { return format_word(law.word); }

RelatorEnumerator relator_list(int arity, std::vector<Word> relators) {
  for (const auto& r : relators)
    if (r.arity() != arity) throw InputError("relator " + format_word(r) + " has the wrong arity");
  return {arity, enumerate_list(std::move(relators))};
}

// ---------------------------------------------------------------------------
// Normal-closure search.
//
// Cyclic words are stored as strings of letter ranks, so the inverse of a
// letter c is c ^ 1. A word lies in the normal closure of R exactly when its
// cyclic reduction can be rewritten to the empty word by repeatedly inserting a
// cyclic rotation of some r or r^-1 in R and freely reducing. A van Kampen
// diagram of the word always has a face on its boundary, and peeling it off is
// such an insertion whose last letter cancels against the boundary, so only
// those insertions are generated. Nodes are expanded shortest first, and each
// step produces at most one child.

namespace {

std::string encode(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w.letters()) s.push_back(static_cast<char>(letter_rank(l)));
  return s;
}

std::string decode_inverse(std::string_view s) {
  std::string t(s.rbegin(), s.rend());
  for (auto& c : t) c = static_cast<char>(c ^ 1);
  return t;
}

void free_reduce(std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (n > 0 && s[n - 1] == (c ^ 1))
      --n;
    else
      s[n++] = c;
  }
  s.resize(n);
}

void cyclic_reduce(std::string& s) {
  std::size_t i = 0, j = s.size();
  while (j - i >= 2 && s[i] == (s[j - 1] ^ 1)) {
    ++i;
    --j;
  }
  if (i > 0 || j < s.size()) s = s.substr(i, j - i);
}

std::size_t least_rotation(std::string_view s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    char a = s[(i + k) % n], b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

std::string rotated(std::string_view s, std::size_t r) {
  std::string out;
  out.reserve(s.size());
  out.append(s.substr(r));
  out.append(s.substr(0, r));
  return out;
}

// Minimal rotation of w or of w^-1; w must be cyclically reduced.
std::string canonical_cyclic(const std::string& w) {
  if (w.empty()) return w;
  std::string a = rotated(w, least_rotation(w));
  std::string inv = decode_inverse(w);
  std::string b = rotated(inv, least_rotation(inv));
  return std::min(a, b);
}

std::size_t smallest_period(std::string_view s) {
  const std::size_t n = s.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = s[i] == s[i - p];
    if (ok) return p;
  }
  return n;
}

struct RotationPool {
  struct Rotation {
    std::uint32_t word;
    std::uint32_t start;
  };
  std::vector<std::string> words;  // each relator and its inverse, cyclically reduced
  std::vector<Rotation> rotations;
  std::unordered_set<std::string> canonical;
  std::size_t total_length = 0;

  char last_letter(const Rotation& r) const {
    const std::string& w = words[r.word];
    return r.start == 0 ? w.back() : w[r.start - 1];
  }

  void append_to(std::string& out, const Rotation& r) const {
    std::string_view w = words[r.word];
    out.append(w.substr(r.start));
    out.append(w.substr(0, r.start));
  }

  bool add(std::string r) {
    free_reduce(r);
    cyclic_reduce(r);
    if (r.empty()) return false;
    if (!canonical.insert(canonical_cyclic(r)).second) return false;
    total_length += r.size();
    std::string inv = decode_inverse(r);
    for (std::string* w : {&r, &inv}) {
      auto index = static_cast<std::uint32_t>(words.size());
      std::size_t period = smallest_period(*w);
      words.push_back(std::move(*w));
      for (std::size_t s = 0; s < period; ++s) rotations.push_back({index, static_cast<std::uint32_t>(s)});
    }
    return true;
  }
};

struct Memo {
  std::unordered_set<std::string> known;
};

class ClosureSearch {
 public:
  ClosureSearch(std::shared_ptr<RotationPool> pool, std::optional<Enumerator<Word>> stream,
                std::shared_ptr<Memo> memo, const Word& query)
      : pool_(std::move(pool)), stream_(std::move(stream)), memo_(std::move(memo)), query_(encode(query)) {}

  Verdict step() {
    if (!started_) return start();
    if (stream_ && !stream_->stalled() && since_pull_ >= pool_->total_length) {
      pull();
      return Verdict::running;
    }
    ++since_pull_;
    if (requeue_) requeue_batch();
    while (queued_ > 0) {
      const std::uint32_t id = front();
      std::optional<std::string> child = next_child(id);
      if (!child) {
        pop_front();
        done_.push_back(id);
        continue;
      }
      if (child->empty() || memo_->known.count(*child)) {
        remember(id, *child);
        return Verdict::accepted;
      }
      if (!contains(*child)) add_node(std::move(*child), id);
      return Verdict::running;
    }
    return Verdict::running;
  }

  bool stalled() const {
    return started_ && queued_ == 0 && !requeue_ && (!stream_ || stream_->stalled());
  }

 private:
  struct Node {
    std::uint32_t offset;
    std::uint32_t parent;
    std::uint32_t rot = 0;
    std::uint16_t len;
    std::uint16_t pos = 0;
  };
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr std::size_t kMaxLength = 60000;

  Verdict start() {
    started_ = true;
    std::string w = std::move(query_);
    cyclic_reduce(w);
    w = canonical_cyclic(w);
    if (w.empty()) return Verdict::accepted;
    if (memo_->known.count(w)) return Verdict::accepted;
    if (w.size() > kMaxLength) throw InputError("query word too long");
    add_node(std::move(w), kNone);
    return Verdict::running;
  }

  void pull() {
    since_pull_ = 0;
    Emit<Word> e = stream_->step();
    if (!e.item) return;
    std::string r = encode(*e.item);
    // The pool is shared with the description and with snapshots; copy it
    // before the first private change.
    if (pool_.use_count() > 1) pool_ = std::make_shared<RotationPool>(*pool_);
    if (pool_->add(std::move(r)) && !done_.empty()) requeue_ = true;
  }

  std::string_view text(std::uint32_t id) const {
    const Node& n = nodes_[id];
    return std::string_view(arena_).substr(n.offset, n.len);
  }

  std::optional<std::string> next_child(std::uint32_t id) {
    const auto& rots = pool_->rotations;
    for (;;) {
      Node& n = nodes_[id];
      if (n.rot >= rots.size()) return std::nullopt;
      const auto& rot = rots[n.rot];
      const char need = static_cast<char>(pool_->last_letter(rot) ^ 1);
      std::string_view w = text(id);
      while (n.pos < n.len) {
        const std::size_t i = n.pos++;
        if (w[i] != need) continue;
        std::string c;
        c.reserve(w.size() + pool_->words[rot.word].size());
        c.append(w.substr(0, i));
        pool_->append_to(c, rot);
        c.append(w.substr(i));
        free_reduce(c);
        cyclic_reduce(c);
        if (c.size() > kMaxLength) continue;
        return canonical_cyclic(c);
      }
      ++n.rot;
      n.pos = 0;
    }
  }

  void add_node(std::string w, std::uint32_t parent) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    Node n;
    n.offset = static_cast<std::uint32_t>(arena_.size());
    n.parent = parent;
    n.len = static_cast<std::uint16_t>(w.size());
    arena_.append(w);
    nodes_.push_back(n);
    insert_hash(id);
    enqueue(id);
  }

  void remember(std::uint32_t id, const std::string& child) {
    if (!child.empty()) memo_->known.insert(child);
    for (std::uint32_t at = id; at != kNone; at = nodes_[at].parent) memo_->known.emplace(text(at));
  }

  // Bucket queue keyed by word length; FIFO within a length.
  struct Bucket {
    std::vector<std::uint32_t> ids;
    std::size_t head = 0;
    bool empty() const { return head == ids.size(); }
  };

  void enqueue(std::uint32_t id) {
    const std::size_t len = nodes_[id].len;
    if (buckets_.size() <= len) buckets_.resize(len + 1);
    buckets_[len].ids.push_back(id);
    if (queued_ == 0 || len < min_len_) min_len_ = len;
    ++queued_;
  }

  std::uint32_t front() {
    while (buckets_[min_len_].empty()) ++min_len_;
    Bucket& b = buckets_[min_len_];
    return b.ids[b.head];
  }

  void pop_front() {
    Bucket& b = buckets_[min_len_];
    if (++b.head == b.ids.size()) {
      b.ids.clear();
      b.head = 0;
    }
    --queued_;
  }

  void requeue_batch() {
    for (int moved = 0; moved < 1024 && !done_.empty(); ++moved) {
      enqueue(done_.back());
      done_.pop_back();
    }
    if (done_.empty()) requeue_ = false;
  }

  // Open-addressing set of node ids, keyed by the node's text.
  static std::size_t hash_of(std::string_view s) { return std::hash<std::string_view>{}(s); }

  bool contains(const std::string& s) const {
    if (slots_.empty()) return false;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t h = hash_of(s) & mask;; h = (h + 1) & mask) {
      const std::uint32_t slot = slots_[h];
      if (slot == 0) return false;
      if (text(slot - 1) == s) return true;
    }
  }

  void insert_hash(std::uint32_t id) {
    if ((nodes_.size()) * 2 > slots_.size()) {
      std::vector<std::uint32_t> fresh(std::max<std::size_t>(64, slots_.size() * 2), 0);
      slots_.swap(fresh);
      for (std::uint32_t other = 0; other < id; ++other) place(other);
    }
    place(id);
  }

  void place(std::uint32_t id) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t h = hash_of(text(id)) & mask;
    while (slots_[h] != 0) h = (h + 1) & mask;
    slots_[h] = id + 1;
  }

  std::shared_ptr<RotationPool> pool_;
  std::optional<Enumerator<Word>> stream_;
  std::shared_ptr<Memo> memo_;
  std::string query_;
  bool started_ = false;
  std::size_t since_pull_ = 0;

  std::string arena_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> slots_;
  std::vector<Bucket> buckets_;
  std::size_t min_len_ = 0;
  std::size_t queued_ = 0;
  std::vector<std::uint32_t> done_;
  bool requeue_ = false;
};

}  // namespace

ReDescription consequences(const FinitePresentation& p) {
  auto pool = std::make_shared<RotationPool>();
  for (const auto& r : p.relators) {
    if (r.arity() != p.arity) throw InputError("relator has the wrong arity");
    pool->add(encode(r));
  }
  auto memo = std::make_shared<Memo>();
  return ReDescription(p.arity, [pool, memo](const Word& w) {
    return SemiDecider(ClosureSearch(pool, std::nullopt, memo, w));
  });
}

ReDescription re_from_enumerator(const RelatorEnumerator& rel) {
  auto empty = std::make_shared<RotationPool>();
  auto memo = std::make_shared<Memo>();
  const int arity = rel.arity;
  return ReDescription(arity, [empty, memo, stream = rel.stream, arity](const Word& w) {
    Enumerator<Word> checked = transform<Emit<Word>, Emit<Word>>(stream, [arity](const Emit<Word>& e) {
      if (e.item && e.item->arity() != arity) throw InputError("relator stream emitted a word of the wrong arity");
      return e;
    });
    return SemiDecider(ClosureSearch(empty, std::move(checked), memo, w));
  });
}

RelatorEnumerator variety_relators(const FinitePresentation& p, const std::vector<Law>& laws) {
  struct Impl {
    int arity;
    std::shared_ptr<const std::vector<Word>> relators;
    std::size_t next_relator = 0;
    std::shared_ptr<const std::vector<Law>> laws;
    std::vector<Enumerator<std::vector<Word>>> tuples;
    std::size_t cursor = 0;

    Emit<Word> step() {
      if (next_relator < relators->size()) return {(*relators)[next_relator++]};
      if (tuples.empty()) return {};
      // Instances that reduce to the identity carry no information; skip a
      // bounded number of them per step.
      for (int attempt = 0; attempt < 64; ++attempt) {
        const std::size_t i = cursor;
        cursor = (cursor + 1) % tuples.size();
        Emit<std::vector<Word>> t = tuples[i].step();
        Word instance = substitute((*laws)[i].word, Substitution(std::move(*t.item), arity));
        if (!instance.empty()) return {std::move(instance)};
      }
      return {};
    }
    bool stalled() const { return next_relator >= relators->size() && tuples.empty(); }
  };
  Impl impl{p.arity, std::make_shared<const std::vector<Word>>(p.relators), 0, nullptr, {}, 0};
  std::vector<Law> kept;
  for (const auto& law : laws) {
    if (law.word.arity() != law.variable_count) throw InputError("law word arity differs from its variable count");
    if (law.word.empty()) continue;
    kept.push_back(law);
    impl.tuples.push_back(enumerate_word_tuples(std::vector<int>(static_cast<std::size_t>(law.variable_count), p.arity)));
  }
  impl.laws = std::make_shared<const std::vector<Law>>(std::move(kept));
  return {p.arity, Enumerator<Word>(std::move(impl))};
}

ReDescription variety_consequences(const FinitePresentation& p, const std::vector<Law>& laws) {
  return re_from_enumerator(variety_relators(p, laws));
}

}  // namespace mg
