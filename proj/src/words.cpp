#include "mg/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>

namespace mg {

namespace {

void check_arity(int arity) {
  if (arity < 1 || arity > kMaxArity)
    throw InputError("arity must be between 1 and " + std::to_string(kMaxArity) + ", got " + std::to_string(arity));
}

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

Word::Word(int arity) : arity_(arity) { check_arity(arity); }

Word reduce(std::span<const Letter> raw, int arity) {
  Word w(arity);
  w.letters_.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Letter l = raw[i];
    if (l == 0 || l > arity || l < -arity)
      throw InputError("letter " + std::to_string(l) + " out of range for arity " + std::to_string(arity), i);
    push_reduced(w.letters_, l);
  }
  return w;
}

Word reduce(std::initializer_list<Letter> raw, int arity) {
  return reduce(std::span<const Letter>(raw.begin(), raw.size()), arity);
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = -l;
  Word w(arity_);
  w.letters_ = std::move(out);
  return w;
}

Word Word::power(long long n) const {
  Word base = n < 0 ? inverse() : *this;
  unsigned long long count = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
  Word result(arity_);
  while (count > 0) {
    if (count & 1) result = result * base;
    count >>= 1;
    if (count > 0) base = base * base;
  }
  return result;
}

Word operator*(const Word& u, const Word& v) {
  if (u.arity_ != v.arity_)
    throw InputError("arity mismatch: " + std::to_string(u.arity_) + " vs " + std::to_string(v.arity_));
  Word w(u.arity_);
  w.letters_ = u.letters_;
  for (Letter l : v.letters_) push_reduced(w.letters_, l);
  return w;
}

std::strong_ordering operator<=>(const Word& u, const Word& v) noexcept {
  if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < u.letters_.size(); ++i)
    if (auto c = letter_rank(u.letters_[i]) <=> letter_rank(v.letters_[i]); c != 0) return c;
  return u.arity_ <=> v.arity_;
}

Word generator(int index, int arity) {
  if (index < 1 || index > arity) throw InputError("generator index out of range");
  return reduce({index}, arity);
}

Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

std::vector<long long> exponent_sums(const Word& w) {
  std::vector<long long> sums(static_cast<std::size_t>(w.arity()), 0);
  for (Letter l : w.letters()) sums[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return sums;
}

Substitution::Substitution(std::vector<Word> imgs, int target)
    : source_arity(static_cast<int>(imgs.size())), target_arity(target), images(std::move(imgs)) {
  check_arity(target_arity);
  if (source_arity < 1) throw InputError("substitution needs at least one image");
  for (const auto& w : images)
    if (w.arity() != target_arity) throw InputError("substitution image has the wrong arity");
}

Substitution Substitution::identity(int arity) {
  std::vector<Word> imgs;
  for (int i = 1; i <= arity; ++i) imgs.push_back(generator(i, arity));
  return Substitution(std::move(imgs), arity);
}

Word substitute(const Word& w, const Substitution& s) {
  if (w.arity() != s.source_arity)
    throw InputError("substitution source arity " + std::to_string(s.source_arity) + " does not match word arity " +
                     std::to_string(w.arity()));
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = s.images[static_cast<std::size_t>(std::abs(l) - 1)];
    if (l > 0) {
      for (Letter x : img.letters()) push_reduced(out, x);
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) push_reduced(out, -*it);
    }
  }
  return reduce(out, s.target_arity);
}

// ---------------------------------------------------------------------------
// Shortlex enumeration

ShortlexWords::ShortlexWords(int arity) : arity_(arity) { check_arity(arity); }

Word ShortlexWords::next() {
  const int alphabet = 2 * arity_;
  auto smallest_after = [&](int prev_rank) {
    // Smallest rank whose letter does not cancel the previous one.
    if (prev_rank < 0) return 0;
    return letter_of_rank(prev_rank) == -letter_of_rank(0) ? 1 : 0;
  };
  auto fill_from = [&](std::size_t pos) {
    for (std::size_t j = pos; j < ranks_.size(); ++j) ranks_[j] = smallest_after(j == 0 ? -1 : ranks_[j - 1]);
  };

  if (!started_) {
    started_ = true;
  } else {
    bool advanced = false;
    for (std::size_t i = ranks_.size(); i-- > 0;) {
      int r = ranks_[i] + 1;
      if (i > 0 && r < alphabet && letter_of_rank(r) == -letter_of_rank(ranks_[i - 1])) ++r;
      if (r < alphabet) {
        ranks_[i] = r;
        fill_from(i + 1);
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      ranks_.assign(ranks_.size() + 1, 0);
      fill_from(0);
    }
  }
  std::vector<Letter> letters;
  letters.reserve(ranks_.size());
  for (int r : ranks_) letters.push_back(letter_of_rank(r));
  return reduce(letters, arity_);
}

const Word& ShortlexTable::at(std::size_t index) {
  while (words_.size() <= index) words_.push_back(source_.next());
  return words_[index];
}

Enumerator<Word> enumerate_words(int arity) {
  struct Impl {
    ShortlexWords words;
    Emit<Word> step() { return {words.next()}; }
  };
  return Enumerator<Word>(Impl{ShortlexWords(arity)});
}

Enumerator<std::vector<Word>> enumerate_word_tuples(std::vector<int> slot_arities) {
  if (slot_arities.empty()) throw InputError("tuple enumeration needs at least one slot");
  struct Impl {
    std::vector<ShortlexTable> tables;
    std::size_t bound = 0;          // current maximum index
    std::vector<std::size_t> idx;   // current tuple within the bound shell
    bool fresh_shell = true;

    // Advances idx to the next tuple with entries <= bound, lexicographically.
    bool advance() {
      for (std::size_t i = idx.size(); i-- > 0;) {
        if (idx[i] < bound) {
          ++idx[i];
          std::fill(idx.begin() + static_cast<std::ptrdiff_t>(i) + 1, idx.end(), 0);
          return true;
        }
      }
      return false;
    }

    Emit<std::vector<Word>> step() {
      // Skip tuples that do not touch the current bound; they were emitted in
      // an earlier shell. This is bounded work per step.
      for (;;) {
        if (fresh_shell) {
          fresh_shell = false;
          std::fill(idx.begin(), idx.end(), 0);
        } else if (!advance()) {
          ++bound;
          std::fill(idx.begin(), idx.end(), 0);
        }
        if (std::find(idx.begin(), idx.end(), bound) != idx.end()) break;
      }
      std::vector<Word> tuple;
      tuple.reserve(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) tuple.push_back(tables[i].at(idx[i]));
      return {std::move(tuple)};
    }
  };
  Impl impl;
  for (int a : slot_arities) impl.tables.emplace_back(a);
  impl.idx.assign(slot_arities.size(), 0);
  return Enumerator<std::vector<Word>>(std::move(impl));
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t pos, int arity) : text_(text), pos_(pos), arity_(arity) {}

  std::size_t pos() const { return pos_; }

  std::vector<Letter> word() {
    std::vector<Letter> out;
    for (;;) {
      skip_ws();
      if (at_end()) return out;
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        Letter l = letter(c);
        ++pos_;
        long long n = 1;
        if (peek('^')) {
          ++pos_;
          n = integer();
        }
        append_power(out, {l}, n);
      } else if (c == '(') {
        ++pos_;
        std::vector<Letter> inner = word();
        expect(')');
        expect('^');
        long long n = integer();
        append_power(out, inner, n);
      } else if (c == '[') {
        std::size_t open = pos_;
        ++pos_;
        std::vector<Letter> u = word();
        expect(',');
        std::vector<Letter> v = word();
        expect(']');
        try {
          Word c = commutator(reduce(u, arity_), reduce(v, arity_));
          for (Letter l : c.letters()) push_reduced(out, l);
        } catch (const InputError&) {
          throw InputError("bad commutator", open);
        }
      } else if (c == '1') {
        ++pos_;
      } else {
        return out;
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return !at_end() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || text_[pos_] != c) throw InputError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  Letter letter(char c) const {
    int index = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
    if (index > arity_)
      throw InputError(std::string("letter '") + c + "' beyond arity " + std::to_string(arity_), pos_);
    return std::isupper(static_cast<unsigned char>(c)) ? -index : index;
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (!at_end() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    long long n = 0;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc() || p != digits.data() + digits.size())
      throw InputError("expected an integer exponent", start);
    if (n > 1'000'000 || n < -1'000'000) throw InputError("exponent too large", start);
    return n;
  }

  static void append_power(std::vector<Letter>& out, const std::vector<Letter>& base, long long n) {
    if (n >= 0) {
      for (long long i = 0; i < n; ++i)
        for (Letter l : base) push_reduced(out, l);
    } else {
      for (long long i = 0; i < -n; ++i)
        for (auto it = base.rbegin(); it != base.rend(); ++it) push_reduced(out, -*it);
    }
  }

  std::string_view text_;
  std::size_t pos_;
  int arity_;
};

}  // namespace

Word parse_word_at(std::string_view text, std::size_t& pos, int arity) {
  check_arity(arity);
  Parser p(text, pos, arity);
  std::vector<Letter> letters = p.word();
  pos = p.pos();
  return reduce(letters, arity);
}

Word parse_word(std::string_view text, int arity) {
  std::size_t pos = 0;
  Word w = parse_word_at(text, pos, arity);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw InputError(std::string("unexpected '") + text[pos] + "'", pos);
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const std::size_t run = j - i;
    const int index = std::abs(ls[i]);
    const char lower = static_cast<char>('a' + index - 1);
    if (run == 1) {
      out += ls[i] > 0 ? lower : static_cast<char>(std::toupper(lower));
    } else {
      out += lower;
      out += '^';
      if (ls[i] < 0) out += '-';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

}  // namespace mg

std::size_t std::hash<mg::Word>::operator()(const mg::Word& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.arity()) * 0x9e3779b97f4a7c15ULL;
  for (mg::Letter l : w.letters()) h ^= static_cast<std::size_t>(l + 64) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}
