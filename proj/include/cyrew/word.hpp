#ifndef CYREW_WORD_HPP
#define CYREW_WORD_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cyrew {

/// A symbol is an index into an Alphabet.
using Symbol = std::uint32_t;

/// A word over an alphabet; the empty word denotes the monoid identity.
using Word = std::vector<Symbol>;

/// Ordered list of distinct symbol names. Declaration order defines the
/// total order on symbols used everywhere else (canonical rotations,
/// shortlex comparisons). Immutable after construction.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) {
        throw std::invalid_argument("alphabet: empty symbol name at position "
                                    + std::to_string(i + 1));
      }
      if (!index_.emplace(names_[i], static_cast<Symbol>(i)).second) {
        throw std::invalid_argument("alphabet: duplicate symbol name '" + names_[i]
                                    + "'");
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }

  const std::string& name(Symbol s) const {
    if (s >= names_.size()) {
      throw std::out_of_range("alphabet: symbol index " + std::to_string(s)
                              + " out of range");
    }
    return names_[s];
  }

  std::optional<Symbol> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 14695981039346656037ull;
    for (Symbol s : w) {
      h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Moves the first `amount` letters of w to its end. Valid amounts are
/// 0 <= amount < max(1, |w|); rotation by 0 is the identity.
inline Word rotate(const Word& w, std::size_t amount) {
  const std::size_t bound = w.empty() ? 1 : w.size();
  if (amount >= bound) {
    throw std::out_of_range("rotate: amount " + std::to_string(amount)
                            + " out of range for word of length "
                            + std::to_string(w.size()));
  }
  Word out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(amount), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(amount));
  return out;
}

/// Index of the lexicographically least rotation of w, O(n) two-pointer scan.
inline std::size_t least_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n <= 1) {
    return 0;
  }
  Word s(w);
  s.insert(s.end(), w.begin(), w.end());
  std::size_t a = 0;
  for (std::size_t b = 1; b < n; ++b) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a + k == b || s[a + k] < s[b + k]) {
        b += (k == 0 ? 0 : k - 1);
        break;
      }
      if (s[a + k] > s[b + k]) {
        a = b;
        break;
      }
    }
  }
  return a;
}

/// The lexicographically least rotation, used as the representative of a
/// rotation class. Idempotent.
inline Word canonical_rotation(const Word& w) { return rotate(w, least_rotation(w)); }

inline bool are_cyclic_conjugates(const Word& u, const Word& v) {
  if (u.size() != v.size()) {
    return false;
  }
  return canonical_rotation(u) == canonical_rotation(v);
}

/// All distinct rotations of w, sorted. For the empty word this is {1}.
inline std::vector<Word> cyclic_conjugates(const Word& w) {
  std::vector<Word> out;
  const std::size_t count = w.empty() ? 1 : w.size();
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(rotate(w, i));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Least r with rotate(from, r) == to, if the words are conjugate.
inline std::optional<std::size_t> rotation_taking(const Word& from, const Word& to) {
  if (from.size() != to.size()) {
    return std::nullopt;
  }
  const std::size_t count = from.empty() ? 1 : from.size();
  for (std::size_t r = 0; r < count; ++r) {
    if (rotate(from, r) == to) {
      return r;
    }
  }
  return std::nullopt;
}

/// Start positions of every occurrence of pattern in w, left to right.
inline std::vector<std::size_t> occurrences(const Word& w, const Word& pattern) {
  std::vector<std::size_t> out;
  if (pattern.empty() || pattern.size() > w.size()) {
    return out;
  }
  for (std::size_t p = 0; p + pattern.size() <= w.size(); ++p) {
    if (std::equal(pattern.begin(), pattern.end(),
                   w.begin() + static_cast<std::ptrdiff_t>(p))) {
      out.push_back(p);
    }
  }
  return out;
}

inline bool occurs(const Word& w, const Word& pattern) {
  if (pattern.empty()) {
    return true;
  }
  if (pattern.size() > w.size()) {
    return false;
  }
  return std::search(w.begin(), w.end(), pattern.begin(), pattern.end()) != w.end();
}

/// True when pattern occurs in some rotation of w.
inline bool occurs_cyclically(const Word& w, const Word& pattern) {
  if (pattern.empty()) {
    return true;
  }
  if (pattern.size() > w.size()) {
    return false;
  }
  Word doubled(w);
  doubled.insert(doubled.end(), w.begin(), w.end());
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (std::equal(pattern.begin(), pattern.end(),
                   doubled.begin() + static_cast<std::ptrdiff_t>(p))) {
      return true;
    }
  }
  return false;
}

/// Non-empty prefixes of w, shortest first. Requires |w| >= 1.
inline std::vector<Word> prefixes(const Word& w) {
  if (w.empty()) {
    throw std::invalid_argument("prefixes: undefined for the empty word");
  }
  std::vector<Word> out;
  out.reserve(w.size());
  for (std::size_t len = 1; len <= w.size(); ++len) {
    out.emplace_back(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
  }
  return out;
}

/// Non-empty suffixes of w, shortest first. Requires |w| >= 1.
inline std::vector<Word> suffixes(const Word& w) {
  if (w.empty()) {
    throw std::invalid_argument("suffixes: undefined for the empty word");
  }
  std::vector<Word> out;
  out.reserve(w.size());
  for (std::size_t len = 1; len <= w.size(); ++len) {
    out.emplace_back(w.end() - static_cast<std::ptrdiff_t>(len), w.end());
  }
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word concat(const Word& a, const Word& b, const Word& c) {
  return concat(concat(a, b), c);
}

/// Order by length first, then lexicographically by symbol index.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a < b;
}

/// Words are rendered as whitespace-separated symbol names; the empty word
/// prints as "1".
inline std::string to_text(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += alphabet.name(w[i]);
  }
  return out;
}

}  // namespace cyrew

#endif  // CYREW_WORD_HPP
