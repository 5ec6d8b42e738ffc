#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mdsym {

using Letter = std::uint16_t;

// A word over an alphabet, stored as letter indices.
// Ordered by length first, then lexicographically by letter index.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word letter(Letter a) { return Word{a}; }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  // Sub-word [pos, pos+len).
  Word slice(std::size_t pos, std::size_t len) const;

  friend Word operator+(const Word& u, const Word& v);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& u, const Word& v) {
    if (auto c = u.length() <=> v.length(); c != 0) return c;
    return u.letters_ <=> v.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

struct AlphabetSymbol {
  std::string id;
  int weight = 2;
  friend bool operator==(const AlphabetSymbol&, const AlphabetSymbol&) = default;
};

class Alphabet {
 public:
  // Throws DomainError on duplicate ids or weights that are odd or < 2.
  explicit Alphabet(std::vector<AlphabetSymbol> symbols);

  // Letters with the given ids, all of weight 2.
  static Alphabet of(std::initializer_list<std::string> ids);

  std::size_t size() const { return symbols_.size(); }
  const AlphabetSymbol& symbol(Letter a) const { return symbols_.at(a); }
  const std::vector<AlphabetSymbol>& symbols() const { return symbols_; }
  std::optional<Letter> index_of(const std::string& id) const;

  bool contains(const Word& w) const;
  int weight(const Word& w) const;

  // Concatenation with membership check; throws AlphabetMismatch.
  Word concat(const Word& u, const Word& v) const;

  // All words of length n, in word order.
  std::vector<Word> words_of_length(std::size_t n) const;
  // All nonempty words of length <= n, in word order.
  std::vector<Word> words_up_to(std::size_t n) const;

  std::string format(const Word& w) const;
  // Parses concatenated single-token ids ("AB") or dot-separated ids ("A.B").
  Word parse(const std::string& text) const;

  // Union preserving this alphabet's order, then new symbols of `other`.
  // Throws AlphabetMismatch when a shared id carries different weights.
  Alphabet merged(const Alphabet& other) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<AlphabetSymbol> symbols_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(Alphabet a) { return std::make_shared<const Alphabet>(std::move(a)); }

// All interleavings of u and v, with multiplicity.
std::vector<Word> shuffle_set(const Word& u, const Word& v);

}  // namespace mdsym
