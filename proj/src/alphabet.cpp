#include <algorithm>
#include <functional>
#include <set>

#include "mdsym/errors.hpp"
#include "mdsym/word.hpp"

namespace mdsym {

Word Word::slice(std::size_t pos, std::size_t len) const {
  return Word(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
}

Word operator+(const Word& u, const Word& v) {
  std::vector<Letter> out;
  out.reserve(u.length() + v.length());
  out.insert(out.end(), u.letters_.begin(), u.letters_.end());
  out.insert(out.end(), v.letters_.begin(), v.letters_.end());
  return Word(std::move(out));
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Letter a : w.letters()) h = (h ^ a) * 0x100000001b3ull;
  return h ^ w.length();
}

Alphabet::Alphabet(std::vector<AlphabetSymbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.id.empty()) throw DomainError("empty symbol id");
    if (!seen.insert(s.id).second) throw DomainError("duplicate symbol id '" + s.id + "'");
    if (s.weight < 2 || s.weight % 2 != 0)
      throw DomainError("symbol '" + s.id + "' needs an even weight >= 2");
  }
}

Alphabet Alphabet::of(std::initializer_list<std::string> ids) {
  std::vector<AlphabetSymbol> syms;
  for (const auto& id : ids) syms.push_back({id, 2});
  return Alphabet(std::move(syms));
}

std::optional<Letter> Alphabet::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].id == id) return static_cast<Letter>(i);
  return std::nullopt;
}

bool Alphabet::contains(const Word& w) const {
  return std::all_of(w.letters().begin(), w.letters().end(),
                     [&](Letter a) { return a < symbols_.size(); });
}

int Alphabet::weight(const Word& w) const {
  if (!contains(w)) throw AlphabetMismatch("word not over this alphabet");
  int total = 0;
  for (Letter a : w.letters()) total += symbols_[a].weight;
  return total;
}

Word Alphabet::concat(const Word& u, const Word& v) const {
  if (!contains(u) || !contains(v)) throw AlphabetMismatch("concat of words over different alphabets");
  return u + v;
}

std::vector<Word> Alphabet::words_of_length(std::size_t n) const {
  std::vector<Word> out;
  if (symbols_.empty()) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<Letter> cur(n, 0);
  const auto k = static_cast<Letter>(symbols_.size());
  while (true) {
    out.emplace_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++cur[i] < k) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<Word> Alphabet::words_up_to(std::size_t n) const {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= n; ++len) {
    auto ws = words_of_length(len);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "";
  bool single = std::all_of(symbols_.begin(), symbols_.end(),
                            [](const AlphabetSymbol& s) { return s.id.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (!single && i > 0) out += '.';
    out += symbols_.at(w[i]).id;
  }
  return out;
}

Word Alphabet::parse(const std::string& text) const {
  std::vector<Letter> letters;
  if (text.find('.') != std::string::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('.', start);
      if (end == std::string::npos) end = text.size();
      auto idx = index_of(text.substr(start, end - start));
      if (!idx) throw AlphabetMismatch("unknown symbol in word '" + text + "'");
      letters.push_back(*idx);
      start = end + 1;
    }
  } else {
    for (char c : text) {
      auto idx = index_of(std::string(1, c));
      if (!idx) throw AlphabetMismatch("unknown symbol in word '" + text + "'");
      letters.push_back(*idx);
    }
  }
  return Word(std::move(letters));
}

Alphabet Alphabet::merged(const Alphabet& other) const {
  std::vector<AlphabetSymbol> syms = symbols_;
  for (const auto& s : other.symbols_) {
    auto it = std::find_if(syms.begin(), syms.end(), [&](const AlphabetSymbol& t) { return t.id == s.id; });
    if (it == syms.end()) {
      syms.push_back(s);
    } else if (it->weight != s.weight) {
      throw AlphabetMismatch("symbol '" + s.id + "' has conflicting weights");
    }
  }
  return Alphabet(std::move(syms));
}

std::vector<Word> shuffle_set(const Word& u, const Word& v) {
  std::vector<Word> out;
  std::vector<Letter> buf;
  buf.reserve(u.length() + v.length());
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == u.length() && j == v.length()) {
      out.emplace_back(buf);
      return;
    }
    if (i < u.length()) {
      buf.push_back(u[i]);
      rec(i + 1, j);
      buf.pop_back();
    }
    if (j < v.length()) {
      buf.push_back(v[j]);
      rec(i, j + 1);
      buf.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace mdsym
