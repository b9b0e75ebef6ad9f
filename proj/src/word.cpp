#include "treelab/word.hpp"

#include "treelab/error.hpp"

#include <algorithm>
#include <cctype>

namespace treelab {

Word::Word(std::span<const Letter> raw) {
  letters_.reserve(raw.size());
  for (const Letter& l : raw) push(l);
}

Word& Word::push(Letter l) {
  if (!letters_.empty() && letters_.back() == l.inv())
    letters_.pop_back();
  else
    letters_.push_back(l);
  return *this;
}

Word Word::inverse() const {
  Word r;
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(it->inv());
  return r;
}

Word Word::prefix(std::size_t n) const {
  Word r;
  r.letters_.assign(letters_.begin(), letters_.begin() + std::min(n, letters_.size()));
  return r;
}

Word& Word::operator*=(const Word& o) {
  std::size_t k = 0;
  while (k < o.size() && !letters_.empty() && letters_.back() == o.letters_[k].inv()) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(), o.letters_.begin() + k, o.letters_.end());
  return *this;
}

Word Word::power(int k) const {
  Word base = k < 0 ? inverse() : *this;
  Word r;
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

bool operator<(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
                                      b.letters_.end());
}

std::size_t Word::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const Letter& l : letters_) {
    h ^= (static_cast<std::uint64_t>(l.gen) << 1) | (l.sign < 0 ? 1u : 0u);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Alphabet Alphabet::free_basis(int p) {
  std::vector<std::string> names;
  for (int i = 1; i <= p; ++i) names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= p; ++i) names.push_back("b" + std::to_string(i));
  return Alphabet(std::move(names));
}

Alphabet Alphabet::numbered(const std::string& stem, int rank) {
  std::vector<std::string> names;
  for (int i = 1; i <= rank; ++i) names.push_back(stem + std::to_string(i));
  return Alphabet(std::move(names));
}

std::string Alphabet::letter(Letter l) const {
  const std::string& n = names_.at(l.gen);
  if (l.sign > 0) return n;
  return n + "^-1";
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += letter(w[i]);
  }
  return out;
}

Word Alphabet::parse(const std::string& s) const {
  std::vector<Letter> raw;
  if (s.empty() || s == "e") return Word();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    int sign = 1;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      sign = -1;
      tok.resize(tok.size() - 3);
    }
    auto it = std::find(names_.begin(), names_.end(), tok);
    if (it == names_.end()) throw UsageError("unknown generator '" + tok + "'");
    raw.push_back(gen_letter(static_cast<int>(it - names_.begin()), sign));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return Word(raw);
}

}  // namespace treelab
