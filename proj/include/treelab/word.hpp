#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace treelab {

struct Letter {
  std::uint16_t gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  Letter inv() const { return {gen, static_cast<std::int8_t>(-sign)}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  // generator order, positive before negative
  friend bool operator<(const Letter& a, const Letter& b) {
    return a.gen != b.gen ? a.gen < b.gen : a.sign > b.sign;
  }
};

inline Letter gen_letter(int g, int sign = 1) {
  return {static_cast<std::uint16_t>(g), static_cast<std::int8_t>(sign)};
}

// Freely reduced word. Every constructor reduces.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> raw);
  Word(std::initializer_list<Letter> raw) : Word(std::span<const Letter>(raw.begin(), raw.size())) {}
  static Word letter(int g, int sign = 1) { return Word({gen_letter(g, sign)}); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word prefix(std::size_t n) const;
  // Append one letter, cancelling if needed.
  Word& push(Letter l);
  Word& operator*=(const Word& o);
  friend Word operator*(Word a, const Word& b) { return a *= b; }
  Word power(int k) const;

  friend bool operator==(const Word&, const Word&) = default;
  // shortlex
  friend bool operator<(const Word& a, const Word& b);

  std::size_t hash() const;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

// Letter names: index g prints as names[g], its inverse as names[g] + "^-1".
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {}
  static Alphabet free_basis(int p);  // a1..ap, b1..bp
  static Alphabet numbered(const std::string& stem, int rank);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int g) const { return names_.at(g); }
  std::string letter(Letter l) const;
  // "e" for the identity, otherwise letters joined by '.'
  std::string format(const Word& w) const;
  Word parse(const std::string& s) const;

 private:
  std::vector<std::string> names_;
};

}  // namespace treelab

template <>
struct std::hash<treelab::Word> {
  std::size_t operator()(const treelab::Word& w) const { return w.hash(); }
};
