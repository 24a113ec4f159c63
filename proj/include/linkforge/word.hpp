#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linkforge {

// A letter is a nonzero signed generator index: +g is x_g, -g is x_g^{-1}.
// Generators are numbered from 1 to match the xi/Xi token format.
using Letter = int;

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::vector<Letter> letters);

  static Word generator(int g) { return Word{g}; }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  // Appends without reducing.
  void push_back(Letter l);
  Word& operator*=(const Word& rhs);

  Word inverse() const;
  Word power(int e) const;
  int max_generator() const;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Concatenation followed by free reduction.
Word operator*(const Word& a, const Word& b);

Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

// [u,v] = u v u^-1 v^-1, freely reduced.
Word commutator(const Word& u, const Word& v);

// Exponent sum per class. class_of_generator[g-1] gives the class of x_g.
std::vector<long> abelianize(const Word& w, std::span<const int> class_of_generator,
                             int class_count);

// "x1 X2 x10" <-> Word. Throws std::invalid_argument on a bad token.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

// Target groups for evaluate: anything with an identity, product and inverse.
template <typename G>
concept GroupElement = requires(const G& a, const G& b) {
  { a * b } -> std::convertible_to<G>;
  { a.inverse() } -> std::convertible_to<G>;
  { a == b } -> std::convertible_to<bool>;
};

class MissingImage : public std::out_of_range {
 public:
  explicit MissingImage(int g)
      : std::out_of_range("no image assigned to generator x" + std::to_string(g)), generator(g) {}
  int generator;
};

// Homomorphic image of w. images[g-1] is the image of x_g; identity is the
// image of the empty word.
template <GroupElement G>
G evaluate(const Word& w, std::span<const G> images, const G& identity) {
  G acc = identity;
  for (Letter l : w) {
    int g = l > 0 ? l : -l;
    if (g < 1 || static_cast<std::size_t>(g) > images.size()) throw MissingImage(g);
    const G& x = images[g - 1];
    acc = l > 0 ? acc * x : acc * x.inverse();
  }
  return acc;
}

}  // namespace linkforge
