#include "linkforge/word.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace linkforge {

Word::Word(std::initializer_list<Letter> letters) : letters_(letters) {
  for (Letter l : letters_)
    if (l == 0) throw std::invalid_argument("word letter 0 is not a generator");
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter l : letters_)
    if (l == 0) throw std::invalid_argument("word letter 0 is not a generator");
}

void Word::push_back(Letter l) {
  if (l == 0) throw std::invalid_argument("word letter 0 is not a generator");
  letters_.push_back(l);
}

Word& Word::operator*=(const Word& rhs) {
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = -l;
  return Word(std::move(out));
}

Word Word::power(int e) const {
  Word base = e < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < std::abs(e); ++i) out *= base;
  return free_reduce(out);
}

int Word::max_generator() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, std::abs(l));
  return m;
}

Word operator*(const Word& a, const Word& b) {
  Word out = a;
  out *= b;
  return free_reduce(out);
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w) {
    if (!stack.empty() && stack.back() == -l)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

Word commutator(const Word& u, const Word& v) {
  Word out = u;
  out *= v;
  out *= u.inverse();
  out *= v.inverse();
  return free_reduce(out);
}

std::vector<long> abelianize(const Word& w, std::span<const int> class_of_generator,
                             int class_count) {
  std::vector<long> exps(static_cast<std::size_t>(class_count), 0);
  for (Letter l : w) {
    int g = std::abs(l);
    if (static_cast<std::size_t>(g) > class_of_generator.size())
      throw std::out_of_range("generator x" + std::to_string(g) + " has no abelianization class");
    int c = class_of_generator[g - 1];
    exps.at(static_cast<std::size_t>(c)) += l > 0 ? 1 : -1;
  }
  return exps;
}

Word parse_word(std::string_view text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '*')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '*') ++j;
    std::string_view tok = text.substr(i, j - i);
    if (tok == "1") {  // explicit identity
      i = j;
      continue;
    }
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X'))
      throw std::invalid_argument("malformed word token '" + std::string(tok) + "'");
    int g = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), g);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || g < 1)
      throw std::invalid_argument("malformed word token '" + std::string(tok) + "'");
    out.push_back(tok[0] == 'x' ? g : -g);
    i = j;
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += ' ';
    s += l > 0 ? 'x' : 'X';
    s += std::to_string(std::abs(l));
  }
  return s;
}

}  // namespace linkforge
