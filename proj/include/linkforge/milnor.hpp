#pragma once

#include "linkforge/diagram.hpp"
#include "linkforge/wirtinger.hpp"
#include "linkforge/word.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace linkforge {

// Truncated power series in non-commuting X_1..X_m (0-based internally),
// stored densely by monomial.
class MagnusSeries {
 public:
  MagnusSeries() = default;
  MagnusSeries(int variables, int degree);  // the zero series
  static MagnusSeries one(int variables, int degree);
  // 1 + X_i, or its inverse 1 - X_i + X_i^2 - ... when sign < 0.
  static MagnusSeries generator(int variables, int degree, int i, int sign = 1);

  int variables() const { return m_; }
  int degree() const { return q_; }
  std::int64_t coefficient(const std::vector<int>& monomial) const;
  void set_coefficient(const std::vector<int>& monomial, std::int64_t c);

  MagnusSeries operator*(const MagnusSeries& o) const;
  MagnusSeries operator+(const MagnusSeries& o) const;
  MagnusSeries operator-(const MagnusSeries& o) const;
  MagnusSeries inverse() const;  // needs constant term 1
  bool operator==(const MagnusSeries& o) const = default;
  bool is_one() const;
  // Lowest degree >= 1 with a nonzero coefficient, or 0 if none.
  int lowest_nonconstant_degree() const;

  // Nonzero coefficients, monomials in increasing length then lexicographic.
  std::vector<std::pair<std::vector<int>, std::int64_t>> nonzero_terms() const;

 private:
  std::size_t index(const std::vector<int>& monomial) const;
  int m_ = 0;
  int q_ = 0;
  std::vector<std::size_t> offset_;  // first index of each length
  std::vector<std::int64_t> c_;
};

// x_i -> 1 + X_i with generators numbered from 1; `variables` defaults to the
// largest generator in w.
MagnusSeries magnus_expand(const Word& w, int degree, int variables = 0);

// True iff w is nontrivial in F/F_q (F_1 = F, F_{k+1} = [F, F_k]).
bool lcs_nontrivial(const Word& w, int q);

class MilnorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generator g of a Wirtinger presentation written as conj * m * conj^{-1},
// m the meridian of `component`; conj is a word in meridians, letter c+1
// standing for the meridian of component c.
struct MeridianForm {
  int component;
  Word conjugator;
};
std::vector<MeridianForm> meridian_reduction(const Presentation& p, int q);

// Magnus images of all Wirtinger generators (overarc numbering) after
// `passes` rounds of substitution along the components.
std::vector<MagnusSeries> generator_series(const Diagram& d, int degree, int passes);

struct MilnorValue {
  std::int64_t value = 0;          // reduced mod indeterminacy when that is nonzero
  std::int64_t indeterminacy = 0;  // gcd over shorter cyclic sub-indices
};

// Multi-index entries are component numbers from 1. q defaults to |I|.
MilnorValue milnor_mu(const Diagram& d, const std::vector<int>& index, int q = 0);
// The raw coefficient without indeterminacy.
std::int64_t milnor_coefficient(const Diagram& d, const std::vector<int>& index, int q = 0);

std::string index_key(const std::vector<int>& index);

// Every non-repeating multi-index of length 2..max_length.
std::map<std::string, MilnorValue> mu_all_upto(const Diagram& d, int max_length, int workers = 1);

}  // namespace linkforge
