#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

namespace linkforge {

using BigInt = boost::multiprecision::cpp_int;
using Exponents = std::vector<int>;

// Multivariate Laurent polynomial with integer coefficients.
class LaurentPoly {
 public:
  explicit LaurentPoly(int variable_count = 0) : nvars_(variable_count) {}
  static LaurentPoly constant(int variable_count, const BigInt& c);
  static LaurentPoly monomial(const Exponents& e, const BigInt& c = 1);
  static LaurentPoly variable(int variable_count, int i);  // t_i

  int variable_count() const { return nvars_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  void add_term(const Exponents& e, const BigInt& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly pow(int e) const;
  bool operator==(const LaurentPoly& o) const = default;

  // Exact quotient; throws std::domain_error if o does not divide *this.
  LaurentPoly divide_exact(const LaurentPoly& o) const;

  // Lowest and highest exponent of variable i (0 for the zero polynomial).
  int min_exponent(int i) const;
  int max_exponent(int i) const;
  bool involves(int i) const;

  // Substitutes t_i := value (±1) and removes the variable.
  LaurentPoly substitute_and_drop(int i, int value) const;
  // Substitutes every variable by a single variable t.
  LaurentPoly collapse() const;
  LaurentPoly inverted() const;  // t_i -> t_i^{-1}
  LaurentPoly times_monomial(const Exponents& e) const;
  BigInt evaluate(const std::vector<long>& point) const;  // all variables ±1

  // Unit-normal form: every variable's minimum exponent shifted to 0, sign
  // chosen so the lexicographically smallest exponent vector has a positive
  // coefficient. Two polynomials agree up to units iff their forms agree.
  LaurentPoly canonical() const;

  BigInt content() const;
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int nvars_;
  std::map<Exponents, BigInt> terms_;
};

bool equal_up_to_units(const LaurentPoly& a, const LaurentPoly& b);

// Greatest common divisor, canonical.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

// Fraction-free determinant of a square matrix.
LaurentPoly determinant(std::vector<std::vector<LaurentPoly>> m, int variable_count);

}  // namespace linkforge
