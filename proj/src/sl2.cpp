#include "linkforge/sl2.hpp"

#include <set>

namespace linkforge {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace {

int mod(long x, int p) {
  long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

}  // namespace

FpMatrix2::FpMatrix2(int p, long a, long b, long c, long d) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  e_ = {mod(a, p), mod(b, p), mod(c, p), mod(d, p)};
  if (determinant() != 1) throw std::invalid_argument("matrix determinant is not 1 mod p");
}

FpMatrix2 FpMatrix2::raw(int p, int a, int b, int c, int d) {
  FpMatrix2 m;
  m.p_ = p;
  m.e_ = {a % p, b % p, c % p, d % p};
  return m;
}

long FpMatrix2::determinant() const {
  return mod(static_cast<long>(e_[0]) * e_[3] - static_cast<long>(e_[1]) * e_[2], p_);
}

FpMatrix2 FpMatrix2::operator*(const FpMatrix2& o) const {
  if (p_ != o.p_) throw std::invalid_argument("matrices over different fields");
  const long p = p_;
  return raw(p_, static_cast<int>((e_[0] * o.e_[0] + e_[1] * o.e_[2]) % p),
             static_cast<int>((e_[0] * o.e_[1] + e_[1] * o.e_[3]) % p),
             static_cast<int>((e_[2] * o.e_[0] + e_[3] * o.e_[2]) % p),
             static_cast<int>((e_[2] * o.e_[1] + e_[3] * o.e_[3]) % p));
}

std::vector<FpMatrix2> enumerate_sl2(int p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  std::vector<FpMatrix2> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (mod(static_cast<long>(a) * d - static_cast<long>(b) * c, p) == 1)
            out.emplace_back(p, a, b, c, d);
  return out;
}

Sl2Table::Sl2Table(int p) : p_(p), elems_(enumerate_sl2(p)) {
  const std::size_t n = elems_.size();
  index_.assign(static_cast<std::size_t>(p) * p * p * p, -1);
  for (std::size_t i = 0; i < n; ++i) index_[elems_[i].code()] = static_cast<int>(i);
  mul_.resize(n * n);
  inv_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv_[i] = index_[elems_[i].inverse().code()];
    for (std::size_t j = 0; j < n; ++j) mul_[i * n + j] = index_[(elems_[i] * elems_[j]).code()];
  }
  identity_ = index_[FpMatrix2::identity(p).code()];
  std::vector<bool> covered(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (covered[i]) continue;
    reps_.push_back(static_cast<int>(i));
    for (std::size_t g = 0; g < n; ++g)
      covered[mul(mul(static_cast<int>(g), static_cast<int>(i)), inv_[g])] = true;
  }
}

}  // namespace linkforge
