#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkforge {

bool is_prime(int p);

// Element of SL(2,F_p), entries row-major and reduced into [0,p).
class FpMatrix2 {
 public:
  FpMatrix2() = default;
  // Throws std::invalid_argument unless p is prime and the determinant is 1.
  FpMatrix2(int p, long a, long b, long c, long d);
  static FpMatrix2 identity(int p) { return FpMatrix2(p, 1, 0, 0, 1); }

  int p() const { return p_; }
  int a() const { return e_[0]; }
  int b() const { return e_[1]; }
  int c() const { return e_[2]; }
  int d() const { return e_[3]; }
  const std::array<int, 4>& entries() const { return e_; }
  // Dense index in 0..p^4-1, used for tables.
  int code() const { return ((e_[0] * p_ + e_[1]) * p_ + e_[2]) * p_ + e_[3]; }

  FpMatrix2 operator*(const FpMatrix2& o) const;
  FpMatrix2 inverse() const { return raw(p_, e_[3], p_ - e_[1], p_ - e_[2], e_[0]); }
  bool is_identity() const { return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1; }
  long determinant() const;

  bool operator==(const FpMatrix2& o) const { return p_ == o.p_ && e_ == o.e_; }
  auto operator<=>(const FpMatrix2& o) const { return e_ <=> o.e_; }

 private:
  static FpMatrix2 raw(int p, int a, int b, int c, int d);
  int p_ = 2;
  std::array<int, 4> e_{1, 0, 0, 1};
};

std::vector<FpMatrix2> enumerate_sl2(int p);

// Dense multiplication table over the elements of SL(2,F_p), indexed by
// their position in enumerate_sl2(p).
class Sl2Table {
 public:
  explicit Sl2Table(int p);
  int p() const { return p_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const FpMatrix2& element(int i) const { return elems_[i]; }
  int index_of(const FpMatrix2& m) const { return index_.at(static_cast<std::size_t>(m.code())); }
  int mul(int i, int j) const { return mul_[static_cast<std::size_t>(i) * elems_.size() + j]; }
  int inv(int i) const { return inv_[i]; }
  int identity() const { return identity_; }
  // Representatives of the conjugacy classes, one per class.
  const std::vector<int>& class_representatives() const { return reps_; }

 private:
  int p_;
  std::vector<FpMatrix2> elems_;
  std::vector<int> index_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> reps_;
  int identity_ = 0;
};

}  // namespace linkforge
