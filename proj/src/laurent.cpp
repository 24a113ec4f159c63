#include "linkforge/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace linkforge {

namespace {

Exponents add(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents sub(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

void check_same(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.variable_count() != b.variable_count())
    throw std::invalid_argument("polynomials in different numbers of variables");
}

}  // namespace

LaurentPoly LaurentPoly::constant(int variable_count, const BigInt& c) {
  LaurentPoly p(variable_count);
  p.add_term(Exponents(static_cast<std::size_t>(variable_count), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponents& e, const BigInt& c) {
  LaurentPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int variable_count, int i) {
  Exponents e(static_cast<std::size_t>(variable_count), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return monomial(e);
}

void LaurentPoly::add_term(const Exponents& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent vector length");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  return r += o;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  return r -= o;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check_same(*this, o);
  LaurentPoly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(add(e1, e2), c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a polynomial");
  LaurentPoly r = constant(nvars_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::times_monomial(const Exponents& e) const {
  LaurentPoly r(nvars_);
  for (const auto& [x, c] : terms_) r.terms_.emplace(add(x, e), c);
  return r;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& o) const {
  check_same(*this, o);
  if (o.is_zero()) throw std::domain_error("division by the zero polynomial");
  LaurentPoly q(nvars_), r = *this;
  if (r.is_zero()) return q;
  const auto& [dlead, dcoef] = *o.terms_.rbegin();
  const Exponents lowest = sub(terms_.begin()->first, o.terms_.begin()->first);
  while (!r.is_zero()) {
    const auto& [rlead, rcoef] = *r.terms_.rbegin();
    Exponents e = sub(rlead, dlead);
    if (e < lowest || rcoef % dcoef != 0) throw std::domain_error("polynomial division is not exact");
    BigInt c = rcoef / dcoef;
    q.add_term(e, c);
    for (const auto& [x, cx] : o.terms_) r.add_term(add(x, e), -c * cx);
  }
  return q;
}

int LaurentPoly::min_exponent(int i) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) m = std::min(m, e[i]);
  return m;
}

int LaurentPoly::max_exponent(int i) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) m = std::max(m, e[i]);
  return m;
}

bool LaurentPoly::involves(int i) const {
  for (const auto& [e, c] : terms_)
    if (e[i] != 0) return true;
  return false;
}

LaurentPoly LaurentPoly::substitute_and_drop(int i, int value) const {
  if (value != 1 && value != -1) throw std::invalid_argument("substitution value must be 1 or -1");
  LaurentPoly r(nvars_ - 1);
  for (const auto& [e, c] : terms_) {
    Exponents f;
    for (int k = 0; k < nvars_; ++k)
      if (k != i) f.push_back(e[k]);
    r.add_term(f, (value == -1 && e[i] % 2 != 0) ? BigInt(-c) : c);
  }
  return r;
}

LaurentPoly LaurentPoly::collapse() const {
  LaurentPoly r(1);
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    r.add_term({s}, c);
  }
  return r;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (int& x : f) x = -x;
    r.terms_.emplace(f, c);
  }
  return r;
}

BigInt LaurentPoly::evaluate(const std::vector<long>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point dimension");
  BigInt s = 0;
  for (const auto& [e, c] : terms_) {
    int sign = 1;
    for (int i = 0; i < nvars_; ++i) {
      if (point[i] == -1) {
        if (e[i] % 2 != 0) sign = -sign;
      } else if (point[i] != 1) {
        throw std::invalid_argument("evaluation only at ±1");
      }
    }
    s += sign * c;
  }
  return s;
}

LaurentPoly LaurentPoly::canonical() const {
  if (terms_.empty()) return *this;
  Exponents shift(static_cast<std::size_t>(nvars_));
  for (int i = 0; i < nvars_; ++i) shift[i] = -min_exponent(i);
  LaurentPoly r = times_monomial(shift);
  if (r.terms_.begin()->second < 0) r = -r;
  return r;
}

BigInt LaurentPoly::content() const {
  BigInt g = 0;
  for (const auto& [e, c] : terms_) g = boost::multiprecision::gcd(g, c);
  return g;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int i) {
    if (i < static_cast<int>(names.size())) return names[i];
    return nvars_ == 1 ? std::string("t") : "t" + std::to_string(i + 1);
  };
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
    bool wrote = false;
    if (a != 1 || !has_var) {
      os << a;
      wrote = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << name(i);
      if (e[i] != 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

bool equal_up_to_units(const LaurentPoly& a, const LaurentPoly& b) {
  return a.canonical() == b.canonical();
}

namespace {

// Coefficient of t_v^k, as a polynomial not involving t_v.
LaurentPoly coefficient(const LaurentPoly& p, int v, int k) {
  LaurentPoly r(p.variable_count());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] != k) continue;
    Exponents f = e;
    f[v] = 0;
    r.add_term(f, c);
  }
  return r;
}

int highest_variable(const LaurentPoly& a) {
  for (int i = a.variable_count() - 1; i >= 0; --i)
    if (a.involves(i)) return i;
  return -1;
}

LaurentPoly content_in(const LaurentPoly& p, int v) {
  LaurentPoly g(p.variable_count());
  for (int k = p.min_exponent(v); k <= p.max_exponent(v); ++k) {
    LaurentPoly c = coefficient(p, v, k);
    if (!c.is_zero()) g = gcd(g, c);
  }
  return g;
}

LaurentPoly primitive_in(const LaurentPoly& p, int v) {
  if (p.is_zero()) return p;
  return p.divide_exact(content_in(p, v)).canonical();
}

// Pseudo-remainder of a by b as polynomials in t_v (both with nonnegative
// exponents, b of positive degree).
LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, int v) {
  const int db = b.max_exponent(v);
  const LaurentPoly lb = coefficient(b, v, db);
  Exponents ev(static_cast<std::size_t>(a.variable_count()), 0);
  while (!a.is_zero() && a.max_exponent(v) >= db) {
    const int da = a.max_exponent(v);
    const LaurentPoly la = coefficient(a, v, da);
    ev[v] = da - db;
    a = lb * a - (la * b).times_monomial(ev);
  }
  return a;
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a0, const LaurentPoly& b0) {
  check_same(a0, b0);
  if (a0.is_zero()) return b0.canonical();
  if (b0.is_zero()) return a0.canonical();
  LaurentPoly a = a0.canonical(), b = b0.canonical();
  const int v = std::max(highest_variable(a), highest_variable(b));
  if (v < 0) return LaurentPoly::constant(a.variable_count(), boost::multiprecision::gcd(a.content(), b.content()));
  if (!a.involves(v)) return gcd(a, content_in(b, v));
  if (!b.involves(v)) return gcd(content_in(a, v), b);
  LaurentPoly ca = content_in(a, v), cb = content_in(b, v);
  LaurentPoly g = gcd(ca, cb);
  LaurentPoly pa = a.divide_exact(ca).canonical(), pb = b.divide_exact(cb).canonical();
  if (pa.max_exponent(v) < pb.max_exponent(v)) std::swap(pa, pb);
  while (true) {
    LaurentPoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    r = r.canonical();
    if (!r.involves(v)) {
      pb = LaurentPoly::constant(a.variable_count(), 1);
      break;
    }
    pa = pb;
    pb = primitive_in(r, v);
  }
  return (g * primitive_in(pb, v)).canonical();
}

LaurentPoly determinant(std::vector<std::vector<LaurentPoly>> m, int variable_count) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly::constant(variable_count, 1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  LaurentPoly prev = LaurentPoly::constant(variable_count, 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t i = k + 1;
      while (i < n && m[i][k].is_zero()) ++i;
      if (i == n) return LaurentPoly(variable_count);
      std::swap(m[k], m[i]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_exact(prev);
      m[i][k] = LaurentPoly(variable_count);
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace linkforge
