#include "linkforge/foxcalc.hpp"

#include <cstdlib>
#include <functional>

namespace linkforge {

namespace {

int class_of(std::span<const int> classes, int g) {
  if (g < 1 || static_cast<std::size_t>(g) > classes.size())
    throw FoxError("generator x" + std::to_string(g) + " has no abelianization class");
  return classes[g - 1];
}

}  // namespace

LaurentPoly fox_derivative(const Word& w, int g, std::span<const int> classes, int class_count) {
  LaurentPoly out(class_count);
  Exponents prefix(static_cast<std::size_t>(class_count), 0);
  for (Letter l : w) {
    const int h = std::abs(l);
    const int c = class_of(classes, h);
    if (l > 0) {
      if (h == g) out.add_term(prefix, 1);
      prefix[c] += 1;
    } else {
      prefix[c] -= 1;
      if (h == g) out.add_term(prefix, -1);
    }
  }
  return out;
}

LaurentPoly abelian_image(const Word& w, std::span<const int> classes, int class_count) {
  Exponents e(static_cast<std::size_t>(class_count), 0);
  for (Letter l : w) e[class_of(classes, std::abs(l))] += l > 0 ? 1 : -1;
  return LaurentPoly::monomial(e);
}

LaurentPoly alexander_poly(const Presentation& p, int deleted_component) {
  const int m = p.component_count();
  if (m < 1) throw FoxError("Alexander polynomial of the empty link");
  if (static_cast<int>(p.component_of_generator.size()) != p.generator_count)
    throw FoxError("presentation lacks the component of each generator");
  if (deleted_component < 0 || deleted_component >= m) throw FoxError("invalid component index");
  const int dropped = p.meridians[deleted_component];
  std::vector<int> cols;
  for (int g = 1; g <= p.generator_count; ++g)
    if (g != dropped) cols.push_back(g);
  std::vector<std::vector<LaurentPoly>> fox;
  for (const Word& r : p.relators) {
    std::vector<LaurentPoly> row;
    for (int g : cols) row.push_back(fox_derivative(r, g, p.component_of_generator, m));
    fox.push_back(std::move(row));
  }
  const std::size_t k = cols.size(), rows = fox.size();
  LaurentPoly g(m);
  if (rows < k) return g;
  // gcd over all k x k minors, choosing which rows to keep.
  std::vector<std::size_t> keep;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (keep.size() == k) {
      std::vector<std::vector<LaurentPoly>> sq;
      for (auto i : keep) sq.push_back(fox[i]);
      LaurentPoly d = determinant(std::move(sq), m);
      g = gcd(g, d);
      return;
    }
    for (std::size_t i = start; i + (k - keep.size()) <= rows; ++i) {
      keep.push_back(i);
      rec(i + 1);
      keep.pop_back();
    }
  };
  rec(0);
  if (g.is_zero() || m == 1) return g.canonical();
  LaurentPoly tj = LaurentPoly::variable(m, deleted_component) - LaurentPoly::constant(m, 1);
  return g.divide_exact(tj).canonical();
}

LaurentPoly alexander_poly(const Diagram& d, int deleted_component) {
  return alexander_poly(wirtinger_presentation(d), deleted_component);
}

LaurentPoly one_variable(const LaurentPoly& delta) {
  if (delta.variable_count() < 2) throw FoxError("one-variable reduction needs at least two variables");
  LaurentPoly t1 = LaurentPoly::variable(1, 0) - LaurentPoly::constant(1, 1);
  return (delta.collapse() * t1).canonical();
}

LaurentPoly conway_from_alexander(const LaurentPoly& delta1) {
  if (delta1.variable_count() != 1) throw FoxError("Conway polynomial needs a one-variable polynomial");
  LaurentPoly z(1);
  if (delta1.is_zero()) return z;
  // R(s) = s^{-k} Delta(s^2), centred so that R(1/s) = ±R(s).
  const int lo = 2 * delta1.min_exponent(0), hi = 2 * delta1.max_exponent(0);
  const int centre = (lo + hi) / 2;
  LaurentPoly r(1);
  for (const auto& [e, c] : delta1.terms()) r.add_term({2 * e[0] - centre}, c);
  const LaurentPoly base = LaurentPoly::monomial({-1}) - LaurentPoly::monomial({1});  // s^-1 - s
  while (!r.is_zero()) {
    const auto& [e, c] = *r.terms().rbegin();
    const int d = e[0];
    if (d < 0) throw FoxError("polynomial is not symmetric");
    BigInt coeff = d % 2 == 0 ? c : BigInt(-c);
    z.add_term({d}, coeff);
    r -= base.pow(d) * LaurentPoly::constant(1, coeff);
  }
  if (z.terms().rbegin()->second < 0) z = -z;
  return z;
}

BigInt mu123_squared(const LaurentPoly& conway) {
  auto it = conway.terms().find(Exponents{4});
  return it == conway.terms().end() ? BigInt(0) : it->second;
}

bool torres_check(const LaurentPoly& delta, const LaurentPoly& delta_sub,
                  const std::vector<int>& lk) {
  const int m = delta.variable_count();
  if (m < 2 || delta_sub.variable_count() != m - 1 || static_cast<int>(lk.size()) != m - 1)
    throw FoxError("variable counts do not match");
  LaurentPoly lhs = delta.substitute_and_drop(0, 1);
  Exponents e(lk.begin(), lk.end());
  LaurentPoly rhs = (LaurentPoly::monomial(e) - LaurentPoly::constant(m - 1, 1)) * delta_sub;
  return equal_up_to_units(lhs, rhs);
}

int arf_invariant(const LaurentPoly& delta) {
  if (delta.variable_count() != 1) throw FoxError("Arf invariant needs a knot polynomial");
  BigInt at1 = delta.evaluate({1});
  if (at1 != 1 && at1 != -1) throw FoxError("Alexander polynomial does not satisfy Delta(1) = ±1");
  BigInt v = delta.evaluate({-1});
  if (v < 0) v = -v;
  BigInt r = v % 8;
  return (r == 1 || r == 7) ? 0 : 1;
}

}  // namespace linkforge
