#pragma once

#include "linkforge/diagram.hpp"
#include "linkforge/laurent.hpp"
#include "linkforge/wirtinger.hpp"

#include <span>
#include <vector>

namespace linkforge {

class FoxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fox derivative of w with respect to x_g, pushed into Z[t_1^{±1}..t_m^{±1}]
// by x_h -> t_{class_of_generator[h-1]}.
LaurentPoly fox_derivative(const Word& w, int g, std::span<const int> class_of_generator,
                           int class_count);

// Image of a word in the group ring under the same map.
LaurentPoly abelian_image(const Word& w, std::span<const int> class_of_generator, int class_count);

// Multivariable Alexander polynomial (one-variable for knots), canonical.
// The column of the meridian of `deleted_component` is removed; the result
// does not depend on that choice.
LaurentPoly alexander_poly(const Diagram& d, int deleted_component = 0);
LaurentPoly alexander_poly(const Presentation& p, int deleted_component = 0);

// (t-1) * Delta(t,...,t), canonical. Needs at least two variables.
LaurentPoly one_variable(const LaurentPoly& delta);

// Conway polynomial as a polynomial in z (one variable, nonnegative
// exponents), normalized to a positive leading coefficient.
LaurentPoly conway_from_alexander(const LaurentPoly& delta1);

BigInt mu123_squared(const LaurentPoly& conway);

// Delta_L(1, t_2, ..., t_m) against (t_2^{lk_12} ... t_m^{lk_1m} - 1) Delta_L'.
bool torres_check(const LaurentPoly& delta, const LaurentPoly& delta_sub,
                  const std::vector<int>& linking_with_first);

// Levine's criterion on a knot's Alexander polynomial.
int arf_invariant(const LaurentPoly& delta_knot);

}  // namespace linkforge
