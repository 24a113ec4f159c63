#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace linkforge {

using Rational = boost::multiprecision::cpp_rational;
using SeifertMatrix = std::vector<std::vector<long>>;

class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the form is (numerically) degenerate at the requested point.
class AtJump : public SignatureError {
 public:
  using SignatureError::SignatureError;
};

// Square, even size, det(V - V^T) = +-1.
void validate_seifert(const SeifertMatrix& v);
// Rows of comma-separated integers; '#' starts a comment.
SeifertMatrix parse_seifert_csv(std::string_view text);
SeifertMatrix block_sum(const SeifertMatrix& a, const SeifertMatrix& b);

// Signature of (1 - w) V + (1 - conj w) V^T.
int lt_signature(const SeifertMatrix& v, std::complex<double> omega, double tol = 1e-9);

// Angles theta in (0, pi) where det(V - e^{i theta} V^T) vanishes, ascending,
// each accurate to 1e-12.
std::vector<double> jump_angles(const SeifertMatrix& v);

// Mean of the signature function over the unit circle.
double rho_knot(const SeifertMatrix& v, double tol = 1e-9);

// rho of the knot J used to build the families J_0^j; taken as given, not
// recomputed.
inline constexpr double kRhoJ = 4.0 / 3.0;

struct RhoBudget {
  double c_x = 0;
  std::vector<double> c_i;
  double r = 0;  // c_x + 2 * sum(c_i)
};
RhoBudget budget_R(double c_x, const std::vector<double>& c_list);

// Smallest integers with N_j > 3R/4 + max(N_k, k < j).
std::vector<long> choose_Nj(const Rational& r, int count);
std::vector<long> choose_Nj(double r, int count);  // r converted exactly

}  // namespace linkforge
