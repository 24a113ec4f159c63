#include "linkforge/signatures.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace linkforge {

namespace {

using boost::multiprecision::cpp_int;
using Poly = std::vector<Rational>;  // coefficients from degree 0 up

cpp_int bareiss(std::vector<std::vector<cpp_int>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  cpp_int prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// det(V - t V^T) at integer t.
cpp_int alexander_at(const SeifertMatrix& v, long t) {
  const std::size_t n = v.size();
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cpp_int(v[i][j]) - cpp_int(t) * v[j][i];
  return bareiss(std::move(a));
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

Poly scale(Poly a, const Rational& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Quotient and remainder.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q;
  trim(a);
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly monic_gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(a, 1 / Rational(a.back()));
  return a;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

struct Sturm {
  std::vector<Poly> chain;
  explicit Sturm(const Poly& p) {
    chain.push_back(p);
    chain.push_back(derivative(p));
    while (!chain.back().empty()) {
      Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
      if (r.empty()) break;
      chain.push_back(scale(r, -1));
    }
  }
  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const Poly& p : chain) {
      int s = sign_of(eval(p, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }
  // Distinct roots in (a, b].
  int roots(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
};

// Q(t) = t^{-g} Delta(t) written as a polynomial in x = t + 1/t.
Poly symmetric_form(const SeifertMatrix& v) {
  const long n = static_cast<long>(v.size());
  // Interpolate Delta of degree <= n through t = 0..n.
  Poly delta;
  for (long i = 0; i <= n; ++i) {
    Poly basis{Rational(1)};
    Rational denom = 1;
    for (long j = 0; j <= n; ++j) {
      if (j == i) continue;
      basis = mul(basis, Poly{Rational(-j), Rational(1)});
      denom *= i - j;
    }
    delta = add(delta, scale(basis, Rational(alexander_at(v, i)) / denom));
  }
  delta.resize(static_cast<std::size_t>(n) + 1);
  const long g = n / 2;
  for (long k = 0; k <= n; ++k)
    if (delta[k] != delta[n - k]) throw SignatureError("Alexander polynomial of V is not symmetric");
  Poly p{delta[g]};
  Poly d_prev{Rational(2)}, d_cur{Rational(0), Rational(1)};  // D_0 = 2, D_1 = x
  for (long k = 1; k <= g; ++k) {
    p = add(p, scale(d_cur, delta[g + k]));
    Poly next = add(mul(Poly{Rational(0), Rational(1)}, d_cur), scale(d_prev, -1));
    d_prev = std::move(d_cur);
    d_cur = std::move(next);
  }
  trim(p);
  return p;
}

double angle(const Rational& x) { return std::acos(static_cast<double>(x) / 2.0); }

}  // namespace

void validate_seifert(const SeifertMatrix& v) {
  const std::size_t n = v.size();
  for (const auto& row : v)
    if (row.size() != n) throw SignatureError("Seifert matrix is not square");
  if (n % 2) throw SignatureError("Seifert matrix has odd size " + std::to_string(n));
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cpp_int(v[i][j]) - v[j][i];
  cpp_int d = bareiss(std::move(a));
  if (d != 1 && d != -1) throw SignatureError("det(V - V^T) = " + d.str() + ", expected +-1");
}

SeifertMatrix parse_seifert_csv(std::string_view text) {
  SeifertMatrix v;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<long> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stol(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw SignatureError("line " + std::to_string(lineno) + ": bad entry '" + cell + "'");
      }
    }
    v.push_back(std::move(row));
  }
  validate_seifert(v);
  return v;
}

SeifertMatrix block_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
  const std::size_t n = a.size(), m = b.size();
  SeifertMatrix s(n + m, std::vector<long>(n + m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i][j] = a[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s[n + i][n + j] = b[i][j];
  return s;
}

int lt_signature(const SeifertMatrix& v, std::complex<double> omega, double tol) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw SignatureError("omega is not on the unit circle");
  if (std::abs(omega - 1.0) < 1e-15) throw SignatureError("omega = 1");
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  if (n == 0) return 0;
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      h(i, j) = (1.0 - omega) * static_cast<double>(v[i][j]) + (1.0 - std::conj(omega)) * static_cast<double>(v[j][i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SignatureError("eigenvalue computation failed");
  int sig = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double l = es.eigenvalues()(i);
    if (std::abs(l) < tol) throw AtJump("form is degenerate at this point (at a jump)");
    sig += l > 0 ? 1 : -1;
  }
  return sig;
}

std::vector<double> jump_angles(const SeifertMatrix& v) {
  validate_seifert(v);
  Poly p = symmetric_form(v);
  if (p.empty()) throw SignatureError("Alexander polynomial vanishes identically");
  Poly sf = divmod(p, monic_gcd(p, derivative(p))).first;
  std::vector<double> out;
  const Rational lo(-2), hi(2);
  // Endpoints are t = -1 and t = 1.
  for (const Rational& e : {lo, hi})
    if (eval(sf, e) == 0) sf = divmod(sf, Poly{-e, Rational(1)}).first;
  if (sf.size() <= 1) return out;
  Sturm st(sf);
  std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int count = st.roots(a, b);
    if (count == 0) continue;
    if (count > 1) {
      Rational mid = (a + b) / 2;
      work.push_back({a, mid});
      work.push_back({mid, b});
      continue;
    }
    while (angle(a) - angle(b) > 1e-13) {
      if (eval(sf, b) == 0) {
        a = b;
        break;
      }
      Rational mid = (a + b) / 2;
      if (st.roots(a, mid) == 1)
        b = mid;
      else
        a = mid;
    }
    out.push_back((angle(a) + angle(b)) / 2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double rho_knot(const SeifertMatrix& v, double tol) {
  std::vector<double> cuts{0.0};
  for (double t : jump_angles(v)) cuts.push_back(t);
  cuts.push_back(std::numbers::pi);
  double total = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= 0) continue;
    const double mid = (cuts[k] + cuts[k + 1]) / 2;
    total += lt_signature(v, std::polar(1.0, mid), tol) * len;
  }
  return total / std::numbers::pi;
}

RhoBudget budget_R(double c_x, const std::vector<double>& c_list) {
  if (!(c_x > 0)) throw SignatureError("C_X must be positive");
  double sum = 0;
  for (double c : c_list) {
    if (!(c > 0)) throw SignatureError("every C_i must be positive");
    sum += c;
  }
  return {c_x, c_list, c_x + 2 * sum};
}

std::vector<long> choose_Nj(const Rational& r, int count) {
  if (r <= 0) throw SignatureError("R must be positive");
  if (count < 1) throw SignatureError("count must be at least 1");
  Rational q = r * 3 / 4;
  cpp_int fl = numerator(q) / denominator(q);  // floor, q > 0
  const long step = static_cast<long>(fl) + 1;
  std::vector<long> n;
  long prev = 0;
  for (int j = 0; j < count; ++j) {
    prev += step;
    n.push_back(prev);
  }
  return n;
}

std::vector<long> choose_Nj(double r, int count) {
  if (!std::isfinite(r)) throw SignatureError("R must be finite");
  return choose_Nj(Rational(r), count);
}

}  // namespace linkforge
