#include "doctest.h"
#include "linkforge/signatures.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace linkforge;

namespace {

const SeifertMatrix kTrefoil{{-1, 1}, {0, -1}};
const SeifertMatrix kFigure8{{-1, 1}, {0, 1}};

// Symmetric random part plus a fixed block making V - V^T unimodular.
SeifertMatrix random_seifert(std::mt19937& rng, int g) {
  const std::size_t n = 2 * static_cast<std::size_t>(g);
  SeifertMatrix v(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) v[i][j] = v[j][i] = static_cast<long>(rng() % 5) - 2;
  for (std::size_t b = 0; b < n; b += 2) v[b][b + 1] += 1;
  return v;
}

// Riemann sum of the signature over a uniform grid; grid points that land on
// a degenerate form are skipped.
double rho_by_quadrature(const SeifertMatrix& v, int samples) {
  double total = 0;
  int used = 0;
  for (int k = 0; k < samples; ++k) {
    const double theta = std::numbers::pi * (k + 0.5) / samples;
    try {
      total += lt_signature(v, std::polar(1.0, theta));
      ++used;
    } catch (const AtJump&) {
    }
  }
  return total / used;
}

std::complex<double> det_at(const SeifertMatrix& v, double theta) {
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXcd m(n, n);
  const std::complex<double> t = std::polar(1.0, theta);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(v[i][j]) - t * static_cast<double>(v[j][i]);
  return m.determinant();
}

}  // namespace

TEST_CASE("trefoil signature values") {
  CHECK(std::abs(lt_signature(kTrefoil, -1.0)) == 2);
  CHECK(lt_signature(kTrefoil, std::polar(1.0, 0.01)) == 0);
  CHECK(lt_signature(kFigure8, -1.0) == 0);
  CHECK(lt_signature({}, -1.0) == 0);
  CHECK_THROWS_AS(lt_signature(kTrefoil, 1.0), SignatureError);
  CHECK_THROWS_AS(lt_signature(kTrefoil, 2.0), SignatureError);
  CHECK_THROWS_AS(lt_signature(kTrefoil, std::polar(1.0, std::numbers::pi / 3)), AtJump);
}

TEST_CASE("trefoil rho") {
  auto jumps = jump_angles(kTrefoil);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0] == doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
  CHECK(std::abs(rho_knot(kTrefoil)) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(rho_knot(block_sum(kTrefoil, kTrefoil)) == doctest::Approx(2 * rho_knot(kTrefoil)).epsilon(1e-9));
  CHECK(rho_knot({}) == 0);
  CHECK(rho_knot(kFigure8) == 0);
  // Block sum produces a double root of the Alexander polynomial.
  CHECK(jump_angles(block_sum(kTrefoil, kTrefoil)).size() == 1);
}

TEST_CASE("signature function properties on random Seifert matrices") {
  std::mt19937 rng(5);
  for (int n = 0; n < 40; ++n) {
    SeifertMatrix v = random_seifert(rng, 1 + static_cast<int>(rng() % 3));
    validate_seifert(v);
    auto jumps = jump_angles(v);
    for (double t : jumps) CHECK(std::abs(det_at(v, t)) < 1e-6);
    std::vector<double> cuts{0.0};
    cuts.insert(cuts.end(), jumps.begin(), jumps.end());
    cuts.push_back(std::numbers::pi);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      if (b - a < 1e-6) continue;
      std::vector<int> sig;
      for (double f : {0.1, 0.5, 0.9}) {
        const double theta = a + f * (b - a);
        int s = lt_signature(v, std::polar(1.0, theta));
        CHECK(s % 2 == 0);
        CHECK(lt_signature(v, std::polar(1.0, -theta)) == s);
        sig.push_back(s);
      }
      CHECK(sig[0] == sig[1]);
      CHECK(sig[1] == sig[2]);
    }
    const double rho = rho_knot(v);
    CHECK(std::abs(rho - rho_by_quadrature(v, 20000)) <= 1e-3 * static_cast<double>(jumps.size() + 1));
  }
}

TEST_CASE("additivity under block sum") {
  std::mt19937 rng(9);
  for (int n = 0; n < 20; ++n) {
    SeifertMatrix a = random_seifert(rng, 1 + static_cast<int>(rng() % 2));
    SeifertMatrix b = random_seifert(rng, 1 + static_cast<int>(rng() % 2));
    CHECK(std::abs(rho_knot(block_sum(a, b)) - rho_knot(a) - rho_knot(b)) <= 2e-9);
    CHECK(lt_signature(block_sum(a, b), -1.0) == lt_signature(a, -1.0) + lt_signature(b, -1.0));
  }
}

TEST_CASE("Seifert CSV") {
  SeifertMatrix v = parse_seifert_csv(oracle::read_fixture("trefoil_seifert.csv"));
  CHECK(v == kTrefoil);
  CHECK(parse_seifert_csv("").empty());
  CHECK_THROWS_AS(parse_seifert_csv("1,2\n3\n"), SignatureError);
  CHECK_THROWS_AS(parse_seifert_csv("1,x\n0,1\n"), SignatureError);
  CHECK_THROWS_AS(parse_seifert_csv("1,0\n0,1\n"), SignatureError);  // det(V - V^T) = 0
  CHECK_THROWS_AS(parse_seifert_csv("1\n"), SignatureError);
}

TEST_CASE("budget and N_j") {
  CHECK(budget_R(1, {}).r == 1);
  CHECK(budget_R(1, {2, 3}).r == 11);
  CHECK_THROWS_AS(budget_R(0, {}), SignatureError);
  CHECK_THROWS_AS(budget_R(1, {-1}), SignatureError);
  CHECK(choose_Nj(4.0, 3) == std::vector<long>{4, 8, 12});
  CHECK(choose_Nj(1.0, 2) == std::vector<long>{1, 2});
  CHECK_THROWS_AS(choose_Nj(0.0, 2), SignatureError);
  CHECK_THROWS_AS(choose_Nj(1.0, 0), SignatureError);

  std::mt19937 rng(13);
  for (int n = 0; n < 200; ++n) {
    Rational r(static_cast<long>(1 + rng() % 10000), static_cast<long>(1 + rng() % 100));
    auto ns = choose_Nj(r, 5);
    long prior = 0;
    for (std::size_t j = 0; j < ns.size(); ++j) {
      CHECK(Rational(ns[j]) > r * 3 / 4 + prior);
      // Minimal: one less would violate the inequality.
      CHECK_FALSE(Rational(ns[j] - 1) > r * 3 / 4 + prior);
      prior = ns[j];
      for (std::size_t k = 0; k < j; ++k) CHECK(Rational(4 * (ns[j] - ns[k]), 3) > r);
    }
  }
}
