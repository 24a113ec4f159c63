#include "doctest.h"
#include "linkforge/wirtinger.hpp"
#include "oracles.hpp"

#include <random>

using namespace linkforge;

namespace {

// Free rank and torsion of the abelianized group.
std::pair<std::vector<long>, int> abelian_group(const Presentation& p) {
  std::vector<std::vector<long>> m;
  for (const auto& r : p.relators) {
    std::vector<long> row(static_cast<std::size_t>(p.generator_count), 0);
    for (Letter l : r) row[std::abs(l) - 1] += l > 0 ? 1 : -1;
    m.push_back(row);
  }
  auto [f, free] = oracle::smith_cokernel(m, p.generator_count);
  std::vector<long> torsion;
  for (long x : f)
    if (x != 1) torsion.push_back(x);
  return {torsion, free};
}

std::vector<int> identity_classes(const Presentation& p) { return p.component_of_generator; }

}  // namespace

TEST_CASE("trefoil presentation") {
  Diagram d = parse_pd(oracle::read_fixture("trefoil.pd"));
  Presentation p = wirtinger_presentation(d);
  CHECK(p.generator_count == 3);
  CHECK(p.relators.size() == 3);
  auto [torsion, free] = abelian_group(p);
  CHECK(torsion.empty());
  CHECK(free == 1);
  CHECK(p.meridians == std::vector<int>{1});
}

TEST_CASE("borromean presentation") {
  Diagram d = parse_pd(oracle::read_fixture("borromean.pd"));
  Presentation p = wirtinger_presentation(d);
  CHECK(p.generator_count == 6);
  CHECK(p.relators.size() == 6);
  auto [torsion, free] = abelian_group(p);
  CHECK(torsion.empty());
  CHECK(free == 3);
  auto cls = identity_classes(p);
  for (int c = 0; c < 3; ++c) {
    CHECK(abelianize(*p.longitudes[c], cls, 3) == std::vector<long>{0, 0, 0});
    CHECK(p.longitudes[c]->size() > 0);
  }
  Presentation z = zero_surgery_presentation(d, {0, 1, 2});
  CHECK(z.generator_count == 6);
  CHECK(z.relators.size() == 9);
  Presentation none = zero_surgery_presentation(d, {});
  CHECK(none.relators == p.relators);
}

TEST_CASE("unknot presentation") {
  Presentation p = wirtinger_presentation(unknot());
  CHECK(p.generator_count == 1);
  CHECK(p.relators.empty());
  CHECK(longitude_word(unknot(), 0).empty());
}

TEST_CASE("hopf longitude") {
  Diagram d = parse_pd(oracle::read_fixture("hopf.pd"));
  Presentation p = wirtinger_presentation(d);
  auto cls = identity_classes(p);
  auto ab = abelianize(longitude_word(d, 0), cls, 2);
  CHECK(ab[0] == 0);
  CHECK(std::abs(ab[1]) == 1);
}

TEST_CASE("relator shape and longitude abelianization on random closures") {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<int> w;
    int len = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < len; ++i) {
      int g = 1 + static_cast<int>(rng() % (n - 1));
      w.push_back(rng() % 2 ? g : -g);
    }
    Diagram d = braid_closure(n, w);
    Presentation p = wirtinger_presentation(d);
    for (const auto& r : p.relators) {
      // Kinks reduce to an equality of two generators, or to nothing.
      if (r.empty()) continue;
      if (r.size() == 2)
        CHECK((r[0] > 0) != (r[1] > 0));
      else
        CHECK_MESSAGE(conjugation_shape(r).has_value(), format_word(r));
    }
    auto [torsion, free] = abelian_group(p);
    CHECK(torsion.empty());
    CHECK(free == d.component_count());
    auto lk = linking_matrix(d);
    for (int c = 0; c < d.component_count(); ++c) {
      auto ab = abelianize(longitude_word(d, c), p.component_of_generator, d.component_count());
      for (int j = 0; j < d.component_count(); ++j) CHECK(std::abs(ab[j]) == std::abs(lk[c][j]));
      for (int j = 0; j < d.component_count(); ++j) CHECK(ab[j] == (j == c ? 0 : lk[c][j]));
    }
  }
}

TEST_CASE("loading the fixture presentation") {
  Presentation p = load_presentation(oracle::read_fixture("fig4.fpg"));
  CHECK(p.generator_count == 24);
  CHECK(p.relators.size() == 27);
  CHECK(format_word(p.words.at("eta_prime")) == "x1 X2 x10 X3 x15 x3 X10 X13");
  CHECK(p.meridians == std::vector<int>{1, 11, 13, 17});
  CHECK(p.modulus == 5);
  CHECK(p.images[23].has_value());
  CHECK(p.warnings.empty());
  CHECK(load_presentation(render_presentation(p)).relators == p.relators);
}

TEST_CASE("presentation file errors") {
  Presentation p = load_presentation("generators 2\nrelator x1 X1\n");
  CHECK(p.relators.size() == 1);
  CHECK(p.relators[0].empty());
  CHECK(p.warnings.size() == 1);
  CHECK_THROWS_AS(load_presentation("generators 24\nrelator x25\n"), PresentationError);
  CHECK_THROWS_AS(load_presentation("generators 2\nrelator x1 q2\n"), PresentationError);
  CHECK_THROWS_AS(load_presentation("relator x1\n"), PresentationError);
}

TEST_CASE("generator elimination preserves the abelianization") {
  Diagram d = parse_pd(oracle::read_fixture("borromean.pd"));
  Presentation p = eliminate_generators(wirtinger_presentation(d));
  CHECK(p.generator_count == 3);
  auto [torsion, free] = abelian_group(p);
  CHECK(torsion.empty());
  CHECK(free == 3);
}
