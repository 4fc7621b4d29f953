#include <doctest.h>

#include <cmath>

#include "conemink/ma.hpp"
#include "conemink/measure.hpp"
#include "conemink/zoo3d.hpp"

using namespace conemink;

namespace {

ConePtr hex_cone(Rng& rng) {
  std::vector<Vec> rays;
  for (int i = 0; i < 6; ++i) {
    double phi = 2 * M_PI * (i + rng.uniform(0.2, 0.8)) / 6;
    double rho = rng.uniform(0.4, 0.9);
    rays.push_back(normalized(Vec(-1.0, rho * std::cos(phi), rho * std::sin(phi))));
  }
  return Cone::from_rays(rays);
}

PseudoCone random_pseudocone3(ConePtr cone, Rng& rng, int ncuts) {
  ChartDomain d = cone->projected_domain();
  P2 c = polygon_centroid(d.poly);
  std::vector<Cut> cuts;
  for (int i = 0; i < ncuts; ++i) {
    double s = rng.uniform(0.1, 0.6);
    double a = rng.uniform(0.0, 2 * M_PI);
    Vec x(c.x + s * std::cos(a), c.y + s * std::sin(a));
    if (!d.contains(x, -1e-6)) continue;
    cuts.push_back({cone->chart(x), -rng.uniform(0.3, 1.5)});
  }
  return PseudoCone(std::move(cone), std::move(cuts));
}

}  // namespace

TEST_CASE("surface measure of the cone is empty") {
  auto c = Cone::make2d(M_PI / 4);
  CHECK(surface_measure(PseudoCone::cone_only(c)).empty());
}

TEST_CASE("surface measure of the single-cut wedge") {
  auto c = Cone::make2d(M_PI / 4);
  PseudoCone K(c, {{Vec(1, 0), -1.0}});
  auto mu = surface_measure(K);
  REQUIRE(mu.size() == 1);
  CHECK(angle_between(mu.atoms()[0].dir.v, Vec(1, 0)) < 1e-12);
  CHECK(mu.atoms()[0].weight == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("stand-in disk facet mass converges to pi") {
  double prev_err = 1e300;
  for (int q : {16, 32, 64, 128}) {
    auto c = circular_standin(M_PI / 4, q);
    PseudoCone K(c, {{Vec(1, 0, 0), -1.0}});
    double mass = surface_measure(K).total_mass();
    double err = std::fabs(mass - M_PI);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 2e-3);
}

TEST_CASE("restriction keeps atoms by boundary distance") {
  auto c = Cone::make2d(1.0);
  DiscreteMeasure mu(c);
  for (double delta : {0.1, 0.2, 0.5}) {
    double theta = 1.0 - delta;
    mu.add(Vec(std::cos(theta), std::sin(theta)), 1.0);
  }
  CHECK(restrict(mu, 0.0, /*closed=*/true).size() == 3);
  CHECK(restrict(mu, 0.4).size() == 1);  // only delta = 0.5 survives strictly
  CHECK(restrict(mu, 0.2).size() == 1);
  CHECK(restrict(mu, 0.2, /*closed=*/true).size() == 2);
  DiscreteMeasure single(c);
  single.add(Vec(std::cos(0.7), std::sin(0.7)), 1.0);  // delta 0.3
  CHECK(restrict(single, 0.4).empty());
}

TEST_CASE("atoms closer than the merge angle are combined") {
  auto c = Cone::make2d(1.0);
  DiscreteMeasure mu(c);
  mu.add(Vec(std::cos(0.3), std::sin(0.3)), 1.0);
  mu.add(Vec(std::cos(0.3 + 1e-12), std::sin(0.3 + 1e-12)), 2.0);
  REQUIRE(mu.size() == 1);
  CHECK(mu.atoms()[0].weight == doctest::Approx(3.0));
}

TEST_CASE("pullback of the empty measure vanishes") {
  auto c = Cone::make2d(M_PI / 4);
  CHECK(ma_pullback(PseudoCone::cone_only(c), {}) == 0.0);
}

TEST_CASE("pullback of the wedge matches the 1D cell oracle") {
  auto c = Cone::make2d(M_PI / 4);
  PseudoCone K(c, {{Vec(1, 0), -1.0}});
  double pulled = ma_pullback(K, {0});
  CHECK(pulled == doctest::Approx(2.0).epsilon(1e-14));
  // chart oracle: node 0 with value h(1,0) = -1 on (-1,1)
  ConvexPLFunction f;
  f.domain = c->projected_domain();
  f.nodes = {Vec::zero(1)};
  f.values = {-1.0};
  auto cell = cell_oracle(f, 0);
  CHECK(cell.volume == doctest::Approx(pulled).epsilon(1e-14));
}

TEST_CASE("pullback equals chart cell volumes on random 3D pseudo cones") {
  Rng rng(2024);
  for (int rep = 0; rep < 8; ++rep) {
    auto cone = hex_cone(rng);
    PseudoCone K = random_pseudocone3(cone, rng, 4);
    auto mu = surface_measure(K);
    if (mu.empty()) continue;
    ConvexPLFunction f;
    f.domain = cone->projected_domain();
    for (const auto& a : mu.atoms()) {
      Vec x = cone->chart_inverse(a.dir.v);
      f.nodes.push_back(x);
      f.values.push_back(K.support(a.dir.v) / a.dir.v.x());
    }
    for (size_t i = 0; i < mu.size(); ++i) {
      double cell = cell_oracle(f, static_cast<int>(i)).volume;
      double pulled = ma_pullback(mu, {i});
      CHECK(std::fabs(cell - pulled) <= 1e-8 * std::max(1.0, pulled));
    }
  }
}

TEST_CASE("surface measure scales with degree n-1") {
  Rng rng(77);
  auto c2 = Cone::make2d(1.1);
  PseudoCone K2(c2, {{Vec(std::cos(0.2), std::sin(0.2)), -0.7},
                     {Vec(std::cos(-0.5), std::sin(-0.5)), -1.1}});
  auto m1 = surface_measure(K2), m2 = surface_measure(K2.scaled(3.0));
  REQUIRE(m1.size() == m2.size());
  for (size_t i = 0; i < m1.size(); ++i)
    CHECK(m2.atoms()[i].weight ==
          doctest::Approx(3.0 * m1.atoms()[i].weight).epsilon(1e-12));

  auto cone = hex_cone(rng);
  PseudoCone K3 = random_pseudocone3(cone, rng, 3);
  auto s1 = surface_measure(K3), s2 = surface_measure(K3.scaled(2.0));
  REQUIRE(s1.size() == s2.size());
  for (size_t i = 0; i < s1.size(); ++i)
    CHECK(s2.atoms()[i].weight ==
          doctest::Approx(4.0 * s1.atoms()[i].weight).epsilon(1e-10));
}

TEST_CASE("sums are superadditive for the surface measure") {
  Rng rng(501);
  // equality in 2D
  auto c2 = Cone::make2d(1.0);
  PseudoCone A(c2, {{Vec(std::cos(0.3), std::sin(0.3)), -1.0}});
  PseudoCone B(c2, {{Vec(std::cos(-0.2), std::sin(-0.2)), -0.5}});
  auto sum2 = surface_measure(minkowski_sum(A, B));
  auto merged = surface_measure(A) + surface_measure(B);
  REQUIRE(sum2.size() == merged.size());
  for (const auto& a : merged.atoms()) {
    double w = 0.0;
    for (const auto& b : sum2.atoms())
      if (angle_between(a.dir.v, b.dir.v) < 1e-10) w += b.weight;
    CHECK(w == doctest::Approx(a.weight).epsilon(1e-12));
  }

  // >= atomwise in 3D
  for (int rep = 0; rep < 5; ++rep) {
    auto cone = hex_cone(rng);
    PseudoCone K = random_pseudocone3(cone, rng, 3);
    PseudoCone L = random_pseudocone3(cone, rng, 3);
    auto sk = surface_measure(K), sl = surface_measure(L);
    auto skl = surface_measure(minkowski_sum(K, L));
    auto both = sk + sl;
    for (const auto& a : both.atoms()) {
      double in_sum = 0.0;
      for (const auto& b : skl.atoms())
        if (angle_between(a.dir.v, b.dir.v) < 1e-8) in_sum += b.weight;
      CHECK(in_sum >= a.weight - 1e-9 * std::max(1.0, a.weight));
    }
  }
}

TEST_CASE("restricted measures keep finite mass") {
  Rng rng(11);
  auto cone = hex_cone(rng);
  PseudoCone K = random_pseudocone3(cone, rng, 5);
  auto mu = surface_measure(K);
  for (double alpha : {0.01, 0.1, 0.3})
    CHECK(std::isfinite(restrict(mu, alpha).total_mass()));
}
