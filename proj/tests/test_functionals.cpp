#include <doctest.h>

#include <cmath>
#include <functional>

#include "conemink/functionals.hpp"
#include "conemink/mink2d.hpp"

using namespace conemink;

namespace {

// adaptive Simpson quadrature, test-side oracle for the exact layer sums
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double quad(const std::function<double(double)>& f, double a, double b) {
  double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(m), f(b), 1e-13, 40);
}

// integrate a step profile carefully: split at the breakpoints
double quad_profile(const LayerProfile& p, const std::function<double(double, double)>& g) {
  double total = 0.0;
  std::vector<double> cuts = p.deltas;
  cuts.push_back(0.0);
  for (size_t k = 0; k < p.deltas.size(); ++k) {
    double hi = p.deltas[k], lo = cuts[k + 1];
    double mass = p.cum[k];
    total += quad([&](double a) { return g(a, mass); }, lo, hi);
  }
  return total;
}

LayerProfile inverse_family_stage(long depth) {
  // atoms at delta = 1/k with unit weight: mass above alpha ~ 1/alpha
  std::vector<std::pair<double, double>> dw;
  for (long k = 1; k <= depth; ++k) dw.push_back({1.0 / static_cast<double>(k), 1.0});
  return LayerProfile::from_pairs(std::move(dw));
}

FunctionalFamily inverse_family() {
  FunctionalFamily fam;
  for (long d : {16L, 32L, 64L, 128L, 256L, 512L}) {
    fam.depths.push_back(d);
    fam.stages.push_back(inverse_family_stage(d));
  }
  return fam;
}

}  // namespace

TEST_CASE("single-atom J and Gamma") {
  LayerProfile p = LayerProfile::from_pairs({{0.4, 1.7}});
  for (double m : {0.5, 1.0, 2.0})
    CHECK(j_functional(p, m) == doctest::Approx(0.4 * std::pow(1.7, 1.0 / m)).epsilon(1e-14));
  for (double m : {-0.5, 0.0, 1.0, 2.5})
    CHECK(gamma_functional(p, m) ==
          doctest::Approx(1.7 * std::pow(0.4, m + 1.0) / (m + 1.0)).epsilon(1e-14));
}

TEST_CASE("two-layer J at m = 1") {
  LayerProfile p = LayerProfile::from_pairs({{0.2, 1.0}, {0.4, 3.0}});
  CHECK(j_functional(p, 1.0) == doctest::Approx(1.4).epsilon(1e-14));
}

TEST_CASE("empty measures evaluate to zero") {
  LayerProfile p;
  CHECK(j_functional(p, 1.0) == 0.0);
  CHECK(gamma_functional(p, 0.5) == 0.0);
}

TEST_CASE("exact layer sums match adaptive quadrature") {
  Rng rng(44);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<std::pair<double, double>> dw;
    int n = rng.uniform_int(1, 12);
    for (int i = 0; i < n; ++i)
      dw.push_back({rng.uniform(0.01, 1.4), rng.uniform(0.1, 3.0)});
    LayerProfile p = LayerProfile::from_pairs(dw);
    for (double m : {0.7, 1.0, 2.0}) {
      double exact = j_functional(p, m);
      double numeric = quad_profile(
          p, [&](double, double mass) { return std::pow(mass, 1.0 / m); });
      CHECK(std::fabs(exact - numeric) < 1e-10 * std::max(1.0, exact));
    }
    for (double m : {0.5, 1.0, 1.5}) {
      double exact = gamma_functional(p, m);
      double numeric =
          quad_profile(p, [&](double a, double mass) { return mass * std::pow(a, m); });
      CHECK(std::fabs(exact - numeric) < 1e-10 * std::max(1.0, exact));
    }
  }
}

TEST_CASE("Gamma is linear and J positively homogeneous of degree 1/m") {
  Rng rng(9);
  auto cone = Cone::make2d(1.2);
  DiscreteMeasure a(cone), b(cone);
  for (int i = 0; i < 6; ++i) {
    double th = rng.uniform(-1.1, 1.1);
    a.add(Vec(std::cos(th), std::sin(th)), rng.uniform(0.2, 2.0));
    th = rng.uniform(-1.1, 1.1);
    b.add(Vec(std::cos(th), std::sin(th)), rng.uniform(0.2, 2.0));
  }
  for (double m : {-0.5, 0.3, 1.0}) {
    double lhs = gamma_functional(a + b, m);
    double rhs = gamma_functional(a, m) + gamma_functional(b, m);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  for (double m : {0.5, 1.0, 3.0}) {
    double lam = 2.7;
    CHECK(j_functional(a.scaled(lam), m) ==
          doctest::Approx(std::pow(lam, 1.0 / m) * j_functional(a, m)).epsilon(1e-12));
  }
}

TEST_CASE("smaller m is the more restrictive condition") {
  FunctionalFamily fam = inverse_family();
  TrendReport j1 = j_trend(fam, 1.0);
  TrendReport j2 = j_trend(fam, 2.0);
  CHECK(j1.verdict == "diverging");  // harmonic growth
  CHECK(j2.verdict == "bounded");
  // never: finite at small m but divergent at larger m
  for (auto [m1, m2] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 2.0}}) {
    TrendReport a = j_trend(fam, m1), b = j_trend(fam, m2);
    bool inverted = a.verdict == "bounded" && b.verdict == "diverging";
    CHECK_FALSE(inverted);
  }
}

TEST_CASE("growth profile of the single-atom wedge") {
  AngularMeasure mu(M_PI / 4, {{0.0, 2.0}});
  PseudoCone K = solve2d(mu);
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(M_PI / 4 * i / 21.0);
  SchneiderReport rep = schneider_bound(K, grid);
  // alpha * mass = 2 alpha below the atom's boundary distance
  CHECK(rep.sup == doctest::Approx(2.0 * M_PI / 4).epsilon(1e-13));
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(rep.values[i] == doctest::Approx(grid[i] < M_PI / 4 ? 2.0 * grid[i] : 0.0));
  CHECK(rep.j_finite);
}

TEST_CASE("growth profile of the cone vanishes") {
  auto c = Cone::make2d(1.0);
  SchneiderReport rep = schneider_bound(PseudoCone::cone_only(c), {0.1, 0.5});
  CHECK(rep.sup == 0.0);
  CHECK(rep.values[0] == 0.0);
}

TEST_CASE("conversion implications on the inverse family") {
  FunctionalFamily fam = inverse_family();
  ConvertReport rep = convert(fam, 1.0, 1.0);
  CHECK(rep.j_m.verdict == "diverging");          // harmonic
  CHECK(rep.gamma_shifted.verdict == "bounded");  // the extra alpha tames it
  CHECK(rep.forward_holds);   // hypothesis fails, implication vacuous
  CHECK(rep.backward_holds);
  CHECK(rep.witness_c0 > 0.0);
}

TEST_CASE("conversion implications are non-vacuous on finite measures") {
  FunctionalFamily fam;
  for (long d : {1L, 2L, 4L}) {
    fam.depths.push_back(d);
    fam.stages.push_back(LayerProfile::from_pairs({{0.3, 1.0}, {0.5, 0.5}}));
  }
  ConvertReport rep = convert(fam, 1.0, 0.5);
  CHECK(rep.j_m.verdict == "bounded");
  CHECK(rep.gamma_shifted.verdict == "bounded");
  CHECK(rep.forward_holds);
  CHECK(rep.backward_holds);
}
