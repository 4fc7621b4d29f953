#include <doctest.h>

#include <cmath>

#include "conemink/io.hpp"

using namespace conemink;

TEST_CASE("cone JSON roundtrips") {
  auto c2 = Cone::make2d(1.1);
  auto back2 = cone_from_json(cone_to_json(*c2));
  CHECK(back2->beta0() == doctest::Approx(c2->beta0()).epsilon(1e-14));

  auto c3 = Cone::circular3d(M_PI / 4);
  auto back3 = cone_from_json(cone_to_json(*c3));
  CHECK(back3->kind() == ConeKind::circular3d);
  CHECK(back3->circular_beta() == doctest::Approx(M_PI / 4));

  std::vector<Vec> rays = {normalized(Vec(-1, .5, .4)), normalized(Vec(-1, -.6, .3)),
                           normalized(Vec(-1, 0, -.7))};
  auto cp = Cone::from_rays(rays);
  auto backp = cone_from_json(cone_to_json(*cp));
  REQUIRE(backp->rays().size() == cp->rays().size());
  for (size_t i = 0; i < cp->rays().size(); ++i)
    CHECK(dist(backp->rays()[i], cp->rays()[i]) < 1e-12);
}

TEST_CASE("pseudo cone and measure JSON roundtrips") {
  auto c = Cone::make2d(M_PI / 4);
  PseudoCone K(c, {{Vec(1, 0), -1.0}, {Vec(std::cos(0.4), std::sin(0.4)), -0.5}});
  PseudoCone back = pseudocone_from_json(pseudocone_to_json(K));
  REQUIRE(back.cuts().size() == K.cuts().size());
  for (size_t i = 0; i < K.cuts().size(); ++i)
    CHECK(back.cuts()[i].h == doctest::Approx(K.cuts()[i].h).epsilon(1e-15));

  auto mu = surface_measure(K);
  auto mu2 = measure_from_json(measure_to_json(mu));
  REQUIRE(mu2.size() == mu.size());
  for (size_t i = 0; i < mu.size(); ++i)
    CHECK(mu2.atoms()[i].weight == doctest::Approx(mu.atoms()[i].weight).epsilon(1e-15));
}

TEST_CASE("angular measure and family JSON roundtrips") {
  AngularMeasure am(1.2, {{-0.4, 1.0}, {0.3, 2.5}});
  AngularMeasure back = angular_from_json(angular_to_json(am));
  REQUIRE(back.atoms.size() == 2);
  CHECK(back.beta0 == doctest::Approx(1.2));
  CHECK(back.atoms[1].weight == doctest::Approx(2.5));

  TailFamily fam;
  fam.beta0 = M_PI / 4;
  fam.theta = Expr::parse("beta0 - a*k^-p");
  fam.w = Expr::parse("c*k^q");
  fam.params = {{"a", 1.0}, {"p", 2.0}, {"c", 0.5}, {"q", 0.0}};
  TailFamily fback = family_from_json(family_to_json(fam));
  AngularAtom x1 = fam.atom(3), x2 = fback.atom(3);
  CHECK(x1.theta == doctest::Approx(x2.theta).epsilon(1e-15));
  CHECK(x1.weight == doctest::Approx(x2.weight).epsilon(1e-15));
}

TEST_CASE("serialization is deterministic") {
  auto c = Cone::make2d(0.9);
  PseudoCone K(c, {{Vec(std::cos(0.2), std::sin(0.2)), -0.77}});
  // repeated dumps of the same object are byte-identical
  CHECK(pseudocone_to_json(K).dump(2) == pseudocone_to_json(K).dump(2));
  CHECK(config_hash(pseudocone_to_json(K)) == config_hash(pseudocone_to_json(K)));
  // a parse-serialize cycle preserves the values
  PseudoCone back = pseudocone_from_json(pseudocone_to_json(K));
  CHECK(pseudocone_to_json(back).dump(2) == pseudocone_to_json(back).dump(2));
  CHECK(back.cuts()[0].h == doctest::Approx(K.cuts()[0].h).epsilon(1e-15));
}

TEST_CASE("csv and geometry exports") {
  auto c = Cone::make2d(M_PI / 4);
  PseudoCone K(c, {{Vec(1, 0), -1.0}});
  std::string csv = measure_csv(surface_measure(K));
  CHECK(csv.rfind("delta,weight\n", 0) == 0);
  CHECK(csv.find("\n") != std::string::npos);

  std::vector<Vec> rays = {normalized(Vec(-1, .5, .5)), normalized(Vec(-1, -.5, .5)),
                           normalized(Vec(-1, -.5, -.5)), normalized(Vec(-1, .5, -.5))};
  auto c3 = Cone::from_rays(rays);
  PseudoCone K3(c3, {{Vec(1, 0, 0), -1.0}});
  Slice s = K3.slice(3.0);
  Json g = slice_geometry_json(s);
  CHECK(g["vertices"].size() == s.vertices.size());
  CHECK(g["facets"].size() == s.facets.size());
  std::string obj = slice_obj(s);
  CHECK(obj.find("v ") != std::string::npos);
  CHECK(obj.find("f ") != std::string::npos);
}

TEST_CASE("malformed JSON reports the location") {
  write_text_file("bad_test_input.json", "{\"a\": [1, 2,,]}");
  try {
    load_json_file("bad_test_input.json");
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}
