#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conemink/io.hpp"
#include "conemink/zoo3d.hpp"

namespace py = pybind11;
using namespace conemink;

namespace {

Vec to_vec(const std::vector<double>& v) {
  if (v.size() < 1 || v.size() > 3) throw std::invalid_argument("vector length 1..3");
  Vec out = Vec::zero(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

std::vector<double> from_vec(const Vec& v) {
  std::vector<double> out(static_cast<size_t>(v.dim));
  for (int i = 0; i < v.dim; ++i) out[static_cast<size_t>(i)] = v[i];
  return out;
}

std::shared_ptr<Cone> unconst(ConePtr p) {
  // Cone is immutable after construction; pybind11 holders are non-const
  return std::const_pointer_cast<Cone>(p);
}

}  // namespace

PYBIND11_MODULE(_conemink, m) {
  m.doc() = "Minkowski problems for unbounded convex sets with a prescribed "
            "asymptotic cone";

  py::class_<Cone, std::shared_ptr<Cone>>(m, "Cone")
      .def_static("make2d", [](double b) { return unconst(Cone::make2d(b)); },
                  py::arg("beta0"))
      .def_static("circular3d", [](double b) { return unconst(Cone::circular3d(b)); },
                  py::arg("beta"))
      .def_static("from_rays",
                  [](const std::vector<std::vector<double>>& rays) {
                    std::vector<Vec> vs;
                    for (const auto& r : rays) vs.push_back(to_vec(r));
                    return unconst(Cone::from_rays(vs));
                  })
      .def_property_readonly("dim", &Cone::dim)
      .def_property_readonly("beta0", &Cone::beta0)
      .def("delta_boundary",
           [](const Cone& c, const std::vector<double>& v) {
             return c.delta_boundary(to_vec(v));
           })
      .def("chart",
           [](const Cone& c, const std::vector<double>& x) {
             return from_vec(c.chart(to_vec(x)));
           })
      .def("chart_inverse",
           [](const Cone& c, const std::vector<double>& v) {
             return from_vec(c.chart_inverse(to_vec(v)));
           })
      .def("dual", [](const Cone& c) { return unconst(c.dual()); });

  py::class_<PseudoCone>(m, "PseudoCone")
      .def(py::init([](std::shared_ptr<Cone> cone,
                       const std::vector<std::pair<std::vector<double>, double>>& cuts) {
             std::vector<Cut> cs;
             for (const auto& [v, h] : cuts) cs.push_back({to_vec(v), h});
             return PseudoCone(std::move(cone), std::move(cs));
           }),
           py::arg("cone"), py::arg("cuts"))
      .def("support",
           [](const PseudoCone& k, const std::vector<double>& v) {
             return k.support(to_vec(v));
           })
      .def("is_asymptotic",
           [](const PseudoCone& k, double tol) { return k.is_asymptotic(tol).asymptotic; },
           py::arg("tol") = 1e-9)
      .def("dist_origin", &PseudoCone::dist_origin)
      .def("cuts",
           [](const PseudoCone& k) {
             std::vector<std::pair<std::vector<double>, double>> out;
             for (const auto& c : k.cuts()) out.push_back({from_vec(c.v), c.h});
             return out;
           })
      .def("to_json", [](const PseudoCone& k) { return pseudocone_to_json(k).dump(2); });

  m.def("pseudocone_from_json",
        [](const std::string& text) { return pseudocone_from_json(Json::parse(text)); });

  m.def("solve2d",
        [](double beta0, const std::vector<std::pair<double, double>>& atoms) {
          std::vector<AngularAtom> as;
          for (auto [t, w] : atoms) as.push_back({t, w});
          return solve2d(AngularMeasure(beta0, std::move(as)));
        },
        py::arg("beta0"), py::arg("atoms"),
        "exact 2D solution of the prescribed-measure problem");

  m.def("surface_measure_atoms",
        [](const PseudoCone& k) {
          std::vector<std::pair<std::vector<double>, double>> out;
          for (const auto& a : surface_measure(k).atoms())
            out.push_back({from_vec(a.dir.v), a.weight});
          return out;
        },
        "atoms (direction, weight) of the surface area measure");

  m.def("solve",
        [](std::shared_ptr<Cone> cone,
           const std::vector<std::pair<std::vector<double>, double>>& atoms) {
          DiscreteMeasure mu(std::move(cone));
          for (const auto& [v, w] : atoms) mu.add(to_vec(v), w);
          return solve_minkowski(mu);
        },
        py::arg("cone"), py::arg("atoms"),
        "chart solver for a finite atomic measure");

  m.def("blaschke_sum",
        [](const PseudoCone& k, const PseudoCone& l) { return blaschke_sum(k, l); });

  m.def("j_functional",
        [](const std::vector<std::pair<double, double>>& dw, double mm) {
          return j_functional(LayerProfile::from_pairs(dw), mm);
        },
        py::arg("delta_weight"), py::arg("m"));
  m.def("gamma_functional",
        [](const std::vector<std::pair<double, double>>& dw, double mm) {
          return gamma_functional(LayerProfile::from_pairs(dw), mm);
        },
        py::arg("delta_weight"), py::arg("m"));

  m.def("a_set_mass", &a_set_mass, py::arg("alpha"), py::arg("t"));
  m.def("facet_ellipse_area", &facet_ellipse_area, py::arg("tilt"));
}
