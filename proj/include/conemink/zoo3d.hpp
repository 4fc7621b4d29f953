#pragma once

#include <vector>

#include "conemink/functionals.hpp"
#include "conemink/measure.hpp"

namespace conemink {

/// Polyhedral stand-in for the circular cone: q generator rays on the
/// boundary circle (inscribed).
ConePtr circular_standin(double beta, int q);

/// Exact lateral area of the blunted set A(alpha, t u_*) inside the interior
/// of the circular cone with domain half-angle pi/4: the surface measure
/// concentrates on the normal circle {delta = alpha} with this total mass.
double a_set_mass(double alpha, double t);

/// Exact area of the single tilted facet C ∩ {plane through u_* with normal
/// at boundary distance `tilt`} of the circular cone.
double facet_ellipse_area(double tilt);

/// Exact lateral area of the truncated blunted set
/// (C + t1 u_*) ∩ A(alpha, t2 u_*) ∩ {<x,u_*> >= t3}.
double q_lateral_area(double alpha, double t1, double t2, double t3);

/// Gamma_m of the lateral part (normals on {delta = alpha}).
double q_gamma_lateral(double alpha, double t1, double t2, double t3, double m);

/// Ring of q cuts with normals on {delta = alpha} passing through x.
std::vector<Cut> a_set_cuts(double alpha, const Vec& x, int q);

// Polygonal realizations track the closed forms at second order in q, valid
// while alpha stays well above the stand-in facet sag (pi/q)^2/2; reports
// label them approximations.
struct ASet {
  double alpha = 0.0;
  double t = 1.0;  // apex scale: x = t u_*
  int q = 256;
  PseudoCone realized;
  double analytic_mass = 0.0;  // exact lateral area
  double realized_mass = 0.0;  // polygonal approximation (labelled such)
};
ASet make_aset(double alpha, double t, int q = 256);

struct QSet {
  double alpha = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
  int q = 256;
  PseudoCone realized;       // (C + t1 u_*) ∩ A(alpha, t2 u_*), polyhedral
  double height_mark = 0.0;  // the H^+(t3) truncation kept as metadata
  double lateral_area = 0.0;       // exact
  double apex_facet_area = 0.0;    // exact annulus on the truncation plane
};
QSet make_qset(double alpha, double t1, double t2, double t3, int q = 256);

struct LayeredLayer {
  int i = 0;
  double alpha = 0.0;
  double apex = 1.0;        // 2^{-i}
  double r = 0.0;           // computed touching-set height bound
  double q_gamma = 0.0;     // certified per-layer lower bound
  double layer_mass = 0.0;  // exact lateral area of the layer on the set
  bool certified = false;
};

struct LayeredResult {
  double m = 0.5;
  int depth = 0;
  std::vector<LayeredLayer> layers;
  PseudoCone realized;
  double gamma_total = 0.0;    // exact, away from the apex direction
  double sup_alpha2_mass = 0.0;  // sup over alpha of alpha^2 S(omega_alpha)
  std::vector<double> boundary_support;  // at sampled boundary directions
  bool crossing_order_ok = true;
  LayerProfile profile;  // exact layer masses as a step profile
};

/// Finite-depth nested intersection of blunted sets with apexes 2^{-i} u_*;
/// alphas are auto-selected so every layer's Gamma_m certificate is >= 1
/// unless supplied.
LayeredResult layered_set(int depth, double m, std::vector<double> alphas = {},
                          int q = 64);

struct DivergentTerm {
  int i = 0;
  double tilt = 0.0;
  double area = 0.0;    // exact single-facet area
  double gamma = 0.0;   // Gamma_{m-1-eps0} of the scaled term
  double budget = 0.0;  // 2^{-i}
  bool certified = false;
};

struct DivergentResult {
  double m = 2.0, eps0 = 0.25, m_eff = 0.75;
  DiscreteMeasure mu;
  std::vector<DivergentTerm> terms;
  double gamma_total = 0.0;
  std::vector<double> excluded_radius;  // sqrt(i): obstruction witness
};

/// Scaled sum of single-facet surface measures with certified per-term
/// Gamma budgets; no asymptotic set can realize it (the obstruction radius
/// grows like sqrt(i)). Requires m > 3/2.
DivergentResult divergent_measure(int depth, double m, double eps0 = -1.0);

}  // namespace conemink
