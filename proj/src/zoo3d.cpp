#include "conemink/zoo3d.hpp"

#include <algorithm>
#include <cmath>

namespace conemink {

namespace {

constexpr double kBeta = M_PI / 4;  // domain half-angle of the circular cone

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= kBeta + 1e-15))
    throw std::invalid_argument("alpha must lie in (0, pi/4]");
}

}  // namespace

ConePtr circular_standin(double beta, int q) {
  return Cone::polyhedral_standin(beta, q);
}

double a_set_mass(double alpha, double t) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw std::invalid_argument("apex scale must be positive");
  double g = kBeta - alpha;  // = pi/4 - alpha
  double denom = 1.0 - std::tan(g);
  return t * t * M_PI / (denom * denom * std::cos(g));
}

double facet_ellipse_area(double tilt) {
  if (!(tilt > 0.0 && tilt <= kBeta + 1e-15))
    throw std::invalid_argument("tilt must lie in (0, pi/4]");
  double m = std::tan(kBeta - tilt);
  double d = 1.0 - m * m;
  return M_PI * std::sqrt(1.0 + m * m) / (d * std::sqrt(d));
}

double q_lateral_area(double alpha, double t1, double t2, double t3) {
  check_alpha(alpha);
  if (!(0.0 < t1 && t1 < t2 && t2 < t3))
    throw std::invalid_argument("require 0 < t1 < t2 < t3");
  double psi = kBeta + alpha;  // lateral cone half-angle
  double xi_max = (t2 - t1) / (std::tan(psi) - 1.0);
  double xi1 = t3 - t2;
  if (xi1 >= xi_max) return 0.0;  // truncation removes the whole lateral face
  double s = std::sin(psi), c = std::cos(psi);
  return M_PI * s / (c * c) * (xi_max * xi_max - xi1 * xi1);
}

double q_gamma_lateral(double alpha, double t1, double t2, double t3, double m) {
  if (!(m > -1.0)) throw std::invalid_argument("m must exceed -1");
  return q_lateral_area(alpha, t1, t2, t3) * std::pow(alpha, m + 1.0) / (m + 1.0);
}

std::vector<Cut> a_set_cuts(double alpha, const Vec& x, int q) {
  check_alpha(alpha);
  std::vector<Cut> cuts;
  cuts.reserve(static_cast<size_t>(q));
  double ang = kBeta - alpha;  // polar angle of the normal circle about e1
  for (int i = 0; i < q; ++i) {
    double phi = 2 * M_PI * i / q;
    Vec v(std::cos(ang), std::sin(ang) * std::cos(phi), std::sin(ang) * std::sin(phi));
    cuts.push_back({v, dot(x, v)});
  }
  return cuts;
}

ASet make_aset(double alpha, double t, int q) {
  ConePtr standin = circular_standin(kBeta, q);
  Vec apex(-t, 0.0, 0.0);  // t * u_*
  ASet a{alpha, t, q, PseudoCone(standin, a_set_cuts(alpha, apex, q))};
  a.analytic_mass = a_set_mass(alpha, t);
  a.realized_mass = surface_measure(a.realized).total_mass();
  return a;
}

QSet make_qset(double alpha, double t1, double t2, double t3, int q) {
  if (!(0.0 < t1 && t1 < t2 && t2 < t3))
    throw std::invalid_argument("require 0 < t1 < t2 < t3");
  ConePtr standin = circular_standin(kBeta, q);
  Vec apex(-t2, 0.0, 0.0);
  std::vector<Cut> cuts = a_set_cuts(alpha, apex, q);
  // shifted cone (C + t1 u_*): one boundary cut per stand-in facet normal
  for (const auto& g : standin->dual_normals()) cuts.push_back({g, -t1 * g.x()});
  QSet out{alpha, t1, t2, t3, q, PseudoCone(standin, std::move(cuts))};
  out.height_mark = t3;
  out.lateral_area = q_lateral_area(alpha, t1, t2, t3);
  double psi = kBeta + alpha;
  double r_outer = t3 - t1;                       // shifted cone radius at t3
  double r_inner = (t3 - t2) * std::tan(psi);     // lateral cone radius at t3
  out.apex_facet_area =
      r_inner < r_outer ? M_PI * (r_outer * r_outer - r_inner * r_inner) : 0.0;
  return out;
}

LayeredResult layered_set(int depth, double m, std::vector<double> alphas, int q) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (!(m < 1.0)) throw std::invalid_argument("the layer certificates require m < 1");
  LayeredResult out{m, depth, {}, PseudoCone::cone_only(circular_standin(kBeta, q)),
                    0.0, 0.0, {}, true, {}};
  bool auto_select = alphas.empty();
  if (!auto_select && static_cast<int>(alphas.size()) != depth + 1)
    throw std::invalid_argument("need one alpha per layer (depth + 1)");

  std::vector<LayeredLayer> layers;
  double r_prev = 2.0;  // the first layer is certified against height 2
  for (int i = 0; i <= depth; ++i) {
    LayeredLayer L;
    L.i = i;
    L.apex = std::pow(0.5, i);
    double t1 = 0.5 * L.apex, t2 = L.apex, t3 = r_prev;
    double cap = std::min(0.2, i > 0 ? std::min(0.9 * layers.back().alpha,
                                                0.999 / static_cast<double>(i))
                                     : 0.2);
    if (auto_select) {
      // bracket by decay, then bisect toward a certificate near the target
      double a = cap;
      while (a > 1e-14 && q_gamma_lateral(a, t1, t2, t3, m) < 1.02) a *= 0.7;
      if (a > 1e-14 && a < cap) {
        double lo = a, hi = std::min(a / 0.7, cap);
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          if (q_gamma_lateral(mid, t1, t2, t3, m) >= 1.05)
            lo = mid;
          else
            hi = mid;
        }
        if (q_gamma_lateral(lo, t1, t2, t3, m) >= 1.0) a = lo;
      }
      L.alpha = a;
      L.q_gamma = q_gamma_lateral(a, t1, t2, t3, m);
      L.certified = a > 1e-14 && L.q_gamma >= 1.0;
    } else {
      L.alpha = alphas[static_cast<size_t>(i)];
      check_alpha(L.alpha);
      L.q_gamma = q_gamma_lateral(L.alpha, t1, t2, t3, m);
      L.certified = L.q_gamma >= 1.0;
    }
    double psi = kBeta + L.alpha;
    L.r = L.apex * std::tan(psi) / (std::tan(psi) - 1.0);
    r_prev = std::max(L.r, r_prev);
    layers.push_back(L);
  }

  // exact layer masses from the meridian envelope of the lateral cones
  auto crossing = [&](int i, int j) {
    double ti = std::tan(kBeta + layers[static_cast<size_t>(i)].alpha);
    double tj = std::tan(kBeta + layers[static_cast<size_t>(j)].alpha);
    return (layers[static_cast<size_t>(i)].apex * ti -
            layers[static_cast<size_t>(j)].apex * tj) /
           (ti - tj);
  };
  std::vector<double> starts(layers.size()), ends(layers.size());
  starts[0] = layers[0].apex;
  for (size_t i = 0; i + 1 < layers.size(); ++i) {
    double c = crossing(static_cast<int>(i), static_cast<int>(i + 1));
    ends[i] = c;
    starts[i + 1] = c;
    if (c <= starts[i]) out.crossing_order_ok = false;
  }
  {
    size_t last = layers.size() - 1;
    double psi = kBeta + layers[last].alpha;
    ends[last] = layers[last].apex * std::tan(psi) / (std::tan(psi) - 1.0);
    if (ends[last] <= starts[last]) out.crossing_order_ok = false;
  }
  std::vector<std::pair<double, double>> profile_pairs;
  for (size_t i = 0; i < layers.size(); ++i) {
    double psi = kBeta + layers[i].alpha;
    double xa = std::max(0.0, starts[i] - layers[i].apex);
    double xb = std::max(xa, ends[i] - layers[i].apex);
    layers[i].layer_mass =
        M_PI * std::sin(psi) / (std::cos(psi) * std::cos(psi)) * (xb * xb - xa * xa);
    if (layers[i].layer_mass > 0.0)
      profile_pairs.push_back({layers[i].alpha, layers[i].layer_mass});
  }
  out.layers = layers;
  if (!profile_pairs.empty()) out.profile = LayerProfile::from_pairs(profile_pairs);
  out.gamma_total = gamma_functional(out.profile, m);
  double cumulative = 0.0;
  for (const auto& L : out.layers) {
    cumulative += L.layer_mass;
    out.sup_alpha2_mass = std::max(out.sup_alpha2_mass, L.alpha * L.alpha * cumulative);
  }

  // polygonal realization: one ring of cuts per layer
  std::vector<Cut> cuts;
  for (const auto& L : out.layers) {
    Vec apex(-L.apex, 0.0, 0.0);
    for (const auto& c : a_set_cuts(L.alpha, apex, q)) cuts.push_back(c);
  }
  ConePtr standin = circular_standin(kBeta, q);
  out.realized = PseudoCone(standin, std::move(cuts));

  // boundary support samples (all cut normals are interior, so the values
  // vanish identically; they sit inside [-2^{-depth}, 0])
  int samples = 16;
  for (int s = 0; s < samples; ++s) {
    const auto& gs = standin->dual_normals();
    out.boundary_support.push_back(
        out.realized.support(gs[static_cast<size_t>(s) * gs.size() / samples]));
  }
  return out;
}

DivergentResult divergent_measure(int depth, double m, double eps0) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (!(m > 1.5)) throw std::invalid_argument("requires m > 3/2");
  if (eps0 < 0.0) eps0 = (m - 1.5) / 2.0;
  if (!(m - 1.0 - eps0 > 0.5))
    throw std::invalid_argument("eps0 too large: need m - 1 - eps0 > 1/2");
  double m_eff = m - 1.0 - eps0;
  ConePtr cone = Cone::circular3d(kBeta);
  DivergentResult out{m, eps0, m_eff, DiscreteMeasure(cone), {}, 0.0, {}};


  auto gamma_of = [&](int i, double t) {
    return static_cast<double>(i) * facet_ellipse_area(t) *
           std::pow(t, m_eff + 1.0) / (m_eff + 1.0);
  };
  double t_prev = 0.25;
  for (int i = 1; i <= depth; ++i) {
    double budget = std::pow(0.5, i);
    double hi = std::min(0.2, 0.9 * t_prev);
    while (hi > 1e-300 && gamma_of(i, hi) > 0.5 * budget) hi *= 0.5;
    if (!(hi > 1e-300)) throw std::runtime_error("tilt selection failed");
    // refine toward half budget on the increasing branch
    double lo = hi, up = std::min(2.0 * hi, 0.9 * t_prev);
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + up);
      if (gamma_of(i, mid) <= 0.5 * budget)
        lo = mid;
      else
        up = mid;
    }
    double t = lo;
    DivergentTerm term;
    term.i = i;
    term.tilt = t;
    term.area = facet_ellipse_area(t);
    term.gamma = gamma_of(i, t);
    term.budget = budget;
    term.certified = term.gamma < budget;
    if (!term.certified) throw std::runtime_error("tilt selection failed");
    out.gamma_total += term.gamma;
    double ang = kBeta - t;
    out.mu.add(Vec(std::cos(ang), std::sin(ang), 0.0),
               static_cast<double>(i) * term.area);
    out.terms.push_back(term);
    out.excluded_radius.push_back(std::sqrt(static_cast<double>(i)));
    t_prev = t;
  }
  return out;
}

}  // namespace conemink
