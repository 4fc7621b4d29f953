#include "conemink/ma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conemink/mink2d.hpp"

namespace conemink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CellConstraint {
  Vec a;      // <p, a> <= b
  double b;
};

std::vector<CellConstraint> cell_constraints(const ConvexPLFunction& f, int i,
                                             double ui_override) {
  std::vector<CellConstraint> cons;
  const Vec& xi = f.nodes[static_cast<size_t>(i)];
  double ui = ui_override;
  cons.reserve(f.nodes.size() + 8);
  for (size_t j = 0; j < f.nodes.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    cons.push_back({f.nodes[j] - xi, f.values[j] - ui});
  }
  for (const auto& b : f.domain.boundary_vertices()) cons.push_back({b - xi, -ui});
  return cons;
}

SubdifferentialCell cell_at(const ConvexPLFunction& f, int i, double ui) {
  SubdifferentialCell cell;
  cell.node = i;
  const Vec& xi = f.nodes[static_cast<size_t>(i)];
  auto cons = cell_constraints(f, i, ui);
  if (f.domain.dim == 1) {
    double lo = -kInf, hi = kInf;
    for (const auto& c : cons) {
      double a = c.a[0];
      if (std::fabs(a) < 1e-15) continue;
      double bound = c.b / a;
      if (a > 0.0)
        hi = std::min(hi, bound);
      else
        lo = std::max(lo, bound);
    }
    cell.lo = lo;
    cell.hi = hi;
    cell.volume = std::max(0.0, hi - lo);
    cell.active = hi >= lo - 1e-14;
    return cell;
  }
  double inner = f.domain.boundary_distance(xi);
  double radius = std::fabs(ui) / std::max(inner, 1e-12) + 1.0;
  Polygon2 poly = box_polygon(radius);
  for (const auto& c : cons) {
    if (poly.empty()) break;
    poly = clip_halfplane(poly, {c.a[0], c.a[1]}, c.b);
  }
  cell.poly = poly;
  cell.volume = polygon_area(poly);
  cell.active = !poly.empty();
  return cell;
}

// N x N dense linear solve for the opt-in Newton mode.
bool dense_solve(std::vector<std::vector<double>> A, std::vector<double> b,
                 std::vector<double>& x) {
  size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    if (std::fabs(A[piv][col]) < 1e-14) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return true;
}

}  // namespace

SubdifferentialCell cell_oracle(const ConvexPLFunction& f, int i) {
  if (i < 0 || i >= static_cast<int>(f.nodes.size()))
    throw std::out_of_range("node index out of range");
  return cell_at(f, i, f.values[static_cast<size_t>(i)]);
}

std::vector<double> cell_volumes(const ConvexPLFunction& f) {
  std::vector<double> out(f.nodes.size());
  for (size_t i = 0; i < f.nodes.size(); ++i)
    out[i] = cell_oracle(f, static_cast<int>(i)).volume;
  return out;
}

ConvexPLFunction solve_dirichlet(const ChartDomain& domain,
                                 const std::vector<Vec>& nodes,
                                 const std::vector<double>& masses,
                                 const SolveOptions& opts, SolveReport* report) {
  if (nodes.size() != masses.size())
    throw std::invalid_argument("nodes and masses must have equal length");
  ConvexPLFunction f;
  f.domain = domain;
  f.nodes = nodes;
  f.values.assign(nodes.size(), 0.0);
  SolveReport local;
  SolveReport& rep = report ? *report : local;
  if (nodes.empty()) {
    rep.converged = true;
    return f;  // the zero function
  }
  for (double m : masses)
    if (!(m > 0.0)) throw std::invalid_argument("all masses must be positive");
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (domain.boundary_distance(nodes[i]) <= 1e-12)
      throw std::invalid_argument("nodes must lie strictly inside the domain");
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (dist(nodes[i], nodes[j]) <= 1e-12)
        throw std::invalid_argument("nodes must be pairwise distinct");
  }

  const double diam = domain.diameter();
  const double depth_limit = opts.depth_factor * diam;

  // deep strictly-convex carrier: u_i = M (|x_i - c|^2 - R^2), M doubled
  // until every cell volume exceeds its target
  Vec c = Vec::zero(domain.dim);
  auto bverts = domain.boundary_vertices();
  for (const auto& b : bverts) c = c + b;
  c = c * (1.0 / static_cast<double>(bverts.size()));
  double R2 = 0.0;
  for (const auto& b : bverts) R2 = std::max(R2, norm2(b - c));
  double M = 1.0;
  for (int attempt = 0;; ++attempt) {
    for (size_t i = 0; i < nodes.size(); ++i)
      f.values[i] = M * (norm2(nodes[i] - c) - R2);
    bool ok = true;
    for (size_t i = 0; i < nodes.size() && ok; ++i)
      if (cell_oracle(f, static_cast<int>(i)).volume <= masses[i]) ok = false;
    if (ok) break;
    M *= 2.0;
    if (attempt > 200 || M * R2 > depth_limit)
      throw std::runtime_error("mass too large for domain");
  }

  // monotone raising sweeps; each 1-node subproblem lands on the >= side
  auto raise_node = [&](size_t i) {
    double target = masses[i];
    double lo = f.values[i];  // V(lo) >= target
    double hi = 0.0;          // V(0) = 0 < target
    double vlo = cell_at(f, static_cast<int>(i), lo).volume;
    if (vlo <= target * (1.0 + opts.tol * 0.25)) return false;
    double vhi = 0.0;
    for (int it = 0; it < 200; ++it) {
      double mid;
      // secant proposal safeguarded by bisection
      if (vlo > target && vhi < target && it % 2 == 0) {
        double w = (vlo - target) / std::max(vlo - vhi, 1e-300);
        mid = lo + w * (hi - lo);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
      } else {
        mid = 0.5 * (lo + hi);
      }
      double vm = cell_at(f, static_cast<int>(i), mid).volume;
      if (vm >= target) {
        lo = mid;
        vlo = vm;
      } else {
        hi = mid;
        vhi = vm;
      }
      if (vlo <= target * (1.0 + opts.tol * 0.25)) break;
      if (hi - lo <= 1e-17 * std::max(1.0, std::fabs(lo))) break;
    }
    f.values[i] = lo;
    return true;
  };

  bool use_newton = opts.newton;
  long sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    if (use_newton && sweep > 0) {
      // damped full-system Newton on r(u) = V(u) - F with a finite-difference
      // Jacobian; falls back to a raising sweep when the step stalls
      size_t n = nodes.size();
      std::vector<double> r(n);
      auto vols = cell_volumes(f);
      double rnorm = 0.0;
      for (size_t i = 0; i < n; ++i) {
        r[i] = vols[i] - masses[i];
        rnorm = std::max(rnorm, std::fabs(r[i]) / masses[i]);
      }
      if (rnorm <= opts.tol) {
        rep.residual_history.push_back(rnorm);
        break;
      }
      std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
      double eta = 1e-7 * std::max(1.0, diam);
      for (size_t j = 0; j < n; ++j) {
        double saved = f.values[j];
        f.values[j] = saved + eta;
        auto vols2 = cell_volumes(f);
        f.values[j] = saved;
        for (size_t i = 0; i < n; ++i) J[i][j] = (vols2[i] - vols[i]) / eta;
      }
      std::vector<double> step;
      bool step_ok = dense_solve(J, r, step);
      if (step_ok) {
        std::vector<double> saved = f.values;
        double damp = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 8 && !improved; ++ls, damp *= 0.5) {
          for (size_t i = 0; i < n; ++i)
            f.values[i] = std::min(0.0, saved[i] - damp * step[i]);
          auto v2 = cell_volumes(f);
          double r2 = 0.0;
          for (size_t i = 0; i < n; ++i)
            r2 = std::max(r2, std::fabs(v2[i] - masses[i]) / masses[i]);
          if (r2 < rnorm) improved = true;
        }
        if (!improved) {
          f.values = saved;
          step_ok = false;
        }
      }
      if (!step_ok)
        for (size_t i = 0; i < n; ++i) rep.updates += raise_node(i) ? 1 : 0;
      double res = 0.0;
      auto v3 = cell_volumes(f);
      for (size_t i = 0; i < n; ++i)
        res = std::max(res, std::fabs(v3[i] - masses[i]) / masses[i]);
      rep.residual_history.push_back(res);
      if (res <= opts.tol) {
        ++sweep;
        break;
      }
      continue;
    }

    double prev_min = *std::min_element(f.values.begin(), f.values.end());
    for (size_t i = 0; i < nodes.size(); ++i)
      if (raise_node(i)) ++rep.updates;
    double now_min = *std::min_element(f.values.begin(), f.values.end());
    if (now_min < prev_min - 1e-12)
      throw std::logic_error("monotone raising violated");
    double res = 0.0;
    auto vols = cell_volumes(f);
    for (size_t i = 0; i < nodes.size(); ++i)
      res = std::max(res, std::fabs(vols[i] - masses[i]) / masses[i]);
    rep.residual_history.push_back(res);
    if (res <= opts.tol) {
      ++sweep;
      break;
    }
    for (double v : f.values)
      if (std::fabs(v) > depth_limit)
        throw std::runtime_error("mass too large for domain");
  }
  rep.sweeps = sweep;
  rep.achieved = cell_volumes(f);
  rep.converged = true;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (std::fabs(rep.achieved[i] - masses[i]) > opts.tol * masses[i] * 1.0001)
      rep.converged = false;
  if (!rep.converged) throw std::runtime_error("solver did not converge");
  return f;
}

PseudoCone lift(const ConvexPLFunction& f, ConePtr cone) {
  std::vector<Cut> cuts;
  cuts.reserve(f.nodes.size());
  for (size_t i = 0; i < f.nodes.size(); ++i) {
    Vec v = cone->chart(f.nodes[i]);
    double h = v.x() * f.values[i];
    if (h < 0.0) cuts.push_back({v, h});
  }
  return PseudoCone(std::move(cone), std::move(cuts));
}

ChartProblem chart_problem(const DiscreteMeasure& mu, int boundary_vertex_count) {
  ChartProblem p;
  p.domain = mu.cone().projected_domain(boundary_vertex_count);
  for (const auto& a : mu.atoms()) {
    p.nodes.push_back(mu.cone().chart_inverse(a.dir.v));
    p.masses.push_back(a.weight * std::fabs(a.dir.v.x()));
  }
  return p;
}

PseudoCone solve_minkowski(const DiscreteMeasure& mu, const SolveOptions& opts,
                           SolveReport* report, ConvexPLFunction* function_out) {
  const DiscreteMeasure* problem = &mu;
  DiscreteMeasure remapped(mu.cone_ptr());
  if (mu.cone().kind() == ConeKind::circular3d) {
    // circular cones are handled through an inscribed polyhedral stand-in;
    // the vertex count is the accuracy knob
    ConePtr standin = Cone::polyhedral_standin(mu.cone().circular_beta(),
                                               opts.boundary_vertex_count);
    remapped = DiscreteMeasure(standin);
    for (const auto& a : mu.atoms()) remapped.add(a.dir.v, a.weight);
    problem = &remapped;
  }
  ChartProblem p = chart_problem(*problem, opts.boundary_vertex_count);
  ConvexPLFunction f = solve_dirichlet(p.domain, p.nodes, p.masses, opts, report);
  PseudoCone K = lift(f, problem->cone_ptr());
  if (function_out) *function_out = std::move(f);
  return K;
}

DominatedResult solve_dominated(const DiscreteMeasure& mu, const PseudoCone& L,
                                const DominatedOptions& opts) {
  DiscreteMeasure SL = surface_measure(L);
  for (size_t k = 0; k < mu.size(); ++k) {
    const Atom& a = mu.atoms()[k];
    double avail = 0.0;
    for (const auto& b : SL.atoms())
      if (angle_between(a.dir.v, b.dir.v) <= 1e-8) avail += b.weight;
    if (a.weight > avail * (1.0 + opts.domination_tol) + 1e-15)
      throw std::runtime_error("domination hypothesis failed at atom " +
                               std::to_string(k));
  }

  // truncation ladder: one stage per distinct atom delta
  std::vector<double> deltas;
  for (const auto& a : mu.atoms()) deltas.push_back(a.dir.delta);
  std::sort(deltas.begin(), deltas.end(), std::greater<double>());
  deltas.erase(std::unique(deltas.begin(), deltas.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
               deltas.end());
  std::vector<int> ladder;
  for (double d : deltas) {
    int i = static_cast<int>(std::ceil(1.0 / d - 1e-12));
    i = std::max(i, 1);
    if (ladder.empty() || i > ladder.back()) ladder.push_back(i);
  }
  if (ladder.empty()) ladder.push_back(1);
  while (static_cast<int>(ladder.size()) > opts.max_stages)
    ladder.erase(ladder.begin() + 1);

  std::vector<double> heights = opts.heights;
  if (heights.empty()) {
    double base = 1.0;
    for (const auto& v : L.vertices()) base = std::max(base, -v.x());
    heights = {2.0 * base, 4.0 * base, 8.0 * base};
  }

  DominatedResult out{PseudoCone::cone_only(mu.cone_ptr()), {}, true};
  std::vector<PseudoCone> iterates;
  for (int i : ladder) {
    DiscreteMeasure mi = restrict(mu, 1.0 / i, /*closed=*/true);
    PseudoCone Ki = mi.empty() ? PseudoCone::cone_only(mu.cone_ptr())
                               : solve_minkowski(mi, opts.solver);
    DominatedStage st;
    st.i = i;
    st.atom_count = mi.size();
    st.dist_origin = Ki.dist_origin();
    st.min_support_slack = kInf;
    std::vector<Vec> check_dirs;
    for (const auto& a : mu.atoms()) check_dirs.push_back(a.dir.v);
    for (const auto& c : L.cuts()) check_dirs.push_back(c.v);
    for (const auto& v : check_dirs)
      st.min_support_slack = std::min(st.min_support_slack,
                                      Ki.support(v) - L.support(v));
    if (check_dirs.empty()) st.min_support_slack = 0.0;
    if (!iterates.empty())
      for (double t : heights)
        st.dh_prev.push_back(hausdorff_truncated(iterates.back(), Ki, t));
    iterates.push_back(Ki);
    out.stages.push_back(std::move(st));
  }
  for (size_t s = 2; s < out.stages.size(); ++s)
    for (size_t h = 0; h < heights.size(); ++h)
      if (out.stages[s].dh_prev[h] > out.stages[s - 1].dh_prev[h] + 1e-12)
        out.gaps_monotone = false;
  out.K = iterates.back();
  return out;
}

PseudoCone blaschke_sum(const PseudoCone& K, const PseudoCone& L,
                        const SolveOptions& opts) {
  auto ak = K.is_asymptotic(1e-9), al = L.is_asymptotic(1e-9);
  if (!ak.asymptotic || !al.asymptotic)
    throw std::invalid_argument("blaschke sum requires asymptotic sets");
  DiscreteMeasure mu = surface_measure(K) + surface_measure(L);
  if (K.cone().dim() == 2) {
    AngularMeasure am = to_angular(mu);
    return solve2d(am, K.cone_ptr());
  }
  if (mu.empty()) return PseudoCone::cone_only(K.cone_ptr());
  PseudoCone dominating = minkowski_sum(K, L);
  DominatedOptions dopts;
  dopts.solver = opts;
  return solve_dominated(mu, dominating, dopts).K;
}

}  // namespace conemink
