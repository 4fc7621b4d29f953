#include "conemink/pseudocone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conemink {

namespace {

constexpr double kAngleMergeTol = 1e-10;
constexpr int kMaxPlanesExact = 160;
constexpr double kInf = std::numeric_limits<double>::infinity();

double height(const Vec& x) { return -x.x(); }  // <x, u_*> with u_* = -e1

struct Plane {
  Vec a;
  double b = 0.0;
  int cut_index = -1;  // -1: cone facet, -2: slice plane
};

std::vector<Plane> build_planes(const Cone& cone, const std::vector<Cut>& cuts) {
  std::vector<Plane> planes;
  planes.reserve(cone.dual_normals().size() + cuts.size());
  for (const auto& g : cone.dual_normals()) planes.push_back({g, 0.0, -1});
  for (size_t i = 0; i < cuts.size(); ++i)
    planes.push_back({cuts[i].v, cuts[i].h, static_cast<int>(i)});
  return planes;
}

bool feasible(const std::vector<Plane>& planes, const Vec& x, double slack) {
  double scale = std::max(1.0, norm(x));
  for (const auto& p : planes)
    if (dot(p.a, x) > p.b + slack * scale) return false;
  return true;
}

std::vector<Vec> enumerate_vertices(const std::vector<Plane>& planes) {
  size_t m = planes.size();
  if (m > kMaxPlanesExact)
    throw std::runtime_error("system too large for exact vertex enumeration");
  std::vector<Vec> verts;
  double A[3][3], b[3], x[3];
  for (size_t i = 0; i + 2 < m; ++i)
    for (size_t j = i + 1; j + 1 < m; ++j)
      for (size_t k = j + 1; k < m; ++k) {
        const Plane* tri[3] = {&planes[i], &planes[j], &planes[k]};
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) A[r][c] = tri[r]->a[c];
          b[r] = tri[r]->b;
        }
        if (!solve3x3(A, b, x)) continue;
        Vec v(x[0], x[1], x[2]);
        if (!feasible(planes, v, 1e-9)) continue;
        bool dup = false;
        for (const auto& w : verts)
          if (dist(v, w) <= 1e-9 * std::max(1.0, norm(v))) {
            dup = true;
            break;
          }
        if (!dup) verts.push_back(v);
      }
  return verts;
}

// Clip the polygon carried by planes[idx] against all other planes, in an
// orthonormal in-plane frame anchored at the plane's foot point.
Polygon2 facet_polygon_2d(const std::vector<Plane>& planes, size_t idx, double radius,
                          Vec* origin_out, Vec* t1_out, Vec* t2_out) {
  const Plane& p = planes[idx];
  Vec n = p.a;
  Vec x0 = n * p.b;
  Vec ref = std::fabs(n.x()) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
  Vec t1 = normalized(cross(n, ref));
  Vec t2 = cross(n, t1);
  Polygon2 poly = box_polygon(radius);
  for (size_t j = 0; j < planes.size() && !poly.empty(); ++j) {
    if (j == idx) continue;
    const Plane& q = planes[j];
    P2 a2{dot(t1, q.a), dot(t2, q.a)};
    double b2 = q.b - dot(x0, q.a);
    if (std::hypot(a2.x, a2.y) < 1e-14) {
      if (b2 < -1e-12) poly.clear();
      continue;
    }
    poly = clip_halfplane(poly, a2, b2);
  }
  if (origin_out) *origin_out = x0;
  if (t1_out) *t1_out = t1;
  if (t2_out) *t2_out = t2;
  return poly;
}

Vec lift_point(const Vec& x0, const Vec& t1, const Vec& t2, const P2& p) {
  return x0 + t1 * p.x + t2 * p.y;
}

double point_polygon3d_distance(const std::vector<Vec>& loop, const Vec& normal,
                                double offset, const Vec& p) {
  if (loop.empty()) return kInf;
  double plane_dist = dot(normal, p) - offset;
  Vec proj = p - normal * plane_dist;
  bool inside = true;
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    Vec e = loop[(i + 1) % n] - loop[i];
    Vec out = cross(e, normal);
    if (dot(out, proj - loop[i]) > 1e-12 * std::max(1.0, norm(proj))) {
      inside = false;
      break;
    }
  }
  if (inside) return std::fabs(plane_dist);
  double best = kInf;
  for (size_t i = 0; i < n; ++i) {
    const Vec& a = loop[i];
    const Vec& bb = loop[(i + 1) % n];
    Vec d = bb - a;
    double len2 = norm2(d);
    double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, dist(p, a + d * t));
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

struct PseudoCone::Geometry {
  std::mutex mu;
  bool chain_done = false;
  bool verts_done = false;
  bool facets_done = false;
  Chain2 chain;
  std::vector<std::array<long double, 2>> chain_verts_ld;
  std::vector<Vec> verts;
  std::vector<Facet> facets;
};

PseudoCone::PseudoCone(ConePtr cone, std::vector<Cut> cuts)
    : cone_(std::move(cone)), geom_(std::make_shared<Geometry>()) {
  if (!cone_) throw std::invalid_argument("null cone");
  if (cone_->kind() != ConeKind::polyhedral)
    throw std::invalid_argument("polyhedral cone required (use a polyhedral stand-in)");
  for (auto& c : cuts) {
    c.v = normalized(c.v);
    if (!cone_->in_omega_closure(c.v, 1e-9))
      throw std::invalid_argument("cut normal outside closed domain");
    if (c.h > 1e-9) throw std::invalid_argument("cut offset must be nonpositive");
    c.h = std::min(c.h, 0.0);
  }
  for (const auto& c : cuts) {
    bool merged = false;
    for (auto& e : cuts_)
      if (angle_between(e.v, c.v) <= kAngleMergeTol) {
        e.h = std::min(e.h, c.h);
        merged = true;
        break;
      }
    if (!merged) cuts_.push_back(c);
  }
}

// ---------------------------------------------------------------------------
// 2D boundary chain.

const PseudoCone::Chain2& PseudoCone::chain2() const {
  if (cone_->dim() != 2) throw std::logic_error("chain2 requires a 2D cone");
  std::lock_guard<std::mutex> lock(geom_->mu);
  if (geom_->chain_done) return geom_->chain;

  const double beta0 = cone_->beta0();
  struct Line {
    long double th, h;
    int cut;
  };
  std::vector<Line> lines;
  lines.push_back({-static_cast<long double>(beta0), 0.0L, -1});
  lines.push_back({static_cast<long double>(beta0), 0.0L, -1});
  for (size_t i = 0; i < cuts_.size(); ++i) {
    long double th = std::atan2(static_cast<long double>(cuts_[i].v.y()),
                                static_cast<long double>(cuts_[i].v.x()));
    lines.push_back({th, static_cast<long double>(cuts_[i].h), static_cast<int>(i)});
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.th < b.th; });
  std::vector<Line> merged;
  for (const auto& l : lines) {
    if (!merged.empty() &&
        std::fabs(static_cast<double>(l.th - merged.back().th)) <= 1e-12) {
      if (l.h < merged.back().h) merged.back() = l;
    } else {
      merged.push_back(l);
    }
  }

  auto inter = [](const Line& a, const Line& b) -> std::array<long double, 2> {
    long double s = std::sin(b.th - a.th);
    long double x = (a.h * std::sin(b.th) - b.h * std::sin(a.th)) / s;
    long double y = (b.h * std::cos(a.th) - a.h * std::cos(b.th)) / s;
    return {x, y};
  };

  // support-line envelope: a line is kept iff the vertex of its neighbors
  // violates it
  std::vector<Line> active;
  for (const auto& l : merged) {
    while (active.size() >= 2) {
      auto v = inter(active[active.size() - 2], l);
      const Line& b = active.back();
      long double val = v[0] * std::cos(b.th) + v[1] * std::sin(b.th);
      if (val <= b.h + 1e-15L * (1.0L + std::fabs(static_cast<double>(b.h))))
        active.pop_back();
      else
        break;
    }
    active.push_back(l);
  }

  Chain2& ch = geom_->chain;
  for (const auto& l : active) {
    ch.theta.push_back(static_cast<double>(l.th));
    ch.offset.push_back(static_cast<double>(l.h));
    ch.cut_index.push_back(l.cut);
  }
  for (size_t i = 0; i + 1 < active.size(); ++i) {
    auto v = inter(active[i], active[i + 1]);
    geom_->chain_verts_ld.push_back(v);
    ch.verts.push_back({static_cast<double>(v[0]), static_cast<double>(v[1])});
  }
  geom_->chain_done = true;
  return ch;
}

// ---------------------------------------------------------------------------
// Vertices and facets.

const std::vector<Vec>& PseudoCone::vertices() const {
  if (cone_->dim() == 2) {
    const Chain2& ch = chain2();
    std::lock_guard<std::mutex> lock(geom_->mu);
    if (!geom_->verts_done) {
      for (const auto& p : ch.verts) geom_->verts.push_back(Vec(p.x, p.y));
      geom_->verts_done = true;
    }
    return geom_->verts;
  }
  std::lock_guard<std::mutex> lock(geom_->mu);
  if (!geom_->verts_done) {
    geom_->verts = enumerate_vertices(build_planes(*cone_, cuts_));
    geom_->verts_done = true;
  }
  return geom_->verts;
}

const std::vector<Facet>& PseudoCone::facets() const {
  if (cone_->dim() == 2) {
    const Chain2& ch = chain2();
    std::lock_guard<std::mutex> lock(geom_->mu);
    if (geom_->facets_done) return geom_->facets;
    const double beta0 = cone_->beta0();
    size_t m = ch.theta.size();
    for (size_t i = 0; i < m; ++i) {
      Facet f;
      f.normal = Vec(std::cos(ch.theta[i]), std::sin(ch.theta[i]));
      f.offset = ch.offset[i];
      f.cut_index = ch.cut_index[i];
      f.delta = std::max(0.0, beta0 - std::fabs(ch.theta[i]));
      if (i == 0 || i + 1 == m) {
        f.bounded = false;
        f.area = kInf;
      } else {
        const auto& a = geom_->chain_verts_ld[i - 1];
        const auto& b = geom_->chain_verts_ld[i];
        long double dx = b[0] - a[0], dy = b[1] - a[1];
        f.area = static_cast<double>(std::sqrt(dx * dx + dy * dy));
        f.vertices = {Vec(static_cast<double>(a[0]), static_cast<double>(a[1])),
                      Vec(static_cast<double>(b[0]), static_cast<double>(b[1]))};
      }
      geom_->facets.push_back(std::move(f));
    }
    geom_->facets_done = true;
    return geom_->facets;
  }

  std::lock_guard<std::mutex> lock(geom_->mu);
  if (geom_->facets_done) return geom_->facets;
  auto planes = build_planes(*cone_, cuts_);
  for (size_t i = 0; i < planes.size(); ++i) {
    const Plane& p = planes[i];
    Facet f;
    f.normal = p.a;
    f.offset = p.b;
    f.cut_index = p.cut_index;
    f.delta = p.cut_index >= 0 ? cone_->delta_boundary(p.a) : 0.0;
    if (p.cut_index < 0 || f.delta <= 1e-12) {
      f.bounded = false;
      f.area = kInf;
      geom_->facets.push_back(std::move(f));
      continue;
    }
    double radius = 2.0 * std::fabs(p.b) / std::sin(f.delta) + 1.0;
    Vec x0, t1, t2;
    Polygon2 poly = facet_polygon_2d(planes, i, radius, &x0, &t1, &t2);
    f.area = polygon_area_fan_kahan(poly);
    for (const auto& q : poly) f.vertices.push_back(lift_point(x0, t1, t2, q));
    geom_->facets.push_back(std::move(f));
  }
  geom_->facets_done = true;
  return geom_->facets;
}

// ---------------------------------------------------------------------------

double PseudoCone::support(const Vec& v) const {
  Vec u = normalized(v);
  if (!cone_->in_omega_closure(u, 1e-9))
    throw std::invalid_argument("direction outside closed domain");
  if (cone_->delta_boundary(u) <= 1e-12) {
    // boundary direction: interior cut normals never lower the value
    // (slide out along a boundary ray orthogonal to u), so only boundary
    // cuts matter
    bool boundary_cuts = false;
    for (const auto& c : cuts_)
      if (cone_->delta_boundary(c.v) <= 1e-12) boundary_cuts = true;
    if (!boundary_cuts) return 0.0;
  }
  if (cone_->dim() == 2) {
    chain2();
    long double ux = u.x(), uy = u.y();
    long double best = -1e300L;
    std::lock_guard<std::mutex> lock(geom_->mu);
    for (const auto& p : geom_->chain_verts_ld)
      best = std::max(best, p[0] * ux + p[1] * uy);
    return static_cast<double>(best);
  }
  size_t m = cone_->dual_normals().size() + cuts_.size();
  if (m <= kMaxPlanesExact) {
    const auto& vs = vertices();
    double best = -kInf;
    for (const auto& x : vs) best = std::max(best, dot(x, u));
    return best;
  }
  // large system: either the exact boundary value or an LP over the cuts
  double delta = cone_->delta_boundary(u);
  if (delta <= 1e-9) {
    for (const auto& c : cuts_)
      if (cone_->delta_boundary(c.v) <= 1e-9)
        throw std::runtime_error(
            "boundary support with boundary cuts unsupported for large systems");
    return 0.0;  // interior cut normals never lower the boundary support
  }
  double hmax = 0.0;
  for (const auto& c : cuts_) hmax = std::max(hmax, std::fabs(c.h));
  double R = 2.0 * hmax / std::sin(delta) + 2.0;
  std::vector<HalfSpace> cons;
  for (const auto& p : build_planes(*cone_, cuts_)) cons.push_back({p.a, p.b});
  auto x = lp_max(u, cons, R);
  if (!x) throw std::runtime_error("support LP infeasible");
  return dot(*x, u);
}

PseudoCone::AsymptoticCheck PseudoCone::is_asymptotic(double tol) const {
  AsymptoticCheck out;
  std::vector<Vec> candidates;
  bool boundary_cuts = false;
  for (const auto& c : cuts_)
    if (cone_->delta_boundary(c.v) <= 1e-12) {
      candidates.push_back(c.v);
      boundary_cuts = true;
    }
  if (cone_->dim() == 2) {
    double b0 = cone_->beta0();
    out.witness = Vec(std::cos(b0), std::sin(b0));
    if (boundary_cuts) {
      candidates.push_back(Vec(std::cos(b0), std::sin(b0)));
      candidates.push_back(Vec(std::cos(b0), -std::sin(b0)));
    }
  } else {
    out.witness = cone_->dual_normals().front();
    if (boundary_cuts)
      for (const auto& g : cone_->dual_normals()) candidates.push_back(g);
  }
  // with all cut normals strictly inside the domain the boundary support
  // vanishes identically (slide along a boundary ray orthogonal to v)
  for (const auto& v : candidates) {
    double h = support(v);
    if (h < out.worst) {
      out.worst = h;
      out.witness = v;
    }
  }
  out.asymptotic = out.worst >= -tol;
  return out;
}

PseudoCone PseudoCone::translated(const Vec& z) const {
  // (K + z) ∩ C: the shifted cone boundary contributes one cut per facet
  // normal whenever it moved inward; offsets that became nonnegative are
  // inactive inside C and are dropped
  std::vector<Cut> cuts;
  cuts.reserve(cuts_.size() + cone_->dual_normals().size());
  for (const auto& c : cuts_) {
    double h = c.h + dot(z, c.v);
    if (h < -1e-15) cuts.push_back({c.v, h});
  }
  for (const auto& g : cone_->dual_normals()) {
    double h = dot(z, g);
    if (h < -1e-15) cuts.push_back({g, h});
  }
  return PseudoCone(cone_, std::move(cuts));
}

PseudoCone PseudoCone::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<Cut> cuts = cuts_;
  for (auto& c : cuts) c.h *= lambda;
  return PseudoCone(cone_, std::move(cuts));
}

PseudoCone PseudoCone::normalize_translation(Vec* z0_out) const {
  Vec z0 = Vec::zero(cone_->dim());
  if (cone_->dim() == 2) {
    double b0 = cone_->beta0();
    Vec vp(std::cos(b0), std::sin(b0)), vm(std::cos(b0), -std::sin(b0));
    double hp = support(vp), hm = support(vm);
    P2 z = solve2x2(vp.x(), vp.y(), vm.x(), vm.y(), hp, hm);
    z0 = Vec(z.x, z.y);
  } else {
    std::vector<Vec> dirs;
    std::vector<double> vals;
    for (const auto& c : cuts_)
      if (cone_->delta_boundary(c.v) <= 1e-12) {
        dirs.push_back(c.v);
        vals.push_back(support(c.v));
      }
    for (const auto& g : cone_->dual_normals()) {
      dirs.push_back(g);
      vals.push_back(support(g));
    }
    if (rank_small(dirs, 3) < 3) throw std::runtime_error("boundary data rank-deficient");
    std::vector<Vec> picked;
    std::vector<double> pvals;
    for (size_t i = 0; i < dirs.size() && picked.size() < 3; ++i) {
      auto trial = picked;
      trial.push_back(dirs[i]);
      if (rank_small(trial, 3) == static_cast<int>(trial.size())) {
        picked = std::move(trial);
        pvals.push_back(vals[i]);
      }
    }
    double A[3][3], b[3], x[3];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) A[r][c] = picked[static_cast<size_t>(r)][c];
      b[r] = pvals[static_cast<size_t>(r)];
    }
    if (!solve3x3(A, b, x)) throw std::runtime_error("boundary data rank-deficient");
    z0 = Vec(x[0], x[1], x[2]);
    for (size_t i = 0; i < dirs.size(); ++i)
      if (std::fabs(dot(z0, dirs[i]) - vals[i]) > 1e-9 * std::max(1.0, norm(z0)))
        throw std::runtime_error("boundary data inconsistent");
  }
  if (z0_out) *z0_out = z0;
  return translated(-z0);
}

bool PseudoCone::member(const Vec& x, double tol) const {
  if (!cone_->contains(x, tol)) return false;
  double scale = std::max(1.0, norm(x));
  for (const auto& c : cuts_)
    if (dot(c.v, x) > c.h + tol * scale) return false;
  return true;
}

double PseudoCone::dist_origin() const {
  Vec o = Vec::zero(cone_->dim());
  if (member(o, 1e-12)) return 0.0;
  if (cone_->dim() == 2) {
    const Chain2& ch = chain2();
    double best = kInf;
    size_t m = ch.theta.size();
    for (size_t i = 1; i + 1 < m; ++i)
      best = std::min(best, point_segment_distance({0, 0}, ch.verts[i - 1], ch.verts[i]));
    auto ray_dist = [&](const P2& a, const P2& d) {
      double t = std::max(0.0, -(a.x * d.x + a.y * d.y));
      return std::hypot(a.x + d.x * t, a.y + d.y * t);
    };
    double th0 = ch.theta.front(), th1 = ch.theta.back();
    best = std::min(best, ray_dist(ch.verts.front(), {std::sin(th0), -std::cos(th0)}));
    best = std::min(best, ray_dist(ch.verts.back(), {-std::sin(th1), std::cos(th1)}));
    return best;
  }
  double best = kInf;
  for (const auto& f : facets()) {
    if (!f.bounded || f.vertices.size() < 3) continue;
    best = std::min(best, point_polygon3d_distance(f.vertices, f.normal, f.offset, o));
  }
  return best;
}

double PseudoCone::localization_height(const Vec& v) const {
  Vec u = normalized(v);
  double delta = cone_->delta_boundary(u);
  if (delta <= 0.0) return kInf;
  return std::fabs(support(u)) / std::sin(delta);
}

std::vector<int> PseudoCone::redundant_cuts() const {
  std::vector<int> out;
  std::vector<bool> active(cuts_.size(), false);
  if (cone_->dim() == 2) {
    const Chain2& ch = chain2();
    for (size_t i = 0; i < ch.cut_index.size(); ++i) {
      if (ch.cut_index[i] < 0) continue;
      bool interior = i > 0 && i + 1 < ch.cut_index.size();
      if (!interior || dist(ch.verts[i - 1], ch.verts[i]) > 1e-14)
        active[static_cast<size_t>(ch.cut_index[i])] = true;
    }
  } else {
    for (const auto& f : facets()) {
      if (f.cut_index < 0) continue;
      if (!f.bounded || f.area > 1e-14) active[static_cast<size_t>(f.cut_index)] = true;
    }
  }
  for (size_t i = 0; i < cuts_.size(); ++i)
    if (!active[i]) out.push_back(static_cast<int>(i));
  return out;
}

// ---------------------------------------------------------------------------
// Slices.

Slice PseudoCone::slice(double t) const {
  Slice s;
  s.t = t;
  if (cone_->dim() == 2) {
    const Chain2& ch = chain2();
    size_t n = ch.verts.size();
    std::vector<double> hs(n);
    for (size_t i = 0; i < n; ++i) hs[i] = -ch.verts[i].x;
    double hmin = *std::min_element(hs.begin(), hs.end());
    if (t < hmin - 1e-12) return s;  // empty slice
    double b0 = cone_->beta0();
    size_t first = 0;
    while (first < n && hs[first] > t) ++first;
    if (first == n) {  // grazing slice: a single point at the lowest vertex
      size_t imin = static_cast<size_t>(
          std::min_element(hs.begin(), hs.end()) - hs.begin());
      s.polygon.push_back(ch.verts[imin]);
      s.vertices.push_back(Vec(ch.verts[imin].x, ch.verts[imin].y));
      return s;
    }
    size_t last = n;
    while (last > 0 && hs[last - 1] > t) --last;
    --last;  // index of the last inside vertex
    P2 entry, exitp;
    if (first == 0) {
      double step = (t - hs[0]) / std::sin(b0);
      double th = ch.theta.front();
      entry = {ch.verts[0].x + std::sin(th) * step, ch.verts[0].y - std::cos(th) * step};
    } else {
      double w = (hs[first - 1] - t) / (hs[first - 1] - hs[first]);
      entry = ch.verts[first - 1] + (ch.verts[first] - ch.verts[first - 1]) * w;
    }
    if (last == n - 1) {
      double step = (t - hs[n - 1]) / std::sin(b0);
      double th = ch.theta.back();
      exitp = {ch.verts[n - 1].x - std::sin(th) * step,
               ch.verts[n - 1].y + std::cos(th) * step};
    } else {
      double w = (hs[last + 1] - t) / (hs[last + 1] - hs[last]);
      exitp = ch.verts[last + 1] + (ch.verts[last] - ch.verts[last + 1]) * w;
    }
    s.polygon.push_back(entry);
    for (size_t i = first; i <= last && last < n; ++i)
      if (dist(s.polygon.back(), ch.verts[i]) > 1e-14) s.polygon.push_back(ch.verts[i]);
    if (dist(s.polygon.back(), exitp) > 1e-14) s.polygon.push_back(exitp);
    for (const auto& p : s.polygon) s.vertices.push_back(Vec(p.x, p.y));
    return s;
  }

  auto planes = build_planes(*cone_, cuts_);
  planes.push_back({Vec(-1, 0, 0), t, -2});
  s.vertices = enumerate_vertices(planes);
  if (s.vertices.empty()) return s;
  double xi = 1.0;
  for (const auto& r : cone_->rays()) xi = std::min(xi, -r.x());
  double hmax = std::max(1.0, std::fabs(t));
  for (const auto& c : cuts_) hmax = std::max(hmax, std::fabs(c.h));
  double radius = 2.0 * (std::fabs(t) / xi + hmax + 1.0);
  for (size_t i = 0; i < planes.size(); ++i) {
    Vec x0, t1, t2;
    Polygon2 poly = facet_polygon_2d(planes, i, radius, &x0, &t1, &t2);
    if (poly.size() < 3) continue;
    Facet f;
    f.normal = planes[i].a;
    f.offset = planes[i].b;
    f.cut_index = planes[i].cut_index;
    f.area = polygon_area_fan_kahan(poly);
    for (const auto& q : poly) f.vertices.push_back(lift_point(x0, t1, t2, q));
    f.delta = f.cut_index >= 0 ? cone_->delta_boundary(f.normal) : 0.0;
    s.facets.push_back(std::move(f));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Minkowski sums.

namespace {

std::vector<Vec> bounded_edge_dirs(const PseudoCone& K) {
  std::vector<Vec> out;
  const auto& vs = K.vertices();
  auto planes = build_planes(K.cone(), K.cuts());
  size_t n = vs.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      int shared = 0;
      double tol = 1e-8 * std::max(1.0, std::max(norm(vs[i]), norm(vs[j])));
      for (const auto& p : planes) {
        if (std::fabs(dot(p.a, vs[i]) - p.b) <= tol &&
            std::fabs(dot(p.a, vs[j]) - p.b) <= tol)
          ++shared;
        if (shared >= 2) break;
      }
      if (shared >= 2) out.push_back(normalized(vs[j] - vs[i]));
    }
  return out;
}

bool same_cone(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim() || a.kind() != b.kind()) return false;
  if (a.dim() == 2) return std::fabs(a.beta0() - b.beta0()) < 1e-14;
  if (a.rays().size() != b.rays().size()) return false;
  for (size_t i = 0; i < a.rays().size(); ++i)
    if (dist(a.rays()[i], b.rays()[i]) > 1e-12) return false;
  return true;
}

}  // namespace

PseudoCone minkowski_sum(const PseudoCone& K, const PseudoCone& L,
                         const MinkowskiOptions& opts) {
  if (K.cone_ptr().get() != L.cone_ptr().get() && !same_cone(K.cone(), L.cone()))
    throw std::invalid_argument("minkowski_sum requires the same cone");
  ConePtr cone = K.cone_ptr();

  if (cone->dim() == 2) {
    struct Edge {
      double theta, len;
    };
    std::vector<Edge> edges;
    for (const auto& f : K.facets())
      if (f.bounded && f.cut_index >= 0 && f.area > 0.0)
        edges.push_back({std::atan2(f.normal.y(), f.normal.x()), f.area});
    for (const auto& f : L.facets())
      if (f.bounded && f.cut_index >= 0 && f.area > 0.0)
        edges.push_back({std::atan2(f.normal.y(), f.normal.x()), f.area});
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.theta < b.theta; });
    std::vector<Edge> merged;
    for (const auto& e : edges) {
      if (!merged.empty() && std::fabs(e.theta - merged.back().theta) <= kAngleMergeTol)
        merged.back().len += e.len;
      else
        merged.push_back(e);
    }
    P2 p = K.chain2().verts.front() + L.chain2().verts.front();
    std::vector<Cut> cuts;
    for (const auto& e : merged) {
      Vec v(std::cos(e.theta), std::sin(e.theta));
      cuts.push_back({v, p.x * v.x() + p.y * v.y()});
      p = p + P2{-std::sin(e.theta), std::cos(e.theta)} * e.len;
    }
    double b0 = cone->beta0();
    Vec vp(std::cos(b0), std::sin(b0)), vm(std::cos(b0), -std::sin(b0));
    double hp = K.support(vp) + L.support(vp);
    double hm = K.support(vm) + L.support(vm);
    if (hp < -1e-15) cuts.push_back({vp, hp});
    if (hm < -1e-15) cuts.push_back({vm, hm});
    return PseudoCone(cone, std::move(cuts));
  }

  double max_h = 0.0;
  for (const auto& v : K.vertices()) max_h = std::max(max_h, height(v));
  for (const auto& v : L.vertices()) max_h = std::max(max_h, height(v));
  if (max_h > opts.truncation_height) throw std::runtime_error("increase T");

  // candidate facet normals: facet normals of both summands plus cross
  // products of bounded-edge pairs and of cone ray pairs
  std::vector<Vec> candidates;
  auto add_candidate = [&](const Vec& w) {
    double n = norm(w);
    if (n < 1e-12) return;
    Vec u = w * (1.0 / n);
    for (int sgn = 0; sgn < 2; ++sgn) {
      Vec cand = sgn ? -u : u;
      if (!cone->in_omega_closure(cand, 1e-9)) continue;
      bool dup = false;
      for (const auto& e : candidates)
        if (angle_between(e, cand) <= kAngleMergeTol) {
          dup = true;
          break;
        }
      if (!dup) candidates.push_back(cand);
    }
  };
  for (const auto& f : K.facets())
    if (f.cut_index >= 0) add_candidate(f.normal);
  for (const auto& f : L.facets())
    if (f.cut_index >= 0) add_candidate(f.normal);
  for (const auto& a : bounded_edge_dirs(K))
    for (const auto& b : bounded_edge_dirs(L)) add_candidate(cross(a, b));
  const auto& rays = cone->rays();
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = i + 1; j < rays.size(); ++j) add_candidate(cross(rays[i], rays[j]));

  std::vector<Cut> cuts;
  for (const auto& v : candidates) {
    double h = K.support(v) + L.support(v);
    if (h < -1e-14) cuts.push_back({v, h});
  }
  return PseudoCone(cone, std::move(cuts));
}

// ---------------------------------------------------------------------------
// Hausdorff machinery.

double point_polytope_distance(const std::vector<Facet>& facets,
                               const std::vector<Vec>& vertices, const Vec& p) {
  bool inside = true;
  for (const auto& f : facets)
    if (dot(f.normal, p) > f.offset + 1e-12 * std::max(1.0, norm(p))) {
      inside = false;
      break;
    }
  if (inside) return 0.0;
  double best = kInf;
  for (const auto& f : facets)
    if (f.vertices.size() >= 3)
      best = std::min(best, point_polygon3d_distance(f.vertices, f.normal, f.offset, p));
  if (best == kInf)
    for (const auto& v : vertices) best = std::min(best, dist(p, v));
  return best;
}

double hausdorff_truncated(const PseudoCone& K, const PseudoCone& L, double t) {
  Slice sk = K.slice(t), sl = L.slice(t);
  if (sk.vertices.empty() || sl.vertices.empty())
    throw std::runtime_error("empty slice");
  if (K.cone().dim() == 2) return convex_polygon_hausdorff(sk.polygon, sl.polygon);
  double worst = 0.0;
  for (const auto& v : sk.vertices)
    worst = std::max(worst, point_polytope_distance(sl.facets, sl.vertices, v));
  for (const auto& v : sl.vertices)
    worst = std::max(worst, point_polytope_distance(sk.facets, sk.vertices, v));
  return worst;
}

double slice_volume(const Slice& s) {
  if (!s.polygon.empty()) return polygon_area(s.polygon);
  double acc = 0.0;
  for (const auto& f : s.facets) acc += f.offset * f.area;
  return acc / 3.0;
}

HausdorffBoundCheck hausdorff_bound_polygons(const Polygon2& K, const Polygon2& L,
                                             const P2& z, double r) {
  HausdorffBoundCheck out;
  out.dh = convex_polygon_hausdorff(K, L);
  double reach = 0.0;
  for (const auto& y : L) reach = std::max(reach, dist(y, z));
  out.max_gap = max_boundary_gap(K, L);
  out.bound = (1.0 + reach / r) * out.max_gap;
  out.holds = out.dh <= out.bound + 1e-9 * (1.0 + out.bound);
  return out;
}

HausdorffBoundCheck hausdorff_bound_slices(const PseudoCone& K, const PseudoCone& L,
                                           double t, const Vec& z, double r) {
  if (K.cone().dim() != 2)
    throw std::logic_error("slice-based bound check implemented for 2D slices");
  Slice sk = K.slice(t), sl = L.slice(t);
  if (sk.polygon.empty() || sl.polygon.empty()) throw std::runtime_error("empty slice");
  return hausdorff_bound_polygons(sk.polygon, sl.polygon, {z.x(), z.y()}, r);
}

}  // namespace conemink
