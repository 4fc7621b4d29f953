#include "conemink/cone.hpp"

#include <algorithm>
#include <cmath>

namespace conemink {

namespace {

constexpr double kMembershipTol = 1e-12;

// Rotation matrix taking unit vector `from` to unit vector `to`.
struct Mat3 {
  double m[3][3];
  Vec apply(const Vec& v) const {
    Vec r = Vec::zero(3);
    for (int i = 0; i < 3; ++i)
      r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
  }
};

Mat3 rotation_between(const Vec& from, const Vec& to) {
  Vec v = cross(from, to);
  double c = dot(from, to);
  Mat3 R{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  if (c < -1.0 + 1e-14) {
    // opposite vectors: rotate pi about any axis orthogonal to `from`
    Vec ref = std::fabs(from.x()) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
    Vec ax = normalized(cross(from, ref));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        R.m[i][j] = 2.0 * ax[i] * ax[j] - (i == j ? 1.0 : 0.0);
    return R;
  }
  double k = 1.0 / (1.0 + c);
  double vx = v.x(), vy = v.y(), vz = v.z();
  double K[3][3] = {{0, -vz, vy}, {vz, 0, -vx}, {-vy, vx, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double kk = 0.0;
      for (int l = 0; l < 3; ++l) kk += K[i][l] * K[l][j];
      R.m[i][j] = (i == j ? 1.0 : 0.0) + K[i][j] + k * kk;
    }
  return R;
}

}  // namespace

std::vector<Vec> ChartDomain::boundary_vertices() const {
  std::vector<Vec> out;
  if (dim == 1) {
    Vec a = Vec::zero(1), b = Vec::zero(1);
    a[0] = lo;
    b[0] = hi;
    out = {a, b};
  } else {
    out.reserve(poly.size());
    for (const auto& p : poly) out.push_back(Vec(p.x, p.y));
    for (auto& v : out) v.dim = 2;
  }
  return out;
}

bool ChartDomain::contains(const Vec& x, double tol) const {
  if (dim == 1) return x[0] >= lo - tol && x[0] <= hi + tol;
  return point_in_convex_polygon(poly, {x[0], x[1]}, tol);
}

double ChartDomain::boundary_distance(const Vec& x) const {
  if (dim == 1) return std::min(x[0] - lo, hi - x[0]);
  return point_polygon_boundary_distance(poly, {x[0], x[1]});
}

double ChartDomain::diameter() const {
  if (dim == 1) return hi - lo;
  double d = 0.0;
  for (size_t i = 0; i < poly.size(); ++i)
    for (size_t j = i + 1; j < poly.size(); ++j)
      d = std::max(d, dist(poly[i], poly[j]));
  return d;
}

ConePtr Cone::make2d(double beta0) {
  if (!(beta0 > 0.0 && beta0 < M_PI / 2))
    throw std::invalid_argument("beta0 must lie in (0, pi/2)");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->dim_ = 2;
  c->kind_ = ConeKind::polyhedral;
  c->beta0_ = beta0;
  double a1 = beta0 + M_PI / 2, a2 = 3 * M_PI / 2 - beta0;
  c->rays_ = {Vec(std::cos(a1), std::sin(a1)), Vec(std::cos(a2), std::sin(a2))};
  c->normals_ = {Vec(std::cos(beta0), std::sin(beta0)),
                 Vec(std::cos(-beta0), std::sin(-beta0))};
  c->validate();
  return c;
}

ConePtr Cone::circular3d(double beta) {
  if (!(beta > 0.0 && beta < M_PI / 2))
    throw std::invalid_argument("beta must lie in (0, pi/2)");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->dim_ = 3;
  c->kind_ = ConeKind::circular3d;
  c->beta0_ = beta;
  return c;
}

ConePtr Cone::from_rays(std::vector<Vec> rays, const Vec* axis) {
  if (rays.empty()) throw std::invalid_argument("empty ray set");
  int n = rays.front().dim;
  if (n < 2 || n > 3)
    throw std::invalid_argument("supported ambient dimensions are 2 and 3");
  for (auto& r : rays) {
    if (r.dim != n) throw std::invalid_argument("mixed-dimension rays");
    r = normalized(r);
  }
  if (rank_small(rays, n) < n) throw std::invalid_argument("not full-dimensional");

  if (n == 2) {
    // rebase so the cone is symmetric about the negative first axis
    double amin = 1e300, amax = -1e300;
    // measure angles relative to the mean direction to avoid wrap trouble
    Vec mean = Vec::zero(2);
    for (const auto& r : rays) mean = mean + r;
    if (norm(mean) < 1e-12) throw std::invalid_argument("cone contains a line (not pointed)");
    mean = normalized(mean);
    double base = std::atan2(mean.y(), mean.x());
    for (const auto& r : rays) {
      double a = std::atan2(r.y(), r.x()) - base;
      while (a > M_PI) a -= 2 * M_PI;
      while (a < -M_PI) a += 2 * M_PI;
      amin = std::min(amin, a);
      amax = std::max(amax, a);
    }
    double width = amax - amin;
    if (width >= M_PI - 1e-12)
      throw std::invalid_argument("cone contains a line (not pointed)");
    double beta0 = (M_PI - width) / 2;
    if (!(beta0 > 1e-12 && beta0 < M_PI / 2 - 1e-15))
      throw std::invalid_argument("not full-dimensional");
    return make2d(beta0);
  }

  Vec u_star;
  if (axis) {
    u_star = normalized(*axis);
  } else {
    Vec mean = Vec::zero(3);
    for (const auto& r : rays) mean = mean + r;
    if (norm(mean) < 1e-12)
      throw std::invalid_argument("cannot determine interior axis; supply one");
    u_star = normalized(mean);
  }
  for (const auto& r : rays)
    if (dot(r, u_star) <= 1e-10)
      throw std::invalid_argument(
          axis ? "supplied axis is not strictly interior"
               : "cannot determine interior axis; supply one");

  Mat3 R = rotation_between(u_star, Vec(-1, 0, 0));
  for (auto& r : rays) r = R.apply(r);

  // cross-section at x = -1; extreme rays = hull vertices
  std::vector<P2> pts;
  pts.reserve(rays.size());
  for (const auto& r : rays) pts.push_back({r.y() / -r.x(), r.z() / -r.x()});
  Polygon2 hull = convex_hull_2d(pts);
  if (hull.size() < 3) throw std::invalid_argument("not full-dimensional");

  auto c = std::shared_ptr<Cone>(new Cone());
  c->dim_ = 3;
  c->kind_ = ConeKind::polyhedral;
  for (const auto& p : hull) c->rays_.push_back(normalized(Vec(-1.0, p.x, p.y)));
  size_t m = hull.size();
  for (size_t i = 0; i < m; ++i) {
    Vec g = cross(c->rays_[i], c->rays_[(i + 1) % m]);
    if (norm(g) < 1e-14) continue;
    g = normalized(g);
    if (g.x() < 0.0) g = -g;  // outward: <g, u_*> < 0 with u_* = -e1
    c->normals_.push_back(g);
  }
  c->validate();
  return c;
}

ConePtr Cone::polyhedral_standin(double beta, int q) {
  if (!(beta > 0.0 && beta < M_PI / 2))
    throw std::invalid_argument("beta must lie in (0, pi/2)");
  if (q < 3) throw std::invalid_argument("ring count must be >= 3");
  double gamma = M_PI / 2 - beta;  // cone half-angle about -e1
  std::vector<Vec> rays;
  rays.reserve(static_cast<size_t>(q));
  for (int i = 0; i < q; ++i) {
    double phi = 2 * M_PI * i / q;
    rays.push_back(Vec(-std::cos(gamma), std::sin(gamma) * std::cos(phi),
                       std::sin(gamma) * std::sin(phi)));
  }
  Vec axis(-1, 0, 0);
  return from_rays(std::move(rays), &axis);
}

void Cone::validate() const {
  if (kind_ == ConeKind::circular3d) return;
  if (rank_small(rays_, dim_) < dim_)
    throw std::invalid_argument("not full-dimensional");
  if (rank_small(normals_, dim_) < dim_)
    throw std::invalid_argument("cone contains a line (not pointed)");
  Vec u_star = axis();
  for (const auto& r : rays_)
    if (dot(r, u_star) <= 0.0)
      throw std::invalid_argument("axis not strictly separated from rays");
}

Vec Cone::axis() const {
  Vec u = Vec::zero(dim_);
  u[0] = -1.0;
  return u;
}

bool Cone::contains(const Vec& x, double tol) const {
  if (kind_ == ConeKind::circular3d) {
    double gamma = M_PI / 2 - beta0_;  // cone half-angle about -e1
    double perp = std::hypot(x.y(), x.z());
    return perp <= -x.x() * std::tan(gamma) + tol;
  }
  double scale = std::max(1.0, norm(x));
  for (const auto& g : normals_)
    if (dot(g, x) > tol * scale) return false;
  return true;
}

bool Cone::dual_contains(const Vec& y, double tol) const {
  if (kind_ == ConeKind::circular3d) {
    double perp = std::hypot(y.y(), y.z());
    return perp <= y.x() * std::tan(beta0_) + tol;
  }
  double scale = std::max(1.0, norm(y));
  for (const auto& r : rays_)
    if (dot(r, y) > tol * scale) return false;
  return true;
}

bool Cone::in_omega_closure(const Vec& v, double tol) const {
  if (std::fabs(norm(v) - 1.0) > 1e-9) return false;
  return dual_contains(v, tol);
}

double Cone::delta_boundary(const Vec& v) const {
  if (!in_omega_closure(v, kMembershipTol))
    throw std::invalid_argument("direction outside closed domain");
  if (dim_ == 2) {
    double theta = std::atan2(v.y(), v.x());
    return std::max(0.0, beta0_ - std::fabs(theta));
  }
  if (kind_ == ConeKind::circular3d)
    return std::max(0.0, beta0_ - angle_between(v, Vec(1, 0, 0)));

  // polyhedral 3D: distance to the nearest boundary arc or corner of the
  // spherical polygon Omega (arcs lie on great circles orthogonal to rays,
  // corners are the facet normals of C).
  double best = M_PI;
  for (const auto& r : rays_) {
    double s = -dot(v, r);  // >= 0 in the closed domain
    double arc = std::asin(std::clamp(s, 0.0, 1.0));
    Vec foot = v - r * dot(v, r);
    double fn = norm(foot);
    if (fn > 1e-14) {
      foot = foot * (1.0 / fn);
      if (dual_contains(foot, 1e-9)) best = std::min(best, arc);
    }
  }
  for (const auto& g : normals_) best = std::min(best, angle_between(v, g));
  return best;
}

Direction Cone::direction(const Vec& v) const {
  Vec u = normalized(v);
  if (!in_omega_closure(u, kMembershipTol))
    throw std::invalid_argument("direction outside closed domain");
  return Direction{u, delta_boundary(u)};
}

ConePtr Cone::dual() const {
  if (kind_ == ConeKind::circular3d) return circular3d(M_PI / 2 - beta0_);
  if (dim_ == 2) return make2d(M_PI / 2 - beta0_);
  // dual rays are the facet normals; flip x -> -x to restore the canonical
  // axis convention (the flip is an involution, so dual(dual(C)) == C).
  std::vector<Vec> drays;
  drays.reserve(normals_.size());
  for (const auto& g : normals_) drays.push_back(Vec(-g.x(), g.y(), -g.z()));
  Vec ax(-1, 0, 0);  // every facet normal has <g, e1> > 0
  return from_rays(drays, &ax);
}

Vec Cone::chart(const Vec& x) const {
  if (x.dim != dim_ - 1) throw std::invalid_argument("chart point dimension mismatch");
  double s = 1.0 / std::sqrt(1.0 + norm2(x));
  Vec v = Vec::zero(dim_);
  v[0] = s;
  for (int i = 0; i < dim_ - 1; ++i) v[i + 1] = x[i] * s;
  bool interior;
  if (kind_ == ConeKind::circular3d) {
    interior = std::hypot(v.y(), v.z()) < v.x() * std::tan(beta0_) - 1e-14;
  } else {
    interior = true;
    for (const auto& r : rays_)
      if (dot(r, v) >= -1e-14) interior = false;
  }
  if (!interior) throw std::invalid_argument("outside chart domain");
  return v;
}

Vec Cone::chart_inverse(const Vec& v) const {
  if (!in_omega_closure(v, kMembershipTol) || v[0] <= 0.0)
    throw std::invalid_argument("direction outside closed domain");
  Vec x = Vec::zero(dim_ - 1);
  for (int i = 0; i < dim_ - 1; ++i) x[i] = v[i + 1] / v[0];
  return x;
}

ChartDomain Cone::projected_domain(int vertex_count) const {
  ChartDomain d;
  d.dim = dim_ - 1;
  if (dim_ == 2) {
    double t = std::tan(beta0_);
    d.lo = -t;
    d.hi = t;
    return d;
  }
  if (kind_ == ConeKind::circular3d) {
    if (vertex_count < 3) throw std::invalid_argument("vertex_count must be >= 3");
    double rad = std::tan(beta0_);
    for (int i = 0; i < vertex_count; ++i) {
      double a = 2 * M_PI * i / vertex_count;
      d.poly.push_back({rad * std::cos(a), rad * std::sin(a)});
    }
    return d;
  }
  double R = 1.0;
  for (const auto& g : normals_) {
    Vec x = chart_inverse(g);
    R = std::max(R, 2.0 * norm(x) + 1.0);
  }
  Polygon2 poly = box_polygon(R);
  for (const auto& r : rays_)
    poly = clip_halfplane(poly, {r.y(), r.z()}, -r.x());
  if (poly.size() < 3) throw std::invalid_argument("not full-dimensional");
  d.poly = poly;
  return d;
}

double Cone::max_cone_dot(const Vec& v) const {
  return -std::sin(delta_boundary(v));
}

}  // namespace conemink
