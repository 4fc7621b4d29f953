#include "conemink/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace conemink {

Polygon2 clip_halfplane(const Polygon2& poly, const P2& a, double b) {
  Polygon2 out;
  size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (size_t i = 0; i < n; ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % n];
    double dp = dot(p, a) - b;
    double dq = dot(q, a) - b;
    if (dp <= 0.0) {
      out.push_back(p);
      if (dq > 0.0) {
        double t = dp / (dp - dq);
        out.push_back(p + (q - p) * t);
      }
    } else if (dq <= 0.0) {
      double t = dp / (dp - dq);
      out.push_back(p + (q - p) * t);
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

double polygon_area_signed(const Polygon2& poly) {
  double s = 0.0;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % n];
    s += cross2(p, q);
  }
  return 0.5 * s;
}

double polygon_area_fan_kahan(const Polygon2& poly) {
  size_t n = poly.size();
  if (n < 3) return 0.0;
  P2 c = polygon_centroid(poly);
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i < n; ++i) {
    P2 u = poly[i] - c;
    P2 v = poly[(i + 1) % n] - c;
    double tri = 0.5 * cross2(u, v);
    double y = tri - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::fabs(sum);
}

P2 polygon_centroid(const Polygon2& poly) {
  P2 c;
  for (const auto& p : poly) c = c + p;
  double inv = poly.empty() ? 0.0 : 1.0 / static_cast<double>(poly.size());
  return c * inv;
}

Polygon2 box_polygon(double r) {
  return {{-r, -r}, {r, -r}, {r, r}, {-r, r}};
}

bool point_in_convex_polygon(const Polygon2& poly, const P2& p, double tol) {
  size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    P2 e = poly[(i + 1) % n] - poly[i];
    if (cross2(e, p - poly[i]) < -tol) return false;
  }
  return true;
}

double point_segment_distance(const P2& p, const P2& a, const P2& b) {
  P2 d = b - a;
  double len2 = dot(d, d);
  if (len2 == 0.0) return dist(p, a);
  double t = dot(p - a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + d * t);
}

double point_polygon_boundary_distance(const Polygon2& poly, const P2& p) {
  double best = std::numeric_limits<double>::infinity();
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  return best;
}

static double directed_hausdorff(const Polygon2& A, const Polygon2& B) {
  double worst = 0.0;
  for (const auto& p : A) {
    double d = point_in_convex_polygon(B, p, 1e-13) ? 0.0
                                                    : point_polygon_boundary_distance(B, p);
    worst = std::max(worst, d);
  }
  return worst;
}

double convex_polygon_hausdorff(const Polygon2& A, const Polygon2& B) {
  return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

double max_boundary_gap(const Polygon2& K, const Polygon2& L) {
  // dist(.,∂L) along an edge of K is a concave piecewise-affine function of
  // the edge parameter; evaluate at vertices and at the active-line switch
  // points of every pair of L-edges.
  size_t nk = K.size(), nl = L.size();
  double worst = 0.0;
  auto dist_to_L = [&](const P2& p) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < nl; ++j)
      best = std::min(best, point_segment_distance(p, L[j], L[(j + 1) % nl]));
    return best;
  };
  for (size_t i = 0; i < nk; ++i) {
    const P2& a = K[i];
    const P2& b = K[(i + 1) % nk];
    worst = std::max(worst, dist_to_L(a));
    // signed distances to L's edge lines are affine in t; crossings of pairs
    // are the only interior maxima candidates.
    std::vector<double> ts;
    for (size_t j = 0; j < nl; ++j) {
      P2 e = L[(j + 1) % nl] - L[j];
      double elen = norm(e);
      if (elen == 0.0) continue;
      P2 nrm{e.y / elen, -e.x / elen};
      double fa = dot(a - L[j], nrm);
      double fb = dot(b - L[j], nrm);
      for (size_t k = j + 1; k < nl; ++k) {
        P2 e2 = L[(k + 1) % nl] - L[k];
        double e2len = norm(e2);
        if (e2len == 0.0) continue;
        P2 nrm2{e2.y / e2len, -e2.x / e2len};
        double ga = dot(a - L[k], nrm2);
        double gb = dot(b - L[k], nrm2);
        double denom = (fb - fa) - (gb - ga);
        if (std::fabs(denom) < 1e-15) continue;
        double t = (ga - fa) / denom;
        if (t > 0.0 && t < 1.0) ts.push_back(t);
      }
    }
    for (double t : ts) worst = std::max(worst, dist_to_L(a + (b - a) * t));
  }
  return worst;
}

Polygon2 convex_hull_2d(std::vector<P2> pts) {
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const P2& a, const P2& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<P2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-14)
      --k;
    hull[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-14)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

P2 solve2x2(double a11, double a12, double a21, double a22, double b1, double b2) {
  double det = a11 * a22 - a12 * a21;
  double scale = std::max({std::fabs(a11), std::fabs(a12), std::fabs(a21), std::fabs(a22)});
  if (std::fabs(det) < 1e-14 * std::max(1.0, scale * scale))
    throw std::runtime_error("singular 2x2 system");
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det};
}

bool solve3x3(const double A[3][3], const double b[3], double x[3]) {
  double M[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) M[i][j] = A[i][j];
    M[i][3] = b[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
    if (std::fabs(M[piv][col]) < 1e-13) return false;
    if (piv != col)
      for (int j = 0; j < 4; ++j) std::swap(M[piv][j], M[col][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      double f = M[r][col] / M[col][col];
      for (int j = col; j < 4; ++j) M[r][j] -= f * M[col][j];
    }
  }
  for (int i = 0; i < 3; ++i) x[i] = M[i][3] / M[i][i];
  return true;
}

int rank_small(const std::vector<Vec>& rows, int n, double tol) {
  std::vector<std::array<double, 3>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(r.a);
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (std::fabs(m[r][col]) > best) {
        best = std::fabs(m[r][col]);
        piv = r;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank) continue;
      double f = m[r][col] / m[rank][col];
      for (int j = 0; j < 3; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Seidel-style LP, deterministic constraint order.

namespace {

struct Cons2 {
  P2 a;
  double b;
};

std::optional<double> lp1(double c, const std::vector<std::pair<double, double>>& cons,
                          double lo, double hi) {
  for (const auto& [a, b] : cons) {
    if (std::fabs(a) < 1e-15) {
      if (b < -1e-9) return std::nullopt;
      continue;
    }
    double bound = b / a;
    if (a > 0.0)
      hi = std::min(hi, bound);
    else
      lo = std::max(lo, bound);
  }
  if (lo > hi + 1e-9) return std::nullopt;
  if (c > 0.0) return hi;
  if (c < 0.0) return lo;
  return 0.5 * (lo + hi);
}

std::optional<P2> lp2(const P2& c, const std::vector<Cons2>& cons, double R) {
  P2 x{c.x >= 0.0 ? R : -R, c.y >= 0.0 ? R : -R};
  for (size_t i = 0; i < cons.size(); ++i) {
    const Cons2& ci = cons[i];
    if (dot(x, ci.a) <= ci.b + 1e-9 * (1.0 + std::fabs(ci.b))) continue;
    // optimum lies on the line <x,a> = b; reduce to 1D.
    double an = norm(ci.a);
    if (an < 1e-15) {
      if (ci.b < -1e-9) return std::nullopt;
      continue;
    }
    P2 n = ci.a * (1.0 / an);
    P2 p = n * (ci.b / an);
    P2 d{-n.y, n.x};
    std::vector<std::pair<double, double>> red;
    red.reserve(i + 4);
    for (size_t j = 0; j < i; ++j) {
      red.emplace_back(dot(d, cons[j].a), cons[j].b - dot(p, cons[j].a));
    }
    // box
    red.emplace_back(d.x, R - p.x);
    red.emplace_back(-d.x, R + p.x);
    red.emplace_back(d.y, R - p.y);
    red.emplace_back(-d.y, R + p.y);
    auto t = lp1(dot(c, d), red, -4.0 * R, 4.0 * R);
    if (!t) return std::nullopt;
    x = p + d * (*t);
  }
  return x;
}

}  // namespace

std::optional<Vec> lp_max(const Vec& c, const std::vector<HalfSpace>& cons, double R) {
  int dim = c.dim;
  if (dim == 1) {
    std::vector<std::pair<double, double>> red;
    red.reserve(cons.size());
    for (const auto& h : cons) red.emplace_back(h.a[0], h.b);
    auto t = lp1(c[0], red, -R, R);
    if (!t) return std::nullopt;
    Vec v = Vec::zero(1);
    v[0] = *t;
    return v;
  }
  if (dim == 2) {
    std::vector<Cons2> red;
    red.reserve(cons.size());
    for (const auto& h : cons) red.push_back({{h.a[0], h.a[1]}, h.b});
    auto p = lp2({c[0], c[1]}, red, R);
    if (!p) return std::nullopt;
    return Vec(p->x, p->y);
  }
  if (dim != 3) throw std::invalid_argument("lp_max: dim must be 1..3");

  Vec x(c[0] >= 0.0 ? R : -R, c[1] >= 0.0 ? R : -R, c[2] >= 0.0 ? R : -R);
  for (size_t i = 0; i < cons.size(); ++i) {
    const HalfSpace& ci = cons[i];
    if (dot(x, ci.a) <= ci.b + 1e-9 * (1.0 + std::fabs(ci.b))) continue;
    double an = norm(ci.a);
    if (an < 1e-15) {
      if (ci.b < -1e-9) return std::nullopt;
      continue;
    }
    Vec n = ci.a * (1.0 / an);
    Vec p = n * (ci.b / an);
    // orthonormal tangent frame of the plane
    Vec ref = std::fabs(n.x()) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
    Vec t1 = normalized(cross(n, ref));
    Vec t2 = cross(n, t1);
    std::vector<Cons2> red;
    red.reserve(i + 6);
    for (size_t j = 0; j < i; ++j) {
      red.push_back({{dot(t1, cons[j].a), dot(t2, cons[j].a)},
                     cons[j].b - dot(p, cons[j].a)});
    }
    for (int axis = 0; axis < 3; ++axis) {
      Vec e = Vec::zero(3);
      e[axis] = 1.0;
      red.push_back({{dot(t1, e), dot(t2, e)}, R - p[axis]});
      red.push_back({{-dot(t1, e), -dot(t2, e)}, R + p[axis]});
    }
    auto q = lp2({dot(c, t1), dot(c, t2)}, red, 4.0 * R);
    if (!q) return std::nullopt;
    x = p + t1 * q->x + t2 * q->y;
  }
  return x;
}

std::string fnv1a_hex(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace conemink
