#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conemink {

// Small dense vector for ambient dimensions 1..3. Unused trailing
// components stay zero so dot/norm are safe across mixed arithmetic.
struct Vec {
  std::array<double, 3> a{0.0, 0.0, 0.0};
  int dim = 3;

  Vec() = default;
  Vec(double x, double y) : a{x, y, 0.0}, dim(2) {}
  Vec(double x, double y, double z) : a{x, y, z}, dim(3) {}
  static Vec zero(int d) {
    Vec v;
    v.dim = d;
    return v;
  }

  double& operator[](int i) { return a[static_cast<size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<size_t>(i)]; }
  double x() const { return a[0]; }
  double y() const { return a[1]; }
  double z() const { return a[2]; }

  Vec operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < 3; ++i) r.a[i] += o.a[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < 3; ++i) r.a[i] -= o.a[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r = *this;
    for (auto& c : r.a) c *= s;
    return r;
  }
  Vec operator-() const { return *this * -1.0; }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& a, const Vec& b) {
  return a.a[0] * b.a[0] + a.a[1] * b.a[1] + a.a[2] * b.a[2];
}
inline double norm2(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm2(v)); }
inline Vec cross(const Vec& a, const Vec& b) {
  Vec r(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
        a.x() * b.y() - a.y() * b.x());
  return r;
}
inline Vec normalized(const Vec& v) {
  double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return v * (1.0 / n);
}
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

/// Angle in [0,pi] between two nonzero vectors, stable near 0 and pi.
inline double angle_between(const Vec& a, const Vec& b) {
  double na = norm(a), nb = norm(b);
  double c = dot(a, b) / (na * nb);
  double s = norm(cross(a, b)) / (na * nb);
  return std::atan2(s, c);
}

// ---------------------------------------------------------------------------
// 2D polygon kernel.

struct P2 {
  double x = 0.0, y = 0.0;
  P2() = default;
  P2(double xx, double yy) : x(xx), y(yy) {}
  P2 operator+(const P2& o) const { return {x + o.x, y + o.y}; }
  P2 operator-(const P2& o) const { return {x - o.x, y - o.y}; }
  P2 operator*(double s) const { return {x * s, y * s}; }
};
inline double dot(const P2& a, const P2& b) { return a.x * b.x + a.y * b.y; }
inline double cross2(const P2& a, const P2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const P2& a) { return std::hypot(a.x, a.y); }
inline double dist(const P2& a, const P2& b) { return norm(a - b); }

using Polygon2 = std::vector<P2>;

/// Clip a convex polygon against the half-plane {p : <p,a> <= b}.
Polygon2 clip_halfplane(const Polygon2& poly, const P2& a, double b);

/// Signed area (positive for counterclockwise vertex order).
double polygon_area_signed(const Polygon2& poly);
inline double polygon_area(const Polygon2& poly) {
  return std::fabs(polygon_area_signed(poly));
}

/// Area by fan triangulation from the centroid with Kahan summation.
double polygon_area_fan_kahan(const Polygon2& poly);

P2 polygon_centroid(const Polygon2& poly);

/// Axis-aligned square [-r,r]^2 as a starting polygon for clipping.
Polygon2 box_polygon(double r);

bool point_in_convex_polygon(const Polygon2& poly, const P2& p, double tol);

double point_segment_distance(const P2& p, const P2& a, const P2& b);

/// Distance from a point to the polygon boundary (0 only on the boundary).
double point_polygon_boundary_distance(const Polygon2& poly, const P2& p);

/// Exact Hausdorff distance between two convex polygons.
double convex_polygon_hausdorff(const Polygon2& A, const Polygon2& B);

/// max over x in boundary(K) of dist(x, boundary(L)), K convex inside L.
double max_boundary_gap(const Polygon2& K, const Polygon2& L);

/// Convex hull (counterclockwise, collinear points dropped).
Polygon2 convex_hull_2d(std::vector<P2> pts);

// ---------------------------------------------------------------------------
// Small linear algebra.

/// Solve a 2x2 system; throws on (near-)singular matrix.
P2 solve2x2(double a11, double a12, double a21, double a22, double b1, double b2);

/// Solve a 3x3 system by partial-pivot elimination; false when singular.
bool solve3x3(const double A[3][3], const double b[3], double x[3]);

/// Numerical rank of an m x n (n<=3) matrix via column pivoting.
int rank_small(const std::vector<Vec>& rows, int n, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Linear programming in dimensions 1..3 (deterministic Seidel-style
// incremental algorithm, bounded by a box of radius R).

struct HalfSpace {
  Vec a;     // outward normal, <x,a> <= b
  double b = 0.0;
};

/// Maximize <c,x> over {x : <a_i,x> <= b_i} ∩ [-R,R]^dim.
/// Returns nullopt when infeasible.
std::optional<Vec> lp_max(const Vec& c, const std::vector<HalfSpace>& cons,
                          double R);

// ---------------------------------------------------------------------------
// Deterministic RNG (explicit seeds everywhere, no ambient randomness).

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  uint64_t next_u64() {
    // xorshift64*
    uint64_t x = state;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state = x;
    return x * 0x2545F4914F6CDD1DULL;
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }
};

/// FNV-1a 64-bit hash of a string, hex encoded (report config hashes).
std::string fnv1a_hex(const std::string& s);

}  // namespace conemink
