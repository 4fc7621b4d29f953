#pragma once

#include <memory>
#include <vector>

#include "conemink/geometry.hpp"

namespace conemink {

enum class ConeKind { polyhedral, circular3d };

class Cone;
using ConePtr = std::shared_ptr<const Cone>;

/// Unit direction in the closed spherical domain of a cone, with its
/// spherical distance to the domain boundary cached.
struct Direction {
  Vec v;
  double delta = 0.0;
};

/// Chart image of the spherical domain: an interval for n=2, a convex
/// polygon for n=3 (counterclockwise vertices).
struct ChartDomain {
  int dim = 2;       // chart dimension (ambient n - 1)
  double lo = 0.0;   // dim==1
  double hi = 0.0;
  Polygon2 poly;     // dim==2
  std::vector<Vec> boundary_vertices() const;
  bool contains(const Vec& x, double tol = 0.0) const;
  double boundary_distance(const Vec& x) const;
  double diameter() const;
};

/// A pointed closed convex cone with nonempty interior, held in canonical
/// coordinates (axis u_* = -e1). Immutable after construction.
class Cone {
 public:
  /// 2D cone spanning polar angles [beta0+pi/2, 3pi/2-beta0].
  static ConePtr make2d(double beta0);
  /// Circular cone about -e1; beta is the half-angle of the spherical domain
  /// (the cone itself has half-angle pi/2 - beta).
  static ConePtr circular3d(double beta);
  /// Polyhedral 3D cone from generator rays (canonical coordinates).
  /// An explicit interior axis may be supplied when the ray mean is not one.
  static ConePtr from_rays(std::vector<Vec> rays, const Vec* axis = nullptr);
  /// Inscribed polyhedral stand-in for a circular cone: q generator rays on
  /// the boundary circle.
  static ConePtr polyhedral_standin(double beta, int q);

  int dim() const { return dim_; }
  ConeKind kind() const { return kind_; }
  double beta0() const { return beta0_; }          // 2D half-angle of Omega
  double circular_beta() const { return beta0_; }  // circular3d: same storage
  const std::vector<Vec>& rays() const { return rays_; }
  const std::vector<Vec>& dual_normals() const { return normals_; }
  Vec axis() const;  // u_* = -e1

  bool contains(const Vec& x, double tol = 1e-12) const;        // x in C
  bool dual_contains(const Vec& y, double tol = 1e-12) const;   // y in C°
  bool in_omega_closure(const Vec& v, double tol = 1e-12) const;

  /// Spherical distance from v (in the closed domain) to the domain boundary.
  double delta_boundary(const Vec& v) const;

  /// Validated direction with cached boundary distance.
  Direction direction(const Vec& v) const;

  ConePtr dual() const;

  Vec chart(const Vec& x) const;          // R^{n-1} -> direction
  Vec chart_inverse(const Vec& v) const;  // direction -> R^{n-1}

  /// Chart image of the domain. For circular3d an inscribed regular polygon
  /// with `vertex_count` vertices stands in for the disk.
  ChartDomain projected_domain(int vertex_count = 64) const;

  /// max over u in C∩S of <u,v>; equals -sin(delta_boundary(v)).
  double max_cone_dot(const Vec& v) const;

 private:
  Cone() = default;
  void validate() const;

  int dim_ = 2;
  ConeKind kind_ = ConeKind::polyhedral;
  double beta0_ = 0.0;  // 2D: half-angle of Omega; circular3d: domain half-angle
  std::vector<Vec> rays_;
  std::vector<Vec> normals_;
};

}  // namespace conemink
