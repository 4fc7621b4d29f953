#pragma once

#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "conemink/cone.hpp"

namespace conemink {

/// Half-space {x : <x,v> <= h} with unit normal v in the closed spherical
/// domain and h <= 0.
struct Cut {
  Vec v;
  double h = 0.0;
};

/// Bounded facet of a pseudo cone (or of a slice polytope).
struct Facet {
  Vec normal;
  double offset = 0.0;
  double area = 0.0;
  double delta = 0.0;           // boundary distance of the normal
  int cut_index = -1;           // -1: cone boundary or slice plane
  bool bounded = true;
  std::vector<Vec> vertices;    // boundary loop, empty when unbounded
};

/// Bounded slice K^-(t) = K ∩ {<x,u_*> <= t}.
struct Slice {
  double t = 0.0;
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
  Polygon2 polygon;  // 2D slices only
};

/// Polyhedral C-pseudo set K = C ∩ ⋂_i H^-(v_i, h_i), immutable.
/// Duplicate cut normals are merged on construction (keeping the smaller h);
/// cuts whose facet has zero measure are flagged redundant.
class PseudoCone {
 public:
  PseudoCone(ConePtr cone, std::vector<Cut> cuts);
  static PseudoCone cone_only(ConePtr cone) { return PseudoCone(std::move(cone), {}); }

  const Cone& cone() const { return *cone_; }
  const ConePtr& cone_ptr() const { return cone_; }
  const std::vector<Cut>& cuts() const { return cuts_; }

  /// Exact support function value for v in the closed spherical domain.
  double support(const Vec& v) const;

  struct AsymptoticCheck {
    bool asymptotic = true;
    double worst = 0.0;  // most negative boundary support value found
    Vec witness;         // direction attaining it
  };
  AsymptoticCheck is_asymptotic(double tol = 1e-9) const;

  /// Translate so that boundary support values vanish (z0 solved from the
  /// boundary directions); throws "boundary data rank-deficient" when z0 is
  /// underdetermined.
  PseudoCone normalize_translation(Vec* z0_out = nullptr) const;

  PseudoCone translated(const Vec& z) const;  // K + z
  PseudoCone scaled(double lambda) const;     // lambda K, lambda > 0

  bool member(const Vec& x, double tol = 1e-9) const;
  double dist_origin() const;

  Slice slice(double t) const;

  /// Facets carried by cuts (bounded, with areas); cone-boundary facets are
  /// reported unbounded without geometry.
  const std::vector<Facet>& facets() const;

  /// Vertices of K (always finitely many; K has a pointed recession cone).
  const std::vector<Vec>& vertices() const;

  /// Indices of cuts that do not touch the boundary of K.
  std::vector<int> redundant_cuts() const;

  /// Height bound for the touching set of direction v: any x with
  /// <x,v> = h_K(v) has <x,u_*> <= |h_K(v)| / sin(delta(v)).
  double localization_height(const Vec& v) const;

  // 2D boundary chain (angles ascending; first/last entries are the two
  // boundary lines of the cone, possibly offset by boundary cuts).
  struct Chain2 {
    std::vector<double> theta;
    std::vector<double> offset;
    std::vector<int> cut_index;   // -1 for implicit boundary lines
    std::vector<P2> verts;        // verts[i] = line i ∩ line i+1
  };
  const Chain2& chain2() const;

 private:
  struct Geometry;
  const Geometry& geometry() const;

  ConePtr cone_;
  std::vector<Cut> cuts_;
  std::shared_ptr<Geometry> geom_;  // lazy, shared across copies
};

struct MinkowskiOptions {
  double truncation_height = std::numeric_limits<double>::infinity();
};

/// Minkowski sum of two pseudo cones over the same cone. Exact in 2D (edge
/// merge) and in 3D (facet + edge-pair normal enumeration). A finite
/// truncation_height asserts that all bounded structure lies below it.
PseudoCone minkowski_sum(const PseudoCone& K, const PseudoCone& L,
                         const MinkowskiOptions& opts = {});

/// Hausdorff distance between the slices K^-(t) and L^-(t).
double hausdorff_truncated(const PseudoCone& K, const PseudoCone& L, double t);

struct HausdorffBoundCheck {
  double dh = 0.0;        // measured Hausdorff distance
  double bound = 0.0;     // (1 + max|y-z|/r) * max boundary gap
  double max_gap = 0.0;
  bool holds = false;
};

/// Verify the inscribed-ball Hausdorff estimate for nested convex polygons
/// K ⊆ L with B(z,r) ⊆ K.
HausdorffBoundCheck hausdorff_bound_polygons(const Polygon2& K, const Polygon2& L,
                                             const P2& z, double r);

/// Same estimate applied to slices of nested pseudo cones.
HausdorffBoundCheck hausdorff_bound_slices(const PseudoCone& K, const PseudoCone& L,
                                           double t, const Vec& z, double r);

/// Distance from a point to a bounded convex polytope given by its facets.
double point_polytope_distance(const std::vector<Facet>& facets,
                               const std::vector<Vec>& vertices, const Vec& p);

/// Volume of a bounded slice (area in 2D, divergence-theorem sum in 3D).
double slice_volume(const Slice& s);

}  // namespace conemink
