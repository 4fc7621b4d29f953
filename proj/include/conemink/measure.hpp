#pragma once

#include <vector>

#include "conemink/pseudocone.hpp"

namespace conemink {

struct Atom {
  Direction dir;
  double weight = 0.0;
};

/// Finite atomic Borel measure on the open spherical domain of a cone.
/// Atoms closer than 1e-10 in angle are merged with summed weights.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(ConePtr cone) : cone_(std::move(cone)) {}
  DiscreteMeasure(ConePtr cone, std::vector<Atom> atoms);

  const Cone& cone() const { return *cone_; }
  const ConePtr& cone_ptr() const { return cone_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  size_t size() const { return atoms_.size(); }
  double total_mass() const;

  void add(const Vec& v, double w);  // validates and merges

  DiscreteMeasure scaled(double factor) const;

  /// mu(omega_alpha) for the open variant (delta > alpha) or the closed
  /// variant (delta >= alpha).
  double mass_above(double alpha, bool closed = false) const;

 private:
  ConePtr cone_;
  std::vector<Atom> atoms_;
};

/// Sum of two measures over the same cone (atomwise merge).
DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Surface area measure of a polyhedral pseudo cone: one atom per bounded
/// facet whose normal lies strictly inside the domain; weight is the
/// (n-1)-dimensional facet area.
DiscreteMeasure surface_measure(const PseudoCone& k);

/// Restriction to omega_alpha: keeps atoms with delta > alpha (strict) or
/// delta >= alpha (closed variant).
DiscreteMeasure restrict(const DiscreteMeasure& mu, double alpha, bool closed = false);

/// Sum over the selected atoms of weight * |<v, e1>|; equals the
/// Monge-Ampere mass of the chart function over the corresponding nodes.
double ma_pullback(const DiscreteMeasure& mu, const std::vector<size_t>& atom_indices);
double ma_pullback(const PseudoCone& k, const std::vector<size_t>& atom_indices);

}  // namespace conemink
