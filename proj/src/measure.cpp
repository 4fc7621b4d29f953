#include "conemink/measure.hpp"

#include <algorithm>
#include <cmath>

namespace conemink {

namespace {
constexpr double kAtomMergeAngle = 1e-10;
}

DiscreteMeasure::DiscreteMeasure(ConePtr cone, std::vector<Atom> atoms)
    : cone_(std::move(cone)) {
  for (const auto& a : atoms) add(a.dir.v, a.weight);
}

void DiscreteMeasure::add(const Vec& v, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("atom weights must be positive");
  Direction d = cone_->direction(v);
  if (d.delta <= 0.0)
    throw std::invalid_argument("atom direction on the domain boundary");
  for (auto& a : atoms_)
    if (angle_between(a.dir.v, d.v) <= kAtomMergeAngle) {
      a.weight += w;
      return;
    }
  atoms_.push_back({d, w});
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  DiscreteMeasure out(cone_);
  for (const auto& a : atoms_) out.add(a.dir.v, a.weight * factor);
  return out;
}

double DiscreteMeasure::mass_above(double alpha, bool closed) const {
  double s = 0.0;
  // the closed variant absorbs one ulp of rounding in the stored deltas
  double thr = closed ? alpha - 1e-12 * std::max(1.0, alpha) : alpha;
  for (const auto& a : atoms_)
    if (closed ? a.dir.delta >= thr : a.dir.delta > thr) s += a.weight;
  return s;
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  DiscreteMeasure out(a.cone_ptr());
  for (const auto& x : a.atoms()) out.add(x.dir.v, x.weight);
  for (const auto& x : b.atoms()) out.add(x.dir.v, x.weight);
  return out;
}

DiscreteMeasure surface_measure(const PseudoCone& k) {
  DiscreteMeasure mu(k.cone_ptr());
  for (const auto& f : k.facets()) {
    if (f.cut_index < 0 || !f.bounded) continue;
    if (f.delta <= 1e-12) continue;  // normals on the domain boundary excluded
    if (!(f.area > 0.0)) continue;
    mu.add(f.normal, f.area);
  }
  return mu;
}

DiscreteMeasure restrict(const DiscreteMeasure& mu, double alpha, bool closed) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  DiscreteMeasure out(mu.cone_ptr());
  double thr = closed ? alpha - 1e-12 * std::max(1.0, alpha) : alpha;
  for (const auto& a : mu.atoms())
    if (closed ? a.dir.delta >= thr : a.dir.delta > thr) out.add(a.dir.v, a.weight);
  return out;
}

double ma_pullback(const DiscreteMeasure& mu, const std::vector<size_t>& atom_indices) {
  double s = 0.0;
  for (size_t i : atom_indices) {
    if (i >= mu.size()) throw std::out_of_range("atom index out of range");
    const Atom& a = mu.atoms()[i];
    s += a.weight * std::fabs(a.dir.v.x());
  }
  return s;
}

double ma_pullback(const PseudoCone& k, const std::vector<size_t>& atom_indices) {
  return ma_pullback(surface_measure(k), atom_indices);
}

}  // namespace conemink
