#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conemink/expr.hpp"
#include "conemink/measure.hpp"

namespace conemink {

struct AngularAtom {
  double theta = 0.0;
  double weight = 0.0;
};

/// Measure on the angular interval (-beta0, beta0); atoms sorted ascending,
/// duplicates within 1e-10 merged on construction.
struct AngularMeasure {
  double beta0 = 0.0;
  std::vector<AngularAtom> atoms;

  AngularMeasure() = default;
  AngularMeasure(double b0, std::vector<AngularAtom> raw);
  double total() const;
};

AngularMeasure to_angular(const DiscreteMeasure& mu);
DiscreteMeasure to_discrete(const AngularMeasure& am, ConePtr cone);

struct Solve2dInfo {
  Vec z0;              // applied translation
  double cond = 1.0;   // condition of the 2x2 boundary system
};

/// Exact 2D construction: chain the edge vectors w_i*(-sin t, cos t) in
/// increasing angle, cap with the two boundary rays, translate so both rays
/// lie on the cone boundary. Empty measure returns C.
PseudoCone solve2d(const AngularMeasure& mu, ConePtr cone = nullptr,
                   Solve2dInfo* info = nullptr);

struct NecessityReport {
  bool trivial = false;  // K = C, zero measure
  Vec x0;                // boundary point on the negative first axis
  double alpha0 = 0.0;   // outer normal angle at x0
  double lhs_plus = 0.0, rhs_plus = 0.0;    // upper projection bound
  double lhs_minus = 0.0, rhs_minus = 0.0;  // lower projection bound
  bool holds = true;
};

/// Projection bounds of the necessity direction: the weighted normal sums of
/// the two boundary halves may not exceed the distances from x0 to the two
/// boundary lines.
NecessityReport necessity_check(const PseudoCone& k);

struct ConditionReport {
  double layer_cake = 0.0;  // direct integral of mu(omega_alpha)
  double fubini = 0.0;      // sum of w_i * (beta0 - |theta_i|)
  double sin_form = 0.0;    // sum of w_i * sin(beta0 - |theta_i|)
  std::vector<long> depths;
  std::vector<double> partial_sums;      // fubini form per depth
  std::vector<double> sin_partial_sums;  // sine comparison per depth
  std::string verdict;  // "finite" | "converges" | "diverges" | "inconclusive"
  double value() const { return fubini; }
};

ConditionReport condition_value(const AngularMeasure& mu);

/// Closed-form generator family (theta_k, w_k) of atoms drifting toward the
/// boundary; |theta_k| must increase monotonically toward beta0.
struct TailFamily {
  double beta0 = 0.0;
  Expr theta;
  Expr w;
  std::map<std::string, double> params;
  long max_k = 0;  // 0: unbounded family

  AngularAtom atom(long k) const;
  /// Atoms with boundary distance >= delta_min (enumeration stops at the
  /// first atom below, or at max_k / the safety cap).
  AngularMeasure truncate(double delta_min, long cap = 1000000) const;
};

ConditionReport condition_value(const TailFamily& fam);

struct Approx2dStage {
  long i = 0;  // truncation: atoms with delta >= 1/i
  size_t atom_count = 0;
  double dist_origin = 0.0;
  double x0_norm = 0.0;
  double bound = 0.0;  // min projection integral / cos(beta0)
  std::vector<double> dh_prev;
};

struct Approx2dResult {
  bool refused = false;
  std::string refusal;  // set when the integrability condition diverges
  ConditionReport condition;
  std::vector<Approx2dStage> stages;
  std::optional<PseudoCone> K;  // last iterate
  bool gaps_monotone = true;
};

/// Truncation sequence for a tail family: solve atoms with delta >= 1/i for
/// a doubling ladder of i up to `depth`; refuses when the integrability
/// condition diverges.
Approx2dResult approximate2d(const TailFamily& fam, long depth,
                             const std::vector<double>& heights = {});

}  // namespace conemink
