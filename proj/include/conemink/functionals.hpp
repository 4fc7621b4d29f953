#pragma once

#include <string>
#include <vector>

#include "conemink/measure.hpp"

namespace conemink {

/// Right-continuous step profile alpha -> mu(omega_alpha) of an atomic
/// measure: breakpoints are the distinct atom boundary distances in
/// decreasing order, cum[k] the mass strictly above the k-th breakpoint's
/// lower neighbour.
struct LayerProfile {
  std::vector<double> deltas;  // strictly decreasing
  std::vector<double> cum;     // cum[k] = mass of atoms with delta >= deltas[k]

  static LayerProfile from_measure(const DiscreteMeasure& mu);
  static LayerProfile from_pairs(std::vector<std::pair<double, double>> delta_weight);

  double mass_above(double alpha) const;  // mu(omega_alpha), strict
  double total() const { return cum.empty() ? 0.0 : cum.back(); }
};

/// J_m: integral over alpha of mu(omega_alpha)^{1/m}; exact on step profiles.
double j_functional(const LayerProfile& p, double m);
double j_functional(const DiscreteMeasure& mu, double m);

/// Gamma_m: integral of mu(omega_alpha) * alpha^m; exact on step profiles
/// and linear in the measure.
double gamma_functional(const LayerProfile& p, double m);
double gamma_functional(const DiscreteMeasure& mu, double m);

struct SchneiderReport {
  std::vector<double> alphas;  // evaluation grid
  std::vector<double> values;  // alpha^{n-1} * mu(omega_alpha)
  double sup = 0.0;            // exact sup over all alpha
  bool eventually_nonincreasing = true;  // trend toward alpha -> 0
  double j_value = 0.0;                  // J_{n-1+eps}
  bool j_finite = true;
};

/// Growth profile alpha^{n-1} mu(omega_alpha) with its exact sup, plus the
/// J_{n-1+eps} finiteness flag.
SchneiderReport schneider_bound(const PseudoCone& k, const std::vector<double>& alphas,
                                double eps = 0.5);
SchneiderReport schneider_profile(const LayerProfile& p, int dim,
                                  const std::vector<double>& alphas, double eps = 0.5);

/// Truncation family: layer profiles of the partial measures at increasing
/// depths (typically doubling).
struct FunctionalFamily {
  std::vector<long> depths;
  std::vector<LayerProfile> stages;
};

struct TrendReport {
  std::vector<long> depths;
  std::vector<double> values;
  double slope = 0.0;   // mean log2 ratio over the last doublings
  std::string verdict;  // "bounded" | "diverging" | "inconclusive"
};

TrendReport j_trend(const FunctionalFamily& fam, double m);
TrendReport gamma_trend(const FunctionalFamily& fam, double m);

struct ConvertReport {
  TrendReport j_m;            // J_m partial sums
  TrendReport gamma_shifted;  // Gamma_{m-1+eps}
  TrendReport gamma_m;        // Gamma_m partial sums
  TrendReport j_shifted;      // J_{m+1+eps}
  bool forward_holds = true;  // J_m bounded => Gamma_{m-1+eps} bounded
  bool backward_holds = true; // Gamma_m bounded => J_{m+1+eps} bounded
  double witness_c0 = 0.0;    // sup of alpha * mu(omega_alpha)^{1/m}
};

/// Numerical check of the two conversion implications on a family, with the
/// witness bound mu(omega_alpha)^{1/m} <= c0/alpha.
ConvertReport convert(const FunctionalFamily& fam, double m, double eps);

}  // namespace conemink
