#include "conemink/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace conemink {

LayerProfile LayerProfile::from_measure(const DiscreteMeasure& mu) {
  std::vector<std::pair<double, double>> dw;
  dw.reserve(mu.size());
  for (const auto& a : mu.atoms()) dw.push_back({a.dir.delta, a.weight});
  return from_pairs(std::move(dw));
}

LayerProfile LayerProfile::from_pairs(std::vector<std::pair<double, double>> dw) {
  std::sort(dw.begin(), dw.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  LayerProfile p;
  double cum = 0.0;
  for (const auto& [delta, w] : dw) {
    if (!(w > 0.0)) throw std::invalid_argument("profile weights must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("profile deltas must be positive");
    cum += w;
    if (!p.deltas.empty() && p.deltas.back() - delta < 1e-14) {
      p.cum.back() = cum;
    } else {
      p.deltas.push_back(delta);
      p.cum.push_back(cum);
    }
  }
  return p;
}

double LayerProfile::mass_above(double alpha) const {
  double m = 0.0;
  for (size_t k = 0; k < deltas.size(); ++k)
    if (deltas[k] > alpha) m = cum[k];
  return m;
}

double j_functional(const LayerProfile& p, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("j_functional requires m > 0");
  long double acc = 0.0L;
  for (size_t k = 0; k < p.deltas.size(); ++k) {
    long double lo = k + 1 < p.deltas.size() ? p.deltas[k + 1] : 0.0L;
    acc += std::pow(static_cast<long double>(p.cum[k]), 1.0L / m) *
           (static_cast<long double>(p.deltas[k]) - lo);
  }
  return static_cast<double>(acc);
}

double j_functional(const DiscreteMeasure& mu, double m) {
  return j_functional(LayerProfile::from_measure(mu), m);
}

double gamma_functional(const LayerProfile& p, double m) {
  if (!(m > -1.0)) throw std::invalid_argument("gamma_functional requires m > -1");
  long double acc = 0.0L;
  long double e = m + 1.0L;
  for (size_t k = 0; k < p.deltas.size(); ++k) {
    long double hi = std::pow(static_cast<long double>(p.deltas[k]), e);
    long double lo =
        k + 1 < p.deltas.size() ? std::pow(static_cast<long double>(p.deltas[k + 1]), e)
                                : 0.0L;
    acc += static_cast<long double>(p.cum[k]) * (hi - lo) / e;
  }
  return static_cast<double>(acc);
}

double gamma_functional(const DiscreteMeasure& mu, double m) {
  return gamma_functional(LayerProfile::from_measure(mu), m);
}

SchneiderReport schneider_profile(const LayerProfile& p, int dim,
                                  const std::vector<double>& alphas, double eps) {
  SchneiderReport rep;
  double e = static_cast<double>(dim - 1);
  rep.alphas = alphas;
  for (double a : alphas) rep.values.push_back(std::pow(a, e) * p.mass_above(a));
  // exact sup: the profile is constant between breakpoints, so each layer's
  // sup is attained approaching the breakpoint from below
  std::vector<double> candidates;
  for (size_t k = 0; k < p.deltas.size(); ++k)
    candidates.push_back(std::pow(p.deltas[k], e) * p.cum[k]);
  for (double c : candidates) rep.sup = std::max(rep.sup, c);
  for (size_t k = 1; k < candidates.size(); ++k)
    if (candidates[k] > candidates[k - 1] + 1e-12) rep.eventually_nonincreasing = false;
  rep.j_value = j_functional(p, e + eps);
  rep.j_finite = std::isfinite(rep.j_value);
  return rep;
}

SchneiderReport schneider_bound(const PseudoCone& k, const std::vector<double>& alphas,
                                double eps) {
  return schneider_profile(LayerProfile::from_measure(surface_measure(k)),
                           k.cone().dim(), alphas, eps);
}

namespace {

TrendReport trend(const FunctionalFamily& fam, double m, bool use_j) {
  TrendReport rep;
  rep.depths = fam.depths;
  for (const auto& p : fam.stages)
    rep.values.push_back(use_j ? j_functional(p, m) : gamma_functional(p, m));
  size_t n = rep.values.size();
  if (n < 2) {
    rep.verdict = "bounded";
    return rep;
  }
  int growing = 0, windows = 0;
  double slope_acc = 0.0;
  std::vector<double> ratios;
  size_t start = n >= 4 ? n - 3 : 1;
  for (size_t i = start; i < n; ++i) {
    double prev = rep.values[i - 1], cur = rep.values[i];
    ++windows;
    if (prev > 0.0 && cur >= 1.05 * prev) ++growing;
    if (prev > 0.0 && cur > 0.0) {
      slope_acc += std::log2(cur / prev);
      ratios.push_back(cur / prev);
    }
  }
  rep.slope = windows ? slope_acc / windows : 0.0;
  double last = rep.values[n - 1], prev = rep.values[n - 2];
  bool ratios_settling =
      ratios.size() < 2 || ratios.back() <= ratios[ratios.size() - 2] + 1e-9;
  if (growing == windows && windows >= 2)
    rep.verdict = "diverging";
  else if (last - prev <= 1e-9 * std::max(1.0, last) ||
           (!ratios.empty() && ratios.back() <= 1.02 && ratios_settling))
    rep.verdict = "bounded";
  else
    rep.verdict = "inconclusive";
  return rep;
}

}  // namespace

TrendReport j_trend(const FunctionalFamily& fam, double m) { return trend(fam, m, true); }
TrendReport gamma_trend(const FunctionalFamily& fam, double m) {
  return trend(fam, m, false);
}

ConvertReport convert(const FunctionalFamily& fam, double m, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("convert requires eps > 0");
  ConvertReport rep;
  rep.j_m = j_trend(fam, m);
  rep.gamma_shifted = gamma_trend(fam, m - 1.0 + eps);
  rep.gamma_m = gamma_trend(fam, m);
  rep.j_shifted = j_trend(fam, m + 1.0 + eps);
  if (rep.j_m.verdict == "bounded" && rep.gamma_shifted.verdict == "diverging")
    rep.forward_holds = false;
  if (rep.gamma_m.verdict == "bounded" && rep.j_shifted.verdict == "diverging")
    rep.backward_holds = false;
  if (!fam.stages.empty()) {
    const LayerProfile& deepest = fam.stages.back();
    for (size_t k = 0; k < deepest.deltas.size(); ++k)
      rep.witness_c0 = std::max(
          rep.witness_c0, deepest.deltas[k] * std::pow(deepest.cum[k], 1.0 / m));
  }
  return rep;
}

}  // namespace conemink
