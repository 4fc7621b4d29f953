#include "conemink/mink2d.hpp"

#include <algorithm>
#include <cmath>

namespace conemink {

namespace {
constexpr double kAtomMergeAngle = 1e-10;
}

AngularMeasure::AngularMeasure(double b0, std::vector<AngularAtom> raw) : beta0(b0) {
  if (!(beta0 > 0.0 && beta0 < M_PI / 2))
    throw std::invalid_argument("beta0 must lie in (0, pi/2)");
  std::sort(raw.begin(), raw.end(),
            [](const AngularAtom& a, const AngularAtom& b) { return a.theta < b.theta; });
  for (const auto& a : raw) {
    if (!(a.weight > 0.0)) throw std::invalid_argument("atom weights must be positive");
    if (!(std::fabs(a.theta) < beta0))
      throw std::invalid_argument("atom angle outside the open interval");
    if (!atoms.empty() && a.theta - atoms.back().theta <= kAtomMergeAngle)
      atoms.back().weight += a.weight;
    else
      atoms.push_back(a);
  }
}

double AngularMeasure::total() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

AngularMeasure to_angular(const DiscreteMeasure& mu) {
  if (mu.cone().dim() != 2)
    throw std::invalid_argument("angular identification requires a 2D cone");
  std::vector<AngularAtom> atoms;
  for (const auto& a : mu.atoms())
    atoms.push_back({std::atan2(a.dir.v.y(), a.dir.v.x()), a.weight});
  return AngularMeasure(mu.cone().beta0(), std::move(atoms));
}

DiscreteMeasure to_discrete(const AngularMeasure& am, ConePtr cone) {
  if (!cone) cone = Cone::make2d(am.beta0);
  DiscreteMeasure mu(cone);
  for (const auto& a : am.atoms)
    mu.add(Vec(std::cos(a.theta), std::sin(a.theta)), a.weight);
  return mu;
}

PseudoCone solve2d(const AngularMeasure& mu, ConePtr cone, Solve2dInfo* info) {
  if (!cone) cone = Cone::make2d(mu.beta0);
  if (cone->dim() != 2 || std::fabs(cone->beta0() - mu.beta0) > 1e-12)
    throw std::invalid_argument("cone does not match the measure's beta0");
  const long double b0 = mu.beta0;
  if (mu.atoms.empty()) {
    if (info) {
      info->z0 = Vec(0.0, 0.0);
      info->cond = 1.0;
    }
    return PseudoCone::cone_only(cone);
  }

  // chain the edge vectors in increasing angle
  size_t n = mu.atoms.size();
  std::vector<std::array<long double, 2>> pts(n + 1);
  pts[0] = {0.0L, 0.0L};
  for (size_t i = 0; i < n; ++i) {
    long double th = mu.atoms[i].theta, w = mu.atoms[i].weight;
    pts[i + 1] = {pts[i][0] - w * std::sin(th), pts[i][1] + w * std::cos(th)};
  }
  // translate so both capping rays lie on the cone boundary:
  // <z0, v+> = <P_n, v+>, <z0, v-> = <P_0, v->
  long double c = std::cos(b0), s = std::sin(b0);
  long double bp = pts[n][0] * c + pts[n][1] * s;
  long double bm = pts[0][0] * c - pts[0][1] * s;
  long double det = -2.0L * s * c;
  long double zx = (bp * (-s) - s * bm) / det;
  long double zy = (c * bm - c * bp) / det;

  std::vector<Cut> cuts;
  cuts.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    long double th = mu.atoms[i].theta;
    long double mx = 0.5L * (pts[i][0] + pts[i + 1][0]) - zx;
    long double my = 0.5L * (pts[i][1] + pts[i + 1][1]) - zy;
    long double h = mx * std::cos(th) + my * std::sin(th);
    cuts.push_back({Vec(std::cos(static_cast<double>(th)),
                        std::sin(static_cast<double>(th))),
                    static_cast<double>(h)});
  }
  if (info) {
    info->z0 = Vec(static_cast<double>(zx), static_cast<double>(zy));
    double hi = std::max(static_cast<double>(c), static_cast<double>(s));
    double lo = std::min(static_cast<double>(c), static_cast<double>(s));
    info->cond = hi / lo;
  }
  return PseudoCone(std::move(cone), std::move(cuts));
}

NecessityReport necessity_check(const PseudoCone& k) {
  if (k.cone().dim() != 2) throw std::invalid_argument("2D pseudo cone required");
  auto chk = k.is_asymptotic(1e-9);
  if (!chk.asymptotic) throw std::invalid_argument("asymptotic set required");
  NecessityReport rep;
  const double b0 = k.cone().beta0();
  const auto& ch = k.chain2();
  size_t m = ch.theta.size();
  if (m <= 2) {
    rep.trivial = true;  // K = C
    return rep;
  }
  // boundary crossing with the negative first axis (chain y is increasing)
  bool found = false;
  for (size_t i = 1; i + 1 < m && !found; ++i) {
    const P2& a = ch.verts[i - 1];
    const P2& b = ch.verts[i];
    if (a.y <= 0.0 && b.y >= 0.0) {
      double w = b.y - a.y > 0.0 ? -a.y / (b.y - a.y) : 0.0;
      rep.x0 = Vec(a.x + (b.x - a.x) * w, 0.0);
      rep.alpha0 = ch.theta[i];
      found = true;
    }
  }
  if (!found) {
    // crossing at an extreme chain vertex; the normal cone there contains
    // the angle closest to zero
    if (ch.verts.front().y > 0.0) {
      rep.x0 = Vec(ch.verts.front().x, 0.0);
      rep.alpha0 = ch.theta[1];
    } else {
      rep.x0 = Vec(ch.verts.back().x, 0.0);
      rep.alpha0 = ch.theta[m - 2];
    }
  }
  // weighted projections of the two boundary halves (edge portions above and
  // below the axis)
  long double lhs_plus = 0.0L, lhs_minus = 0.0L;
  for (size_t i = 1; i + 1 < m; ++i) {
    const P2& a = ch.verts[i - 1];
    const P2& b = ch.verts[i];
    double len = dist(a, b);
    if (len <= 0.0) continue;
    double th = ch.theta[i];
    double above, below;
    if (a.y >= 0.0) {
      above = len;
      below = 0.0;
    } else if (b.y <= 0.0) {
      above = 0.0;
      below = len;
    } else {
      double w = -a.y / (b.y - a.y);
      below = len * w;
      above = len * (1.0 - w);
    }
    lhs_plus += static_cast<long double>(above) * std::sin(b0 - th);
    lhs_minus += static_cast<long double>(below) * std::sin(b0 + th);
  }
  rep.lhs_plus = static_cast<double>(lhs_plus);
  rep.lhs_minus = static_cast<double>(lhs_minus);
  rep.rhs_plus = rep.rhs_minus = std::fabs(rep.x0.x()) * std::cos(b0);
  double scale = std::max(1.0, rep.rhs_plus);
  rep.holds = rep.lhs_plus <= rep.rhs_plus + 1e-12 * scale &&
              rep.lhs_minus <= rep.rhs_minus + 1e-12 * scale;
  return rep;
}

namespace {

// exact layer-cake integral of a step profile
double layer_cake_integral(const AngularMeasure& mu) {
  std::vector<std::pair<double, double>> dw;  // (delta, weight)
  for (const auto& a : mu.atoms) dw.push_back({mu.beta0 - std::fabs(a.theta), a.weight});
  std::sort(dw.begin(), dw.end(), [](auto& a, auto& b) { return a.first > b.first; });
  double acc = 0.0, cum = 0.0;
  for (size_t i = 0; i < dw.size(); ++i) {
    cum += dw[i].second;
    double lo = i + 1 < dw.size() ? dw[i + 1].first : 0.0;
    acc += cum * (dw[i].first - lo);
  }
  return acc;
}

void fill_verdict(ConditionReport& rep) {
  size_t n = rep.partial_sums.size();
  if (n < 2) {
    rep.verdict = "finite";
    return;
  }
  double last = rep.partial_sums[n - 1];
  double prev = rep.partial_sums[n - 2];
  if (last - prev <= 1e-9 * std::max(1.0, last)) {
    rep.verdict = "converges";
    return;
  }
  int growing = 0;
  for (size_t i = n >= 4 ? n - 3 : 1; i < n; ++i)
    if (rep.partial_sums[i] >= 1.05 * rep.partial_sums[i - 1]) ++growing;
  rep.verdict = growing >= 2 ? "diverges" : "inconclusive";
}

}  // namespace

ConditionReport condition_value(const AngularMeasure& mu) {
  ConditionReport rep;
  rep.layer_cake = layer_cake_integral(mu);
  long double fub = 0.0L, sform = 0.0L;
  for (const auto& a : mu.atoms) {
    fub += static_cast<long double>(a.weight) * (mu.beta0 - std::fabs(a.theta));
    sform += static_cast<long double>(a.weight) *
             std::sin(static_cast<long double>(mu.beta0 - std::fabs(a.theta)));
  }
  rep.fubini = static_cast<double>(fub);
  rep.sin_form = static_cast<double>(sform);
  rep.verdict = "finite";
  return rep;
}

AngularAtom TailFamily::atom(long k) const {
  std::map<std::string, double> env = params;
  env["k"] = static_cast<double>(k);
  env["beta0"] = beta0;
  AngularAtom a;
  a.theta = theta.eval(env);
  a.weight = w.eval(env);
  return a;
}

AngularMeasure TailFamily::truncate(double delta_min, long cap) const {
  std::vector<AngularAtom> atoms;
  long limit = max_k > 0 ? std::min(max_k, cap) : cap;
  for (long k = 1; k <= limit; ++k) {
    AngularAtom a = atom(k);
    if (!(a.weight > 0.0)) throw std::invalid_argument("family weights must be positive");
    double delta = beta0 - std::fabs(a.theta);
    if (delta < delta_min) break;  // |theta_k| increases monotonically
    if (!(delta > 0.0)) break;
    atoms.push_back(a);
  }
  return AngularMeasure(beta0, std::move(atoms));
}

ConditionReport condition_value(const TailFamily& fam) {
  ConditionReport rep;
  long double fub = 0.0L, sform = 0.0L;
  long depth_marks[6] = {10, 100, 1000, 10000, 100000, 1000000};
  size_t mark = 0;
  long limit = fam.max_k > 0 ? fam.max_k : 1000000;
  for (long k = 1; k <= limit && mark < 6; ++k) {
    AngularAtom a = fam.atom(k);
    double delta = fam.beta0 - std::fabs(a.theta);
    if (delta <= 0.0) break;
    fub += static_cast<long double>(a.weight) * delta;
    sform += static_cast<long double>(a.weight) * std::sin(static_cast<long double>(delta));
    while (mark < 6 && k == depth_marks[mark]) {
      rep.depths.push_back(depth_marks[mark]);
      rep.partial_sums.push_back(static_cast<double>(fub));
      rep.sin_partial_sums.push_back(static_cast<double>(sform));
      ++mark;
    }
  }
  // when the atom stream ends early (max_k, or deltas underflowing to the
  // boundary) deeper partial sums equal the final sum; pad the marks
  for (; mark < 6; ++mark) {
    rep.depths.push_back(depth_marks[mark]);
    rep.partial_sums.push_back(static_cast<double>(fub));
    rep.sin_partial_sums.push_back(static_cast<double>(sform));
  }
  rep.fubini = static_cast<double>(fub);
  rep.sin_form = static_cast<double>(sform);
  fill_verdict(rep);
  if (fam.max_k > 0) rep.verdict = "finite";
  return rep;
}

Approx2dResult approximate2d(const TailFamily& fam, long depth,
                             const std::vector<double>& heights_in) {
  Approx2dResult out;
  out.condition = condition_value(fam);
  if (out.condition.verdict == "diverges" || out.condition.verdict == "inconclusive") {
    out.refused = true;
    out.refusal =
        "integrability condition " + out.condition.verdict +
        "; truncation distances are not uniformly bounded (see partial sums)";
    return out;
  }
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");

  std::vector<long> ladder;
  for (long i = 1; i < depth; i *= 2) ladder.push_back(i);
  ladder.push_back(depth);

  ConePtr cone = Cone::make2d(fam.beta0);
  std::vector<double> heights = heights_in;
  std::vector<PseudoCone> iterates;
  const double cb0 = std::cos(fam.beta0);
  for (long i : ladder) {
    AngularMeasure mi = fam.truncate(1.0 / static_cast<double>(i));
    Approx2dStage st;
    st.i = i;
    st.atom_count = mi.atoms.size();
    PseudoCone Ki = solve2d(mi, cone);
    st.dist_origin = Ki.dist_origin();
    if (!mi.atoms.empty()) {
      NecessityReport nr = necessity_check(Ki);
      st.x0_norm = std::fabs(nr.x0.x());
      // closed-interval projection integrals on both sides of alpha0
      double up = 0.0, down = 0.0;
      for (const auto& a : mi.atoms) {
        if (a.theta >= nr.alpha0 - 1e-15) up += a.weight * std::sin(fam.beta0 - a.theta);
        if (a.theta <= nr.alpha0 + 1e-15) down += a.weight * std::sin(fam.beta0 + a.theta);
      }
      st.bound = std::min(up, down) / cb0;
    }
    if (heights.empty() && st.x0_norm > 0.0) {
      double base = std::max(1.0, 2.0 * st.x0_norm);
      heights = {base, 2.0 * base, 4.0 * base};
    }
    if (!iterates.empty() && !heights.empty())
      for (double t : heights)
        st.dh_prev.push_back(hausdorff_truncated(iterates.back(), Ki, t));
    iterates.push_back(Ki);
    out.stages.push_back(std::move(st));
  }
  for (size_t s = 2; s < out.stages.size(); ++s)
    for (size_t h = 0; h < out.stages[s].dh_prev.size(); ++h)
      if (h < out.stages[s - 1].dh_prev.size() &&
          out.stages[s].dh_prev[h] > out.stages[s - 1].dh_prev[h] + 1e-12)
        out.gaps_monotone = false;
  if (!iterates.empty()) out.K = iterates.back();
  return out;
}

}  // namespace conemink
