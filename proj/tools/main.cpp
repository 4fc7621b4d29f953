#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "conemink/io.hpp"
#include "conemink/zoo3d.hpp"

using namespace conemink;

namespace {

int thread_cap() {
  const char* env = std::getenv("CONEMINK_THREADS");
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (!env) return hw;
  int n = std::atoi(env);
  return n > 0 ? std::min(n, hw) : 1;
}

// deterministic parallel map: every worker writes only its own slots
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  int workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

void write_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_text_file(path, j.dump(2) + "\n");
}

Json args_config(const std::vector<std::pair<std::string, Json>>& kv) {
  Json j;
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

AngularMeasure load_angular(const std::string& path) {
  Json j = load_json_file(path);
  if (j.contains("beta0")) return angular_from_json(j);
  return to_angular(measure_from_json(j));
}

Json stages_json(const std::vector<DominatedStage>& stages) {
  Json arr = Json::array();
  for (const auto& st : stages) {
    Json e;
    e["i"] = st.i;
    e["atoms"] = st.atom_count;
    e["dist_origin"] = st.dist_origin;
    e["min_support_slack"] = st.min_support_slack;
    e["dh_prev"] = st.dh_prev;
    arr.push_back(e);
  }
  return arr;
}

// ---------------------------------------------------------------------------
// verify suites: seeded pass/fail tables

struct SuiteRow {
  std::string name;
  bool pass = false;
  double value = 0.0;
};

using SuiteResult = std::vector<SuiteRow>;

AngularMeasure random_angular(double beta0, int n, Rng& rng) {
  std::vector<AngularAtom> atoms;
  double span = 2 * beta0 * 0.92, start = -beta0 * 0.92;
  for (int i = 0; i < n; ++i) {
    double cell = span / n;
    atoms.push_back({start + cell * (i + rng.uniform(0.15, 0.85)), rng.uniform(0.5, 2.0)});
  }
  return AngularMeasure(beta0, std::move(atoms));
}

ConePtr random_cone3(Rng& rng) {
  int n = rng.uniform_int(4, 7);
  std::vector<Vec> rays;
  for (int i = 0; i < n; ++i) {
    double phi = 2 * M_PI * (i + rng.uniform(0.2, 0.8)) / n;
    double rho = rng.uniform(0.4, 0.9);
    rays.push_back(normalized(Vec(-1.0, rho * std::cos(phi), rho * std::sin(phi))));
  }
  return Cone::from_rays(rays);
}

PseudoCone random_pc3(ConePtr cone, Rng& rng, int ncuts) {
  ChartDomain d = cone->projected_domain();
  P2 c = polygon_centroid(d.poly);
  std::vector<Cut> cuts;
  for (int i = 0; i < ncuts; ++i) {
    double s = rng.uniform(0.1, 0.6);
    double a = rng.uniform(0.0, 2 * M_PI);
    Vec x(c.x + s * std::cos(a), c.y + s * std::sin(a));
    if (!d.contains(x, -1e-6)) continue;
    cuts.push_back({cone->chart(x), -rng.uniform(0.3, 1.5)});
  }
  return PseudoCone(std::move(cone), std::move(cuts));
}

SuiteResult suite_roundtrip2d(uint64_t seed, int count) {
  SuiteResult rows(static_cast<size_t>(count));
  parallel_for(count, [&](int i) {
    Rng rng(seed * 1000003 + static_cast<uint64_t>(i));
    double beta0 = std::vector<double>{M_PI / 6, M_PI / 4, 1.2}[static_cast<size_t>(i % 3)];
    AngularMeasure mu = random_angular(beta0, rng.uniform_int(2, 50), rng);
    AngularMeasure back = to_angular(surface_measure(solve2d(mu)));
    double worst = 0.0;
    bool ok = back.atoms.size() == mu.atoms.size();
    for (size_t k = 0; ok && k < mu.atoms.size(); ++k)
      worst = std::max(worst, std::fabs(back.atoms[k].weight - mu.atoms[k].weight) /
                                  mu.atoms[k].weight);
    rows[static_cast<size_t>(i)] = {"roundtrip-" + std::to_string(i),
                                    ok && worst <= 1e-12, worst};
  });
  return rows;
}

SuiteResult suite_dictionary(uint64_t seed, int count) {
  SuiteResult rows(static_cast<size_t>(count));
  parallel_for(count, [&](int i) {
    Rng rng(seed * 7777 + static_cast<uint64_t>(i));
    auto cone = random_cone3(rng);
    PseudoCone K = random_pc3(cone, rng, rng.uniform_int(2, 6));
    auto mu = surface_measure(K);
    double worst = 0.0;
    ConvexPLFunction f;
    f.domain = cone->projected_domain();
    for (const auto& a : mu.atoms()) {
      f.nodes.push_back(cone->chart_inverse(a.dir.v));
      f.values.push_back(K.support(a.dir.v) / a.dir.v.x());
    }
    for (size_t k = 0; k < mu.size(); ++k) {
      double cell = cell_oracle(f, static_cast<int>(k)).volume;
      double pulled = ma_pullback(mu, {k});
      worst = std::max(worst, std::fabs(cell - pulled) / std::max(1.0, pulled));
    }
    rows[static_cast<size_t>(i)] = {"dictionary-" + std::to_string(i), worst <= 1e-8,
                                    worst};
  });
  return rows;
}

SuiteResult suite_fubini(uint64_t seed, int count) {
  SuiteResult rows;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    AngularMeasure mu = random_angular(1.2, rng.uniform_int(2, 30), rng);
    ConditionReport r = condition_value(mu);
    double err = std::fabs(r.layer_cake - r.fubini) / std::max(1.0, r.fubini);
    rows.push_back({"fubini-" + std::to_string(i), err <= 1e-12, err});
  }
  return rows;
}

SuiteResult suite_necessity(uint64_t seed, int count) {
  SuiteResult rows;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    AngularMeasure mu = random_angular(1.1, rng.uniform_int(2, 12), rng);
    NecessityReport nr = necessity_check(solve2d(mu));
    double slack = std::min(nr.rhs_plus - nr.lhs_plus, nr.rhs_minus - nr.lhs_minus);
    rows.push_back({"necessity-" + std::to_string(i), slack >= -1e-12, slack});
  }
  return rows;
}

SuiteResult suite_hausdorff(uint64_t seed, int count) {
  SuiteResult rows;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    int n = rng.uniform_int(4, 9);
    Polygon2 L;
    for (int k = 0; k < n; ++k) {
      double a = 2 * M_PI * (k + rng.uniform(0.1, 0.9)) / n;
      double r = rng.uniform(0.8, 2.0);
      L.push_back({r * std::cos(a), r * std::sin(a)});
    }
    L = convex_hull_2d(L);
    if (L.size() < 3) {
      rows.push_back({"hausdorff-" + std::to_string(i), true, 0.0});
      continue;
    }
    P2 z = polygon_centroid(L);
    double rin = 1e300;
    for (size_t k = 0; k < L.size(); ++k)
      rin = std::min(rin, point_segment_distance(z, L[k], L[(k + 1) % L.size()]));
    double s = rng.uniform(0.3, 0.9);
    Polygon2 K;
    for (const auto& p : L) K.push_back(z + (p - z) * s);
    auto chk = hausdorff_bound_polygons(K, L, z, s * rin);
    rows.push_back({"hausdorff-" + std::to_string(i), chk.holds, chk.bound - chk.dh});
  }
  return rows;
}

SuiteResult suite_comparison(uint64_t seed, int count) {
  SuiteResult rows;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    AngularMeasure am = random_angular(M_PI / 4, rng.uniform_int(2, 6), rng);
    PseudoCone L = solve2d(am);
    DiscreteMeasure mu = surface_measure(L);
    auto res = solve_dominated(mu, L);
    double t = 4.0 * std::max(1.0, std::fabs(L.dist_origin()));
    double dh = hausdorff_truncated(res.K, L, t);
    rows.push_back({"comparison-" + std::to_string(i), dh <= 1e-8, dh});
  }
  return rows;
}

SuiteResult suite_superadditivity(uint64_t seed, int count) {
  SuiteResult rows;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    auto cone = random_cone3(rng);
    PseudoCone K = random_pc3(cone, rng, 3);
    PseudoCone L = random_pc3(cone, rng, 3);
    auto both = surface_measure(K) + surface_measure(L);
    auto skl = surface_measure(minkowski_sum(K, L));
    double worst = 0.0;
    for (const auto& a : both.atoms()) {
      double got = 0.0;
      for (const auto& b : skl.atoms())
        if (angle_between(a.dir.v, b.dir.v) < 1e-8) got += b.weight;
      worst = std::max(worst, a.weight - got);
    }
    rows.push_back({"superadditivity-" + std::to_string(i), worst <= 1e-9, worst});
  }
  return rows;
}

int run_suite(const std::string& name, uint64_t seed, int count, const std::string& out) {
  SuiteResult rows;
  if (name == "roundtrip2d")
    rows = suite_roundtrip2d(seed, count > 0 ? count : 200);
  else if (name == "dictionary")
    rows = suite_dictionary(seed, count > 0 ? count : 20);
  else if (name == "fubini")
    rows = suite_fubini(seed, count > 0 ? count : 100);
  else if (name == "necessity")
    rows = suite_necessity(seed, count > 0 ? count : 50);
  else if (name == "hausdorff")
    rows = suite_hausdorff(seed, count > 0 ? count : 100);
  else if (name == "comparison")
    rows = suite_comparison(seed, count > 0 ? count : 10);
  else if (name == "superadditivity")
    rows = suite_superadditivity(seed, count > 0 ? count : 20);
  else
    throw std::invalid_argument(
        "unknown suite (available: roundtrip2d, dictionary, fubini, necessity, "
        "hausdorff, comparison, superadditivity)");
  int failed = 0;
  for (const auto& r : rows) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  " << r.value << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << (failed == 0 ? "PASS" : "FAIL") << " suite " << name << " ("
            << rows.size() - static_cast<size_t>(failed) << "/" << rows.size() << ")\n";
  if (!out.empty()) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["suite"] = name;
    j["seed"] = seed;
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"value", r.value}});
    j["rows"] = arr;
    write_json(out, j);
  }
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minkowski problems for unbounded convex sets with a prescribed "
               "asymptotic cone"};
  app.require_subcommand(1);

  auto* s2 = app.add_subcommand("solve2d", "exact 2D solver for an angular measure");
  std::string s2_measure, s2_out, s2_report, s2_csv;
  s2->add_option("--measure", s2_measure, "angular measure JSON")->required();
  s2->add_option("--out", s2_out, "output pseudo cone JSON");
  s2->add_option("--report", s2_report, "solver report JSON");
  s2->add_option("--csv", s2_csv, "recomputed measure CSV");

  auto* sv = app.add_subcommand("solve", "chart solver for a finite measure (n = 2, 3)");
  std::string sv_measure, sv_out, sv_report;
  SolveOptions sv_opts;
  sv->add_option("--measure", sv_measure, "measure JSON")->required();
  sv->add_option("--out", sv_out, "output pseudo cone JSON");
  sv->add_option("--report", sv_report, "solver report JSON");
  sv->add_option("--tol", sv_opts.tol, "relative mass tolerance");
  sv->add_option("--max-iter", sv_opts.max_sweeps, "sweep limit");
  sv->add_option("--depth-limit", sv_opts.depth_factor, "depth factor");
  sv->add_option("--boundary-verts", sv_opts.boundary_vertex_count,
                 "chart boundary vertices for circular cones");
  sv->add_flag("--newton", sv_opts.newton, "damped-Newton full-system mode");

  auto* dm = app.add_subcommand("dominated", "truncation scheme under a dominating set");
  std::string dm_measure, dm_dominating, dm_out, dm_report;
  dm->add_option("--measure", dm_measure, "measure JSON")->required();
  dm->add_option("--dominating", dm_dominating, "dominating pseudo cone JSON")->required();
  dm->add_option("--out", dm_out, "output pseudo cone JSON");
  dm->add_option("--report", dm_report, "stage report JSON");

  auto* bl = app.add_subcommand("blaschke", "measure-sum combination of two sets");
  std::string bl_k, bl_l, bl_out, bl_report;
  bl->add_option("--k", bl_k, "first pseudo cone JSON")->required();
  bl->add_option("--l", bl_l, "second pseudo cone JSON")->required();
  bl->add_option("--out", bl_out, "output pseudo cone JSON");
  bl->add_option("--report", bl_report, "verification report JSON");

  auto* me = app.add_subcommand("measure", "surface area measure of a pseudo cone");
  std::string me_set, me_out, me_csv;
  me->add_option("--set", me_set, "pseudo cone JSON")->required();
  me->add_option("--out", me_out, "measure JSON");
  me->add_option("--csv", me_csv, "CSV of (delta, weight)");

  auto* ck = app.add_subcommand("check", "integrability functionals and verdicts");
  std::string ck_functional, ck_measure, ck_family, ck_set, ck_report, ck_csv, ck_expect;
  double ck_m = 1.0, ck_eps = 0.5;
  long ck_depth = 1000000;
  ck->add_option("--functional", ck_functional,
                 "j | gamma | condition | schneider | convert")->required();
  ck->add_option("--m", ck_m, "functional index");
  ck->add_option("--eps", ck_eps, "epsilon for conversions");
  ck->add_option("--measure", ck_measure, "measure JSON (atoms)");
  ck->add_option("--family", ck_family, "tail family JSON");
  ck->add_option("--set", ck_set, "pseudo cone JSON");
  ck->add_option("--depth", ck_depth, "family truncation depth");
  ck->add_option("--report", ck_report, "report JSON");
  ck->add_option("--csv", ck_csv, "CSV trend table");
  ck->add_option("--expect", ck_expect, "fail unless the verdict matches");

  auto* zo = app.add_subcommand("zoo", "constructions on the circular cone");
  std::string zo_kind, zo_scenario, zo_out, zo_report, zo_csv, zo_obj;
  double zo_alpha = 0.2, zo_t = 1.0, zo_m = 0.5, zo_height = 4.0;
  double zo_t1 = 0.5, zo_t2 = 1.0, zo_t3 = 2.0;
  int zo_depth = 3, zo_q = 64;
  zo->add_option("--kind", zo_kind, "aset | facet-ellipse | qset | layered | divergent");
  zo->add_option("--scenario", zo_scenario, "scenario JSON (kind, depth, m, q)");
  zo->add_option("--alpha", zo_alpha, "ring boundary distance");
  zo->add_option("--t", zo_t, "apex scale / tilt");
  zo->add_option("--t1", zo_t1, "inner shift");
  zo->add_option("--t2", zo_t2, "apex scale");
  zo->add_option("--t3", zo_t3, "truncation height");
  zo->add_option("--depth", zo_depth, "layer / term count");
  zo->add_option("--m", zo_m, "functional index");
  zo->add_option("--q", zo_q, "ring discretization");
  zo->add_option("--out", zo_out, "measure JSON output");
  zo->add_option("--report", zo_report, "certificate report JSON");
  zo->add_option("--csv", zo_csv, "CSV trend table");
  zo->add_option("--export-obj", zo_obj, "OBJ export of the truncated realization");
  zo->add_option("--height", zo_height, "truncation height for exports");

  auto* vf = app.add_subcommand("verify", "seeded pass/fail property suites");
  std::string vf_suite, vf_report;
  uint64_t vf_seed = 0;
  int vf_count = 0;
  vf->add_option("--suite", vf_suite, "suite name")->required();
  vf->add_option("--seed", vf_seed, "random seed");
  vf->add_option("--count", vf_count, "instance count override");
  vf->add_option("--report", vf_report, "report JSON");

  auto* ex = app.add_subcommand("export", "truncated geometry export");
  std::string ex_set, ex_obj, ex_json;
  double ex_height = 4.0;
  ex->add_option("--set", ex_set, "pseudo cone JSON")->required();
  ex->add_option("--height", ex_height, "slice height")->required();
  ex->add_option("--obj", ex_obj, "OBJ output");
  ex->add_option("--json", ex_json, "geometry JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s2) {
      AngularMeasure mu = load_angular(s2_measure);
      Solve2dInfo info;
      PseudoCone K = solve2d(mu, nullptr, &info);
      DiscreteMeasure back = surface_measure(K);
      AngularMeasure back_am = to_angular(back);
      double worst = 0.0;
      for (size_t i = 0; i < mu.atoms.size() && i < back_am.atoms.size(); ++i)
        worst = std::max(worst, std::fabs(back_am.atoms[i].weight - mu.atoms[i].weight));
      write_json(s2_out, pseudocone_to_json(K));
      Json rep;
      rep["schema"] = kSchemaVersion;
      rep["config_hash"] = config_hash(args_config({{"cmd", "solve2d"},
                                                    {"measure", s2_measure}}));
      rep["z0"] = {info.z0.x(), info.z0.y()};
      rep["boundary_system_cond"] = info.cond;
      rep["atom_residual"] = worst;
      rep["cuts"] = K.cuts().size();
      write_json(s2_report, rep);
      if (!s2_csv.empty()) write_text_file(s2_csv, measure_csv(back));
      std::cout << "solved: " << K.cuts().size() << " cuts, atom residual " << worst
                << "\n";
      return 0;
    }
    if (*sv) {
      DiscreteMeasure mu = measure_from_json(load_json_file(sv_measure));
      SolveReport srep;
      ConvexPLFunction f;
      PseudoCone K = solve_minkowski(mu, sv_opts, &srep, &f);
      write_json(sv_out, pseudocone_to_json(K));
      Json rep;
      rep["schema"] = kSchemaVersion;
      rep["config_hash"] = config_hash(args_config(
          {{"cmd", "solve"}, {"measure", sv_measure}, {"tol", sv_opts.tol}}));
      rep["iterations"] = srep.sweeps;
      rep["updates"] = srep.updates;
      rep["residual_history"] = srep.residual_history;
      Json nodes = Json::array();
      for (size_t i = 0; i < mu.size(); ++i) {
        Json e;
        Json x = Json::array();
        for (int c = 0; c < f.nodes[i].dim; ++c) x.push_back(f.nodes[i][c]);
        e["x"] = x;
        e["u"] = f.values[i];
        e["target"] = mu.atoms()[i].weight * std::fabs(mu.atoms()[i].dir.v.x());
        e["achieved"] = i < srep.achieved.size() ? srep.achieved[i] : 0.0;
        nodes.push_back(e);
      }
      rep["nodes"] = nodes;
      if (f.domain.dim == 1) {
        rep["domain"] = {{"dim", 1}, {"lo", f.domain.lo}, {"hi", f.domain.hi}};
      } else {
        Json poly = Json::array();
        for (const auto& p : f.domain.poly) poly.push_back({p.x, p.y});
        rep["domain"] = {{"dim", 2}, {"polygon", poly}};
      }
      // closeness is reported, not certified: volume of the complement
      // inside two slice heights
      {
        PseudoCone conly = PseudoCone::cone_only(K.cone_ptr());
        double base = 2.0 * std::max(1.0, K.dist_origin());
        Json comp = Json::array();
        for (double t : {base, 2.0 * base}) {
          double vol = slice_volume(conly.slice(t)) - slice_volume(K.slice(t));
          comp.push_back({{"t", t}, {"complement_volume", vol}});
        }
        rep["complement_slice_volumes"] = comp;
      }
      write_json(sv_report, rep);
      std::cout << "solved: " << K.cuts().size() << " cuts in " << srep.sweeps
                << " sweeps\n";
      return 0;
    }
    if (*dm) {
      DiscreteMeasure mu = measure_from_json(load_json_file(dm_measure));
      PseudoCone L = pseudocone_from_json(load_json_file(dm_dominating));
      auto res = solve_dominated(mu, L);
      write_json(dm_out, pseudocone_to_json(res.K));
      Json rep;
      rep["schema"] = kSchemaVersion;
      rep["config_hash"] = config_hash(args_config(
          {{"cmd", "dominated"}, {"measure", dm_measure}, {"dominating", dm_dominating}}));
      rep["stages"] = stages_json(res.stages);
      rep["gaps_monotone"] = res.gaps_monotone;
      write_json(dm_report, rep);
      std::cout << "dominated solve: " << res.stages.size() << " stages\n";
      return 0;
    }
    if (*bl) {
      PseudoCone K = pseudocone_from_json(load_json_file(bl_k));
      PseudoCone L = pseudocone_from_json(load_json_file(bl_l));
      PseudoCone Q = blaschke_sum(K, L);
      write_json(bl_out, pseudocone_to_json(Q));
      DiscreteMeasure target = surface_measure(K) + surface_measure(L);
      DiscreteMeasure got = surface_measure(Q);
      double worst = 0.0;
      for (const auto& a : target.atoms()) {
        double w = 0.0;
        for (const auto& b : got.atoms())
          if (angle_between(a.dir.v, b.dir.v) < 1e-7) w += b.weight;
        worst = std::max(worst, std::fabs(w - a.weight) / a.weight);
      }
      Json rep;
      rep["schema"] = kSchemaVersion;
      rep["config_hash"] =
          config_hash(args_config({{"cmd", "blaschke"}, {"k", bl_k}, {"l", bl_l}}));
      rep["atom_residual"] = worst;
      write_json(bl_report, rep);
      std::cout << "combined: " << Q.cuts().size() << " cuts, atom residual " << worst
                << "\n";
      return 0;
    }
    if (*me) {
      PseudoCone K = pseudocone_from_json(load_json_file(me_set));
      DiscreteMeasure mu = surface_measure(K);
      write_json(me_out, measure_to_json(mu));
      if (!me_csv.empty()) write_text_file(me_csv, measure_csv(mu));
      std::cout << "measure: " << mu.size() << " atoms, total mass " << mu.total_mass()
                << "\n";
      return 0;
    }
    if (*ck) {
      Json rep;
      rep["schema"] = kSchemaVersion;
      rep["config_hash"] = config_hash(args_config(
          {{"cmd", "check"}, {"functional", ck_functional}, {"m", ck_m}}));
      std::string verdict = "finite";
      std::ostringstream csv;
      csv.precision(17);
      if (ck_functional == "condition") {
        ConditionReport r;
        if (!ck_family.empty())
          r = condition_value(family_from_json(load_json_file(ck_family)));
        else
          r = condition_value(load_angular(ck_measure));
        verdict = r.verdict;
        rep["layer_cake"] = r.layer_cake;
        rep["fubini"] = r.fubini;
        rep["sin_form"] = r.sin_form;
        rep["depths"] = r.depths;
        rep["partial_sums"] = r.partial_sums;
        rep["sin_partial_sums"] = r.sin_partial_sums;
        rep["verdict"] = r.verdict;
        csv << "depth,partial_sum,sin_partial_sum\n";
        for (size_t i = 0; i < r.depths.size(); ++i)
          csv << r.depths[i] << "," << r.partial_sums[i] << ","
              << r.sin_partial_sums[i] << "\n";
      } else if (ck_functional == "schneider") {
        PseudoCone K = pseudocone_from_json(load_json_file(ck_set));
        std::vector<double> grid;
        for (int i = 1; i <= 32; ++i) grid.push_back(M_PI / 2 * i / 33.0);
        SchneiderReport r = schneider_bound(K, grid);
        rep["sup"] = r.sup;
        rep["eventually_nonincreasing"] = r.eventually_nonincreasing;
        rep["j_value"] = r.j_value;
        rep["alphas"] = r.alphas;
        rep["values"] = r.values;
        verdict = r.j_finite ? "finite" : "diverges";
        rep["verdict"] = verdict;
        csv << "alpha,value\n";
        for (size_t i = 0; i < grid.size(); ++i)
          csv << grid[i] << "," << r.values[i] << "\n";
      } else if (ck_functional == "j" || ck_functional == "gamma" ||
                 ck_functional == "convert") {
        FunctionalFamily fam;
        if (!ck_family.empty()) {
          TailFamily tf = family_from_json(load_json_file(ck_family));
          for (long d = 10; d <= ck_depth; d *= 10) {
            AngularMeasure am = tf.truncate(0.0, d);
            std::vector<std::pair<double, double>> dw;
            for (const auto& a : am.atoms)
              dw.push_back({tf.beta0 - std::fabs(a.theta), a.weight});
            fam.depths.push_back(d);
            fam.stages.push_back(LayerProfile::from_pairs(dw));
          }
        } else {
          DiscreteMeasure mu = measure_from_json(load_json_file(ck_measure));
          fam.depths.push_back(static_cast<long>(mu.size()));
          fam.stages.push_back(LayerProfile::from_measure(mu));
        }
        if (ck_functional == "convert") {
          ConvertReport r = convert(fam, ck_m, ck_eps);
          rep["j_m"] = {{"values", r.j_m.values}, {"verdict", r.j_m.verdict}};
          rep["gamma_shifted"] = {{"values", r.gamma_shifted.values},
                                  {"verdict", r.gamma_shifted.verdict}};
          rep["gamma_m"] = {{"values", r.gamma_m.values}, {"verdict", r.gamma_m.verdict}};
          rep["j_shifted"] = {{"values", r.j_shifted.values},
                              {"verdict", r.j_shifted.verdict}};
          rep["forward_holds"] = r.forward_holds;
          rep["backward_holds"] = r.backward_holds;
          rep["witness_c0"] = r.witness_c0;
          verdict = r.forward_holds && r.backward_holds ? "consistent" : "violated";
          rep["verdict"] = verdict;
        } else {
          TrendReport r =
              ck_functional == "j" ? j_trend(fam, ck_m) : gamma_trend(fam, ck_m);
          rep["depths"] = r.depths;
          rep["values"] = r.values;
          rep["slope"] = r.slope;
          verdict = r.verdict;
          rep["verdict"] = verdict;
          csv << "depth,value\n";
          for (size_t i = 0; i < r.values.size(); ++i)
            csv << r.depths[i] << "," << r.values[i] << "\n";
        }
      } else {
        throw std::invalid_argument("unknown functional: " + ck_functional);
      }
      write_json(ck_report, rep);
      if (!ck_csv.empty()) write_text_file(ck_csv, csv.str());
      std::cout << "verdict: " << verdict << "\n";
      if (!ck_expect.empty() && verdict != ck_expect) {
        std::cerr << "expected verdict " << ck_expect << ", got " << verdict << "\n";
        return 3;
      }
      return 0;
    }
    if (*zo) {
      if (!zo_scenario.empty()) {
        Json sc = load_json_file(zo_scenario);
        zo_kind = sc.value("kind", zo_kind);
        zo_alpha = sc.value("alpha", zo_alpha);
        zo_t = sc.value("t", zo_t);
        zo_t1 = sc.value("t1", zo_t1);
        zo_t2 = sc.value("t2", zo_t2);
        zo_t3 = sc.value("t3", zo_t3);
        zo_depth = sc.value("depth", zo_depth);
        zo_m = sc.value("m", zo_m);
        zo_q = sc.value("q", zo_q);
      }
      Json rep;
      rep["schema"] = kSchemaVersion;
      rep["config_hash"] = config_hash(args_config(
          {{"cmd", "zoo"}, {"kind", zo_kind}, {"depth", zo_depth}, {"m", zo_m},
           {"q", zo_q}}));
      std::ostringstream csv;
      csv.precision(17);
      if (zo_kind == "aset") {
        ASet a = make_aset(zo_alpha, zo_t, zo_q);
        rep["analytic_mass"] = a.analytic_mass;
        rep["realized_mass_approximation"] = a.realized_mass;
        rep["q"] = zo_q;
        write_json(zo_out, measure_to_json(surface_measure(a.realized)));
        if (!zo_obj.empty())
          write_text_file(zo_obj, slice_obj(a.realized.slice(zo_height)));
        csv << "q,realized_mass_approximation,analytic_mass\n";
        for (int q = 16; q <= zo_q; q *= 2)
          csv << q << "," << make_aset(zo_alpha, zo_t, q).realized_mass << ","
              << a.analytic_mass << "\n";
      } else if (zo_kind == "facet-ellipse") {
        rep["tilt"] = zo_t;
        rep["area"] = facet_ellipse_area(zo_t);
        csv << "tilt,area,area_scaled\n";
        for (double t = 1e-4; t <= M_PI / 4; t *= 2.0)
          csv << t << "," << facet_ellipse_area(t) << ","
              << facet_ellipse_area(t) * std::pow(t, 1.5) << "\n";
      } else if (zo_kind == "qset") {
        QSet q = make_qset(zo_alpha, zo_t1, zo_t2, zo_t3, zo_q);
        rep["lateral_area"] = q.lateral_area;
        rep["apex_facet_area"] = q.apex_facet_area;
        rep["height_mark"] = q.height_mark;
        rep["gamma_lateral"] = q_gamma_lateral(zo_alpha, zo_t1, zo_t2, zo_t3, zo_m);
        if (!zo_obj.empty())
          write_text_file(zo_obj, slice_obj(q.realized.slice(zo_height)));
      } else if (zo_kind == "layered") {
        LayeredResult r = layered_set(zo_depth, zo_m, {}, zo_q);
        Json layers = Json::array();
        for (const auto& L : r.layers)
          layers.push_back({{"i", L.i},
                            {"alpha", L.alpha},
                            {"apex", L.apex},
                            {"r", L.r},
                            {"gamma_certificate", L.q_gamma},
                            {"layer_mass", L.layer_mass},
                            {"certified", L.certified}});
        rep["layers"] = layers;
        rep["gamma_total"] = r.gamma_total;
        rep["sup_alpha2_mass"] = r.sup_alpha2_mass;
        rep["boundary_support"] = r.boundary_support;
        rep["crossing_order_ok"] = r.crossing_order_ok;
        write_json(zo_out, measure_to_json(surface_measure(r.realized)));
        if (!zo_obj.empty())
          write_text_file(zo_obj, slice_obj(r.realized.slice(zo_height)));
        csv << "i,alpha,gamma_certificate,layer_mass\n";
        for (const auto& L : r.layers)
          csv << L.i << "," << L.alpha << "," << L.q_gamma << "," << L.layer_mass
              << "\n";
      } else if (zo_kind == "divergent") {
        DivergentResult r = divergent_measure(zo_depth, zo_m);
        Json terms = Json::array();
        for (const auto& t : r.terms)
          terms.push_back({{"i", t.i},
                           {"tilt", t.tilt},
                           {"area", t.area},
                           {"gamma", t.gamma},
                           {"budget", t.budget},
                           {"certified", t.certified}});
        rep["terms"] = terms;
        rep["gamma_total"] = r.gamma_total;
        rep["eps0"] = r.eps0;
        rep["excluded_radius"] = r.excluded_radius;
        write_json(zo_out, measure_to_json(r.mu));
        csv << "i,tilt,gamma,budget,excluded_radius\n";
        for (size_t i = 0; i < r.terms.size(); ++i)
          csv << r.terms[i].i << "," << r.terms[i].tilt << "," << r.terms[i].gamma
              << "," << r.terms[i].budget << "," << r.excluded_radius[i] << "\n";
      } else {
        throw std::invalid_argument("unknown zoo kind: " + zo_kind);
      }
      write_json(zo_report, rep);
      if (!zo_csv.empty()) write_text_file(zo_csv, csv.str());
      std::cout << "zoo " << zo_kind << " done\n";
      return 0;
    }
    if (*vf) return run_suite(vf_suite, vf_seed, vf_count, vf_report);
    if (*ex) {
      PseudoCone K = pseudocone_from_json(load_json_file(ex_set));
      Slice s = K.slice(ex_height);
      if (s.vertices.empty()) throw std::invalid_argument("empty slice");
      if (!ex_obj.empty()) write_text_file(ex_obj, slice_obj(s));
      if (!ex_json.empty()) write_json(ex_json, slice_geometry_json(s));
      std::cout << "exported slice at height " << ex_height << " ("
                << s.vertices.size() << " vertices)\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    if (msg.find("malformed JSON") != std::string::npos ||
        msg.find("cannot open") != std::string::npos)
      return 1;
    if (msg.find("converge") != std::string::npos) return 3;
    return 2;
  }
  return 0;
}
