#include "conemink/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace conemink {

namespace {

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.dim; ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 1 || j.size() > 3)
    throw std::runtime_error("expected a vector of length 1..3");
  Vec v = Vec::zero(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

Json cone_to_json(const Cone& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["dim"] = c.dim();
  j["kind"] = c.kind() == ConeKind::circular3d ? "circular3d" : "polyhedral";
  if (c.kind() == ConeKind::circular3d) {
    j["beta"] = c.circular_beta();
  } else {
    Json rays = Json::array();
    for (const auto& r : c.rays()) rays.push_back(vec_to_json(r));
    j["rays"] = rays;
  }
  return j;
}

ConePtr cone_from_json(const Json& j) {
  std::string kind = j.value("kind", "polyhedral");
  if (kind == "circular3d") return Cone::circular3d(j.at("beta").get<double>());
  std::vector<Vec> rays;
  for (const auto& r : j.at("rays")) rays.push_back(vec_from_json(r));
  if (j.contains("axis")) {
    Vec axis = vec_from_json(j["axis"]);
    return Cone::from_rays(std::move(rays), &axis);
  }
  return Cone::from_rays(std::move(rays));
}

Json pseudocone_to_json(const PseudoCone& k) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["cone"] = cone_to_json(k.cone());
  Json cuts = Json::array();
  for (const auto& c : k.cuts()) {
    Json e;
    e["v"] = vec_to_json(c.v);
    e["h"] = c.h;
    cuts.push_back(e);
  }
  j["cuts"] = cuts;
  return j;
}

PseudoCone pseudocone_from_json(const Json& j) {
  ConePtr cone = cone_from_json(j.at("cone"));
  std::vector<Cut> cuts;
  for (const auto& e : j.at("cuts"))
    cuts.push_back({vec_from_json(e.at("v")), e.at("h").get<double>()});
  return PseudoCone(std::move(cone), std::move(cuts));
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["cone"] = cone_to_json(mu.cone());
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    Json e;
    e["v"] = vec_to_json(a.dir.v);
    e["w"] = a.weight;
    atoms.push_back(e);
  }
  j["atoms"] = atoms;
  return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
  DiscreteMeasure mu(cone_from_json(j.at("cone")));
  for (const auto& e : j.at("atoms"))
    mu.add(vec_from_json(e.at("v")), e.at("w").get<double>());
  return mu;
}

Json angular_to_json(const AngularMeasure& am) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["beta0"] = am.beta0;
  Json atoms = Json::array();
  for (const auto& a : am.atoms) atoms.push_back(Json::array({a.theta, a.weight}));
  j["atoms"] = atoms;
  return j;
}

AngularMeasure angular_from_json(const Json& j) {
  std::vector<AngularAtom> atoms;
  for (const auto& e : j.at("atoms"))
    atoms.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  return AngularMeasure(j.at("beta0").get<double>(), std::move(atoms));
}

Json family_to_json(const TailFamily& fam) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["beta0"] = fam.beta0;
  j["theta"] = fam.theta.text();
  j["w"] = fam.w.text();
  j["params"] = fam.params;
  if (fam.max_k > 0) j["max_k"] = fam.max_k;
  return j;
}

TailFamily family_from_json(const Json& j) {
  TailFamily fam;
  fam.beta0 = j.at("beta0").get<double>();
  fam.theta = Expr::parse(j.at("theta").get<std::string>());
  fam.w = Expr::parse(j.at("w").get<std::string>());
  if (j.contains("params"))
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      fam.params[it.key()] = it.value().get<double>();
  fam.max_k = j.value("max_k", 0L);
  return fam;
}

std::string measure_csv(const DiscreteMeasure& mu) {
  std::ostringstream os;
  os.precision(17);
  os << "delta,weight\n";
  for (const auto& a : mu.atoms()) os << a.dir.delta << "," << a.weight << "\n";
  return os.str();
}

Json slice_geometry_json(const Slice& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["t"] = s.t;
  Json verts = Json::array();
  for (const auto& v : s.vertices) verts.push_back(vec_to_json(v));
  j["vertices"] = verts;
  Json facets = Json::array();
  for (const auto& f : s.facets) {
    Json e;
    e["normal"] = vec_to_json(f.normal);
    e["offset"] = f.offset;
    e["area"] = f.area;
    e["cut_index"] = f.cut_index;
    Json loop = Json::array();
    for (const auto& p : f.vertices) loop.push_back(vec_to_json(p));
    e["vertices"] = loop;
    facets.push_back(e);
  }
  j["facets"] = facets;
  return j;
}

std::string slice_obj(const Slice& s) {
  std::ostringstream os;
  os.precision(17);
  long base = 1;
  if (s.facets.empty() && s.polygon.size() >= 3) {
    // planar slice: emit the polygon as a single fan at z = 0
    for (const auto& p : s.polygon) os << "v " << p.x << " " << p.y << " 0\n";
    long n = static_cast<long>(s.polygon.size());
    for (long i = 1; i + 1 < n; ++i) os << "f 1 " << i + 1 << " " << i + 2 << "\n";
    return os.str();
  }
  for (const auto& f : s.facets) {
    if (f.vertices.size() < 3) continue;
    Vec c = Vec::zero(3);
    for (const auto& v : f.vertices) c = c + v;
    c = c * (1.0 / static_cast<double>(f.vertices.size()));
    os << "v " << c.x() << " " << c.y() << " " << c.z() << "\n";
    for (const auto& v : f.vertices)
      os << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    long n = static_cast<long>(f.vertices.size());
    for (long i = 0; i < n; ++i)
      os << "f " << base << " " << base + 1 + i << " " << base + 1 + (i + 1) % n << "\n";
    base += n + 1;
  }
  return os.str();
}

std::string config_hash(const Json& j) { return fnv1a_hex(j.dump()); }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + " at byte " +
                             std::to_string(e.byte) + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace conemink
