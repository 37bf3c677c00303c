#include "isokit/io.hpp"

#include <fstream>

#include "isokit/error.hpp"

namespace isokit {
namespace {

Rational exact_coordinate(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return parse_rational(v.dump());
  if (v.is_number_float()) {
    const std::string text = v.dump();
    if (text.find_first_of("eE") != std::string::npos) return Rational(v.get<double>());
    return parse_rational(text);
  }
  throw ParseError("coordinate must be a number or a \"p/q\" string");
}

Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json lambda_json(const std::array<double, 6>& l) { return Json(std::vector<double>(l.begin(), l.end())); }

}  // namespace

Polytope parse_polytope(const Json& doc, NumberMode mode) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ParseError("expected an object with a \"vertices\" array");
  }
  std::vector<Point3q> exact;
  std::vector<Point3d> approx;
  for (const auto& row : doc["vertices"]) {
    if (!row.is_array() || row.size() != 3) throw ParseError("each vertex must be an array of 3 coordinates");
    if (mode == NumberMode::rational) {
      exact.push_back({exact_coordinate(row[0]), exact_coordinate(row[1]), exact_coordinate(row[2])});
    } else {
      Point3d p;
      for (int k = 0; k < 3; ++k) {
        const Json& v = row[k];
        if (v.is_number()) {
          p[k] = v.get<double>();
        } else if (v.is_string()) {
          p[k] = parse_rational(v.get<std::string>()).get_d();
        } else {
          throw ParseError("coordinate must be a number or a \"p/q\" string");
        }
      }
      approx.push_back(p);
    }
  }
  return mode == NumberMode::rational ? convex_hull(exact) : convex_hull(approx);
}

Polytope read_polytope_file(const std::string& path, NumberMode mode) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_polytope(doc, mode);
}

Json to_json(const Polytope& P) {
  Json verts = Json::array();
  if (P.is_exact()) {
    for (const auto& v : P.exact_vertices()) verts.push_back({to_string(v[0]), to_string(v[1]), to_string(v[2])});
  } else {
    for (const auto& v : P.vertices()) verts.push_back({v[0], v[1], v[2]});
  }
  return {{"vertices", verts}};
}

Json to_json(const Ellipsoid& E) {
  Json m = Json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.push_back(E.M(i, j));
  }
  return {{"M", m}};
}

Json to_json(const NormalizationResult& r) {
  Json T = Json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) T.push_back(r.T(i, j));
  }
  Json u = Json::array();
  for (const auto& v : r.decomposition.u) u.push_back(vec_json(v));
  return {{"T", T},
          {"idq", r.idq},
          {"lambda", lambda_json(r.decomposition.lambda)},
          {"u", u},
          {"witness", {{"ijk", r.witness.ijk}, {"value", r.witness.value}}}};
}

Json to_json(const AdmissibleSet& A) {
  Json a = Json::object();
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) a[std::to_string(10 * i + j)] = A.get(i, j);
  }
  return {{"a", a}};
}

Json to_json(const LemmaGridReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"family", v.family}, {"lambda", lambda_json(v.lambda)}, {"value", v.value}});
  }
  Json families = Json::object();
  for (const auto& f : r.families) {
    families[f.name] = {{"bound", f.bound},
                        {"max_value", f.max_value},
                        {"slack", f.bound - f.max_value},
                        {"argmax_lambda", lambda_json(f.argmax_lambda)}};
  }
  return {{"step", r.step},
          {"points", r.points},
          {"violations", violations},
          {"violation_count", r.violation_count},
          {"max_value", r.max_value},
          {"argmax_lambda", lambda_json(r.argmax_lambda)},
          {"families", families}};
}

Json to_json(const CertifySummary& s) {
  Json violations = Json::array();
  for (const auto& v : s.violations) violations.push_back({{"lambda", lambda_json(v.lambda)}, {"value", v.value}});
  Json classes = Json::object();
  for (auto c : {BoundaryClass::skipped, BoundaryClass::contains_zero, BoundaryClass::peculiar,
                 BoundaryClass::unclassified}) {
    classes[std::string(to_string(c))] = s.classes[static_cast<std::size_t>(c)];
  }
  Json out = {{"samples", s.samples},
              {"restarts", s.restarts},
              {"bound", s.bound},
              {"global_max", s.global_max},
              {"argmax_lambda", lambda_json(s.argmax_lambda)},
              {"violations", violations},
              {"structure", classes}};
  if (!s.zero_first) out["witness"] = {{"lambda", lambda_json(LambdaVector::uniform().values())},
                                       {"value", s.witness_value}};
  return out;
}

Json to_json(const WidthVolumeReport& r) {
  return {{"omega", to_string(r.omega)},
          {"direction", r.direction.u()},
          {"volume", to_string(r.volume)},
          {"bound", to_string(r.bound)},
          {"slack", to_string(r.slack)},
          {"satisfied", r.satisfied},
          {"nonseparable", r.nonseparable}};
}

}  // namespace isokit
