#pragma once

// File formats:
//   triangulation  {"format":"angled-tri-v1","tetrahedra":[["v0","v1","v2","v3"],...]}
//   angles         {"format":"angled-angles-v1","group":"Z^2 x Z/4",
//                   "tetrahedra":[{"k":{"a,b":[...],...}},...]}
// Angle keys are the tetrahedron's label pairs in lexicographic order,
// joined by a comma; tetrahedra align with the triangulation file.

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"

#include "angled/angles.hpp"
#include "angled/complex.hpp"

namespace angled {

using Json = nlohmann::json;

inline constexpr const char* kTriangulationFormat = "angled-tri-v1";
inline constexpr const char* kAnglesFormat = "angled-angles-v1";

inline Json triangulation_to_json(const Triangulation& t) {
  Json tets = Json::array();
  for (const auto& lt : t.label_tets()) tets.push_back({lt[0], lt[1], lt[2], lt[3]});
  return Json{{"format", kTriangulationFormat}, {"tetrahedra", std::move(tets)}};
}

inline Triangulation triangulation_from_json(const Json& j) {
  auto fail = [](const std::string& why) { return Error(ErrorKind::ParseError, "triangulation file: " + why); };
  if (!j.is_object() || !j.contains("format") || j["format"] != kTriangulationFormat) throw fail("missing or wrong format tag");
  if (!j.contains("tetrahedra") || !j["tetrahedra"].is_array()) throw fail("missing tetrahedra array");
  std::vector<LabelTet> tets;
  for (const auto& jt : j["tetrahedra"]) {
    if (!jt.is_array() || jt.size() != 4) throw fail("each tetrahedron needs 4 labels");
    LabelTet lt;
    for (int p = 0; p < 4; ++p) {
      if (!jt[p].is_string() || jt[p].get<std::string>().empty()) throw fail("labels must be non-empty strings");
      lt[p] = jt[p].get<std::string>();
    }
    tets.push_back(std::move(lt));
  }
  return Triangulation(std::move(tets));
}

/// Key of the edge between positions p and q of a tetrahedron.
inline std::string angle_key(const LabelTet& lt, int p, int q) {
  const Label& x = lt[p];
  const Label& y = lt[q];
  return x < y ? x + "," + y : y + "," + x;
}

namespace detail {

inline Json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max()) {
    return Json(static_cast<long long>(x));
  }
  return Json(x.str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    bool negative = !s.empty() && s[0] == '-';
    Integer v;
    if (detail::parse_digits(std::string_view(s).substr(negative ? 1 : 0), v)) return negative ? Integer(-v) : v;
  }
  throw Error(ErrorKind::ParseError, "angles file: element coordinates must be integers");
}

}  // namespace detail

inline Json element_to_json(const GroupElement& x) {
  Json out = Json::array();
  for (const auto& c : x.coords()) out.push_back(detail::integer_to_json(c));
  return out;
}

inline Json angles_to_json(const Triangulation& t, const AngleStructure& s) {
  require_shape(t, s);
  Json tets = Json::array();
  for (std::size_t i = 0; i < s.tet_count(); ++i) {
    Json k = Json::object();
    for (int pair = 0; pair < 6; ++pair) {
      const auto& pr = kTetPairs[pair];
      k[angle_key(t.tet_labels(i), pr[0], pr[1])] = element_to_json(s.value(i, pair));
    }
    tets.push_back(Json{{"k", std::move(k)}});
  }
  return Json{{"format", kAnglesFormat}, {"group", s.group()->to_string()}, {"tetrahedra", std::move(tets)}};
}

inline AngleStructure angles_from_json(const Triangulation& t, const Json& j) {
  auto fail = [](const std::string& why) { return Error(ErrorKind::ParseError, "angles file: " + why); };
  if (!j.is_object() || !j.contains("format") || j["format"] != kAnglesFormat) throw fail("missing or wrong format tag");
  if (!j.contains("group") || !j["group"].is_string()) throw fail("missing group");
  Group group = make_group(j["group"].get<std::string>());
  if (!j.contains("tetrahedra") || !j["tetrahedra"].is_array()) throw fail("missing tetrahedra array");
  const Json& jt = j["tetrahedra"];
  if (jt.size() != t.tet_count()) {
    throw Error(ErrorKind::ShapeMismatch, "angles file has " + std::to_string(jt.size()) + " tetrahedra, triangulation has " +
                                              std::to_string(t.tet_count()));
  }
  std::vector<TetValues> values;
  for (std::size_t i = 0; i < jt.size(); ++i) {
    if (!jt[i].is_object() || !jt[i].contains("k") || !jt[i]["k"].is_object()) throw fail("tetrahedron without k map");
    const Json& k = jt[i]["k"];
    if (k.size() != 6) throw fail("tetrahedron #" + std::to_string(i) + " needs exactly 6 edge values");
    std::vector<GroupElement> six;
    for (const auto& pr : kTetPairs) {
      const std::string key = angle_key(t.tet_labels(i), pr[0], pr[1]);
      if (!k.contains(key)) throw fail("tetrahedron #" + std::to_string(i) + " lacks key '" + key + "'");
      const Json& arr = k[key];
      if (!arr.is_array() || arr.size() != group->rank()) throw fail("value '" + key + "' has the wrong length");
      std::vector<Integer> coords;
      for (const auto& c : arr) coords.push_back(detail::integer_from_json(c));
      six.emplace_back(group, std::move(coords));
    }
    values.push_back({six[0], six[1], six[2], six[3], six[4], six[5]});
  }
  return AngleStructure(group, std::move(values));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

}  // namespace angled
