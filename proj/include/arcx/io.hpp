#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcx/farey.hpp"
#include "arcx/rigidity.hpp"

namespace arcx::io {

using nlohmann::json;

namespace detail {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(Surface s) { return {{"genus", s.genus}, {"boundary", s.boundary}}; }

inline Surface surface_from_json(const json& j) {
  Surface s{detail::get<int>(j, "genus"), detail::get<int>(j, "boundary")};
  s.require_valid();
  return s;
}

inline json to_json(const Triangulation& t) {
  json tris = json::array();
  for (const auto& tri : t.triangles()) {
    json row = json::array();
    for (const auto& s : tri) row.push_back({s.arc, s.copy});
    tris.push_back(std::move(row));
  }
  return {{"genus", t.surface().genus},
          {"boundary", t.surface().boundary},
          {"arcs", t.arc_count()},
          {"triangles", std::move(tris)}};
}

/// Parses and validates.
inline Triangulation triangulation_from_json(const json& j) {
  const Surface s = surface_from_json(j);
  const int arcs = detail::get<int>(j, "arcs");
  const auto rows = detail::get<std::vector<std::vector<std::vector<int>>>>(j, "triangles");
  std::vector<TriangleSides> tris;
  for (const auto& row : rows) {
    if (row.size() != 3) throw Error(ErrorKind::ParseError, "a triangle needs three sides");
    TriangleSides tri;
    for (int p = 0; p < 3; ++p) {
      if (row[p].size() != 2) throw Error(ErrorKind::ParseError, "a side is [arc, copy]");
      tri[p] = Side{row[p][0], row[p][1]};
    }
    tris.push_back(tri);
  }
  return Triangulation::checked(s, arcs, std::move(tris));
}

inline json to_json(const ArcClass& a) {
  json j{{"base", to_json(a.base)}, {"coords", a.coords}};
  if (a.base == Surface(1, 1)) {
    const Slope s = torus_slope(a.coords);
    j["p"] = s.p;
    j["q"] = s.q;
  }
  return j;
}

/// Accepts {"base", "coords"}, or on the once-punctured torus the
/// shorthand {"p", "q"}.
inline ArcClass arc_class_from_json(const json& j, std::optional<Surface> surface = {}) {
  if (j.is_object() && !j.contains("coords") && j.contains("p") && j.contains("q")) {
    if (surface && *surface != Surface(1, 1)) {
      throw Error(ErrorKind::ParseError, "slope shorthand is only for (1,1)");
    }
    return torus_class({detail::get<std::int64_t>(j, "p"), detail::get<std::int64_t>(j, "q")});
  }
  ArcClass a;
  a.base = j.is_object() && j.contains("base") ? surface_from_json(j.at("base"))
           : surface                           ? *surface
                     : throw Error(ErrorKind::ParseError, "arc class without a base surface");
  a.coords = j.is_array() ? j.get<Coords>() : detail::get<Coords>(j, "coords");
  require_valid_coords(a.coords, new_standard(a.base));
  return a;
}

inline json to_json(const CombinatorialHomeo& h) {
  return {{"surface", to_json(h.surface)},
          {"flip_word", h.word},
          {"arc_relabel", h.arc_relabel},
          {"triangle_relabel", h.triangle_relabel},
          {"orientation", to_string(h.orientation)}};
}

inline CombinatorialHomeo homeo_from_json(const json& j, std::optional<Surface> surface = {}) {
  CombinatorialHomeo h;
  if (j.contains("surface")) {
    h.surface = surface_from_json(j.at("surface"));
  } else if (surface) {
    h.surface = *surface;
  } else {
    throw Error(ErrorKind::ParseError, "homeomorphism without a surface");
  }
  h.word = detail::get<FlipWord>(j, "flip_word");
  h.arc_relabel = detail::get<std::vector<ArcIndex>>(j, "arc_relabel");
  h.triangle_relabel = detail::get<std::vector<TriangleIndex>>(j, "triangle_relabel");
  const auto o = detail::get<std::string>(j, "orientation");
  if (o == "preserving") {
    h.orientation = Orientation::Preserving;
  } else if (o == "reversing") {
    h.orientation = Orientation::Reversing;
  } else {
    throw Error(ErrorKind::ParseError, "orientation must be preserving or reversing");
  }
  h.require_valid();
  return h;
}

inline json to_json(const SimplicialSelfMap& m) {
  json vs = json::array(), ims = json::array();
  for (const auto& v : m.vertices()) vs.push_back(v);
  for (const auto& v : m.images()) ims.push_back(v);
  json j{{"surface", to_json(m.surface())}, {"vertices", vs}, {"images", ims}};
  if (m.simplicial) j["simplicial"] = *m.simplicial;
  if (m.injective) j["injective"] = *m.injective;
  return j;
}

inline SimplicialSelfMap map_from_json(const json& j) {
  const Surface s = surface_from_json(detail::get<json>(j, "surface"));
  const auto vj = detail::get<json>(j, "vertices");
  const auto ij = detail::get<json>(j, "images");
  if (!vj.is_array() || !ij.is_array()) {
    throw Error(ErrorKind::ParseError, "vertices and images must be arrays");
  }
  std::vector<Coords> vs, ims;
  for (const auto& v : vj) vs.push_back(arc_class_from_json(v, s).coords);
  for (const auto& v : ij) ims.push_back(arc_class_from_json(v, s).coords);
  try {
    return {s, std::move(vs), std::move(ims)};
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const WitnessedTriangulation& w) {
  return {{"flip_word", w.word}, {"classes", w.classes}, {"triangulation", to_json(w.triangulation)}};
}

inline std::string to_string(ArcComplexSlice::Completeness c) {
  switch (c) {
    case ArcComplexSlice::Completeness::Full: return "full";
    case ArcComplexSlice::Completeness::BallRadius: return "ball";
    case ArcComplexSlice::Completeness::Spanned: return "spanned";
  }
  return "unknown";
}

inline json to_json(const ArcComplexSlice& s) {
  json vs = json::array();
  for (int i = 0; i < s.vertex_count(); ++i) {
    json v{{"id", i}, {"coords", s.vertices[i]}};
    if (!s.labels.empty() && !s.labels[i].empty()) v["label"] = s.labels[i];
    if (s.surface == Surface(1, 1)) {
      const Slope sl = torus_slope(s.vertices[i]);
      v["p"] = sl.p;
      v["q"] = sl.q;
    }
    vs.push_back(std::move(v));
  }
  json edges = json::array();
  std::vector<std::size_t> counts;
  for (const auto& simplex : s.simplices) {
    if (simplex.size() > counts.size()) counts.resize(simplex.size(), 0);
    ++counts[simplex.size() - 1];
    if (simplex.size() == 2) edges.push_back(simplex);
  }
  json maximal = json::array();
  for (const auto& m : s.maximal) {
    json e{{"vertices", m.vertices}};
    if (m.witness) e["flip_word"] = m.witness->word;
    maximal.push_back(std::move(e));
  }
  json j{{"surface", to_json(s.surface)},
         {"completeness", to_string(s.completeness)},
         {"vertices", std::move(vs)},
         {"edges", std::move(edges)},
         {"simplex_counts", counts},
         {"maximal_simplices", std::move(maximal)}};
  if (s.radius >= 0) j["radius"] = s.radius;
  return j;
}

/// FNV-1a over the sorted class list, as a short stable node name.
inline std::string key_hash(const TriangulationKey& key) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& c : key) {
    mix(c.size());
    for (auto x : c) mix(static_cast<std::uint64_t>(x));
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline std::string coords_string(const Coords& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

inline json to_json(const FlipGraphBall& g) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    nodes.push_back({{"id", i},
                     {"distance", g.distance[i]},
                     {"hash", key_hash(g.nodes[i].key())},
                     {"flip_word", g.nodes[i].word},
                     {"classes", g.nodes[i].classes}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"arc", e.arc},
                     {"removed", e.removed},
                     {"added", e.added}});
  }
  return {{"surface", to_json(g.surface)},
          {"radius", g.radius},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

inline std::string to_dot(const FlipGraphBall& g) {
  std::ostringstream os;
  os << "graph flip_ball {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << key_hash(g.nodes[i].key()) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << e.from << " -- n" << e.to << " [label=\"" << coords_string(e.added) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const ArcComplexSlice& s) {
  std::ostringstream os;
  os << "graph arc_complex {\n";
  for (int i = 0; i < s.vertex_count(); ++i) {
    std::string label = !s.labels.empty() && !s.labels[i].empty() ? s.labels[i]
                                                                   : coords_string(s.vertices[i]);
    os << "  v" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto& simplex : s.simplices) {
    if (simplex.size() == 2) os << "  v" << simplex[0] << " -- v" << simplex[1] << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline json to_json(const Certificate& c) {
  return {{"error", std::string(to_string(c.kind))},
          {"property", c.property},
          {"detail", c.detail},
          {"domain", c.domain},
          {"images", c.images}};
}

inline json error_json(const Error& e) {
  if (auto* ce = dynamic_cast<const CertificateError*>(&e)) return to_json(ce->certificate());
  return {{"error", std::string(to_string(e.kind()))}, {"detail", e.what()}};
}

inline json to_json(const Configuration& c) {
  json j{{"kind", to_string(c.kind)}, {"triangles", c.triangles}};
  if (c.flipped >= 0) j["flipped"] = c.flipped;
  if (c.auxiliary) j["auxiliary"] = to_json(*c.auxiliary);
  return j;
}

inline json to_json(const TriangleCheck& c) {
  json j{{"status", to_string(c.status)}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (c.witness) j["flip_word"] = c.witness->word;
  return j;
}

}  // namespace arcx::io
