#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arcx/complex.hpp"
#include "arcx/homeo.hpp"

namespace arcx {

/// A refutation or an inconclusive outcome, in a form that can be written
/// out and re-checked.
struct Certificate {
  ErrorKind kind = ErrorKind::Internal;
  std::string property;  // which property of induced maps fails
  std::string detail;
  std::vector<Coords> domain;  // offending domain classes
  std::vector<Coords> images;  // and their images
};

class CertificateError : public Error {
 public:
  explicit CertificateError(Certificate cert)
      : Error(cert.kind, cert.property + ": " + cert.detail), cert_(std::move(cert)) {}

  const Certificate& certificate() const noexcept { return cert_; }

 private:
  Certificate cert_;
};

/// Vertex map on a finite set of arc classes. Images may lie outside the
/// domain.
class SimplicialSelfMap {
 public:
  SimplicialSelfMap() = default;

  SimplicialSelfMap(Surface surface, std::vector<Coords> vertices, std::vector<Coords> images)
      : surface_(surface) {
    if (vertices.size() != images.size()) {
      throw Error(ErrorKind::ValidationError, "vertex and image lists differ in length");
    }
    std::vector<std::pair<Coords, Coords>> pairs;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      pairs.emplace_back(std::move(vertices[i]), std::move(images[i]));
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i].first == pairs[i - 1].first) {
        throw Error(ErrorKind::ValidationError, "vertex listed twice");
      }
    }
    for (auto& [v, w] : pairs) {
      vertices_.push_back(std::move(v));
      images_.push_back(std::move(w));
    }
  }

  Surface surface() const { return surface_; }
  const std::vector<Coords>& vertices() const { return vertices_; }
  const std::vector<Coords>& images() const { return images_; }
  std::size_t size() const { return vertices_.size(); }

  std::optional<int> find(const Coords& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
  }

  bool defined_at(const Coords& v) const { return find(v).has_value(); }

  const Coords& operator()(const Coords& v) const {
    auto i = find(v);
    if (!i) throw Error(ErrorKind::VertexOutsideDomain, "class outside the map's domain");
    return images_[*i];
  }

  /// Replaces one image; clears the cached flags.
  void reassign(const Coords& v, Coords image) {
    auto i = find(v);
    if (!i) throw Error(ErrorKind::VertexOutsideDomain, "class outside the map's domain");
    images_[*i] = std::move(image);
    simplicial.reset();
    injective.reset();
  }

  /// Restriction to the given classes (all must be in the domain).
  SimplicialSelfMap restricted(std::span<const Coords> vs) const {
    std::vector<Coords> ims;
    for (const auto& v : vs) ims.push_back((*this)(v));
    return {surface_, {vs.begin(), vs.end()}, std::move(ims)};
  }

  // Set only by verify().
  std::optional<bool> simplicial;
  std::optional<bool> injective;

 private:
  Surface surface_;
  std::vector<Coords> vertices_;
  std::vector<Coords> images_;
};

/// Fills in the flags. Domain disjointness comes from `slice` when given,
/// otherwise it is computed.
inline void verify(SimplicialSelfMap& map, const ArcComplexSlice* slice = nullptr,
                   int threads = 1) {
  map.injective = is_injective(std::span<const Coords>(map.images()));
  const auto& vs = map.vertices();
  std::vector<Coords> images;
  if (slice) {
    for (const auto& v : slice->vertices) images.push_back(map(v));
    map.simplicial = is_simplicial(*slice, images);
  } else {
    ArcComplexSlice s;
    s.surface = map.surface();
    s.vertices = vs;
    s.adjacent = detail::disjointness_table(map.surface(), vs, threads);
    map.simplicial = is_simplicial(s, map.images());
  }
}

/// Certificate naming a pair of classes that shows the map is not
/// injective or not simplicial, if there is one.
inline std::optional<Certificate> flag_violation(const SimplicialSelfMap& map, int threads = 1) {
  const auto& vs = map.vertices();
  const auto& ims = map.images();
  std::map<Coords, std::size_t> first;
  for (std::size_t i = 0; i < ims.size(); ++i) {
    auto [it, fresh] = first.emplace(ims[i], i);
    if (!fresh) {
      return Certificate{ErrorKind::ClassMismatch, "injective", "two classes share an image",
                         {vs[it->second], vs[i]}, {ims[it->second], ims[i]}};
    }
  }
  ArcComplexSlice s;
  s.surface = map.surface();
  s.vertices = vs;
  s.adjacent = detail::disjointness_table(map.surface(), vs, threads);
  if (auto bad = simpliciality_violation(s, ims)) {
    const auto [i, j] = *bad;
    return Certificate{ErrorKind::NotRealizable, "simplicial",
                       "disjoint classes map to crossing classes", {vs[i], vs[j]},
                       {ims[i], ims[j]}};
  }
  return std::nullopt;
}

/// Vertex-wise action of a homeomorphism on a slice, with flags verified.
inline SimplicialSelfMap induced_map(const CombinatorialHomeo& h, const ArcComplexSlice& slice) {
  if (h.surface != slice.surface) {
    throw Error(ErrorKind::SignatureMismatch, "homeomorphism and slice live on different surfaces");
  }
  HomeoAction act(h);
  std::vector<Coords> images;
  images.reserve(slice.vertices.size());
  for (const auto& v : slice.vertices) images.push_back(act(v));
  SimplicialSelfMap map(slice.surface, slice.vertices, std::move(images));
  verify(map, &slice);
  return map;
}

/// Same, on an explicit list of classes; flags are left unset.
inline SimplicialSelfMap induced_map(const CombinatorialHomeo& h, Surface surface,
                                     const std::vector<Coords>& vertices) {
  HomeoAction act(h);
  std::vector<Coords> images;
  for (const auto& v : vertices) images.push_back(act(v));
  return {surface, vertices, std::move(images)};
}

struct IntersectionOneViolation {
  std::size_t pair = 0;  // position in the input list
  Coords a, b;
  std::int64_t domain_intersection = 0;
  std::int64_t image_intersection = 0;
};

/// Pairs crossing once must map to pairs crossing once.
inline std::vector<IntersectionOneViolation> check_intersection_one(
    const SimplicialSelfMap& map, const std::vector<std::pair<Coords, Coords>>& pairs) {
  std::vector<IntersectionOneViolation> out;
  const Surface s = map.surface();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [a, b] = pairs[k];
    const std::int64_t before = intersection({s, a}, {s, b});
    const std::int64_t after = intersection({s, map(a)}, {s, map(b)});
    if (before != 1 || after != 1) out.push_back({k, a, b, before, after});
  }
  return out;
}

/// The (removed, added) class pairs of every flip edge of a ball.
inline std::vector<std::pair<Coords, Coords>> elementary_move_pairs(const FlipGraphBall& g) {
  std::vector<std::pair<Coords, Coords>> out;
  for (const auto& e : g.edges) out.emplace_back(e.removed, e.added);
  return out;
}

struct TriangleCheck {
  enum class Status { Preserved, Violated, WitnessNotFound };
  Status status = Status::Preserved;
  std::string detail;
  std::optional<WitnessedTriangulation> witness;  // codomain triangulation used

  bool preserved() const { return status == Status::Preserved; }
};

inline std::string to_string(TriangleCheck::Status s) {
  switch (s) {
    case TriangleCheck::Status::Preserved: return "preserved";
    case TriangleCheck::Status::Violated: return "violated";
    case TriangleCheck::Status::WitnessNotFound: return "witness-not-found";
  }
  return "unknown";
}

namespace detail {

/// Realizes classes, turning flatten blow-ups into "no witness".
inline std::optional<WitnessedTriangulation> try_realize(Surface s, const std::vector<Coords>& cs,
                                                         std::vector<ArcIndex>& slots,
                                                         bool& disjoint_failure) {
  disjoint_failure = false;
  try {
    return realize(s, cs, &slots);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotRealizable || e.kind() == ErrorKind::InvalidCoordinates) {
      disjoint_failure = true;
    }
    return std::nullopt;
  }
}

}  // namespace detail

/// `classes` is either three classes bounding an embedded triangle, or an
/// ordered pair (folded side, enclosing loop) of a self-folded triangle.
/// Checks that the images bound a triangle of the same kind. Any
/// triangulation containing the images has that triangle as a face, so one
/// realization settles it.
inline TriangleCheck check_triangle_class_preserved(const SimplicialSelfMap& map,
                                                    const std::vector<Coords>& classes) {
  if (classes.size() != 2 && classes.size() != 3) {
    throw Error(ErrorKind::ValidationError, "expected a triple or an ordered pair of classes");
  }
  TriangleCheck out;
  std::vector<Coords> images;
  for (const auto& c : classes) images.push_back(map(c));
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (images[i] == images[j]) {
        out.status = TriangleCheck::Status::Violated;
        out.detail = "two sides share an image";
        return out;
      }
    }
  }
  std::vector<ArcIndex> slots;
  bool disjoint_failure = false;
  auto w = detail::try_realize(map.surface(), images, slots, disjoint_failure);
  if (!w) {
    out.status = disjoint_failure ? TriangleCheck::Status::Violated
                                  : TriangleCheck::Status::WitnessNotFound;
    out.detail = disjoint_failure ? "images are not pairwise disjoint"
                                  : "no triangulation containing the images was built";
    return out;
  }
  const Triangulation& t = w->triangulation;
  for (TriangleIndex k = 0; k < t.triangle_count(); ++k) {
    const TriangleClass cls = classify(t, k);
    const auto& tri = t.triangle(k);
    if (classes.size() == 3) {
      if (!cls.embedded()) continue;
      std::array<ArcIndex, 3> have{tri[0].arc, tri[1].arc, tri[2].arc};
      std::array<ArcIndex, 3> want{slots[0], slots[1], slots[2]};
      std::sort(have.begin(), have.end());
      std::sort(want.begin(), want.end());
      if (have == want) {
        out.witness = std::move(w);
        return out;
      }
    } else if (!cls.embedded() && cls.folded == slots[0] && cls.loop == slots[1]) {
      out.witness = std::move(w);
      return out;
    }
  }
  out.status = TriangleCheck::Status::Violated;
  out.detail = classes.size() == 3 ? "images do not bound an embedded triangle"
                                   : "images do not bound a self-folded triangle";
  out.witness = std::move(w);
  return out;
}

struct Configuration {
  enum class Kind { None, Quadrilateral, PuncturedDisc, Annulus };
  Kind kind = Kind::None;
  std::vector<TriangleIndex> triangles;  // the triangles spanned by the arcs
  ArcIndex flipped = -1;                 // arc whose flip gives the auxiliary arc
  std::optional<Triangulation> auxiliary;  // t with `flipped` replaced
};

inline std::string to_string(Configuration::Kind k) {
  switch (k) {
    case Configuration::Kind::None: return "none";
    case Configuration::Kind::Quadrilateral: return "quadrilateral";
    case Configuration::Kind::PuncturedDisc: return "punctured-disc";
    case Configuration::Kind::Annulus: return "annulus";
  }
  return "unknown";
}

/// Recognizes the three local patterns of two embedded triangles:
///   quadrilateral   five arcs, the triangles share one side;
///   punctured-disc  four arcs, two shared sides, and flipping one of them
///                   produces a self-folded triangle;
///   annulus         four arcs, two shared sides, no self-folded flip.
inline Configuration detect_configuration(const Triangulation& t,
                                          const std::vector<ArcIndex>& arcs) {
  std::set<ArcIndex> set;
  for (ArcIndex a : arcs) {
    if (a < 0 || a >= t.arc_count()) {
      throw Error(ErrorKind::NotRealizable, "arc " + std::to_string(a) + " is not an edge");
    }
    if (!set.insert(a).second) {
      throw Error(ErrorKind::NotRealizable, "arc " + std::to_string(a) + " listed twice");
    }
  }
  Configuration out;
  if (set.size() != 4 && set.size() != 5) return out;

  std::vector<TriangleIndex> spanned;
  for (TriangleIndex k = 0; k < t.triangle_count(); ++k) {
    const auto& tri = t.triangle(k);
    if (set.count(tri[0].arc) && set.count(tri[1].arc) && set.count(tri[2].arc) &&
        classify(t, k).embedded()) {
      spanned.push_back(k);
    }
  }
  // Look for a pair covering exactly the arcs.
  for (std::size_t i = 0; i < spanned.size(); ++i) {
    for (std::size_t j = i + 1; j < spanned.size(); ++j) {
      const auto& x = t.triangle(spanned[i]);
      const auto& y = t.triangle(spanned[j]);
      std::set<ArcIndex> cover;
      std::vector<ArcIndex> shared;
      for (const auto& s : x) cover.insert(s.arc);
      for (const auto& s : y) {
        cover.insert(s.arc);
        if (s.arc == x[0].arc || s.arc == x[1].arc || s.arc == x[2].arc) shared.push_back(s.arc);
      }
      if (cover != set) continue;
      out.triangles = {spanned[i], spanned[j]};
      if (set.size() == 5 && shared.size() == 1) {
        out.kind = Configuration::Kind::Quadrilateral;
        out.flipped = shared[0];
        out.auxiliary = flip(t, shared[0]);
        return out;
      }
      if (set.size() == 4 && shared.size() == 2) {
        for (ArcIndex e : shared) {
          Triangulation f = flip(t, e);
          for (TriangleIndex k : out.triangles) {
            if (!classify(f, k).embedded()) {
              out.kind = Configuration::Kind::PuncturedDisc;
              out.flipped = e;
              out.auxiliary = std::move(f);
              return out;
            }
          }
        }
        out.kind = Configuration::Kind::Annulus;
        out.flipped = shared[0];
        out.auxiliary = flip(t, shared[0]);
        return out;
      }
    }
  }
  out.triangles.clear();
  return out;
}

namespace detail {

inline bool neighbors_distinct(const Triangulation& t, TriangleIndex d) {
  std::array<TriangleIndex, 3> n{};
  for (int p = 0; p < 3; ++p) n[p] = t.twin({d, p}).triangle;
  return n[0] != n[1] && n[1] != n[2] && n[0] != n[2];
}

}  // namespace detail

/// Flips (at most two, none on a side of the embedded triangle `d`) after
/// which the three triangles across the sides of `d` are pairwise
/// distinct.
inline std::pair<FlipWord, Triangulation> four_distinct_neighbors(const Triangulation& t,
                                                                  TriangleIndex d) {
  t.check_triangle(d);
  if (t.surface() == Surface(0, 3) || t.surface() == Surface(1, 1)) {
    throw Error(ErrorKind::ValidationError,
                "surface " + t.surface().name() + " has too few triangles");
  }
  if (!classify(t, d).embedded()) {
    throw Error(ErrorKind::ValidationError, "triangle " + std::to_string(d) + " is not embedded");
  }
  if (detail::neighbors_distinct(t, d)) return {{}, t};
  const auto& tri = t.triangle(d);
  auto allowed = [&](const Triangulation& u, ArcIndex e) {
    return e != tri[0].arc && e != tri[1].arc && e != tri[2].arc && flippable(u, e);
  };
  for (ArcIndex e = 0; e < t.arc_count(); ++e) {
    if (!allowed(t, e)) continue;
    Triangulation u = flip(t, e);
    if (detail::neighbors_distinct(u, d)) return {{e}, u};
  }
  for (ArcIndex e = 0; e < t.arc_count(); ++e) {
    if (!allowed(t, e)) continue;
    Triangulation u = flip(t, e);
    for (ArcIndex f = 0; f < u.arc_count(); ++f) {
      if (!allowed(u, f)) continue;
      Triangulation v = flip(u, f);
      if (detail::neighbors_distinct(v, d)) return {{e, f}, v};
    }
  }
  throw Error(ErrorKind::Internal, "no two-flip word separates the neighbors");
}

/// Orientation type of each triangle correspondence. Variables are joined
/// by equality across every shared arc; a self-folded triangle admits both
/// types (its image may be read as F or F*), an embedded one only the type
/// its cyclic order dictates.
struct OrientationConstraintSystem {
  std::vector<std::array<bool, 2>> allowed;  // [triangle][preserving, reversing]
  std::vector<std::pair<TriangleIndex, TriangleIndex>> equal;

  /// Common type for all triangles, or nothing when unsatisfiable.
  std::optional<Orientation> solve() const {
    const int n = static_cast<int>(allowed.size());
    detail::UnionFind uf(n);
    for (auto [a, b] : equal) uf.unite(a, b);
    std::map<int, std::array<bool, 2>> comp;
    for (int k = 0; k < n; ++k) {
      auto [it, fresh] = comp.emplace(uf.find(k), allowed[k]);
      if (!fresh) {
        it->second[0] = it->second[0] && allowed[k][0];
        it->second[1] = it->second[1] && allowed[k][1];
      }
    }
    bool p = true, r = true;
    for (const auto& [root, a] : comp) {
      p = p && a[0];
      r = r && a[1];
    }
    if (p) return Orientation::Preserving;
    if (r) return Orientation::Reversing;
    return std::nullopt;
  }
};

namespace detail {

inline bool same_cycle(std::array<ArcIndex, 3> x, std::array<ArcIndex, 3> y) {
  return least_rotation(x) == least_rotation(y);
}

inline Certificate map_certificate(ErrorKind kind, std::string property, std::string detail,
                                   const SimplicialSelfMap& map, std::vector<Coords> domain) {
  Certificate c{kind, std::move(property), std::move(detail), std::move(domain), {}};
  for (const auto& v : c.domain) c.images.push_back(map(v));
  return c;
}

}  // namespace detail

/// Result of reconstruction: the homeomorphism and the triangulation
/// correspondence it came from.
struct Reconstruction {
  CombinatorialHomeo homeo;
  WitnessedTriangulation source;  // [T]
  WitnessedTriangulation target;  // a triangulation spanning the image [T']
  std::vector<ArcIndex> arc_correspondence;       // arc of T -> arc of T'
  std::vector<TriangleIndex> triangle_correspondence;
  OrientationConstraintSystem constraints;
};

/// Builds a homeomorphism inducing `map` on the maximal simplex spanned by
/// `simplex`. Uses the map only on that simplex's classes.
inline Reconstruction reconstruct(const SimplicialSelfMap& map,
                                  const WitnessedTriangulation& simplex) {
  const Surface surface = map.surface();
  const Triangulation& t = simplex.triangulation;
  if (t.surface() != surface) {
    throw Error(ErrorKind::SignatureMismatch, "simplex lives on " + t.surface().name());
  }
  const int n = t.arc_count();
  std::vector<Coords> images;
  for (const auto& c : simplex.classes) images.push_back(map(c));
  if (!is_injective(std::span<const Coords>(images))) {
    throw CertificateError(detail::map_certificate(
        ErrorKind::ClassMismatch, "injective", "two arcs of the simplex share an image", map,
        simplex.classes));
  }

  Reconstruction out;
  out.source = simplex;
  std::vector<ArcIndex> rho;
  bool disjoint_failure = false;
  auto target = detail::try_realize(surface, images, rho, disjoint_failure);
  if (!target) {
    throw CertificateError(detail::map_certificate(
        disjoint_failure ? ErrorKind::NotRealizable : ErrorKind::WitnessNotFound, "simplicial",
        disjoint_failure ? "images of a maximal simplex are not pairwise disjoint"
                         : "could not build a triangulation on the images",
        map, simplex.classes));
  }
  out.target = std::move(*target);
  out.arc_correspondence = rho;
  const Triangulation& u = out.target.triangulation;

  // Triangle correspondence by side sets, with class agreement.
  auto classes_of = [&](TriangleIndex k) {
    std::vector<Coords> cs;
    for (const auto& s : t.triangle(k)) cs.push_back(simplex.classes[s.arc]);
    return cs;
  };
  std::vector<std::vector<TriangleIndex>> candidates(t.triangle_count());
  OrientationConstraintSystem& sys = out.constraints;
  sys.allowed.assign(t.triangle_count(), {false, false});
  for (TriangleIndex k = 0; k < t.triangle_count(); ++k) {
    const auto& tri = t.triangle(k);
    const std::array<ArcIndex, 3> img{rho[tri[0].arc], rho[tri[1].arc], rho[tri[2].arc]};
    const TriangleClass cls = classify(t, k);
    bool same_sides = false;
    for (TriangleIndex m = 0; m < u.triangle_count(); ++m) {
      const auto& tm = u.triangle(m);
      const std::array<ArcIndex, 3> have{tm[0].arc, tm[1].arc, tm[2].arc};
      auto a = img, b = have;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) continue;
      same_sides = true;
      const TriangleClass cm = classify(u, m);
      const bool agree = cls.embedded() ? cm.embedded()
                                        : !cm.embedded() && cm.folded == rho[cls.folded] &&
                                              cm.loop == rho[cls.loop];
      if (!agree) continue;
      candidates[k].push_back(m);
      const bool pres = detail::same_cycle(img, have);
      const bool rev = detail::same_cycle({img[0], img[2], img[1]}, have);
      sys.allowed[k][0] = sys.allowed[k][0] || pres;
      sys.allowed[k][1] = sys.allowed[k][1] || rev;
    }
    if (candidates[k].empty()) {
      const char* what = same_sides ? "image triangle has a different class"
                                    : "images of the sides do not bound a triangle";
      throw CertificateError(detail::map_certificate(
          ErrorKind::ClassMismatch, cls.embedded() ? "embedded triangle" : "self-folded triangle",
          std::string(what) + " (triangle " + std::to_string(k) + ")", map, classes_of(k)));
    }
  }
  for (ArcIndex a = 0; a < n; ++a) {
    const auto [s0, s1] = t.sides_of(a);
    if (s0.triangle != s1.triangle) sys.equal.emplace_back(s0.triangle, s1.triangle);
  }
  const auto orientation = sys.solve();
  if (!orientation) {
    throw CertificateError(detail::map_certificate(
        ErrorKind::OrientationUnsatisfiable, "orientation type",
        "triangle correspondences need opposite orientation types", map, simplex.classes));
  }
  auto iso = extend_isomorphism(t, u, rho, *orientation);
  if (!iso) {
    throw CertificateError(detail::map_certificate(
        ErrorKind::OrientationUnsatisfiable, "orientation type",
        "no gluing-compatible triangle correspondence", map, simplex.classes));
  }
  out.triangle_correspondence = iso->triangle_map;

  // T is the base flipped by u_0..u_m; undoing those flips on T' through
  // the arc correspondence lands on the image of the base.
  CombinatorialHomeo h;
  h.surface = surface;
  h.word = out.target.word;
  for (auto it = simplex.word.rbegin(); it != simplex.word.rend(); ++it) h.word.push_back(rho[*it]);
  h.arc_relabel = rho;
  h.orientation = *orientation;
  const Triangulation base = new_standard(surface);
  auto hiso = extend_isomorphism(base, replay(base, h.word), h.arc_relabel, h.orientation);
  if (!hiso) throw Error(ErrorKind::Internal, "reconstructed relabeling does not extend");
  h.triangle_relabel = hiso->triangle_map;

  HomeoAction act(h);
  for (ArcIndex a = 0; a < n; ++a) {
    if (act(simplex.classes[a]) != images[a]) {
      throw Error(ErrorKind::Internal, "reconstructed homeomorphism misses arc " +
                                           std::to_string(a));
    }
  }
  out.homeo = std::move(h);
  return out;
}

/// Reconstruction from the standard triangulation's simplex.
inline Reconstruction reconstruct(const SimplicialSelfMap& map) {
  return reconstruct(map, witness(map.surface()));
}

struct GeometricCheck {
  std::size_t checked = 0;
};

/// Compares the homeomorphism's action with the map on every class of the
/// given vertices, in order. Throws a Disagreement certificate at the
/// first mismatch.
inline GeometricCheck verify_geometric(const SimplicialSelfMap& map, const CombinatorialHomeo& h,
                                       const std::vector<Coords>& vertices) {
  if (h.surface != map.surface()) {
    throw Error(ErrorKind::SignatureMismatch, "homeomorphism and map differ in surface");
  }
  HomeoAction act(h);
  GeometricCheck out;
  for (const auto& v : vertices) {
    const Coords& want = map(v);
    Coords got = act(v);
    if (got != want) {
      Certificate c{ErrorKind::Disagreement, "geometric",
                    "homeomorphism and map disagree at a vertex", {v}, {want}};
      c.images.push_back(std::move(got));
      throw CertificateError(std::move(c));
    }
    ++out.checked;
  }
  return out;
}

/// Vertices of a flip ball in breadth-first order, without repeats.
inline std::vector<Coords> ball_vertices(const FlipGraphBall& g) {
  std::vector<Coords> out;
  std::set<Coords> seen;
  for (const auto& node : g.nodes) {
    for (const auto& c : node.classes) {
      if (seen.insert(c).second) out.push_back(c);
    }
  }
  return out;
}

inline GeometricCheck verify_geometric(const SimplicialSelfMap& map, const CombinatorialHomeo& h,
                                       int radius) {
  return verify_geometric(map, h, ball_vertices(ball(map.surface(), radius)));
}

struct SurjectivityReport {
  std::vector<Coords> covered;        // sorted classes proven to be images
  std::size_t simplices_visited = 0;  // domain maximal simplices reached
  std::size_t chains_leaving = 0;     // extensions stopped at the domain's edge
};

/// Walks chains of maximal simplices. From a domain simplex X with image Y
/// and a face missing x, the codomain has one other maximal simplex on
/// that face, Y'; the domain has one other, X'. Injectivity forces
/// map(X') = Y', so the vertex of Y' opposite the face is an image. Only
/// vertices reached this way are reported.
inline SurjectivityReport surjectivity_extend(const SimplicialSelfMap& map,
                                              const WitnessedTriangulation& start) {
  const Surface surface = map.surface();
  const Triangulation base = new_standard(surface);
  const int n = base.arc_count();
  SurjectivityReport out;
  std::set<Coords> covered;

  auto image_of = [&](const WitnessedTriangulation& x) -> std::optional<std::vector<Coords>> {
    std::vector<Coords> ys;
    for (const auto& c : x.classes) {
      if (!map.defined_at(c)) return std::nullopt;
      ys.push_back(map(c));
    }
    return ys;
  };
  auto first = image_of(start);
  if (!first) throw Error(ErrorKind::VertexOutsideDomain, "starting simplex is not in the domain");

  struct Item {
    WitnessedTriangulation x;
    WitnessedTriangulation y;  // realized image, y.classes[rho[a]] = map(x.classes[a])
    std::vector<ArcIndex> rho;
  };
  auto make_image = [&](const std::vector<Coords>& ys, std::vector<ArcIndex>& rho) {
    bool disjoint_failure = false;
    auto w = detail::try_realize(surface, ys, rho, disjoint_failure);
    if (!w) {
      throw CertificateError({disjoint_failure ? ErrorKind::NotRealizable
                                               : ErrorKind::WitnessNotFound,
                              "simplicial", "image of a maximal simplex is not a simplex", {}, ys});
    }
    return std::move(*w);
  };

  std::deque<Item> queue;
  std::set<TriangulationKey> seen;
  {
    Item it{start, {}, {}};
    it.y = make_image(*first, it.rho);
    for (const auto& c : *first) covered.insert(c);
    seen.insert(start.key());
    queue.push_back(std::move(it));
  }
  while (!queue.empty()) {
    Item cur = std::move(queue.front());
    queue.pop_front();
    ++out.simplices_visited;
    for (ArcIndex a = 0; a < n; ++a) {
      if (!flippable(cur.x.triangulation, a)) continue;
      WitnessedTriangulation x2 = flip_witnessed(base, cur.x, a);
      if (seen.count(x2.key())) continue;
      if (!map.defined_at(x2.classes[a])) {
        ++out.chains_leaving;
        continue;
      }
      // The other codomain simplex on the face.
      const ArcIndex b = cur.rho[a];
      if (!flippable(cur.y.triangulation, b)) {
        throw CertificateError(detail::map_certificate(
            ErrorKind::ClassMismatch, "codimension-one face",
            "image face lies in only one maximal simplex", map, {cur.x.classes[a]}));
      }
      WitnessedTriangulation y2 = flip_witnessed(base, cur.y, b);
      if (map(x2.classes[a]) != y2.classes[b]) {
        throw CertificateError(detail::map_certificate(
            ErrorKind::Disagreement, "codimension-one face",
            "neighboring maximal simplex does not map to the neighboring image", map,
            {x2.classes[a]}));
      }
      covered.insert(y2.classes[b]);
      seen.insert(x2.key());
      queue.push_back({std::move(x2), std::move(y2), cur.rho});
    }
  }
  out.covered.assign(covered.begin(), covered.end());
  return out;
}

inline SurjectivityReport surjectivity_extend(const SimplicialSelfMap& map) {
  return surjectivity_extend(map, witness(map.surface()));
}

}  // namespace arcx
