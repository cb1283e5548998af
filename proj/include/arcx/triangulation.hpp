#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arcx/error.hpp"
#include "arcx/surface.hpp"

namespace arcx {

using ArcIndex = int;
using TriangleIndex = int;

/// One side of a triangle: an arc traversed in one of its two directions.
/// Copy 0 runs along the arc's reference direction, copy 1 against it.
struct Side {
  ArcIndex arc = 0;
  int copy = 0;

  friend constexpr auto operator<=>(const Side&, const Side&) = default;
};

/// Sides listed in positively oriented cyclic order. Side i runs from
/// corner i to corner i+1.
using TriangleSides = std::array<Side, 3>;

struct SideRef {
  TriangleIndex triangle = -1;
  int position = -1;

  friend constexpr auto operator<=>(const SideRef&, const SideRef&) = default;
};

struct TriangleClass {
  enum class Kind { Embedded, SelfFolded };
  Kind kind = Kind::Embedded;
  ArcIndex folded = -1;  // repeated side, only for SelfFolded
  ArcIndex loop = -1;    // enclosing loop, only for SelfFolded

  bool embedded() const { return kind == Kind::Embedded; }
  friend bool operator==(const TriangleClass&, const TriangleClass&) = default;
};

struct ValidationIssue {
  enum class Kind {
    SignatureMismatch,
    ArcIndexOutOfRange,
    CopyOutOfRange,
    ArcMultiplicity,
    Orientation,
    Disconnected,
    PunctureCount,
    EulerCharacteristic,
  };
  Kind kind;
  int index = -1;
  std::string message;
};

inline std::string to_string(ValidationIssue::Kind kind) {
  using K = ValidationIssue::Kind;
  switch (kind) {
    case K::SignatureMismatch: return "signature_mismatch";
    case K::ArcIndexOutOfRange: return "arc_index_out_of_range";
    case K::CopyOutOfRange: return "copy_out_of_range";
    case K::ArcMultiplicity: return "arc_multiplicity";
    case K::Orientation: return "orientation";
    case K::Disconnected: return "disconnected";
    case K::PunctureCount: return "puncture_count";
    case K::EulerCharacteristic: return "euler_characteristic";
  }
  return "unknown";
}

using ValidationReport = std::vector<ValidationIssue>;

/// Ideal triangulation stored as a labeled combinatorial map: triangles
/// are cyclic triples of sides, and the two sides carrying the same arc
/// are glued with opposite orientations.
///
/// Construction does not validate; call validate() or
/// Triangulation::checked().
class Triangulation {
 public:
  Triangulation() = default;

  Triangulation(Surface surface, int arc_count, std::vector<TriangleSides> triangles)
      : surface_(surface), arc_count_(arc_count), triangles_(std::move(triangles)) {
    index_sides();
  }

  static Triangulation checked(Surface surface, int arc_count,
                               std::vector<TriangleSides> triangles);

  const Surface& surface() const { return surface_; }
  int arc_count() const { return arc_count_; }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  std::span<const TriangleSides> triangles() const { return triangles_; }
  const TriangleSides& triangle(TriangleIndex t) const {
    check_triangle(t);
    return triangles_[t];
  }
  const Side& side(SideRef ref) const { return triangles_[ref.triangle][ref.position]; }

  /// Both sides carrying `arc`, ordered by copy index.
  std::array<SideRef, 2> sides_of(ArcIndex arc) const {
    check_arc(arc);
    return locations_[arc];
  }

  void check_arc(ArcIndex arc) const {
    if (arc < 0 || arc >= arc_count_) {
      throw Error(ErrorKind::IndexOutOfRange, "arc index " + std::to_string(arc));
    }
  }
  void check_triangle(TriangleIndex t) const {
    if (t < 0 || t >= triangle_count()) {
      throw Error(ErrorKind::IndexOutOfRange, "triangle index " + std::to_string(t));
    }
  }

  /// Side glued to `ref`.
  SideRef twin(SideRef ref) const {
    const auto& locs = locations_[side(ref).arc];
    return locs[0] == ref ? locs[1] : locs[0];
  }

  /// Puncture label of every corner, indexed 3*triangle + corner. Labels
  /// are assigned in order of first appearance. Requires a well-formed
  /// gluing (every arc on exactly two sides).
  std::vector<int> corner_punctures() const;
  int puncture_count() const;

  /// Arc labels of each triangle rotated to their lexicographically least
  /// rotation, then sorted. Since every arc sits on exactly two sides, this
  /// determines the glued surface, so it is the structural identity.
  std::vector<std::array<ArcIndex, 3>> normalized() const;

  /// Structural equality: same signature and same glued surface with the
  /// same arc labels. Copy indices and triangle numbering are bookkeeping.
  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.surface_ == b.surface_ && a.arc_count_ == b.arc_count_ &&
           a.normalized() == b.normalized();
  }

  /// Exact equality including triangle order, rotation and copies.
  bool identical(const Triangulation& other) const {
    return surface_ == other.surface_ && arc_count_ == other.arc_count_ &&
           triangles_ == other.triangles_;
  }

 private:
  void index_sides() {
    locations_.assign(std::max(arc_count_, 0), {SideRef{}, SideRef{}});
    for (TriangleIndex t = 0; t < triangle_count(); ++t) {
      for (int i = 0; i < 3; ++i) {
        const Side& s = triangles_[t][i];
        if (s.arc < 0 || s.arc >= arc_count_ || s.copy < 0 || s.copy > 1) continue;
        auto& slot = locations_[s.arc][s.copy];
        if (slot.triangle < 0) {
          slot = {t, i};
        } else if (locations_[s.arc][1 - s.copy].triangle < 0) {
          // Both sides claim the same copy; keep the second one reachable so
          // twin() stays total, validate() flags the orientation problem.
          locations_[s.arc][1 - s.copy] = {t, i};
        }
      }
    }
  }

  Surface surface_;
  int arc_count_ = 0;
  std::vector<TriangleSides> triangles_;
  std::vector<std::array<SideRef, 2>> locations_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline std::array<ArcIndex, 3> least_rotation(std::array<ArcIndex, 3> arcs) {
  auto best = arcs;
  for (int r = 1; r < 3; ++r) {
    std::rotate(arcs.begin(), arcs.begin() + 1, arcs.end());
    best = std::min(best, arcs);
  }
  return best;
}

}  // namespace detail

inline std::vector<int> Triangulation::corner_punctures() const {
  const int corners = 3 * triangle_count();
  detail::UnionFind uf(corners);
  for (ArcIndex a = 0; a < arc_count_; ++a) {
    const auto [s0, s1] = locations_[a];
    if (s0.triangle < 0 || s1.triangle < 0) continue;
    // Tail of one side meets head of the other.
    uf.unite(3 * s0.triangle + s0.position, 3 * s1.triangle + (s1.position + 1) % 3);
    uf.unite(3 * s0.triangle + (s0.position + 1) % 3, 3 * s1.triangle + s1.position);
  }
  std::vector<int> label(corners, -1);
  std::vector<int> root_label(corners, -1);
  int next = 0;
  for (int c = 0; c < corners; ++c) {
    const int r = uf.find(c);
    if (root_label[r] < 0) root_label[r] = next++;
    label[c] = root_label[r];
  }
  return label;
}

inline int Triangulation::puncture_count() const {
  const auto labels = corner_punctures();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

inline std::vector<std::array<ArcIndex, 3>> Triangulation::normalized() const {
  std::vector<std::array<ArcIndex, 3>> out;
  out.reserve(triangles_.size());
  for (const auto& tri : triangles_) {
    out.push_back(detail::least_rotation({tri[0].arc, tri[1].arc, tri[2].arc}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Checks every structural invariant; an empty report means valid.
inline ValidationReport validate(const Triangulation& t) {
  using K = ValidationIssue::Kind;
  ValidationReport report;
  const Surface& s = t.surface();
  if (!s.triangulable()) {
    report.push_back({K::SignatureMismatch, -1, "signature " + s.name() + " is not triangulable"});
    return report;
  }
  if (t.arc_count() != s.arc_count()) {
    report.push_back({K::SignatureMismatch, t.arc_count(),
                      "arc count " + std::to_string(t.arc_count()) + " differs from " +
                          std::to_string(s.arc_count())});
  }
  if (t.triangle_count() != s.triangle_count()) {
    report.push_back({K::SignatureMismatch, t.triangle_count(),
                      "triangle count " + std::to_string(t.triangle_count()) + " differs from " +
                          std::to_string(s.triangle_count())});
  }

  std::vector<std::array<int, 2>> copies(std::max(t.arc_count(), 0), {0, 0});
  bool structural = true;
  for (TriangleIndex ti = 0; ti < t.triangle_count(); ++ti) {
    for (const Side& side : t.triangles()[ti]) {
      if (side.arc < 0 || side.arc >= t.arc_count()) {
        report.push_back({K::ArcIndexOutOfRange, side.arc,
                          "triangle " + std::to_string(ti) + " uses arc " +
                              std::to_string(side.arc)});
        structural = false;
      } else if (side.copy < 0 || side.copy > 1) {
        report.push_back({K::CopyOutOfRange, side.arc,
                          "arc " + std::to_string(side.arc) + " has copy " +
                              std::to_string(side.copy)});
        structural = false;
      } else {
        ++copies[side.arc][side.copy];
      }
    }
  }
  for (ArcIndex a = 0; a < t.arc_count(); ++a) {
    const int uses = copies[a][0] + copies[a][1];
    if (uses != 2) {
      report.push_back({K::ArcMultiplicity, a,
                        "arc " + std::to_string(a) + " used " + std::to_string(uses) + " times"});
      structural = false;
    } else if (copies[a][0] != 1) {
      report.push_back({K::Orientation, a,
                        "arc " + std::to_string(a) +
                            " is traversed in the same direction by both sides"});
      structural = false;
    }
  }
  if (!structural || t.triangle_count() == 0) return report;

  detail::UnionFind uf(t.triangle_count());
  for (ArcIndex a = 0; a < t.arc_count(); ++a) {
    const auto sides = t.sides_of(a);
    uf.unite(sides[0].triangle, sides[1].triangle);
  }
  for (TriangleIndex ti = 1; ti < t.triangle_count(); ++ti) {
    if (uf.find(ti) != uf.find(0)) {
      report.push_back({K::Disconnected, ti,
                        "triangle " + std::to_string(ti) + " is not connected to triangle 0"});
      break;
    }
  }
  const int punctures = t.puncture_count();
  if (punctures != s.boundary) {
    report.push_back({K::PunctureCount, punctures,
                      "gluing has " + std::to_string(punctures) + " punctures, expected " +
                          std::to_string(s.boundary)});
  }
  const int chi = punctures - t.arc_count() + t.triangle_count();
  if (chi != s.euler_characteristic()) {
    report.push_back({K::EulerCharacteristic, chi,
                      "Euler characteristic " + std::to_string(chi) + ", expected " +
                          std::to_string(s.euler_characteristic())});
  }
  return report;
}

inline std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& issue : report) {
    if (!out.empty()) out += "; ";
    out += to_string(issue.kind) + ": " + issue.message;
  }
  return out;
}

inline Triangulation Triangulation::checked(Surface surface, int arc_count,
                                            std::vector<TriangleSides> triangles) {
  Triangulation t(surface, arc_count, std::move(triangles));
  const auto report = validate(t);
  if (!report.empty()) throw Error(ErrorKind::ValidationError, describe(report));
  return t;
}

/// Embedded when the three sides carry distinct arcs, self-folded when one
/// arc repeats.
inline TriangleClass classify(const Triangulation& t, TriangleIndex index) {
  const auto& tri = t.triangle(index);
  const ArcIndex a = tri[0].arc, b = tri[1].arc, c = tri[2].arc;
  if (a != b && b != c && a != c) return {};
  if (a == b && b == c) {
    throw Error(ErrorKind::ValidationError,
                "triangle " + std::to_string(index) + " uses a single arc three times");
  }
  if (a == b) return {TriangleClass::Kind::SelfFolded, a, c};
  if (b == c) return {TriangleClass::Kind::SelfFolded, b, a};
  return {TriangleClass::Kind::SelfFolded, a, b};
}

/// Triangles containing the two sides of `arc`, ordered by copy index.
inline std::pair<TriangleIndex, TriangleIndex> adjacent_triangles(const Triangulation& t,
                                                                  ArcIndex arc) {
  const auto sides = t.sides_of(arc);
  return {sides[0].triangle, sides[1].triangle};
}

// Standard triangulation.
//
// Genus g >= 1: the 4g-gon with boundary word a1 b1 a1^-1 b1^-1 ... fanned
// from vertex 0; arcs are a1, b1, ..., ag, bg followed by the fan diagonals.
// Genus 0: two triangles glued along their boundary (thrice-punctured
// sphere), arcs 0, 1, 2 joining punctures 0-1, 1-2, 2-0.
// Every further puncture is added by starring the last triangle: three new
// arcs from its corners to the new puncture, and two new triangles.

namespace detail {

inline void star_last_triangle(int& arc_count, std::vector<TriangleSides>& triangles) {
  const TriangleSides old = triangles.back();
  const ArcIndex u0 = arc_count, u1 = arc_count + 1, u2 = arc_count + 2;
  const std::array<ArcIndex, 3> spoke{u0, u1, u2};
  arc_count += 3;
  // Spoke i runs from corner i to the new puncture (copy 0 outward).
  std::array<TriangleSides, 3> fresh;
  for (int i = 0; i < 3; ++i) {
    fresh[i] = {old[i], Side{spoke[(i + 1) % 3], 0}, Side{spoke[i], 1}};
  }
  triangles.back() = fresh[0];
  triangles.push_back(fresh[1]);
  triangles.push_back(fresh[2]);
}

}  // namespace detail

inline Triangulation new_standard(Surface surface) {
  surface.require_triangulable();
  int arcs = 0;
  std::vector<TriangleSides> triangles;
  int punctures = 0;
  if (surface.genus == 0) {
    arcs = 3;
    triangles.push_back({Side{0, 0}, Side{1, 0}, Side{2, 0}});
    triangles.push_back({Side{2, 1}, Side{1, 1}, Side{0, 1}});
    punctures = 3;
  } else {
    const int g = surface.genus;
    const int n = 4 * g;  // polygon sides
    std::vector<Side> boundary(n);
    for (int k = 0; k < g; ++k) {
      const ArcIndex a = 2 * k, b = 2 * k + 1;
      boundary[4 * k + 0] = {a, 0};
      boundary[4 * k + 1] = {b, 0};
      boundary[4 * k + 2] = {a, 1};
      boundary[4 * k + 3] = {b, 1};
    }
    arcs = 2 * g;
    // Diagonal to polygon vertex j (2 <= j <= n-2), copy 0 from vertex 0.
    std::vector<ArcIndex> diagonal(n, -1);
    for (int j = 2; j <= n - 2; ++j) diagonal[j] = arcs++;
    for (int j = 1; j <= n - 2; ++j) {
      const Side first = j == 1 ? boundary[0] : Side{diagonal[j], 0};
      const Side last = j == n - 2 ? boundary[n - 1] : Side{diagonal[j + 1], 1};
      triangles.push_back({first, boundary[j], last});
    }
    punctures = 1;
  }
  while (punctures < surface.boundary) {
    detail::star_last_triangle(arcs, triangles);
    ++punctures;
  }
  return Triangulation::checked(surface, arcs, std::move(triangles));
}

}  // namespace arcx
