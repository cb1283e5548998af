#pragma once

#include <span>
#include <vector>

#include "arcx/triangulation.hpp"

namespace arcx {

/// Each entry names the arc flipped in the triangulation reached so far.
/// A flip keeps the label of the arc it replaces.
using FlipWord = std::vector<ArcIndex>;

/// The quadrilateral around a flippable arc. With the arc running P -> Q
/// in `first`, the boundary is a: Q -> R, b: R -> P (in `first`) and
/// c: P -> S, d: S -> Q (in `second`).
struct Quadrilateral {
  ArcIndex diagonal = -1;
  SideRef first, second;
  Side a, b, c, d;
};

inline bool flippable(const Triangulation& t, ArcIndex arc) {
  const auto sides = t.sides_of(arc);
  return sides[0].triangle != sides[1].triangle;
}

inline Quadrilateral quadrilateral(const Triangulation& t, ArcIndex arc) {
  if (!flippable(t, arc)) {
    throw Error(ErrorKind::NotFlippable,
                "arc " + std::to_string(arc) + " is the folded side of a self-folded triangle");
  }
  const auto [s0, s1] = t.sides_of(arc);
  const auto& t0 = t.triangle(s0.triangle);
  const auto& t1 = t.triangle(s1.triangle);
  Quadrilateral q;
  q.diagonal = arc;
  q.first = s0;
  q.second = s1;
  q.a = t0[(s0.position + 1) % 3];
  q.b = t0[(s0.position + 2) % 3];
  q.c = t1[(s1.position + 1) % 3];
  q.d = t1[(s1.position + 2) % 3];
  return q;
}

/// Replaces `arc` by the other diagonal of its quadrilateral. The new
/// diagonal keeps the label; the two triangles keep their indices.
inline Triangulation flip(const Triangulation& t, ArcIndex arc) {
  const Quadrilateral q = quadrilateral(t, arc);
  std::vector<TriangleSides> triangles(t.triangles().begin(), t.triangles().end());
  // New diagonal runs R <-> S: triangles (R,P,S) and (S,Q,R).
  triangles[q.first.triangle] = {q.b, q.c, Side{arc, 0}};
  triangles[q.second.triangle] = {q.d, q.a, Side{arc, 1}};
  return Triangulation(t.surface(), t.arc_count(), std::move(triangles));
}

inline Triangulation replay(Triangulation t, std::span<const ArcIndex> word) {
  for (ArcIndex e : word) t = flip(t, e);
  return t;
}

/// Every intermediate triangulation: result[k] is reached after k flips.
inline std::vector<Triangulation> replay_all(const Triangulation& t,
                                             std::span<const ArcIndex> word) {
  std::vector<Triangulation> out;
  out.reserve(word.size() + 1);
  out.push_back(t);
  for (ArcIndex e : word) out.push_back(flip(out.back(), e));
  return out;
}

}  // namespace arcx
