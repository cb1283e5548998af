#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcx/flip.hpp"

namespace arcx {

/// Normal coordinates of an arc relative to a triangulation: the number
/// of interior crossings with each arc, or a single -1 (all others 0) when
/// the class is that arc itself.
using Coords = std::vector<std::int64_t>;

/// Isotopy class of an essential arc, in coordinates relative to the
/// standard triangulation of `base`.
struct ArcClass {
  Surface base;
  Coords coords;

  friend auto operator<=>(const ArcClass&, const ArcClass&) = default;
};

inline Coords edge_coords(int arc_count, ArcIndex arc) {
  Coords c(arc_count, 0);
  c[arc] = -1;
  return c;
}

/// Index of the -1 marker, if the class is an arc of the triangulation.
inline std::optional<ArcIndex> marked_arc(const Coords& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0) return static_cast<ArcIndex>(i);
  }
  return std::nullopt;
}

inline std::int64_t l1_norm(const Coords& c) {
  std::int64_t s = 0;
  for (auto x : c) s += x > 0 ? x : 0;
  return s;
}

namespace detail {

/// Normal pieces of an arc inside one triangle with side counts
/// (n0, n1, n2), side i running from corner i to corner i+1. Corner i
/// lies between sides i-1 and i; the side opposite corner i is i+1.
struct TrianglePieces {
  std::array<std::int64_t, 3> corner{};  // corner pieces, cut sides i-1 and i
  std::array<std::int64_t, 3> ends{};    // arc ends at corner i, cross side i+1
  bool valid = true;
};

inline TrianglePieces decompose(std::int64_t n0, std::int64_t n1, std::int64_t n2) {
  const std::array<std::int64_t, 3> n{n0, n1, n2};
  TrianglePieces p;
  std::array<std::int64_t, 3> rest = n;
  for (int i = 0; i < 3; ++i) {
    const std::int64_t excess = n[(i + 1) % 3] - n[i] - n[(i + 2) % 3];
    if (excess > 0) {
      p.ends[i] = excess;
      rest[(i + 1) % 3] -= excess;
    }
  }
  const std::int64_t sum = rest[0] + rest[1] + rest[2];
  if (sum % 2 != 0) {
    p.valid = false;
    return p;
  }
  for (int i = 0; i < 3; ++i) {
    // Corner i cuts sides i-1 and i.
    p.corner[i] = (rest[(i + 2) % 3] + rest[i] - rest[(i + 1) % 3]) / 2;
    if (p.corner[i] < 0) p.valid = false;
  }
  return p;
}

inline std::int64_t side_value(const Coords& c, const Side& s) { return c[s.arc]; }

}  // namespace detail

/// Checks the coordinate invariants relative to `t`. Returns an empty
/// string when valid, otherwise the reason.
inline std::string coordinate_problem(const Coords& c, const Triangulation& t) {
  if (static_cast<int>(c.size()) != t.arc_count()) {
    return "expected " + std::to_string(t.arc_count()) + " coordinates, got " +
           std::to_string(c.size());
  }
  int negatives = 0;
  bool positive = false;
  for (auto x : c) {
    if (x < -1) return "entry below -1";
    if (x == -1) ++negatives;
    if (x > 0) positive = true;
  }
  if (negatives > 1) return "more than one -1 marker";
  if (negatives == 1) return positive ? "-1 marker with nonzero entries" : "";
  if (!positive) return "zero vector";
  std::int64_t total_ends = 0;
  for (const auto& tri : t.triangles()) {
    const auto p = detail::decompose(c[tri[0].arc], c[tri[1].arc], c[tri[2].arc]);
    if (!p.valid) return "normal pieces do not match up in a triangle";
    total_ends += p.ends[0] + p.ends[1] + p.ends[2];
  }
  if (total_ends != 2) return "arc has " + std::to_string(total_ends) + " ends instead of 2";
  return "";
}

inline void require_valid_coords(const Coords& c, const Triangulation& t) {
  const auto problem = coordinate_problem(c, t);
  if (!problem.empty()) throw Error(ErrorKind::InvalidCoordinates, problem);
}

/// Coordinates after flipping `arc`. Only the flipped slot changes.
///
/// The new diagonal count is read off the normal pieces of the two
/// triangles: a piece crosses the new diagonal exactly when it connects
/// the half of the quadrilateral containing P (sides b, c) to the half
/// containing Q (sides a, d). Without arc ends this reduces to
/// max(a + c, b + d) - e.
inline Coords transport(const Coords& coords, const Triangulation& t, ArcIndex arc) {
  const Quadrilateral q = quadrilateral(t, arc);
  if (static_cast<int>(coords.size()) != t.arc_count()) {
    throw Error(ErrorKind::InvalidCoordinates, "coordinate length mismatch");
  }
  Coords out = coords;
  if (auto m = marked_arc(coords)) {
    if (*m == arc) {
      std::fill(out.begin(), out.end(), 0);
      out[arc] = 1;  // old diagonal crosses the new one once
    }
    return out;
  }
  const std::int64_t xe = coords[arc];
  const std::int64_t xa = detail::side_value(coords, q.a), xb = detail::side_value(coords, q.b);
  const std::int64_t xc = detail::side_value(coords, q.c), xd = detail::side_value(coords, q.d);
  // First triangle (P,Q,R): sides e, a, b. Corners P=0, Q=1, R=2.
  const auto p1 = detail::decompose(xe, xa, xb);
  // Second triangle (Q,P,S): sides e, c, d. Corners Q=0, P=1, S=2.
  const auto p2 = detail::decompose(xe, xc, xd);
  if (!p1.valid || !p2.valid) {
    throw Error(ErrorKind::InvalidCoordinates, "normal pieces do not match up at arc " +
                                                   std::to_string(arc));
  }
  const std::int64_t c1P = p1.corner[0], c1R = p1.corner[2];
  const std::int64_t e1P = p1.ends[0], e1Q = p1.ends[1], e1R = p1.ends[2];
  const std::int64_t c2P = p2.corner[1], c2S = p2.corner[2];
  const std::int64_t e2Q = p2.ends[0], e2P = p2.ends[1], e2S = p2.ends[2];
  const std::int64_t crossing = c1R + e1P + e1Q + c2S + e2Q + e2P +
                                std::max<std::int64_t>(0, c1P - c2P - e2S) +
                                std::max<std::int64_t>(0, c2P - c1P - e1R);
  out[arc] = crossing;
  if (l1_norm(out) == 0) {
    // The arc ran from R across e to S: it is the new diagonal.
    out[arc] = -1;
  }
  return out;
}

/// Transports coordinates forward along a flip word starting at `t`.
inline Coords transport_along(Coords coords, const Triangulation& t,
                              std::span<const ArcIndex> word) {
  Triangulation cur = t;
  for (ArcIndex e : word) {
    coords = transport(coords, cur, e);
    cur = flip(cur, e);
  }
  return coords;
}

/// Transports coordinates relative to replay(t, word) back to `t`.
/// `path` must be replay_all(t, word).
inline Coords transport_back(Coords coords, std::span<const Triangulation> path,
                             std::span<const ArcIndex> word) {
  for (std::size_t k = word.size(); k-- > 0;) {
    coords = transport(coords, path[k + 1], word[k]);
  }
  return coords;
}

struct Flattening {
  FlipWord word;
  Triangulation triangulation;
  ArcIndex arc = -1;
};

inline constexpr int kDefaultFlattenCap = 100000;

/// Flips until the class becomes an arc of the triangulation. Each step
/// flips an arc of maximal positive coordinate (lowest index on ties)
/// among those whose flip lowers the coordinate sum.
inline Flattening flatten_from(const Triangulation& start, Coords coords,
                               int cap = kDefaultFlattenCap) {
  require_valid_coords(coords, start);
  Flattening result{{}, start, -1};
  for (int step = 0; step <= cap; ++step) {
    if (auto m = marked_arc(coords)) {
      result.arc = *m;
      return result;
    }
    std::vector<ArcIndex> order(coords.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](ArcIndex x, ArcIndex y) { return coords[x] > coords[y]; });
    const std::int64_t before = l1_norm(coords);
    bool moved = false;
    for (ArcIndex e : order) {
      if (coords[e] <= 0) break;
      if (!flippable(result.triangulation, e)) continue;
      Coords next = transport(coords, result.triangulation, e);
      if (marked_arc(next) || l1_norm(next) < before) {
        coords = std::move(next);
        result.triangulation = flip(result.triangulation, e);
        result.word.push_back(e);
        moved = true;
        break;
      }
    }
    if (!moved) {
      throw Error(ErrorKind::NonTermination, "no flip shortens the arc");
    }
  }
  throw Error(ErrorKind::NonTermination, "flattening exceeded " + std::to_string(cap) + " flips");
}

inline void require_same_base(const ArcClass& a, const ArcClass& b) {
  if (a.base != b.base) {
    throw Error(ErrorKind::SignatureMismatch,
                "arc classes on " + a.base.name() + " and " + b.base.name());
  }
}

inline Flattening flatten(const ArcClass& a) { return flatten_from(new_standard(a.base), a.coords); }

/// Interior crossings of two arc classes; shared endpoints count 0.
inline std::int64_t intersection(const ArcClass& a, const ArcClass& b) {
  require_same_base(a, b);
  const Triangulation base = new_standard(a.base);
  require_valid_coords(b.coords, base);
  const Flattening flat = flatten_from(base, a.coords);
  const Coords moved = transport_along(b.coords, base, flat.word);
  return std::max<std::int64_t>(0, moved[flat.arc]);
}

inline bool disjoint(const ArcClass& a, const ArcClass& b) { return intersection(a, b) == 0; }

/// Intersections of one class against many, flattening it only once.
class IntersectionProbe {
 public:
  explicit IntersectionProbe(const ArcClass& a)
      : base_(new_standard(a.base)), surface_(a.base), flat_(flatten_from(base_, a.coords)) {
    path_ = replay_all(base_, flat_.word);
  }

  std::int64_t operator()(const ArcClass& b) const {
    if (b.base != surface_) {
      throw Error(ErrorKind::SignatureMismatch, "arc class on " + b.base.name());
    }
    Coords c = b.coords;
    for (std::size_t k = 0; k < flat_.word.size(); ++k) c = transport(c, path_[k], flat_.word[k]);
    return std::max<std::int64_t>(0, c[flat_.arc]);
  }

 private:
  Triangulation base_;
  Surface surface_;
  Flattening flat_;
  std::vector<Triangulation> path_;
};

/// A triangulation reached from the standard one by a flip word, with the
/// class of each of its arcs in base coordinates.
struct WitnessedTriangulation {
  Triangulation triangulation;
  FlipWord word;
  std::vector<Coords> classes;  // classes[arc]

  /// Sorted class list: the maximal simplex this triangulation spans.
  std::vector<Coords> key() const {
    auto k = classes;
    std::sort(k.begin(), k.end());
    return k;
  }
};

inline WitnessedTriangulation witness(const Triangulation& base, FlipWord word) {
  const auto path = replay_all(base, word);
  WitnessedTriangulation w{path.back(), std::move(word), {}};
  const int n = base.arc_count();
  w.classes.reserve(n);
  for (ArcIndex a = 0; a < n; ++a) {
    w.classes.push_back(transport_back(edge_coords(n, a), path, w.word));
  }
  return w;
}

inline WitnessedTriangulation witness(Surface surface, FlipWord word = {}) {
  return witness(new_standard(surface), std::move(word));
}

/// Extends a witnessed triangulation by one flip, computing only the new
/// arc's class.
inline WitnessedTriangulation flip_witnessed(const Triangulation& base,
                                             const WitnessedTriangulation& w, ArcIndex arc) {
  WitnessedTriangulation out;
  out.triangulation = flip(w.triangulation, arc);
  out.word = w.word;
  out.word.push_back(arc);
  out.classes = w.classes;
  // In the flipped triangulation the new class is the arc itself.
  Coords c = edge_coords(w.triangulation.arc_count(), arc);
  const auto path = replay_all(base, out.word);
  out.classes[arc] = transport_back(std::move(c), path, out.word);
  return out;
}

/// Builds a triangulation containing every given class as an arc, by
/// flattening them in turn. Requires pairwise disjoint classes. `slots`
/// receives the arc index of each input class.
inline WitnessedTriangulation realize(Surface surface, std::span<const Coords> classes,
                                      std::vector<ArcIndex>* slots = nullptr) {
  const Triangulation base = new_standard(surface);
  Triangulation cur = base;
  FlipWord word;
  for (const Coords& c : classes) {
    require_valid_coords(c, base);
    const Coords here = transport_along(c, base, word);
    Flattening flat = flatten_from(cur, here);
    word.insert(word.end(), flat.word.begin(), flat.word.end());
    cur = std::move(flat.triangulation);
  }
  WitnessedTriangulation w = witness(base, word);
  if (slots) {
    slots->clear();
    for (const Coords& c : classes) {
      auto it = std::find(w.classes.begin(), w.classes.end(), c);
      if (it == w.classes.end()) {
        throw Error(ErrorKind::NotRealizable, "classes are not pairwise disjoint");
      }
      slots->push_back(static_cast<ArcIndex>(it - w.classes.begin()));
    }
  } else {
    for (const Coords& c : classes) {
      if (std::find(w.classes.begin(), w.classes.end(), c) == w.classes.end()) {
        throw Error(ErrorKind::NotRealizable, "classes are not pairwise disjoint");
      }
    }
  }
  return w;
}

}  // namespace arcx
