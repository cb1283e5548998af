#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "arcx/arc.hpp"

namespace arcx {

// Arc classes of the once-punctured torus are slopes p/q. The standard
// triangulation carries 0/1, 1/0 and 1/1 as arcs 0, 1, 2, and the
// coordinate of p/q on an arc of slope r/s is |ps - qr| - 1.

struct Slope {
  std::int64_t p = 0;
  std::int64_t q = 1;

  /// Coprime with q > 0, or 1/0.
  Slope normalized() const {
    if (p == 0 && q == 0) throw Error(ErrorKind::InvalidCoordinates, "slope 0/0");
    const std::int64_t g = std::gcd(p, q);
    Slope s{p / g, q / g};
    if (s.q < 0 || (s.q == 0 && s.p < 0)) {
      s.p = -s.p;
      s.q = -s.q;
    }
    return s;
  }

  friend bool operator==(const Slope& a, const Slope& b) {
    const Slope x = a.normalized(), y = b.normalized();
    return x.p == y.p && x.q == y.q;
  }
};

inline std::int64_t slope_det(const Slope& a, const Slope& b) {
  return std::llabs(a.p * b.q - a.q * b.p);
}

inline constexpr Slope kTorusArcs[3] = {{0, 1}, {1, 0}, {1, 1}};

inline Coords torus_coords(Slope s) {
  if (std::gcd(s.p, s.q) != 1) throw Error(ErrorKind::InvalidCoordinates, "slope not coprime");
  s = s.normalized();
  Coords c(3, 0);
  for (int i = 0; i < 3; ++i) {
    if (s == kTorusArcs[i]) return edge_coords(3, i);
  }
  for (int i = 0; i < 3; ++i) c[i] = slope_det(s, kTorusArcs[i]) - 1;
  return c;
}

inline ArcClass torus_class(Slope s) { return {Surface(1, 1), torus_coords(s)}; }

inline Slope torus_slope(const Coords& c) {
  if (c.size() != 3) throw Error(ErrorKind::InvalidCoordinates, "expected three coordinates");
  if (auto m = marked_arc(c)) return kTorusArcs[*m];
  const std::int64_t ap = c[0] + 1;  // |p|
  const std::int64_t aq = c[1] + 1;  // |q|
  const std::int64_t d = c[2] + 1;   // |q - p|
  if (d == std::llabs(aq - ap)) return Slope{ap, aq}.normalized();
  if (d == ap + aq) return Slope{-ap, aq}.normalized();
  throw Error(ErrorKind::InvalidCoordinates, "coordinates are not a torus slope");
}

}  // namespace arcx
