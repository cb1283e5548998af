#pragma once

#include <compare>
#include <string>

#include "arcx/error.hpp"

namespace arcx {

/// Compact orientable surface of genus `genus` with `boundary` boundary
/// components. Boundary circles are coned off to punctures, so arcs are
/// ideal arcs between punctures.
struct Surface {
  int genus = 0;
  int boundary = 1;

  constexpr Surface() = default;
  constexpr Surface(int g, int b) : genus(g), boundary(b) {}

  constexpr bool valid() const { return genus >= 0 && boundary >= 1; }

  /// Disc and annulus carry no ideal triangulation.
  constexpr bool triangulable() const {
    return valid() && !(genus == 0 && (boundary == 1 || boundary == 2));
  }

  constexpr int arc_count() const { return 6 * genus + 3 * boundary - 6; }
  constexpr int triangle_count() const { return 4 * genus + 2 * boundary - 4; }
  constexpr int euler_characteristic() const { return 2 - 2 * genus; }

  std::string name() const {
    return "(" + std::to_string(genus) + "," + std::to_string(boundary) + ")";
  }

  void require_valid() const {
    if (!valid()) {
      throw Error(ErrorKind::ValidationError, "invalid surface signature " + name());
    }
  }

  void require_triangulable() const {
    require_valid();
    if (!triangulable()) {
      throw Error(ErrorKind::NotTriangulable, "surface " + name() + " has no triangulation");
    }
  }

  friend constexpr auto operator<=>(const Surface&, const Surface&) = default;
};

}  // namespace arcx
