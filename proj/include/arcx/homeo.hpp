#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "arcx/arc.hpp"

namespace arcx {

enum class Orientation { Preserving, Reversing };

inline Orientation compose(Orientation a, Orientation b) {
  return a == b ? Orientation::Preserving : Orientation::Reversing;
}

inline std::string to_string(Orientation o) {
  return o == Orientation::Preserving ? "preserving" : "reversing";
}

/// Labeled isomorphism between two triangulations of the same surface:
/// arc i of the source goes to arc arc_map[i] of the target, triangle k to
/// triangle triangle_map[k].
struct Isomorphism {
  std::vector<ArcIndex> arc_map;
  std::vector<TriangleIndex> triangle_map;
  Orientation orientation = Orientation::Preserving;
};

namespace detail {

inline std::array<ArcIndex, 3> image_cycle(const TriangleSides& tri,
                                           const std::vector<ArcIndex>& arc_map,
                                           Orientation o) {
  std::array<ArcIndex, 3> c{arc_map[tri[0].arc], arc_map[tri[1].arc], arc_map[tri[2].arc]};
  if (o == Orientation::Reversing) std::swap(c[1], c[2]);
  return least_rotation(c);
}

inline std::array<ArcIndex, 3> cycle_of(const TriangleSides& tri) {
  return least_rotation({tri[0].arc, tri[1].arc, tri[2].arc});
}

}  // namespace detail

/// Matches triangles for a given arc bijection and orientation type.
/// Returns nothing when the arc bijection does not extend.
inline std::optional<Isomorphism> extend_isomorphism(const Triangulation& src,
                                                     const Triangulation& dst,
                                                     const std::vector<ArcIndex>& arc_map,
                                                     Orientation orientation) {
  if (src.surface() != dst.surface() || src.arc_count() != dst.arc_count() ||
      src.triangle_count() != dst.triangle_count() ||
      static_cast<int>(arc_map.size()) != src.arc_count()) {
    return std::nullopt;
  }
  {
    std::vector<ArcIndex> sorted = arc_map;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < src.arc_count(); ++i) {
      if (sorted[i] != i) return std::nullopt;
    }
  }
  Isomorphism iso{arc_map, std::vector<TriangleIndex>(src.triangle_count(), -1), orientation};
  std::vector<char> taken(dst.triangle_count(), 0);
  for (TriangleIndex k = 0; k < src.triangle_count(); ++k) {
    const auto want = detail::image_cycle(src.triangle(k), arc_map, orientation);
    bool found = false;
    for (TriangleIndex m = 0; m < dst.triangle_count() && !found; ++m) {
      if (taken[m] || detail::cycle_of(dst.triangle(m)) != want) continue;
      taken[m] = 1;
      iso.triangle_map[k] = m;
      found = true;
    }
    if (!found) return std::nullopt;
  }
  return iso;
}

inline bool is_isomorphism(const Triangulation& src, const Triangulation& dst,
                           const Isomorphism& iso) {
  if (static_cast<int>(iso.triangle_map.size()) != src.triangle_count()) return false;
  auto rebuilt = extend_isomorphism(src, dst, iso.arc_map, iso.orientation);
  if (!rebuilt) return false;
  std::vector<TriangleIndex> sorted = iso.triangle_map;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < src.triangle_count(); ++i) {
    if (sorted[i] != i) return false;
  }
  for (TriangleIndex k = 0; k < src.triangle_count(); ++k) {
    if (detail::image_cycle(src.triangle(k), iso.arc_map, iso.orientation) !=
        detail::cycle_of(dst.triangle(iso.triangle_map[k]))) {
      return false;
    }
  }
  return true;
}

/// Every isomorphism src -> dst. Fixing where one side of the source goes
/// (target side and orientation) determines the rest by walking across
/// glued sides.
inline std::vector<Isomorphism> isomorphisms(const Triangulation& src, const Triangulation& dst) {
  std::vector<Isomorphism> out;
  if (src.surface() != dst.surface() || src.arc_count() != dst.arc_count() ||
      src.triangle_count() != dst.triangle_count() || src.triangle_count() == 0) {
    return out;
  }
  const int tris = src.triangle_count();
  for (Orientation o : {Orientation::Preserving, Orientation::Reversing}) {
    for (TriangleIndex m = 0; m < tris; ++m) {
      for (int rot = 0; rot < 3; ++rot) {
        // Side position map: source (0, p) -> target (m, rot + sign * p).
        std::vector<TriangleIndex> tmap(tris, -1);
        std::vector<int> shift(tris, 0);
        std::vector<ArcIndex> amap(src.arc_count(), -1);
        const int sign = o == Orientation::Preserving ? 1 : -1;
        auto target_pos = [&](TriangleIndex k, int p) {
          return ((shift[k] + sign * p) % 3 + 3) % 3;
        };
        tmap[0] = m;
        shift[0] = rot;
        std::vector<TriangleIndex> stack{0};
        std::vector<char> used(tris, 0);
        used[m] = 1;
        bool ok = true;
        while (!stack.empty() && ok) {
          const TriangleIndex k = stack.back();
          stack.pop_back();
          for (int p = 0; p < 3 && ok; ++p) {
            const Side s = src.triangle(k)[p];
            const SideRef tref{tmap[k], target_pos(k, p)};
            const ArcIndex ta = dst.side(tref).arc;
            if (amap[s.arc] >= 0 && amap[s.arc] != ta) {
              ok = false;
              break;
            }
            amap[s.arc] = ta;
            // Across the glued side.
            const SideRef stwin = src.twin({k, p});
            const SideRef ttwin = dst.twin(tref);
            const TriangleIndex k2 = stwin.triangle;
            // A reversing map sends the side traversed i -> i+1 to one
            // traversed the other way, so corner bookkeeping mirrors.
            const int want_shift = ((ttwin.position - sign * stwin.position) % 3 + 3) % 3;
            if (tmap[k2] < 0) {
              if (used[ttwin.triangle]) {
                ok = false;
                break;
              }
              tmap[k2] = ttwin.triangle;
              shift[k2] = want_shift;
              used[ttwin.triangle] = 1;
              stack.push_back(k2);
            } else if (tmap[k2] != ttwin.triangle || shift[k2] != want_shift) {
              ok = false;
            }
          }
        }
        if (!ok) continue;
        if (std::find(tmap.begin(), tmap.end(), -1) != tmap.end()) continue;
        Isomorphism iso{amap, tmap, o};
        if (is_isomorphism(src, dst, iso)) out.push_back(std::move(iso));
      }
    }
  }
  return out;
}

/// A surface homeomorphism given by a recipe: flip the standard
/// triangulation by `word`, then identify the standard triangulation with
/// the result through a labeled isomorphism.
struct CombinatorialHomeo {
  Surface surface;
  FlipWord word;
  std::vector<ArcIndex> arc_relabel;
  std::vector<TriangleIndex> triangle_relabel;
  Orientation orientation = Orientation::Preserving;

  static CombinatorialHomeo identity(Surface surface) {
    const Triangulation base = new_standard(surface);
    CombinatorialHomeo h{surface, {}, {}, {}, Orientation::Preserving};
    h.arc_relabel.resize(base.arc_count());
    std::iota(h.arc_relabel.begin(), h.arc_relabel.end(), 0);
    h.triangle_relabel.resize(base.triangle_count());
    std::iota(h.triangle_relabel.begin(), h.triangle_relabel.end(), 0);
    return h;
  }

  Isomorphism isomorphism() const { return {arc_relabel, triangle_relabel, orientation}; }

  /// Empty when the recipe is a valid homeomorphism.
  std::string problem() const {
    if (!surface.triangulable()) return "surface " + surface.name() + " is not triangulable";
    const Triangulation base = new_standard(surface);
    for (ArcIndex e : word) {
      if (e < 0 || e >= base.arc_count()) return "flip word names arc " + std::to_string(e);
    }
    Triangulation image = base;
    for (ArcIndex e : word) {
      if (!flippable(image, e)) return "flip word step " + std::to_string(e) + " not flippable";
      image = flip(image, e);
    }
    if (!is_isomorphism(base, image, isomorphism())) {
      return "relabeling is not an isomorphism onto the flipped triangulation";
    }
    return "";
  }

  void require_valid() const {
    const auto p = problem();
    if (!p.empty()) throw Error(ErrorKind::InvalidHomeo, p);
  }
};

/// Applies a homeomorphism to arc classes in base coordinates. The image
/// of arc i of the standard triangulation is arc arc_relabel[i] of the
/// flipped one, and homeomorphisms preserve crossing counts.
class HomeoAction {
 public:
  explicit HomeoAction(const CombinatorialHomeo& h) : h_(h) {
    h_.require_valid();
    path_ = replay_all(new_standard(h.surface), h.word);
  }

  Coords operator()(const Coords& x) const {
    if (x.size() != h_.arc_relabel.size()) {
      throw Error(ErrorKind::InvalidCoordinates, "coordinate length mismatch");
    }
    Coords y(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) y[h_.arc_relabel[i]] = x[i];
    return transport_back(std::move(y), path_, h_.word);
  }

  const CombinatorialHomeo& homeo() const { return h_; }

 private:
  CombinatorialHomeo h_;
  std::vector<Triangulation> path_;
};

/// first o second: apply `second`, then `first`.
inline CombinatorialHomeo compose(const CombinatorialHomeo& first,
                                  const CombinatorialHomeo& second) {
  if (first.surface != second.surface) {
    throw Error(ErrorKind::SignatureMismatch, "composing homeomorphisms of different surfaces");
  }
  first.require_valid();
  second.require_valid();
  CombinatorialHomeo h;
  h.surface = first.surface;
  h.word = first.word;
  for (ArcIndex e : second.word) h.word.push_back(first.arc_relabel[e]);
  h.arc_relabel.resize(second.arc_relabel.size());
  for (std::size_t i = 0; i < second.arc_relabel.size(); ++i) {
    h.arc_relabel[i] = first.arc_relabel[second.arc_relabel[i]];
  }
  h.orientation = compose(first.orientation, second.orientation);
  const Triangulation base = new_standard(h.surface);
  const auto iso = extend_isomorphism(base, replay(base, h.word), h.arc_relabel, h.orientation);
  if (!iso) throw Error(ErrorKind::Internal, "composition does not extend to an isomorphism");
  h.triangle_relabel = iso->triangle_map;
  return h;
}

}  // namespace arcx
