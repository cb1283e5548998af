#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcx/arc.hpp"

namespace arcx {

using TriangulationKey = std::vector<Coords>;

struct FlipEdge {
  int from = -1;
  int to = -1;
  ArcIndex arc = -1;  // label flipped in `from`
  Coords removed;     // class leaving the triangulation
  Coords added;       // class entering it
};

/// Breadth-first window of the flip graph around the standard
/// triangulation. Nodes are identified by their set of arc classes.
struct FlipGraphBall {
  Surface surface;
  int radius = 0;
  std::vector<WitnessedTriangulation> nodes;  // BFS order, nodes[0] is the center
  std::vector<int> distance;
  std::vector<FlipEdge> edges;
  std::map<TriangulationKey, int> index;

  std::optional<int> find(const TriangulationKey& key) const {
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline constexpr std::size_t kDefaultNodeCap = 1000000;

inline FlipGraphBall ball(const Triangulation& center, int radius,
                          std::size_t cap = kDefaultNodeCap) {
  const auto report = validate(center);
  if (!report.empty()) throw Error(ErrorKind::ValidationError, describe(report));
  if (radius < 0) throw Error(ErrorKind::IndexOutOfRange, "negative radius");
  FlipGraphBall g;
  g.surface = center.surface();
  g.radius = radius;
  g.nodes.push_back(witness(center, {}));
  g.distance.push_back(0);
  g.index.emplace(g.nodes[0].key(), 0);
  const int n = center.arc_count();
  for (std::size_t head = 0; head < g.nodes.size(); ++head) {
    if (g.distance[head] >= radius) continue;
    for (ArcIndex e = 0; e < n; ++e) {
      if (!flippable(g.nodes[head].triangulation, e)) continue;
      WitnessedTriangulation next = flip_witnessed(center, g.nodes[head], e);
      // A node reached twice may carry its classes under other labels.
      Coords added = next.classes[e];
      auto key = next.key();
      int target;
      if (auto it = g.index.find(key); it != g.index.end()) {
        target = it->second;
      } else {
        if (g.nodes.size() >= cap) {
          throw Error(ErrorKind::ResourceLimit,
                      "flip ball exceeds " + std::to_string(cap) + " nodes");
        }
        target = static_cast<int>(g.nodes.size());
        g.index.emplace(std::move(key), target);
        g.nodes.push_back(std::move(next));
        g.distance.push_back(g.distance[head] + 1);
      }
      if (target > static_cast<int>(head)) {
        g.edges.push_back({static_cast<int>(head), target, e, g.nodes[head].classes[e],
                           std::move(added)});
      }
    }
  }
  return g;
}

inline FlipGraphBall ball(Surface surface, int radius, std::size_t cap = kDefaultNodeCap) {
  return ball(new_standard(surface), radius, cap);
}

/// Shortest flip word carrying `from` onto a triangulation with the same
/// arc classes as `to`, by bidirectional breadth-first search. Both
/// triangulations are witnessed from the same standard triangulation.
inline FlipWord path(const WitnessedTriangulation& from, const WitnessedTriangulation& to,
                     std::size_t cap = kDefaultNodeCap) {
  if (from.triangulation.surface() != to.triangulation.surface()) {
    throw Error(ErrorKind::SignatureMismatch, "path between different surfaces");
  }
  const Surface surface = from.triangulation.surface();
  const Triangulation base = new_standard(surface);
  const int n = base.arc_count();

  struct Side_ {
    std::vector<WitnessedTriangulation> nodes;
    std::vector<int> parent;
    std::vector<ArcIndex> via;
    std::map<TriangulationKey, int> index;
    std::size_t head = 0;
  };
  Side_ fwd, bwd;
  auto seed = [](Side_& s, const WitnessedTriangulation& w) {
    s.nodes.push_back(w);
    s.parent.push_back(-1);
    s.via.push_back(-1);
    s.index.emplace(w.key(), 0);
  };
  seed(fwd, from);
  seed(bwd, to);

  auto trace = [](const Side_& s, int node) {
    FlipWord w;
    for (int v = node; s.parent[v] >= 0; v = s.parent[v]) w.push_back(s.via[v]);
    std::reverse(w.begin(), w.end());
    return w;
  };

  auto join = [&](int f, int b) {
    // Word from `from` to the meeting node, then the backward half undone
    // with its labels translated through the class bijection.
    FlipWord word = trace(fwd, f);
    const auto& mf = fwd.nodes[f];
    const auto& mb = bwd.nodes[b];
    std::vector<ArcIndex> relabel(n);
    for (ArcIndex a = 0; a < n; ++a) {
      auto it = std::find(mf.classes.begin(), mf.classes.end(), mb.classes[a]);
      relabel[a] = static_cast<ArcIndex>(it - mf.classes.begin());
    }
    FlipWord back = trace(bwd, b);
    for (auto it = back.rbegin(); it != back.rend(); ++it) word.push_back(relabel[*it]);
    return word;
  };

  if (auto it = bwd.index.find(fwd.nodes[0].key()); it != bwd.index.end()) return {};

  auto expand = [&](Side_& s, const Side_& other, bool forward) -> std::optional<FlipWord> {
    const std::size_t level_end = s.nodes.size();
    for (; s.head < level_end; ++s.head) {
      const int cur = static_cast<int>(s.head);
      for (ArcIndex e = 0; e < n; ++e) {
        if (!flippable(s.nodes[cur].triangulation, e)) continue;
        WitnessedTriangulation next = flip_witnessed(base, s.nodes[cur], e);
        auto key = next.key();
        if (s.index.count(key)) continue;
        if (fwd.nodes.size() + bwd.nodes.size() >= cap) {
          throw Error(ErrorKind::ResourceLimit,
                      "path search inconclusive after " + std::to_string(cap) + " nodes");
        }
        const int id = static_cast<int>(s.nodes.size());
        s.index.emplace(key, id);
        s.nodes.push_back(std::move(next));
        s.parent.push_back(cur);
        s.via.push_back(e);
        if (auto hit = other.index.find(key); hit != other.index.end()) {
          ++s.head;
          return forward ? join(id, hit->second) : join(hit->second, id);
        }
      }
    }
    return std::nullopt;
  };

  while (fwd.head < fwd.nodes.size() || bwd.head < bwd.nodes.size()) {
    const bool fwd_open = fwd.head < fwd.nodes.size();
    const bool bwd_open = bwd.head < bwd.nodes.size();
    const bool forward_turn = fwd_open && (!bwd_open || fwd.nodes.size() <= bwd.nodes.size());
    if (forward_turn) {
      if (auto w = expand(fwd, bwd, true)) return *w;
    } else {
      if (auto w = expand(bwd, fwd, false)) return *w;
    }
  }
  throw Error(ErrorKind::Internal, "flip graph search exhausted");
}

}  // namespace arcx
