#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "arcx/arc.hpp"
#include "arcx/flip_graph.hpp"

namespace arcx {

struct MaximalSimplex {
  std::vector<int> vertices;  // sorted slice vertex indices
  std::optional<WitnessedTriangulation> witness;
};

/// Finite full subcomplex of the arc complex: every set of pairwise
/// disjoint vertices is a simplex.
struct ArcComplexSlice {
  enum class Completeness { Full, BallRadius, Spanned };

  Surface surface;
  Completeness completeness = Completeness::Spanned;
  int radius = -1;
  std::vector<Coords> vertices;       // sorted; empty coordinates on the annulus
  std::vector<std::string> labels;    // optional names, parallel to vertices
  std::vector<std::vector<char>> adjacent;
  std::vector<std::vector<int>> simplices;  // all nonempty simplices, sorted
  std::vector<MaximalSimplex> maximal;

  int vertex_count() const { return static_cast<int>(vertices.size()); }

  std::optional<int> find(const Coords& c) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), c);
    if (it == vertices.end() || *it != c) return std::nullopt;
    return static_cast<int>(it - vertices.begin());
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : simplices) n += s.size() == 2;
    return n;
  }

  std::size_t count_of_dimension(int dim) const {
    std::size_t n = 0;
    for (const auto& s : simplices) n += static_cast<int>(s.size()) == dim + 1;
    return n;
  }

  std::optional<int> find_maximal(std::vector<int> vs) const {
    std::sort(vs.begin(), vs.end());
    for (std::size_t i = 0; i < maximal.size(); ++i) {
      if (maximal[i].vertices == vs) return static_cast<int>(i);
    }
    return std::nullopt;
  }
};

struct SliceOptions {
  int threads = 1;
  std::size_t simplex_cap = 5000000;
};

namespace detail {

inline std::vector<std::vector<char>> disjointness_table(Surface surface,
                                                         const std::vector<Coords>& vs,
                                                         int threads) {
  const int n = static_cast<int>(vs.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  auto work = [&](int row) {
    IntersectionProbe probe(ArcClass{surface, vs[row]});
    for (int j = row + 1; j < n; ++j) adj[row][j] = probe(ArcClass{surface, vs[j]}) == 0;
  };
  if (threads <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    // Rows are independent; each thread writes disjoint rows.
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < n; i += threads) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) adj[j][i] = adj[i][j];
  }
  return adj;
}

inline void enumerate_cliques(const std::vector<std::vector<char>>& adj, int max_size,
                              std::size_t cap, std::vector<int>& current,
                              const std::vector<int>& candidates,
                              std::vector<std::vector<int>>& out) {
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const int v = candidates[k];
    current.push_back(v);
    out.push_back(current);
    if (out.size() > cap) {
      throw Error(ErrorKind::ResourceLimit, "slice exceeds " + std::to_string(cap) + " simplices");
    }
    if (static_cast<int>(current.size()) < max_size) {
      std::vector<int> next;
      for (std::size_t m = k + 1; m < candidates.size(); ++m) {
        if (adj[v][candidates[m]]) next.push_back(candidates[m]);
      }
      enumerate_cliques(adj, max_size, cap, current, next, out);
    }
    current.pop_back();
  }
}

}  // namespace detail

/// Full subcomplex spanned by the given classes. Maximal simplices are the
/// simplices with one vertex per arc of a triangulation, each witnessed by
/// a triangulation built from its classes.
inline ArcComplexSlice spanned_subcomplex(Surface surface, std::vector<Coords> vertices,
                                          const SliceOptions& options = {}) {
  surface.require_triangulable();
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  const Triangulation base = new_standard(surface);
  for (const auto& v : vertices) require_valid_coords(v, base);

  ArcComplexSlice slice;
  slice.surface = surface;
  slice.vertices = std::move(vertices);
  slice.labels.assign(slice.vertices.size(), "");
  slice.adjacent = detail::disjointness_table(surface, slice.vertices, options.threads);

  const int top = surface.arc_count();
  std::vector<int> all(slice.vertices.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> current;
  detail::enumerate_cliques(slice.adjacent, top, options.simplex_cap, current, all,
                            slice.simplices);
  std::sort(slice.simplices.begin(), slice.simplices.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  for (const auto& s : slice.simplices) {
    if (static_cast<int>(s.size()) != top) continue;
    std::vector<Coords> classes;
    for (int v : s) classes.push_back(slice.vertices[v]);
    slice.maximal.push_back({s, realize(surface, classes)});
  }
  return slice;
}

/// Window onto the arc complex: all classes of triangulations within
/// `radius` flips of the standard one.
inline ArcComplexSlice ball_complex(Surface surface, int radius, const SliceOptions& options = {},
                                    std::size_t node_cap = kDefaultNodeCap) {
  surface.require_triangulable();
  const FlipGraphBall g = ball(surface, radius, node_cap);
  std::vector<Coords> vs;
  for (const auto& node : g.nodes) vs.insert(vs.end(), node.classes.begin(), node.classes.end());
  ArcComplexSlice slice = spanned_subcomplex(surface, std::move(vs), options);
  slice.completeness = ArcComplexSlice::Completeness::BallRadius;
  slice.radius = radius;
  // Prefer the breadth-first witnesses, which carry the shortest words.
  for (auto& m : slice.maximal) {
    TriangulationKey key;
    for (int v : m.vertices) key.push_back(slice.vertices[v]);
    if (auto id = g.find(key)) m.witness = g.nodes[*id];
  }
  return slice;
}

/// Named classes of the pair of pants: seams join two distinct punctures,
/// loops run from a puncture around one other puncture.
struct PantsCatalogEntry {
  std::string name;
  Coords coords;
};

inline std::vector<PantsCatalogEntry> pants_catalog() {
  // Standard arcs: 0 joins punctures 0-1, 1 joins 1-2, 2 joins 2-0. The
  // loop at puncture p is the flip of the seam opposite p, so it crosses
  // that seam once and misses the other two.
  std::vector<PantsCatalogEntry> out;
  for (int i = 0; i < 3; ++i) {
    out.push_back({"seam " + std::to_string(i) + "-" + std::to_string((i + 1) % 3),
                   edge_coords(3, i)});
  }
  for (int p = 0; p < 3; ++p) {
    Coords c(3, 0);
    c[(p + 1) % 3] = 1;
    out.push_back({"loop " + std::to_string(p), c});
  }
  return out;
}

/// The whole arc complex for the two signatures where it is finite.
inline ArcComplexSlice full_complex(Surface surface, const SliceOptions& options = {}) {
  if (surface == Surface(0, 2)) {
    ArcComplexSlice slice;
    slice.surface = surface;
    slice.completeness = ArcComplexSlice::Completeness::Full;
    slice.vertices = {Coords{}};
    slice.labels = {"seam 0-1"};
    slice.adjacent = {{0}};
    slice.simplices = {{0}};
    slice.maximal = {{{0}, std::nullopt}};
    return slice;
  }
  if (surface == Surface(0, 3)) {
    std::vector<Coords> vs;
    const auto catalog = pants_catalog();
    for (const auto& e : catalog) vs.push_back(e.coords);
    ArcComplexSlice slice = spanned_subcomplex(surface, vs, options);
    slice.completeness = ArcComplexSlice::Completeness::Full;
    for (const auto& e : catalog) slice.labels[*slice.find(e.coords)] = e.name;
    return slice;
  }
  throw Error(ErrorKind::NotFinite, "arc complex of " + surface.name() + " is infinite");
}

/// Consecutive members differ by one elementary move (share all but one
/// vertex). Breadth-first, so the chain is as short as the slice allows.
inline std::vector<int> maximal_simplex_chain(const ArcComplexSlice& slice, int from, int to) {
  const int m = static_cast<int>(slice.maximal.size());
  if (from < 0 || from >= m || to < 0 || to >= m) {
    throw Error(ErrorKind::IndexOutOfRange, "maximal simplex index");
  }
  auto shared = [&](int x, int y) {
    const auto& a = slice.maximal[x].vertices;
    const auto& b = slice.maximal[y].vertices;
    std::vector<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.size();
  };
  const std::size_t face = slice.maximal[from].vertices.size() - 1;
  std::vector<int> parent(m, -2);
  parent[from] = -1;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (cur == to) break;
    for (int next = 0; next < m; ++next) {
      if (parent[next] != -2 || shared(cur, next) != face) continue;
      parent[next] = cur;
      queue.push_back(next);
    }
  }
  if (parent[to] == -2) {
    throw Error(ErrorKind::NotConnectedWithinSlice,
                "no chain of maximal simplices inside the slice");
  }
  std::vector<int> chain;
  for (int v = to; v >= 0; v = parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

/// A permutation of slice vertices, image of vertex i at position i.
using VertexPermutation = std::vector<int>;

/// Every simplex-preserving vertex permutation, in lexicographic order.
/// The slice is a full subcomplex, so preserving disjointness in both
/// directions is the same as preserving simplices.
inline std::vector<VertexPermutation> automorphisms(const ArcComplexSlice& slice,
                                                    std::size_t cap = 1000000) {
  const int n = slice.vertex_count();
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) degree[i] += (i != j && slice.adjacent[i][j]);
  }
  std::vector<VertexPermutation> out;
  VertexPermutation image(n, -1);
  std::vector<char> used(n, 0);

  auto search = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(image);
      if (out.size() > cap) {
        throw Error(ErrorKind::ResourceLimit, "more than " + std::to_string(cap) + " automorphisms");
      }
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || degree[w] != degree[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = slice.adjacent[u][v] == slice.adjacent[image[u]][w];
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
      image[v] = -1;
    }
  };
  search(search, 0);
  return out;
}

inline bool is_injective(std::span<const Coords> images) {
  std::vector<Coords> sorted(images.begin(), images.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

inline bool is_injective(const VertexPermutation& map) {
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/// First slice edge whose images are not disjoint, if any. `images[i]` is
/// the image of slice vertex i.
inline std::optional<std::pair<int, int>> simpliciality_violation(
    const ArcComplexSlice& slice, std::span<const Coords> images) {
  if (static_cast<int>(images.size()) != slice.vertex_count()) {
    throw Error(ErrorKind::UndefinedVertex, "vertex map does not cover the slice");
  }
  if (slice.surface == Surface(0, 2)) return std::nullopt;
  for (int i = 0; i < slice.vertex_count(); ++i) {
    std::optional<IntersectionProbe> probe;
    for (int j = i + 1; j < slice.vertex_count(); ++j) {
      if (!slice.adjacent[i][j] || images[i] == images[j]) continue;
      if (!probe) probe.emplace(ArcClass{slice.surface, images[i]});
      if ((*probe)(ArcClass{slice.surface, images[j]}) != 0) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

/// Every slice simplex maps onto pairwise disjoint classes.
inline bool is_simplicial(const ArcComplexSlice& slice, std::span<const Coords> images) {
  return !simpliciality_violation(slice, images).has_value();
}

/// Index-valued self-map of the slice: simplices must land on slice
/// simplices.
inline bool is_simplicial(const ArcComplexSlice& slice, const VertexPermutation& map) {
  const int n = slice.vertex_count();
  if (static_cast<int>(map.size()) != n) {
    throw Error(ErrorKind::UndefinedVertex, "vertex map does not cover the slice");
  }
  for (int v : map) {
    if (v < 0 || v >= n) throw Error(ErrorKind::UndefinedVertex, "image outside the slice");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (slice.adjacent[i][j] && map[i] != map[j] && !slice.adjacent[map[i]][map[j]]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace arcx
