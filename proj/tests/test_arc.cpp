#include <random>

#include <gtest/gtest.h>

#include "arcx/farey.hpp"
#include "arcx/flip_graph.hpp"
#include "oracles.hpp"

using namespace arcx;

namespace {

// A random class: an arc of a random triangulation a few flips away.
Coords random_class(Surface s, std::mt19937& rng, int flips = 8) {
  Triangulation t = new_standard(s);
  FlipWord w;
  for (int i = 0; i < flips; ++i) {
    const ArcIndex e = static_cast<ArcIndex>(rng() % t.arc_count());
    if (!flippable(t, e)) continue;
    t = flip(t, e);
    w.push_back(e);
  }
  const auto wt = witness(s, w);
  return wt.classes[rng() % wt.classes.size()];
}

Coords random_valid_vector(const Triangulation& t, std::mt19937& rng) {
  Triangulation u = t;
  FlipWord w;
  for (int i = 0; i < 10; ++i) {
    const ArcIndex e = static_cast<ArcIndex>(rng() % u.arc_count());
    if (!flippable(u, e)) continue;
    u = flip(u, e);
    w.push_back(e);
  }
  const auto path = replay_all(t, w);
  return transport_back(edge_coords(t.arc_count(), rng() % t.arc_count()), path, w);
}

}  // namespace

TEST(Coords, EdgeAndMarker) {
  const Coords c = edge_coords(3, 1);
  EXPECT_EQ(c, (Coords{0, -1, 0}));
  EXPECT_EQ(marked_arc(c), 1);
  EXPECT_FALSE(marked_arc(Coords{0, 1, 0}).has_value());
}

TEST(Coords, Validity) {
  const Triangulation t = new_standard({1, 1});
  EXPECT_TRUE(coordinate_problem({0, 1, 0}, t).empty());
  EXPECT_FALSE(coordinate_problem({0, 0, 0}, t).empty());
  EXPECT_FALSE(coordinate_problem({1, 1}, t).empty());
  EXPECT_FALSE(coordinate_problem({-1, -1, 0}, t).empty());
  EXPECT_FALSE(coordinate_problem({-2, 0, 0}, t).empty());
  EXPECT_FALSE(coordinate_problem({5, 0, 0}, t).empty());  // pieces do not close up
  EXPECT_THROW(require_valid_coords({5, 0, 0}, t), Error);
}

TEST(Transport, ArcBecomesMarkerOfNewDiagonal) {
  for (Surface s : {Surface(1, 1), Surface(0, 4), Surface(1, 2)}) {
    const Triangulation t = new_standard(s);
    for (ArcIndex e = 0; e < t.arc_count(); ++e) {
      if (!flippable(t, e)) continue;
      // The removed arc crosses the new diagonal once and nothing else.
      Coords unit(t.arc_count(), 0);
      unit[e] = 1;
      EXPECT_EQ(transport(edge_coords(t.arc_count(), e), t, e), unit) << s.name();
      EXPECT_EQ(transport(unit, t, e), edge_coords(t.arc_count(), e)) << s.name();
    }
  }
}

TEST(Transport, OtherMarkersUnchanged) {
  const Triangulation t = new_standard({1, 2});
  for (ArcIndex e = 0; e < t.arc_count(); ++e) {
    if (!flippable(t, e)) continue;
    for (ArcIndex a = 0; a < t.arc_count(); ++a) {
      if (a == e) continue;
      EXPECT_EQ(transport(edge_coords(6, a), t, e), edge_coords(6, a));
    }
  }
}

TEST(Transport, RoundTripOnRandomVectors) {
  std::mt19937 rng(3);
  const Triangulation t = new_standard({1, 2});
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const Coords v = random_valid_vector(t, rng);
    const ArcIndex e = static_cast<ArcIndex>(rng() % t.arc_count());
    if (!flippable(t, e)) continue;
    const Coords there = transport(v, t, e);
    EXPECT_TRUE(coordinate_problem(there, flip(t, e)).empty());
    EXPECT_EQ(transport(there, flip(t, e), e), v);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Transport, RejectsInvalidInput) {
  const Triangulation t = new_standard({1, 1});
  try {
    transport({1, 1, 1}, t, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidCoordinates);
  }
}

TEST(Torus, OneHalfCoordinatesAndFlattening) {
  const Coords half = torus_coords({1, 2});
  EXPECT_EQ(half, (Coords{0, 1, 0}));
  const Flattening f = flatten({Surface(1, 1), half});
  EXPECT_EQ(f.word.size(), 1u);
  const Coords end = transport_along(half, new_standard({1, 1}), f.word);
  EXPECT_EQ(marked_arc(end), f.arc);
}

TEST(Flatten, BaseArcIsEmptyWord) {
  for (ArcIndex a = 0; a < 6; ++a) {
    const Flattening f = flatten({Surface(1, 2), edge_coords(6, a)});
    EXPECT_TRUE(f.word.empty());
    EXPECT_EQ(f.arc, a);
  }
}

TEST(Flatten, ContinuedFractionLengthForPositiveSlopes) {
  std::mt19937 rng(29);
  int done = 0;
  while (done < 20) {
    const long p = 1 + static_cast<long>(rng() % 30), q = 1 + static_cast<long>(rng() % 30);
    if (std::gcd(p, q) != 1) continue;
    const Flattening f = flatten(torus_class({p, q}));
    EXPECT_EQ(static_cast<int>(f.word.size()), oracle::continued_fraction_length(p, q))
        << p << "/" << q;
    ++done;
  }
}

TEST(Flatten, FareyDistanceForAllSlopes) {
  for (long p = -15; p <= 15; ++p) {
    for (long q = 0; q <= 15; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const Flattening f = flatten(torus_class({p, q}));
      EXPECT_EQ(static_cast<int>(f.word.size()), oracle::farey_distance({q, p}))
          << p << "/" << q;
    }
  }
}

TEST(Flatten, CapIsEnforced) {
  try {
    flatten_from(new_standard({1, 1}), torus_coords({89, 144}), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonTermination);
  }
}

TEST(Intersection, TorusExamples) {
  EXPECT_EQ(intersection(torus_class({0, 1}), torus_class({1, 0})), 0);
  EXPECT_EQ(intersection(torus_class({0, 1}), torus_class({1, 1})), 0);
  EXPECT_EQ(intersection(torus_class({0, 1}), torus_class({2, 1})), 1);
  EXPECT_EQ(intersection(torus_class({2, 5}), torus_class({2, 5})), 0);
}

TEST(Intersection, DrawingOracleOnTorus) {
  for (long p = -6; p <= 6; ++p) {
    for (long q = -6; q <= 6; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const IntersectionProbe probe(torus_class({p, q}));
      for (long r = -6; r <= 6; ++r) {
        for (long s = -6; s <= 6; ++s) {
          if (std::gcd(r, s) != 1) continue;
          ASSERT_EQ(probe(torus_class({r, s})), oracle::drawn_crossings({q, p}, {s, r}))
              << p << "/" << q << " vs " << r << "/" << s;
        }
      }
    }
  }
}

TEST(Intersection, DisjointIffFareyAdjacent) {
  for (long p = -8; p <= 8; ++p) {
    for (long q = 0; q <= 8; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (long r = -8; r <= 8; ++r) {
        for (long s = 0; s <= 8; ++s) {
          if (std::gcd(r, s) != 1) continue;
          EXPECT_EQ(disjoint(torus_class({p, q}), torus_class({r, s})),
                    std::abs(p * s - q * r) <= 1);
        }
      }
    }
  }
}

TEST(Intersection, SymmetricWithZeroSelfIntersection) {
  std::mt19937 rng(41);
  for (Surface s : {Surface(0, 4), Surface(1, 2), Surface(0, 5), Surface(2, 1)}) {
    for (int k = 0; k < 20; ++k) {
      const ArcClass a{s, random_class(s, rng)};
      const ArcClass b{s, random_class(s, rng)};
      EXPECT_EQ(intersection(a, b), intersection(b, a)) << s.name();
      EXPECT_EQ(intersection(a, a), 0);
    }
  }
}

TEST(Intersection, BaseArcsPairwiseDisjoint) {
  for (Surface s : {Surface(0, 3), Surface(1, 1), Surface(0, 4), Surface(1, 2), Surface(2, 1)}) {
    const int n = s.arc_count();
    for (ArcIndex a = 0; a < n; ++a) {
      for (ArcIndex b = 0; b < n; ++b) {
        EXPECT_TRUE(disjoint({s, edge_coords(n, a)}, {s, edge_coords(n, b)}));
      }
    }
  }
}

TEST(Intersection, ArcsOfAnyTriangulationAreDisjoint) {
  const FlipGraphBall g = ball(Surface(1, 2), 2);
  for (std::size_t i = 0; i < g.nodes.size(); i += 5) {
    const auto& cs = g.nodes[i].classes;
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = a + 1; b < cs.size(); ++b) {
        EXPECT_TRUE(disjoint({Surface(1, 2), cs[a]}, {Surface(1, 2), cs[b]}));
      }
    }
  }
}

TEST(Intersection, FlipDiagonalsCrossOnce) {
  for (Surface s : {Surface(0, 4), Surface(1, 2), Surface(0, 5)}) {
    const FlipGraphBall g = ball(s, 2);
    for (const auto& e : g.edges) {
      EXPECT_EQ(intersection({s, e.removed}, {s, e.added}), 1) << s.name();
    }
  }
}

TEST(Intersection, DifferentSurfacesRejected) {
  try {
    intersection(torus_class({1, 2}), ArcClass{Surface(0, 3), edge_coords(3, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SignatureMismatch);
  }
}

TEST(Realize, BuildsTriangulationFromDisjointClasses) {
  const auto w = witness(Surface(1, 2), {0, 3, 1});
  std::vector<Coords> some{w.classes[4], w.classes[1]};
  std::vector<ArcIndex> slots;
  const auto r = realize(Surface(1, 2), some, &slots);
  ASSERT_EQ(slots.size(), 2u);
  EXPECT_EQ(r.classes[slots[0]], some[0]);
  EXPECT_EQ(r.classes[slots[1]], some[1]);
}

TEST(Realize, CrossingClassesRejected) {
  std::vector<Coords> cs{torus_coords({1, 2}), torus_coords({2, 1})};
  try {
    realize(Surface(1, 1), cs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRealizable);
  }
}

TEST(Torus, SlopeRoundTrip) {
  for (long p = -9; p <= 9; ++p) {
    for (long q = -9; q <= 9; ++q) {
      if (std::gcd(p, q) != 1) continue;
      EXPECT_EQ(torus_slope(torus_coords({p, q})), (Slope{p, q}));
    }
  }
  EXPECT_THROW(torus_coords({2, 4}), Error);
}
