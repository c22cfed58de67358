#include <gtest/gtest.h>

#include "angled/complex.hpp"
#include "angled/rng.hpp"

using namespace angled;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

std::vector<Label> labels_of(const Triangulation& t, const std::vector<VertexId>& ids) {
  std::vector<Label> out;
  for (VertexId v : ids) out.push_back(t.label(v));
  return out;
}

// Independent check: (a, b, x, y) is an even reordering of tetrahedron i.
bool even_in_tet(const Triangulation& t, std::size_t i, std::array<VertexId, 4> order) {
  std::array<int, 4> perm{};
  for (int p = 0; p < 4; ++p) perm[p] = t.position(i, order[p]);
  for (int p : perm) {
    if (p < 0) return false;
  }
  return permutation_sign(perm) > 0;
}

}  // namespace

TEST(Builtins, BoundaryOf4Simplex) {
  Triangulation t = boundary_4_simplex();
  EXPECT_TRUE(validate(t).ok()) << validate(t);
  EXPECT_EQ(t.vertex_count(), 5u);
  EXPECT_EQ(t.edges().size(), 10u);
  EXPECT_EQ(t.triangles().size(), 10u);
  EXPECT_EQ(t.tet_count(), 5u);
  EXPECT_EQ(t.euler_characteristic(), 0);
}

TEST(Builtins, CrossPolytope) {
  Triangulation t = cross_polytope_boundary();
  EXPECT_TRUE(validate(t).ok()) << validate(t);
  EXPECT_EQ(t.vertex_count(), 8u);
  EXPECT_EQ(t.edges().size(), 24u);
  EXPECT_EQ(t.triangles().size(), 32u);
  EXPECT_EQ(t.tet_count(), 16u);
  EXPECT_EQ(t.euler_characteristic(), 0);
}

TEST(Validate, SingleTetrahedronIsNotClosed) {
  Triangulation t({{"a", "b", "c", "d"}});
  auto report = validate(t);
  EXPECT_TRUE(report.contains("NotClosed"));
  EXPECT_EQ(report.issues.size(), 4u);
}

TEST(Validate, RepeatedLabelSetIsNotSimplicial) {
  EXPECT_TRUE(validate(Triangulation({{"a", "b", "c", "d"}, {"b", "a", "c", "d"}})).contains("NotSimplicial"));
  EXPECT_TRUE(validate(Triangulation({{"a", "a", "c", "d"}})).contains("NotSimplicial"));
}

TEST(Validate, EmptyAndIncoherent) {
  EXPECT_TRUE(validate(Triangulation()).contains("Empty"));

  auto tets = boundary_4_simplex().label_tets();
  std::swap(tets[2][0], tets[2][1]);
  EXPECT_TRUE(validate(Triangulation(tets)).contains("NotCoherent"));
}

TEST(Validate, TriangleInThreeTetrahedraIsNotManifold) {
  auto tets = boundary_4_simplex().label_tets();
  tets.push_back({"0", "1", "2", "x"});
  EXPECT_TRUE(validate(Triangulation(tets)).contains("NotManifold"));
}

TEST(Validate, TwoSpheresSharingAVertexHaveBadLink) {
  // Two copies of the 4-simplex boundary glued at vertex 0.
  const auto original = boundary_4_simplex().label_tets();
  auto tets = original;
  for (auto tet : original) {
    for (auto& l : tet) {
      if (l != "0") l = "q" + l;
    }
    tets.push_back(tet);
  }
  auto report = validate(Triangulation(tets));
  EXPECT_TRUE(report.contains("VertexLinkNotSphere")) << report;
  EXPECT_FALSE(report.contains("NotClosed"));
}

TEST(EdgeStar, BoundaryOf4Simplex) {
  Triangulation t = boundary_4_simplex();
  EdgeStar star = edge_star(t, "0", "1");
  EXPECT_EQ(star.opposite.size(), 3u);
  EXPECT_EQ(t.label(star.opposite.front()), "2");
  auto sorted = labels_of(t, star.opposite);
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<Label>{"2", "3", "4"}));

  EdgeStar rev = edge_star(t, "1", "0");
  auto fwd = labels_of(t, star.opposite);
  auto bwd = labels_of(t, rev.opposite);
  // Same cycle traversed backwards, both starting at the least vertex.
  EXPECT_EQ(bwd.front(), fwd.front());
  EXPECT_EQ(bwd[1], fwd.back());
  EXPECT_EQ(bwd.back(), fwd[1]);
}

TEST(EdgeStar, Errors) {
  Triangulation t = cross_polytope_boundary();
  EXPECT_EQ(kind_of([&] { edge_star(t, "0", "1"); }), ErrorKind::NoSuchEdge);  // antipodal
  EXPECT_EQ(kind_of([&] { edge_star(t, "0", "zz"); }), ErrorKind::NoSuchEdge);
}

TEST(EdgeStar, DirectionAndAdjacencyOnEveryEdge) {
  for (const Triangulation& t : {boundary_4_simplex(), cross_polytope_boundary()}) {
    std::size_t total = 0;
    for (const auto& [u, v] : t.edges()) {
      for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
        EdgeStar star = edge_star(t, a, b);
        const std::size_t n = star.opposite.size();
        ASSERT_GE(n, 3u);
        ASSERT_EQ(*std::min_element(star.opposite.begin(), star.opposite.end()), star.opposite.front());
        for (std::size_t i = 0; i < n; ++i) {
          ASSERT_TRUE(even_in_tet(t, star.tets[i], {a, b, star.opposite[i], star.opposite[(i + 1) % n]}));
          const std::size_t next = star.tets[(i + 1) % n];
          ASSERT_GE(t.position(next, star.opposite[(i + 1) % n]), 0);
        }
        if (a < b) total += n;
      }
    }
    EXPECT_EQ(total, 6 * t.tet_count());
  }
  const Triangulation cross = cross_polytope_boundary();
  for (const auto& e : cross.edges()) {
    EXPECT_EQ(edge_star(cross, e.first, e.second).opposite.size(), 4u);
  }
}

TEST(VertexLink, BoundaryOf4Simplex) {
  Triangulation t = boundary_4_simplex();
  VertexLink link = vertex_link(t, "0");
  EXPECT_EQ(labels_of(t, link.nodes), (std::vector<Label>{"1", "2", "3", "4"}));
  EXPECT_EQ(link.arcs.size(), 6u);
  EXPECT_EQ(link.faces, 4u);
  EXPECT_EQ(link.euler_characteristic(), 2);
  EXPECT_TRUE(link.connected);
  EXPECT_EQ(t.label(link.root), "1");
  // Breadth first from 1 in K4: every other node hangs off the root.
  for (VertexId v : link.nodes) {
    if (v != link.root) EXPECT_EQ(link.parent.at(v), link.root);
  }
  EXPECT_EQ(link.non_tree_arcs.size(), 3u);
}

TEST(VertexLink, MissingVertex) {
  EXPECT_EQ(kind_of([] { vertex_link(boundary_4_simplex(), "9"); }), ErrorKind::NoSuchVertex);
}

TEST(VertexLink, TreePathsAreWalksInTheLink) {
  Triangulation t = cross_polytope_boundary();
  for (std::size_t a = 0; a < t.vertex_count(); ++a) {
    VertexLink link = vertex_link(t, static_cast<VertexId>(a));
    ASSERT_EQ(link.nodes.size(), 6u);
    ASSERT_EQ(link.euler_characteristic(), 2);
    for (VertexId x : link.nodes) {
      for (VertexId y : link.nodes) {
        auto path = link.tree_path(x, y);
        ASSERT_EQ(path.front(), x);
        ASSERT_EQ(path.back(), y);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          auto arc = std::minmax(path[i], path[i + 1]);
          ASSERT_TRUE(std::binary_search(link.arcs.begin(), link.arcs.end(), std::pair{arc.first, arc.second}));
        }
      }
    }
  }
}

TEST(Pachner, OneFour) {
  Triangulation t = pachner_14(boundary_4_simplex(), 0, "v");
  EXPECT_EQ(t.tet_count(), 8u);
  EXPECT_EQ(t.vertex_count(), 6u);
  EXPECT_TRUE(validate(t).ok()) << validate(t);

  VertexLink link = vertex_link(t, "v");
  EXPECT_EQ(link.nodes.size(), 4u);
  EXPECT_EQ(link.arcs.size(), 6u);

  EXPECT_EQ(kind_of([] { pachner_14(boundary_4_simplex(), 0, "3"); }), ErrorKind::LabelInUse);
}

TEST(Pachner, TwoThree) {
  Triangulation base = boundary_4_simplex();
  EXPECT_EQ(kind_of([&] { pachner_23(base, {"0", "1", "2"}); }), ErrorKind::ApexesAdjacent);
  EXPECT_EQ(kind_of([&] { pachner_23(base, {"0", "1", "x"}); }), ErrorKind::NoSuchFace);

  Triangulation t = pachner_14(base, 0, "v");
  auto faces = legal_23_faces(t);
  ASSERT_FALSE(faces.empty());
  for (const auto& f : faces) {
    Triangulation u = pachner_23(t, {t.label(f[0]), t.label(f[1]), t.label(f[2])});
    EXPECT_EQ(u.tet_count(), 9u);
    EXPECT_TRUE(validate(u).ok()) << validate(u);
  }
}

TEST(Pachner, RandomWalksStayValid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Triangulation t = random_pachner_walk(seed % 2 ? cross_polytope_boundary() : boundary_4_simplex(), 50, rng);
    ASSERT_TRUE(validate(t).ok()) << "seed " << seed << ": " << validate(t);
    std::size_t total = 0;
    for (std::size_t e = 0; e < t.edges().size(); ++e) total += t.edge_tets(e).size();
    ASSERT_EQ(total, 6 * t.tet_count());
    ASSERT_EQ(t.euler_characteristic(), 0);
  }
}

TEST(Pachner, WalksAreDeterministic) {
  Rng a(42), b(42);
  EXPECT_EQ(random_pachner_walk(boundary_4_simplex(), 30, a).label_tets(),
            random_pachner_walk(boundary_4_simplex(), 30, b).label_tets());
}
