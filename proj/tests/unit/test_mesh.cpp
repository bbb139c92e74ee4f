#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fracprec/errors.hpp"
#include "fracprec/mesh.hpp"

namespace fracprec
{
namespace
{

double SignedArea(const MeshLevel &m, int t)
{
  const Point &a = m.vertices[m.triangles[t][0]];
  const Point &b = m.vertices[m.triangles[t][1]];
  const Point &c = m.vertices[m.triangles[t][2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

bool Near(const Point &a, const Point &b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y) < 1e-12; }

TEST(Mesh, CountsAndEuler)
{
  for (int n : {1, 2, 3, 8, 16})
  {
    const MeshLevel m = BuildUniformMesh(n);
    EXPECT_EQ(m.NumVertices(), (n + 1) * (n + 1));
    EXPECT_EQ(m.NumTriangles(), 2 * n * n);
    EXPECT_EQ(m.NumEdges(), 3 * n * n + 2 * n);
    EXPECT_EQ(m.NumVertices() - m.NumEdges() + m.NumTriangles(), 1);
    // Helmholtz dimension count: dim V = dim S + dim C - 1.
    EXPECT_EQ(m.NumEdges(), m.NumTriangles() + m.NumVertices() - 1);
    EXPECT_DOUBLE_EQ(m.h, 1.0 / n);
  }
}

TEST(Mesh, SingleCell)
{
  const MeshLevel m = BuildUniformMesh(1);
  EXPECT_EQ(m.NumTriangles(), 2);
  EXPECT_EQ(m.NumEdges(), 5);
  EXPECT_EQ(m.NumVertices(), 4);
}

TEST(Mesh, TrianglesArePositivelyOriented)
{
  for (int n : {1, 4, 7})
  {
    const MeshLevel m = BuildUniformMesh(n);
    for (int t = 0; t < m.NumTriangles(); ++t)
    {
      EXPECT_NEAR(SignedArea(m, t), 1.0 / (2.0 * n * n), 1e-15);
      EXPECT_NEAR(m.TriangleArea(t), 1.0 / (2.0 * n * n), 1e-15);
    }
  }
}

TEST(Mesh, EdgesAreOrientedAndSorted)
{
  const MeshLevel m = BuildUniformMesh(5);
  for (int e = 0; e < m.NumEdges(); ++e)
  {
    EXPECT_LT(m.edges[e][0], m.edges[e][1]);
    if (e > 0)
    {
      EXPECT_LT(m.edges[e - 1], m.edges[e]);
    }
  }
}

TEST(Mesh, EdgeAdjacencyMatchesBruteForce)
{
  const MeshLevel m = BuildUniformMesh(4);
  std::map<std::pair<int, int>, std::vector<int>> owners;
  for (int t = 0; t < m.NumTriangles(); ++t)
  {
    for (int i = 0; i < 3; ++i)
    {
      int a = m.triangles[t][(i + 1) % 3];
      int b = m.triangles[t][(i + 2) % 3];
      owners[{std::min(a, b), std::max(a, b)}].push_back(t);
      // Local edge i is opposite local vertex i.
      const auto &edge = m.edges[m.triangle_edges[t][i]];
      EXPECT_EQ(edge[0], std::min(a, b));
      EXPECT_EQ(edge[1], std::max(a, b));
    }
  }
  ASSERT_EQ(static_cast<int>(owners.size()), m.NumEdges());
  int boundary = 0;
  for (int e = 0; e < m.NumEdges(); ++e)
  {
    const auto &list = owners.at({m.edges[e][0], m.edges[e][1]});
    const Point mid = m.EdgeMidpoint(e);
    const bool on_boundary = mid.x < 1e-12 || mid.y < 1e-12 || mid.x > 1 - 1e-12 || mid.y > 1 - 1e-12;
    EXPECT_EQ(m.IsBoundaryEdge(e), on_boundary);
    EXPECT_EQ(list.size(), on_boundary ? 1u : 2u);
    boundary += on_boundary;
  }
  EXPECT_EQ(boundary, 4 * m.n);
}

TEST(Mesh, RejectsInvalidSizes)
{
  EXPECT_THROW(BuildUniformMesh(0), ContractViolation);
  EXPECT_THROW(MeshHierarchy(0, 2), ContractViolation);
  EXPECT_THROW(MeshHierarchy(1, 0), ContractViolation);
}

TEST(Hierarchy, TableSizes)
{
  const MeshHierarchy h(1, 4);
  EXPECT_EQ(h.NumLevels(), 4);
  EXPECT_EQ(h.Finest().NumEdges(), 208);
  const MeshHierarchy single(8, 1);
  EXPECT_EQ(single.Finest().NumTriangles(), 128);
  for (int k = 0; k < 4; ++k)
  {
    EXPECT_EQ(h.Level(k).n, 1 << k);
  }
}

TEST(Hierarchy, ParentsContainChildren)
{
  const MeshHierarchy h(2, 3);
  for (int k = 1; k < h.NumLevels(); ++k)
  {
    const MeshLevel &fine = h.Level(k);
    const MeshLevel &coarse = h.Level(k - 1);
    std::vector<int> children(coarse.NumTriangles(), 0);
    for (int t = 0; t < fine.NumTriangles(); ++t)
    {
      const int p = h.ParentTriangle(k, t);
      ++children[p];
      // Every fine vertex lies in the closed parent triangle.
      for (int v : fine.triangles[t])
      {
        const Point &x = fine.vertices[v];
        const auto &tri = coarse.triangles[p];
        for (int i = 0; i < 3; ++i)
        {
          const Point &a = coarse.vertices[tri[i]];
          const Point &b = coarse.vertices[tri[(i + 1) % 3]];
          const double side = (b.x - a.x) * (x.y - a.y) - (b.y - a.y) * (x.x - a.x);
          EXPECT_GE(side, -1e-14);
        }
      }
    }
    for (int c : children)
    {
      EXPECT_EQ(c, 4);
    }
  }
}

TEST(Hierarchy, ChildEdgesSplitAtMidpoint)
{
  const MeshHierarchy h(1, 4);
  for (int k = 0; k + 1 < h.NumLevels(); ++k)
  {
    const MeshLevel &coarse = h.Level(k);
    const MeshLevel &fine = h.Level(k + 1);
    for (int e = 0; e < coarse.NumEdges(); ++e)
    {
      const auto &kids = h.ChildEdges(k, e);
      const int lo = h.FineVertex(k, coarse.edges[e][0]);
      const int hi = h.FineVertex(k, coarse.edges[e][1]);
      const auto &a = fine.edges[kids[0]];
      const auto &b = fine.edges[kids[1]];
      // Shared vertex is the coarse midpoint.
      std::set<int> sa(a.begin(), a.end());
      int shared = -1;
      for (int v : b)
      {
        if (sa.count(v))
        {
          shared = v;
        }
      }
      ASSERT_GE(shared, 0);
      EXPECT_TRUE(Near(fine.vertices[shared], coarse.EdgeMidpoint(e)));
      EXPECT_TRUE(sa.count(lo));
      EXPECT_TRUE(std::find(b.begin(), b.end(), hi) != b.end());
    }
  }
}

TEST(Hierarchy, FineVerticesAreCoarseVerticesOrMidpoints)
{
  const MeshHierarchy h(1, 3);
  for (int k = 0; k + 1 < h.NumLevels(); ++k)
  {
    const MeshLevel &coarse = h.Level(k);
    const MeshLevel &fine = h.Level(k + 1);
    for (const Point &p : fine.vertices)
    {
      bool found = false;
      for (const Point &q : coarse.vertices)
      {
        found = found || Near(p, q);
      }
      for (int e = 0; e < coarse.NumEdges() && !found; ++e)
      {
        found = Near(p, coarse.EdgeMidpoint(e));
      }
      EXPECT_TRUE(found);
    }
    for (int v = 0; v < coarse.NumVertices(); ++v)
    {
      EXPECT_TRUE(Near(coarse.vertices[v], fine.vertices[h.FineVertex(k, v)]));
    }
  }
}

TEST(Patches, CenterStarAtN2)
{
  const MeshHierarchy h(1, 2);
  const auto patches = h.VertexPatches(1);
  ASSERT_EQ(patches.size(), 9u);
  const MeshLevel &m = h.Level(1);
  const auto &center = patches[m.VertexIndex(1, 1)];
  EXPECT_EQ(center.triangles.size(), 6u);
  EXPECT_EQ(center.edge_dofs.size(), 6u);
}

TEST(Patches, CornerStars)
{
  // With the lower-left to upper-right diagonal the corners (1, 0) and (0, 1)
  // carry one triangle; (0, 0) and (1, 1) sit on a diagonal and carry two.
  const MeshHierarchy h(1, 3);
  for (int k = 1; k < 3; ++k)
  {
    const MeshLevel &m = h.Level(k);
    const auto patches = h.VertexPatches(k);
    for (auto [i, j] : {std::pair{m.n, 0}, std::pair{0, m.n}})
    {
      const auto &p = patches[m.VertexIndex(i, j)];
      EXPECT_EQ(p.triangles.size(), 1u);
      EXPECT_EQ(p.edge_dofs.size(), 2u);
    }
    EXPECT_EQ(patches[m.VertexIndex(0, 0)].triangles.size(), 2u);
    EXPECT_EQ(patches[m.VertexIndex(0, 0)].edge_dofs.size(), 3u);
  }
}

TEST(Patches, EveryEdgeInTwoPatchesAndSupportInside)
{
  const MeshHierarchy h(1, 4);
  for (int k = 1; k < h.NumLevels(); ++k)
  {
    const MeshLevel &m = h.Level(k);
    std::vector<int> count(m.NumEdges(), 0);
    for (const auto &p : h.VertexPatches(k))
    {
      // Star: exactly the triangles containing the vertex.
      std::set<int> star(p.triangles.begin(), p.triangles.end());
      for (int t = 0; t < m.NumTriangles(); ++t)
      {
        const auto &tri = m.triangles[t];
        const bool has = std::find(tri.begin(), tri.end(), p.vertex) != tri.end();
        EXPECT_EQ(has, star.count(t) == 1);
      }
      EXPECT_TRUE(std::is_sorted(p.edge_dofs.begin(), p.edge_dofs.end()));
      for (int e : p.edge_dofs)
      {
        ++count[e];
        for (int t : m.edge_to_triangles[e])
        {
          if (t >= 0)
          {
            EXPECT_TRUE(star.count(t));
          }
        }
      }
    }
    for (int c : count)
    {
      EXPECT_EQ(c, 2);
    }
  }
  EXPECT_THROW(h.VertexPatches(0), ContractViolation);
}

TEST(Mesh, WriteMeshListsEverything)
{
  std::ostringstream out;
  WriteMesh(out, BuildUniformMesh(1));
  const std::string text = out.str();
  EXPECT_NE(text.find("vertices 4"), std::string::npos);
  EXPECT_NE(text.find("triangles 2"), std::string::npos);
  EXPECT_NE(text.find("edges 5"), std::string::npos);
}

}  // namespace
}  // namespace fracprec
