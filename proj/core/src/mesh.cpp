#include "fracprec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "fracprec/errors.hpp"

namespace fracprec
{

double MeshLevel::TriangleArea(int t) const
{
  const auto &tri = triangles[t];
  const Point &a = vertices[tri[0]];
  const Point &b = vertices[tri[1]];
  const Point &c = vertices[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Point MeshLevel::EdgeMidpoint(int e) const
{
  const Point &a = vertices[edges[e][0]];
  const Point &b = vertices[edges[e][1]];
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

Point MeshLevel::TriangleCentroid(int t) const
{
  const auto &tri = triangles[t];
  Point c;
  for (int v : tri)
  {
    c.x += vertices[v].x / 3.0;
    c.y += vertices[v].y / 3.0;
  }
  return c;
}

MeshLevel BuildUniformMesh(int n)
{
  Require(n >= 1, "BuildUniformMesh: cells per side must be >= 1, got " + std::to_string(n));
  MeshLevel mesh;
  mesh.n = n;
  mesh.h = 1.0 / n;

  mesh.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
  {
    for (int i = 0; i <= n; ++i)
    {
      mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }

  mesh.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
  {
    for (int i = 0; i < n; ++i)
    {
      const int v00 = mesh.VertexIndex(i, j);
      const int v10 = mesh.VertexIndex(i + 1, j);
      const int v11 = mesh.VertexIndex(i + 1, j + 1);
      const int v01 = mesh.VertexIndex(i, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }

  // Edges: collect (lo, hi) from every triangle, sort, deduplicate.
  std::vector<std::array<int, 2>> all;
  all.reserve(3 * mesh.triangles.size());
  for (const auto &tri : mesh.triangles)
  {
    for (int e = 0; e < 3; ++e)
    {
      const int a = tri[(e + 1) % 3];
      const int b = tri[(e + 2) % 3];
      all.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  mesh.edges = std::move(all);

  const int num_edges = mesh.NumEdges();
  mesh.edge_to_triangles.assign(num_edges, {-1, -1});
  mesh.triangle_edges.resize(mesh.triangles.size());
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const auto &tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e)
    {
      const int a = tri[(e + 1) % 3];
      const int b = tri[(e + 2) % 3];
      const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      const auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
      const int edge = static_cast<int>(it - mesh.edges.begin());
      mesh.triangle_edges[t][e] = edge;
      auto &adj = mesh.edge_to_triangles[edge];
      (adj[0] < 0 ? adj[0] : adj[1]) = t;
    }
  }

  mesh.vertex_to_triangles.resize(mesh.vertices.size());
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    for (int v : mesh.triangles[t])
    {
      mesh.vertex_to_triangles[v].push_back(t);
    }
  }
  return mesh;
}

namespace
{

int LocateVertex(const MeshLevel &mesh, const Point &p)
{
  const int i = static_cast<int>(std::lround(p.x * mesh.n));
  const int j = static_cast<int>(std::lround(p.y * mesh.n));
  return mesh.VertexIndex(i, j);
}

int FindEdge(const MeshLevel &mesh, int a, int b)
{
  const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
  const auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
  Require(it != mesh.edges.end() && *it == key, "FindEdge: no such edge");
  return static_cast<int>(it - mesh.edges.begin());
}

}  // namespace

MeshHierarchy::MeshHierarchy(int coarse_cells, int num_levels)
{
  Require(coarse_cells >= 1, "MeshHierarchy: coarse cells per side must be >= 1");
  Require(num_levels >= 1, "MeshHierarchy: number of levels must be >= 1");
  levels_.reserve(num_levels);
  for (int k = 0; k < num_levels; ++k)
  {
    levels_.push_back(BuildUniformMesh(coarse_cells << k));
  }

  parent_triangle_.resize(num_levels);
  child_edges_.resize(num_levels);
  for (int k = 1; k < num_levels; ++k)
  {
    const MeshLevel &coarse = levels_[k - 1];
    const MeshLevel &fine = levels_[k];
    auto &parents = parent_triangle_[k];
    parents.resize(fine.NumTriangles());
    for (int t = 0; t < fine.NumTriangles(); ++t)
    {
      const Point c = fine.TriangleCentroid(t);
      const int ci = std::min(static_cast<int>(c.x * coarse.n), coarse.n - 1);
      const int cj = std::min(static_cast<int>(c.y * coarse.n), coarse.n - 1);
      // Below the coarse cell diagonal iff x - x0 > y - y0.
      const bool below = (c.x * coarse.n - ci) > (c.y * coarse.n - cj);
      parents[t] = 2 * (cj * coarse.n + ci) + (below ? 0 : 1);
    }

    auto &children = child_edges_[k - 1];
    children.resize(coarse.NumEdges());
    for (int e = 0; e < coarse.NumEdges(); ++e)
    {
      const int a = LocateVertex(fine, coarse.vertices[coarse.edges[e][0]]);
      const int b = LocateVertex(fine, coarse.vertices[coarse.edges[e][1]]);
      const int m = LocateVertex(fine, coarse.EdgeMidpoint(e));
      children[e] = {FindEdge(fine, a, m), FindEdge(fine, m, b)};
    }
  }
}

const MeshLevel &MeshHierarchy::Level(int k) const
{
  Require(k >= 0 && k < NumLevels(), "MeshHierarchy: level out of range");
  return levels_[k];
}

int MeshHierarchy::ParentTriangle(int k, int t) const
{
  Require(k >= 1 && k < NumLevels(), "ParentTriangle: level must have a coarser level");
  return parent_triangle_[k][t];
}

const std::array<int, 2> &MeshHierarchy::ChildEdges(int k, int e) const
{
  Require(k >= 0 && k + 1 < NumLevels(), "ChildEdges: level must have a finer level");
  return child_edges_[k][e];
}

int MeshHierarchy::FineVertex(int k, int v) const
{
  Require(k >= 0 && k + 1 < NumLevels(), "FineVertex: level must have a finer level");
  return LocateVertex(levels_[k + 1], levels_[k].vertices[v]);
}

std::vector<VertexPatch> MeshHierarchy::VertexPatches(int k) const
{
  Require(k >= 1 && k < NumLevels(),
          "VertexPatches: patches exist on levels 1.." + std::to_string(NumLevels() - 1));
  const MeshLevel &mesh = levels_[k];
  std::vector<std::vector<int>> incident(mesh.NumVertices());
  for (int e = 0; e < mesh.NumEdges(); ++e)
  {
    incident[mesh.edges[e][0]].push_back(e);
    incident[mesh.edges[e][1]].push_back(e);
  }
  std::vector<VertexPatch> patches(mesh.NumVertices());
  for (int v = 0; v < mesh.NumVertices(); ++v)
  {
    patches[v].level = k;
    patches[v].vertex = v;
    patches[v].triangles = mesh.vertex_to_triangles[v];
    patches[v].edge_dofs = std::move(incident[v]);
  }
  return patches;
}

void WriteMesh(std::ostream &out, const MeshLevel &mesh)
{
  out << "# n " << mesh.n << "\n";
  out << "vertices " << mesh.NumVertices() << "\n";
  for (const Point &p : mesh.vertices)
  {
    out << p.x << " " << p.y << "\n";
  }
  out << "triangles " << mesh.NumTriangles() << "\n";
  for (const auto &t : mesh.triangles)
  {
    out << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  out << "edges " << mesh.NumEdges() << "\n";
  for (const auto &e : mesh.edges)
  {
    out << e[0] << " " << e[1] << "\n";
  }
}

}  // namespace fracprec
