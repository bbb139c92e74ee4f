#ifndef FRACPREC_MESH_HPP
#define FRACPREC_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

namespace fracprec
{

struct Point
{
  double x = 0.0;
  double y = 0.0;
};

// Uniform triangulation of the unit square with n cells per side. Every cell
// is split along its lower-left to upper-right diagonal.
//
// Numbering:
//   vertex (i, j) at (i/n, j/n)  ->  j * (n + 1) + i
//   cell (i, j)                  ->  triangles 2 * (j * n + i)      (below the diagonal)
//                                              2 * (j * n + i) + 1  (above the diagonal)
//   edges                        ->  sorted lexicographically by (lower vertex, higher vertex)
//
// Triangles are counterclockwise. Local edge e of a triangle is the edge
// opposite its local vertex e. Edges are oriented from the lower to the higher
// vertex index.
struct MeshLevel
{
  int n = 0;
  double h = 0.0;
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;
  // Adjacent triangles of each edge; the second slot is -1 on the boundary.
  std::vector<std::array<int, 2>> edge_to_triangles;
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<std::vector<int>> vertex_to_triangles;

  int NumVertices() const { return static_cast<int>(vertices.size()); }
  int NumTriangles() const { return static_cast<int>(triangles.size()); }
  int NumEdges() const { return static_cast<int>(edges.size()); }
  int VertexIndex(int i, int j) const { return j * (n + 1) + i; }
  bool IsBoundaryEdge(int e) const { return edge_to_triangles[e][1] < 0; }
  double TriangleArea(int t) const;
  Point EdgeMidpoint(int e) const;
  Point TriangleCentroid(int t) const;
};

MeshLevel BuildUniformMesh(int n);

// The star of a vertex: all triangles containing it, and the edges incident to
// it. Those edges are exactly the Raviart-Thomas degrees of freedom whose basis
// functions are supported in the closed star.
struct VertexPatch
{
  int level = 0;
  int vertex = 0;
  std::vector<int> triangles;
  std::vector<int> edge_dofs;
};

// Levels are indexed from 0 (coarsest) to NumLevels() - 1 (finest); each level
// is the regular refinement of the previous one.
class MeshHierarchy
{
public:
  MeshHierarchy(int coarse_cells, int num_levels);

  int NumLevels() const { return static_cast<int>(levels_.size()); }
  const MeshLevel &Level(int k) const;
  const MeshLevel &Finest() const { return levels_.back(); }

  // Coarse triangle of level k - 1 containing fine triangle t of level k.
  int ParentTriangle(int k, int t) const;
  // The two edges of level k + 1 covering edge e of level k, in the order
  // (lower vertex half, higher vertex half).
  const std::array<int, 2> &ChildEdges(int k, int e) const;
  // Level k + 1 index of vertex v of level k.
  int FineVertex(int k, int v) const;

  // One patch per vertex of level k. Valid for every level except the
  // coarsest, which is solved exactly.
  std::vector<VertexPatch> VertexPatches(int k) const;

private:
  std::vector<MeshLevel> levels_;
  std::vector<std::vector<int>> parent_triangle_;
  std::vector<std::vector<std::array<int, 2>>> child_edges_;
};

void WriteMesh(std::ostream &out, const MeshLevel &mesh);

}  // namespace fracprec

#endif  // FRACPREC_MESH_HPP
