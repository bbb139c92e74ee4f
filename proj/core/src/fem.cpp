#include "fracprec/fem.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/SparseCholesky>

#include "fracprec/errors.hpp"

namespace fracprec
{

namespace
{

using Triplet = Eigen::Triplet<double>;

// Local view of the Raviart-Thomas basis on one triangle: on T,
// psi_e = sign_e / (2 |T|) (x - p_e), where p_e is the vertex opposite edge e.
struct LocalRT
{
  std::array<int, 3> edge;
  std::array<double, 3> sign;
  std::array<Point, 3> corner;
  double area;
};

LocalRT LocalBasis(const MeshLevel &mesh, int t)
{
  LocalRT rt;
  const auto &tri = mesh.triangles[t];
  rt.area = mesh.TriangleArea(t);
  for (int e = 0; e < 3; ++e)
  {
    rt.edge[e] = mesh.triangle_edges[t][e];
    rt.corner[e] = mesh.vertices[tri[e]];
    // The outward normal of a counterclockwise triangle across the edge
    // a -> b is rot_cw(b - a); the global normal uses lo -> hi.
    rt.sign[e] = tri[(e + 1) % 3] < tri[(e + 2) % 3] ? 1.0 : -1.0;
  }
  return rt;
}

double Dot(double ax, double ay, double bx, double by) { return ax * bx + ay * by; }

SparseMatrix FromTriplets(int rows, int cols, const std::vector<Triplet> &triplets)
{
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

AssembledLevel Assemble(const MeshLevel &mesh, int level)
{
  AssembledLevel a;
  a.level = level;
  a.n = mesh.n;
  const int ns = mesh.NumTriangles();
  const int nv = mesh.NumEdges();
  const int nc = mesh.NumVertices();

  std::vector<Triplet> ms, mv, dd, gr, cu, inc;
  ms.reserve(ns);
  mv.reserve(9 * ns);
  dd.reserve(9 * ns);
  gr.reserve(3 * ns);
  cu.reserve(9 * ns);
  inc.reserve(2 * nv);

  for (int t = 0; t < ns; ++t)
  {
    const LocalRT rt = LocalBasis(mesh, t);
    const double area = rt.area;
    ms.emplace_back(t, t, area);

    // Edge midpoints: a three point rule exact for quadratics.
    std::array<Point, 3> mid;
    for (int q = 0; q < 3; ++q)
    {
      const Point &a0 = rt.corner[(q + 1) % 3];
      const Point &b0 = rt.corner[(q + 2) % 3];
      mid[q] = {0.5 * (a0.x + b0.x), 0.5 * (a0.y + b0.y)};
    }

    for (int i = 0; i < 3; ++i)
    {
      for (int j = 0; j < 3; ++j)
      {
        double integral = 0.0;
        for (const Point &m : mid)
        {
          integral += Dot(m.x - rt.corner[i].x, m.y - rt.corner[i].y, m.x - rt.corner[j].x,
                          m.y - rt.corner[j].y);
        }
        integral *= area / 3.0;
        const double scale = rt.sign[i] * rt.sign[j] / (4.0 * area * area);
        mv.emplace_back(rt.edge[i], rt.edge[j], scale * integral);
        // div psi = sign / |T| is constant.
        dd.emplace_back(rt.edge[i], rt.edge[j], rt.sign[i] * rt.sign[j] / area);
      }
      gr.emplace_back(rt.edge[i], t, -rt.sign[i]);
    }

    // curl of the hat function at local vertex l: grad lambda_l =
    // rot_ccw(b - a) / (2|T|) for the opposite edge a -> b, then
    // curl q = (dq/dy, -dq/dx). The integral of psi_i over T is
    // sign_i / 2 * (centroid - p_i).
    const Point c = mesh.TriangleCentroid(t);
    const auto &tri = mesh.triangles[t];
    for (int l = 0; l < 3; ++l)
    {
      const Point &pa = rt.corner[(l + 1) % 3];
      const Point &pb = rt.corner[(l + 2) % 3];
      const double gx = -(pb.y - pa.y) / (2.0 * area);
      const double gy = (pb.x - pa.x) / (2.0 * area);
      const double curl_x = gy;
      const double curl_y = -gx;
      for (int i = 0; i < 3; ++i)
      {
        const double ix = 0.5 * rt.sign[i] * (c.x - rt.corner[i].x);
        const double iy = 0.5 * rt.sign[i] * (c.y - rt.corner[i].y);
        cu.emplace_back(rt.edge[i], tri[l], Dot(curl_x, curl_y, ix, iy));
      }
    }
  }

  for (int e = 0; e < nv; ++e)
  {
    inc.emplace_back(e, mesh.edges[e][0], -1.0);
    inc.emplace_back(e, mesh.edges[e][1], 1.0);
  }

  a.mass_s = FromTriplets(ns, ns, ms);
  a.mass_v = FromTriplets(nv, nv, mv);
  a.divdiv = FromTriplets(nv, nv, dd);
  a.lambda = a.mass_v + a.divdiv;
  a.lambda.makeCompressed();
  a.grad = FromTriplets(nv, ns, gr);
  a.curl = FromTriplets(nv, nc, cu);
  a.curl_coefficients = FromTriplets(nv, nc, inc);
  return a;
}

TaggedVector ApplyGradient(const AssembledLevel &a, const TaggedVector &u)
{
  return GradientMap(a)(u);
}

TaggedVector ApplyGradientTranspose(const AssembledLevel &a, const TaggedVector &tau)
{
  return GradientTransposeMap(a)(tau);
}

LinearMap GradientMap(const AssembledLevel &a)
{
  const SparseMatrix *d = &a.grad;
  return LinearMap(a.Tag(Space::S, Rep::Coefficient), a.NumS(), a.Tag(Space::V, Rep::Dual),
                   a.NumV(),
                   [d](const Eigen::VectorXd &x, Eigen::VectorXd &y) { y.noalias() = *d * x; });
}

LinearMap GradientTransposeMap(const AssembledLevel &a)
{
  const SparseMatrix *d = &a.grad;
  return LinearMap(a.Tag(Space::V, Rep::Coefficient), a.NumV(), a.Tag(Space::S, Rep::Dual),
                   a.NumS(), [d](const Eigen::VectorXd &x, Eigen::VectorXd &y)
                   { y.noalias() = d->transpose() * x; });
}

HelmholtzParts HelmholtzDecompose(const AssembledLevel &a, const TaggedVector &tau)
{
  Require(tau.Tag() == a.Tag(Space::V, Rep::Coefficient),
          "HelmholtzDecompose: expected a V coefficient vector, got " + ToString(tau.Tag()));
  Require(tau.Size() == a.NumV(), "HelmholtzDecompose: size mismatch");

  Eigen::SimplicialLDLT<SparseMatrix> mass(a.mass_v);
  if (mass.info() != Eigen::Success)
  {
    throw NumericalError("HelmholtzDecompose: V mass matrix factorization failed");
  }
  const Eigen::MatrixXd dense_grad = Eigen::MatrixXd(a.grad);
  const Eigen::MatrixXd grad_coeff = mass.solve(dense_grad);  // M_V^{-1} D
  const Eigen::MatrixXd laplace = dense_grad.transpose() * grad_coeff;
  const Eigen::VectorXd u = laplace.ldlt().solve(a.grad.transpose() * tau.Values());

  const Eigen::VectorXd rest = tau.Values() - grad_coeff * u;
  const Eigen::MatrixXd e = Eigen::MatrixXd(a.curl_coefficients);
  const Eigen::MatrixXd gram = e.transpose() * (a.mass_v * e);
  const Eigen::VectorXd rhs = e.transpose() * (a.mass_v * rest);
  const int nc = a.NumC();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(nc);
  if (nc > 1)
  {
    q.tail(nc - 1) =
        gram.bottomRightCorner(nc - 1, nc - 1).ldlt().solve(rhs.tail(nc - 1));
  }
  return {TaggedVector(a.Tag(Space::S, Rep::Coefficient), u),
          TaggedVector(a.Tag(Space::C, Rep::Coefficient), q)};
}

Prolongation AssembleProlongation(const MeshHierarchy &hierarchy, int k)
{
  Require(k >= 0 && k + 1 < hierarchy.NumLevels(),
          "AssembleProlongation: level has no finer level");
  const MeshLevel &coarse = hierarchy.Level(k);
  const MeshLevel &fine = hierarchy.Level(k + 1);

  std::vector<Triplet> pv;
  pv.reserve(3 * fine.NumEdges());
  for (int f = 0; f < fine.NumEdges(); ++f)
  {
    const int parent = hierarchy.ParentTriangle(k + 1, fine.edge_to_triangles[f][0]);
    const LocalRT rt = LocalBasis(coarse, parent);
    const Point m = fine.EdgeMidpoint(f);
    const Point &lo = fine.vertices[fine.edges[f][0]];
    const Point &hi = fine.vertices[fine.edges[f][1]];
    // |f| n_f = rot_cw(hi - lo)
    const double nx = hi.y - lo.y;
    const double ny = -(hi.x - lo.x);
    for (int e = 0; e < 3; ++e)
    {
      // The normal component of psi_e is affine along f, so the midpoint
      // rule gives the exact flux.
      const double flux = rt.sign[e] / (2.0 * rt.area) *
                          Dot(m.x - rt.corner[e].x, m.y - rt.corner[e].y, nx, ny);
      if (std::abs(flux) > 1e-12)
      {
        pv.emplace_back(f, rt.edge[e], flux);
      }
    }
  }

  std::vector<Triplet> ps;
  ps.reserve(fine.NumTriangles());
  for (int t = 0; t < fine.NumTriangles(); ++t)
  {
    ps.emplace_back(t, hierarchy.ParentTriangle(k + 1, t), 1.0);
  }

  Prolongation p;
  p.coarse_level = k;
  p.v = FromTriplets(fine.NumEdges(), coarse.NumEdges(), pv);
  p.s = FromTriplets(fine.NumTriangles(), coarse.NumTriangles(), ps);
  return p;
}

Discretization::Discretization(int coarse_cells, int num_levels)
  : hierarchy(coarse_cells, num_levels)
{
  levels.reserve(num_levels);
  for (int k = 0; k < num_levels; ++k)
  {
    levels.push_back(Assemble(hierarchy.Level(k), k));
  }
  for (int k = 0; k + 1 < num_levels; ++k)
  {
    prolongations.push_back(AssembleProlongation(hierarchy, k));
  }
}

namespace
{

// D^T X^{-1} D for a sparse SPD X, built in column blocks to bound the dense
// intermediate.
Eigen::MatrixXd GradientSandwich(const SparseMatrix &x, const SparseMatrix &grad)
{
  Eigen::SimplicialLLT<SparseMatrix> chol(x);
  if (chol.info() != Eigen::Success)
  {
    throw NumericalError("GradientSandwich: matrix is not positive definite");
  }
  const Eigen::Index ns = grad.cols();
  Eigen::MatrixXd out(ns, ns);
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index start = 0; start < ns; start += kBlock)
  {
    const Eigen::Index width = std::min(kBlock, ns - start);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd(grad.middleCols(start, width));
    const Eigen::MatrixXd sol = chol.solve(rhs);
    out.middleCols(start, width).noalias() = grad.transpose() * sol;
  }
  // Exact symmetry for the eigensolvers downstream.
  const Eigen::MatrixXd sym = 0.5 * (out + out.transpose());
  return sym;
}

}  // namespace

Eigen::MatrixXd LaplaceDualForm(const AssembledLevel &a)
{
  return GradientSandwich(a.mass_v, a.grad);
}

Eigen::MatrixXd InverseLambdaGradientForm(const AssembledLevel &a)
{
  return GradientSandwich(a.lambda, a.grad);
}

void WriteCoordinate(std::ostream &out, const SparseMatrix &m)
{
  out.precision(17);
  for (int col = 0; col < m.outerSize(); ++col)
  {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it)
    {
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
    }
  }
}

}  // namespace fracprec
