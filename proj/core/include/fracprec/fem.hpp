#ifndef FRACPREC_FEM_HPP
#define FRACPREC_FEM_HPP

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fracprec/mesh.hpp"
#include "fracprec/tagged_vector.hpp"

namespace fracprec
{

using SparseMatrix = Eigen::SparseMatrix<double>;

// Finite element matrices on one level.
//
// Basis conventions:
//   S: indicator functions of triangles.
//   V: lowest order Raviart-Thomas, basis function of edge e has unit flux
//      through e in the direction n_e = rot_cw(x_hi - x_lo) / |e|.
//   C: nodal P1 hat functions, curl q = (dq/dy, -dq/dx).
struct AssembledLevel
{
  int level = 0;
  int n = 0;
  SparseMatrix mass_s;  // diagonal, triangle areas
  SparseMatrix mass_v;
  SparseMatrix divdiv;  // <div psi_j, div psi_i>
  SparseMatrix lambda;  // mass_v + divdiv, the H(div) inner product
  // Discrete gradient, N_V x N_S: D(i, j) = -<phi_j, div psi_i>. Maps S
  // coefficients to V duals.
  SparseMatrix grad;
  // Curl coupling, N_V x N_C: K(i, j) = <curl q_j, psi_i>. Maps C coefficients
  // to V duals.
  SparseMatrix curl;
  // Edge-vertex incidence, N_V x N_C: V coefficients of curl q_j.
  SparseMatrix curl_coefficients;

  int NumS() const { return static_cast<int>(mass_s.rows()); }
  int NumV() const { return static_cast<int>(mass_v.rows()); }
  int NumC() const { return static_cast<int>(curl.cols()); }

  VectorTag Tag(Space space, Rep rep) const { return {space, level, rep}; }
};

AssembledLevel Assemble(const MeshLevel &mesh, int level);

// u (S, coefficient) -> D u (V, dual).
TaggedVector ApplyGradient(const AssembledLevel &a, const TaggedVector &u);
// tau (V, coefficient) -> D^T tau (S, dual).
TaggedVector ApplyGradientTranspose(const AssembledLevel &a, const TaggedVector &tau);

LinearMap GradientMap(const AssembledLevel &a);
LinearMap GradientTransposeMap(const AssembledLevel &a);

// tau = grad_h u + curl q, orthogonal in L2 and in the H(div) inner product.
// The curl potential is unique up to a constant; it is pinned by q[0] = 0.
struct HelmholtzParts
{
  TaggedVector potential;       // u, (S, coefficient)
  TaggedVector curl_potential;  // q, (C, coefficient)
};

HelmholtzParts HelmholtzDecompose(const AssembledLevel &a, const TaggedVector &tau);

// Level k -> k + 1 embeddings. v expresses each coarse Raviart-Thomas basis
// function in the fine basis (fine fluxes of the coarse function); s copies
// each coarse cell value to its four children.
struct Prolongation
{
  int coarse_level = 0;
  SparseMatrix v;
  SparseMatrix s;
};

Prolongation AssembleProlongation(const MeshHierarchy &hierarchy, int k);

// A mesh hierarchy with every level assembled and all prolongations built.
struct Discretization
{
  Discretization(int coarse_cells, int num_levels);

  MeshHierarchy hierarchy;
  std::vector<AssembledLevel> levels;
  std::vector<Prolongation> prolongations;  // prolongations[k]: level k -> k + 1

  int NumLevels() const { return hierarchy.NumLevels(); }
  const AssembledLevel &Finest() const { return levels.back(); }
};

// Dense dual form of the discrete Laplacian A_h = grad_h^* grad_h on S:
// D^T M_V^{-1} D.
Eigen::MatrixXd LaplaceDualForm(const AssembledLevel &a);

// Dense D^T Lambda^{-1} D on S, the form whose smallest eigenvalue against
// M_S is the squared inf-sup constant.
Eigen::MatrixXd InverseLambdaGradientForm(const AssembledLevel &a);

// Coordinate listing "row col value", one entry per line, zero based.
void WriteCoordinate(std::ostream &out, const SparseMatrix &m);

}  // namespace fracprec

#endif  // FRACPREC_FEM_HPP
