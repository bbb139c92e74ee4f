#ifndef FRACPREC_AMG_HPP
#define FRACPREC_AMG_HPP

#include <vector>

#include "fracprec/fem.hpp"
#include "fracprec/spectral.hpp"

namespace fracprec
{

// Exact local solver on the Raviart-Thomas subspace of one vertex star: the
// pencil (Lambda, M_V) restricted to the edges incident to the vertex.
struct PatchSolver
{
  int level = 0;
  int vertex = 0;
  std::vector<int> dofs;
  SpectralPair local;
};

// Exponent independent part of the additive multigrid preconditioner: patch
// spectra on every level above the coarsest and the coarse spectrum. Keeps a
// reference to the discretization, which must outlive it.
class MultigridData
{
public:
  explicit MultigridData(const Discretization &disc);

  const Discretization &Disc() const { return *disc_; }
  int NumLevels() const { return disc_->NumLevels(); }
  const std::vector<PatchSolver> &Patches(int k) const;
  const SpectralPair &Coarse() const { return coarse_; }

private:
  const Discretization *disc_;
  std::vector<std::vector<PatchSolver>> patches_;  // empty on level 0
  SpectralPair coarse_;
};

// B = sum_k R_k Q_k, a dual -> coefficient map on the finest V level that
// approximates Lambda^{-s}. R_0 = Lambda_0^{-s} exactly; on finer levels
// R_k = sum_v Lambda_{k,v}^{-s} Q_{k,v} over vertex stars. Q_k is realized by
// the transposed prolongation chain acting on dual vectors.
class AdditiveMultigrid
{
public:
  AdditiveMultigrid(const MultigridData &data, double s);

  double Exponent() const { return s_; }
  const MultigridData &Data() const { return *data_; }
  int FinestLevel() const { return data_->NumLevels() - 1; }
  Eigen::Index Size() const;

  // (V, finest, dual) -> (V, finest, coefficient)
  TaggedVector Apply(const TaggedVector &dual) const;
  void ApplyRaw(const Eigen::VectorXd &dual, Eigen::VectorXd &coefficients) const;
  LinearMap AsMap() const;

  // coefficients += R_k dual, on level k.
  void ApplySmoother(int k, const Eigen::VectorXd &dual, Eigen::VectorXd &coefficients) const;
  // Dense R_k as a dual -> coefficient matrix on level k.
  Eigen::MatrixXd SmootherMatrix(int k) const;

private:
  const MultigridData *data_;
  double s_;
  // local_[k][p] = Phi diag(lambda^{-s}) Phi^T for patch p of level k.
  std::vector<std::vector<Eigen::MatrixXd>> local_;
  Eigen::MatrixXd coarse_;
};

}  // namespace fracprec

#endif  // FRACPREC_AMG_HPP
