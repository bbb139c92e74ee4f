#include "fracprec/amg.hpp"

#include <string>

#include "fracprec/errors.hpp"

namespace fracprec
{

namespace
{

Eigen::MatrixXd Gather(const SparseMatrix &m, const std::vector<int> &dofs)
{
  const int size = static_cast<int>(dofs.size());
  Eigen::MatrixXd local(size, size);
  for (int i = 0; i < size; ++i)
  {
    for (int j = 0; j < size; ++j)
    {
      local(i, j) = m.coeff(dofs[i], dofs[j]);
    }
  }
  return local;
}

}  // namespace

MultigridData::MultigridData(const Discretization &disc)
  : disc_(&disc), coarse_(LambdaSpectrum(disc.levels.front()))
{
  patches_.resize(disc.NumLevels());
  for (int k = 1; k < disc.NumLevels(); ++k)
  {
    const AssembledLevel &level = disc.levels[k];
    for (VertexPatch &patch : disc.hierarchy.VertexPatches(k))
    {
      const Eigen::MatrixXd lambda = Gather(level.lambda, patch.edge_dofs);
      const Eigen::MatrixXd mass = Gather(level.mass_v, patch.edge_dofs);
      SpectralPair local = GeneralizedEig(lambda, mass, Space::V, k);
      patches_[k].push_back(
          PatchSolver{k, patch.vertex, std::move(patch.edge_dofs), std::move(local)});
    }
  }
}

const std::vector<PatchSolver> &MultigridData::Patches(int k) const
{
  Require(k >= 1 && k < NumLevels(),
          "MultigridData: patch solvers exist on levels 1.." + std::to_string(NumLevels() - 1));
  return patches_[k];
}

AdditiveMultigrid::AdditiveMultigrid(const MultigridData &data, double s)
  : data_(&data), s_(s), coarse_(data.Coarse().Matrix(s))
{
  local_.resize(data.NumLevels());
  for (int k = 1; k < data.NumLevels(); ++k)
  {
    const auto &patches = data.Patches(k);
    local_[k].reserve(patches.size());
    for (const PatchSolver &p : patches)
    {
      local_[k].push_back(p.local.Matrix(s));
    }
  }
}

Eigen::Index AdditiveMultigrid::Size() const
{
  return data_->Disc().Finest().NumV();
}

void AdditiveMultigrid::ApplySmoother(int k, const Eigen::VectorXd &dual,
                                      Eigen::VectorXd &coefficients) const
{
  if (k == 0)
  {
    coefficients.noalias() += coarse_ * dual;
    return;
  }
  const auto &patches = data_->Patches(k);
  Eigen::VectorXd gathered;
  Eigen::VectorXd local;
  for (std::size_t p = 0; p < patches.size(); ++p)
  {
    const auto &dofs = patches[p].dofs;
    const Eigen::Index m = static_cast<Eigen::Index>(dofs.size());
    gathered.resize(m);
    for (Eigen::Index i = 0; i < m; ++i)
    {
      gathered[i] = dual[dofs[i]];
    }
    local.noalias() = local_[k][p] * gathered;
    for (Eigen::Index i = 0; i < m; ++i)
    {
      coefficients[dofs[i]] += local[i];
    }
  }
}

void AdditiveMultigrid::ApplyRaw(const Eigen::VectorXd &dual, Eigen::VectorXd &coefficients) const
{
  const Discretization &disc = data_->Disc();
  const int levels = disc.NumLevels();
  std::vector<Eigen::VectorXd> restricted(levels);
  restricted[levels - 1] = dual;
  for (int k = levels - 2; k >= 0; --k)
  {
    restricted[k] = disc.prolongations[k].v.transpose() * restricted[k + 1];
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(restricted[0].size());
  ApplySmoother(0, restricted[0], c);
  for (int k = 1; k < levels; ++k)
  {
    Eigen::VectorXd fine = disc.prolongations[k - 1].v * c;
    ApplySmoother(k, restricted[k], fine);
    c = std::move(fine);
  }
  coefficients = std::move(c);
}

TaggedVector AdditiveMultigrid::Apply(const TaggedVector &dual) const
{
  return AsMap()(dual);
}

LinearMap AdditiveMultigrid::AsMap() const
{
  const int finest = FinestLevel();
  return LinearMap({Space::V, finest, Rep::Dual}, Size(), {Space::V, finest, Rep::Coefficient},
                   Size(), [this](const Eigen::VectorXd &x, Eigen::VectorXd &y) { ApplyRaw(x, y); });
}

Eigen::MatrixXd AdditiveMultigrid::SmootherMatrix(int k) const
{
  Require(k >= 0 && k < data_->NumLevels(), "SmootherMatrix: level out of range");
  const Eigen::Index n = data_->Disc().levels[k].NumV();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
  {
    e[j] = 1.0;
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    ApplySmoother(k, e, col);
    r.col(j) = col;
    e[j] = 0.0;
  }
  return r;
}

}  // namespace fracprec
