#include "fracprec/auxprec.hpp"

#include "dense_kernels.hpp"
#include "fracprec/errors.hpp"

namespace fracprec
{

namespace
{

void RequireExponent(double s)
{
  Require(s >= -1.0 && s <= 0.0, "AuxSpacePreconditioner: exponent must lie in [-1, 0]");
}

}  // namespace

AuxSpacePreconditioner::AuxSpacePreconditioner(const AssembledLevel &level, double s)
  : level_(&level), s_(s)
{
  RequireExponent(s);
}

AuxSpacePreconditioner AuxSpacePreconditioner::Exact(const AssembledLevel &level,
                                                     const SpectralPair &lambda, double s)
{
  Require(lambda.SpaceKind() == Space::V && lambda.Level() == level.level &&
              lambda.Size() == level.NumV(),
          "AuxSpacePreconditioner: spectral pair does not belong to this V level");
  AuxSpacePreconditioner b(level, s);
  b.exact_ = &lambda;
  return b;
}

AuxSpacePreconditioner AuxSpacePreconditioner::Multigrid(const MultigridData &data, double s)
{
  AuxSpacePreconditioner b(data.Disc().Finest(), s);
  b.multigrid_.emplace(data, 1.0 + s);
  return b;
}

void AuxSpacePreconditioner::ApplyRaw(const Eigen::VectorXd &u, Eigen::VectorXd &out) const
{
  const Eigen::VectorXd grad_dual = level_->grad * u;
  Eigen::VectorXd inner;
  if (exact_ != nullptr)
  {
    inner = exact_->Apply(1.0 + s_, grad_dual);
  }
  else
  {
    multigrid_->ApplyRaw(grad_dual, inner);
  }
  out.noalias() = level_->grad.transpose() * inner;
}

TaggedVector AuxSpacePreconditioner::Apply(const TaggedVector &u) const
{
  return AsMap()(u);
}

LinearMap AuxSpacePreconditioner::AsMap() const
{
  return LinearMap(level_->Tag(Space::S, Rep::Coefficient), Size(),
                   level_->Tag(Space::S, Rep::Dual), Size(),
                   [this](const Eigen::VectorXd &x, Eigen::VectorXd &y) { ApplyRaw(x, y); });
}

ExactAuxSpectrum::ExactAuxSpectrum(const AssembledLevel &level, const SpectralPair &lambda,
                                   const SpectralPair &laplace)
  : lambda_eigs_(lambda.Eigenvalues()), laplace_eigs_(laplace.Eigenvalues())
{
  Require(lambda.Size() == level.NumV() && laplace.Size() == level.NumS(),
          "ExactAuxSpectrum: spectra do not match the level");
  const Eigen::MatrixXd grad_psi = level.grad * laplace.Vectors();
  coupling_ = dense::TransposeTimes(lambda.Vectors(), grad_psi);
}

Eigen::VectorXd ExactAuxSpectrum::Eigenvalues(double s) const
{
  // In the M_S-orthonormal eigenbasis Psi of A_h the system A_h^s (as a
  // dual -> coefficient map) is diag(mu^s), and B becomes C^T diag(l^{-(1+s)}) C
  // with C = Phi^T D Psi. The preconditioned spectrum is that of
  // F^T F, F = diag(l^{-(1+s)/2}) C diag(mu^{s/2}).
  RequireExponent(s);
  const Eigen::VectorXd left = lambda_eigs_.array().pow(-0.5 * (1.0 + s)).matrix();
  const Eigen::VectorXd right = laplace_eigs_.array().pow(0.5 * s).matrix();
  const Eigen::MatrixXd f = left.asDiagonal() * coupling_ * right.asDiagonal();
  return SymmetricEigenvalues(dense::ColumnGram(f));
}

double ExactAuxSpectrum::Condition(double s) const
{
  const Eigen::VectorXd eig = Eigenvalues(s);
  return eig[eig.size() - 1] / eig[0];
}

double ExactCondition(const AssembledLevel &level, const SpectralPair &lambda,
                      const SpectralPair &laplace, double s)
{
  return ExactAuxSpectrum(level, lambda, laplace).Condition(s);
}

}  // namespace fracprec
