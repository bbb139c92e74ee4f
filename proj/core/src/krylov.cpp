#include "fracprec/krylov.hpp"

#include <cmath>
#include <string>

#include "fracprec/errors.hpp"
#include "fracprec/spectral.hpp"

namespace fracprec
{

LanczosBounds LanczosExtremes(const std::vector<double> &alpha, const std::vector<double> &beta)
{
  const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
  if (m == 0)
  {
    return {};
  }
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index j = 0; j < m; ++j)
  {
    diag[j] = 1.0 / alpha[j];
    if (j > 0)
    {
      diag[j] += beta[j - 1] / alpha[j - 1];
      off[j - 1] = std::sqrt(beta[j - 1]) / alpha[j - 1];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return {eig.eigenvalues()[0], eig.eigenvalues()[m - 1]};
}

PcgResult Pcg(const LinearMap &op, const LinearMap &precond, const TaggedVector &rhs,
              const TaggedVector &x0, double tol, int max_iterations)
{
  Require(op.Domain() == precond.Range() && op.Range() == precond.Domain(),
          "Pcg: preconditioner must map " + ToString(op.Range()) + " to " +
              ToString(op.Domain()));
  Require(op.Domain().space == op.Range().space && op.Domain().level == op.Range().level &&
              op.Domain().rep != op.Range().rep,
          "Pcg: operator must map between the two representations of one space");
  Require(tol > 0.0, "Pcg: tolerance must be positive");
  Require(max_iterations >= 0, "Pcg: negative iteration limit");

  TaggedVector x = x0;
  TaggedVector r = rhs - op(x);
  TaggedVector z = precond(r);
  double rz = Pairing(z, r);

  PcgResult result{x, {}};
  SolveReport &report = result.report;
  report.residual_history.push_back(1.0);
  if (rz == 0.0)
  {
    report.converged = true;
    return result;
  }
  if (!(rz > 0.0))
  {
    throw NumericalError("Pcg: preconditioner is not positive definite (<B r, r> = " +
                         std::to_string(rz) + ")");
  }
  const double rz0 = rz;

  std::vector<double> alphas;
  std::vector<double> betas;
  TaggedVector p = z;
  while (report.iterations < max_iterations)
  {
    const TaggedVector ap = op(p);
    const double curvature = Pairing(p, ap);
    if (!(curvature > 0.0))
    {
      throw NumericalError("Pcg: operator is not positive definite (<A p, p> = " +
                           std::to_string(curvature) + ")");
    }
    const double alpha = rz / curvature;
    x.Axpy(alpha, p);
    r.Axpy(-alpha, ap);
    z = precond(r);
    const double rz_next = Pairing(z, r);
    ++report.iterations;
    alphas.push_back(alpha);
    if (rz_next < 0.0)
    {
      throw NumericalError("Pcg: preconditioner is not positive definite (<B r, r> = " +
                           std::to_string(rz_next) + ")");
    }
    const double relative = rz_next / rz0;
    report.residual_history.push_back(relative);
    if (relative <= tol)
    {
      report.converged = true;
      break;
    }
    const double beta = rz_next / rz;
    betas.push_back(beta);
    p *= beta;
    p += z;
    rz = rz_next;
  }

  const LanczosBounds bounds = LanczosExtremes(alphas, betas);
  report.lanczos_min = bounds.min;
  report.lanczos_max = bounds.max;
  report.cond_estimate = bounds.max / bounds.min;
  result.solution = std::move(x);
  return result;
}

double PencilCondition(const LinearMap &b, const LinearMap &a)
{
  Require(b.Domain() == a.Domain() && b.Range() == a.Range(),
          "PencilCondition: maps must share orientation");
  Require(b.DomainSize() == a.DomainSize() && b.DomainSize() == b.RangeSize(),
          "PencilCondition: maps must be square and of equal size");
  Eigen::MatrixXd bm = b.Materialize();
  Eigen::MatrixXd am = a.Materialize();
  bm = 0.5 * (bm + bm.transpose()).eval();
  am = 0.5 * (am + am.transpose()).eval();
  const Eigen::VectorXd w = GeneralizedEigenvalues(bm, am);
  if (!(w[0] > 0.0))
  {
    throw NumericalError("PencilCondition: pencil is not definite");
  }
  return w[w.size() - 1] / w[0];
}

}  // namespace fracprec
