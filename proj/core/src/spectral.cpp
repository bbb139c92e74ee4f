#include "fracprec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <lapacke.h>

#include "dense_kernels.hpp"
#include "fracprec/errors.hpp"

namespace fracprec
{

SpectralPair::SpectralPair(Eigen::VectorXd eigenvalues, Eigen::MatrixXd vectors,
                           SparseMatrix mass, Space space, int level)
  : eigenvalues_(std::move(eigenvalues)), vectors_(std::move(vectors)), mass_(std::move(mass)),
    space_(space), level_(level)
{
  Require(vectors_.rows() == eigenvalues_.size() && vectors_.cols() == eigenvalues_.size(),
          "SpectralPair: eigenvector matrix has the wrong shape");
  Require(mass_.rows() == eigenvalues_.size(), "SpectralPair: mass has the wrong size");
}

Eigen::VectorXd SpectralPair::Powers(double exponent) const
{
  return eigenvalues_.array().pow(exponent).matrix();
}

Eigen::VectorXd SpectralPair::Apply(double s, const Eigen::VectorXd &dual) const
{
  Eigen::VectorXd modal = vectors_.transpose() * dual;
  modal.array() *= Powers(-s).array();
  return vectors_ * modal;
}

Eigen::VectorXd SpectralPair::ApplyDualForm(double s, const Eigen::VectorXd &coefficients) const
{
  const Eigen::VectorXd mc = mass_ * coefficients;
  Eigen::VectorXd modal = vectors_.transpose() * mc;
  modal.array() *= Powers(s).array();
  const Eigen::VectorXd back = vectors_ * modal;
  return mass_ * back;
}

Eigen::MatrixXd SpectralPair::Matrix(double s) const
{
  return dense::RowGram(vectors_ * Powers(-0.5 * s).asDiagonal());
}

Eigen::MatrixXd SpectralPair::DualFormMatrix(double s) const
{
  return dense::RowGram((mass_ * vectors_) * Powers(0.5 * s).asDiagonal());
}

namespace
{

bool IsDiagonal(const SparseMatrix &m)
{
  for (int col = 0; col < m.outerSize(); ++col)
  {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it)
    {
      if (it.row() != it.col() && it.value() != 0.0)
      {
        return false;
      }
    }
  }
  return true;
}

// Symmetric eigensolve in place: on return `a` holds the eigenvectors.
Eigen::VectorXd Syevd(Eigen::MatrixXd &a, char jobz)
{
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  if (n == 0)
  {
    return w;
  }
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
  if (info != 0)
  {
    throw NumericalError("dsyevd failed with info = " + std::to_string(info));
  }
  return w;
}

double ColumnSumNorm(const SparseMatrix &m)
{
  double best = 0.0;
  for (int col = 0; col < m.outerSize(); ++col)
  {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(m, col); it; ++it)
    {
      sum += std::abs(it.value());
    }
    best = std::max(best, sum);
  }
  return best;
}

bool ResidualsAcceptable(const Eigen::MatrixXd &a, const SparseMatrix &m,
                         const Eigen::VectorXd &lambda, const Eigen::MatrixXd &phi,
                         const EigOptions &options)
{
  const Eigen::Index n = lambda.size();
  if (n == 0)
  {
    return true;
  }
  const double scale = options.residual_tolerance * std::max(std::abs(lambda[n - 1]), 1e-300) *
                       ColumnSumNorm(m);
  const Eigen::Index checked = std::min(n, options.max_checked_columns);
  std::vector<Eigen::Index> cols(checked);
  for (Eigen::Index c = 0; c < checked; ++c)
  {
    cols[c] = checked == n ? c : (c * (n - 1)) / std::max<Eigen::Index>(checked - 1, 1);
  }
  const Eigen::MatrixXd sample = phi(Eigen::all, cols);
  const Eigen::MatrixXd r = dense::TransposeTimes(a, sample) -
                            (m * sample) * lambda(cols).asDiagonal();
  for (Eigen::Index c = 0; c < checked; ++c)
  {
    if (r.col(c).norm() > scale * sample.col(c).norm())
    {
      return false;
    }
  }
  return true;
}

// Rayleigh-Ritz in span(phi) after M-orthonormalization.
void Refine(const Eigen::MatrixXd &a, const SparseMatrix &m, Eigen::VectorXd &lambda,
            Eigen::MatrixXd &phi)
{
  const Eigen::MatrixXd gram = phi.transpose() * (m * phi);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
  {
    throw NumericalError("GeneralizedEig: eigenvectors lost linear independence");
  }
  Eigen::MatrixXd q = llt.matrixU().solve<Eigen::OnTheRight>(phi);
  Eigen::MatrixXd h = q.transpose() * a * q;
  h = 0.5 * (h + h.transpose()).eval();
  lambda = Syevd(h, 'V');
  phi = q * h;
}

}  // namespace

SpectralPair GeneralizedEig(const Eigen::MatrixXd &a, const SparseMatrix &m, Space space,
                            int level, const EigOptions &options)
{
  Require(a.rows() == a.cols(), "GeneralizedEig: A must be square");
  Require(m.rows() == a.rows() && m.cols() == a.cols(), "GeneralizedEig: size mismatch");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd lambda(n);
  Eigen::MatrixXd phi;

  if (IsDiagonal(m))
  {
    const Eigen::VectorXd d = Eigen::VectorXd(m.diagonal());
    if (n > 0 && d.minCoeff() <= 0.0)
    {
      throw NumericalError("GeneralizedEig: indefinite mass matrix");
    }
    const Eigen::VectorXd inv_sqrt = d.array().rsqrt().matrix();
    phi = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
    lambda = Syevd(phi, 'V');
    phi = inv_sqrt.asDiagonal() * phi;
  }
  else
  {
    phi = a;
    Eigen::MatrixXd b = Eigen::MatrixXd(m);
    if (n > 0)
    {
      const lapack_int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'V', 'L', n, phi.data(), n,
                                             b.data(), n, lambda.data());
      if (info > n)
      {
        throw NumericalError("GeneralizedEig: indefinite mass matrix");
      }
      if (info != 0)
      {
        throw NumericalError("dsygvd failed with info = " + std::to_string(info));
      }
    }
  }

  if (!ResidualsAcceptable(a, m, lambda, phi, options))
  {
    Refine(a, m, lambda, phi);
    if (!ResidualsAcceptable(a, m, lambda, phi, options))
    {
      throw NumericalError("GeneralizedEig: eigenpair residuals above tolerance");
    }
  }
  return SpectralPair(std::move(lambda), std::move(phi), m, space, level);
}

SpectralPair GeneralizedEig(const Eigen::MatrixXd &a, const Eigen::MatrixXd &m, Space space,
                            int level, const EigOptions &options)
{
  return GeneralizedEig(a, SparseMatrix(m.sparseView()), space, level, options);
}

Eigen::VectorXd GeneralizedEigenvalues(const Eigen::MatrixXd &a, const Eigen::MatrixXd &m)
{
  Require(a.rows() == a.cols() && m.rows() == a.rows() && m.cols() == a.cols(),
          "GeneralizedEigenvalues: size mismatch");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd aa = a;
  Eigen::MatrixXd bb = m;
  Eigen::VectorXd w(n);
  if (n == 0)
  {
    return w;
  }
  const lapack_int info =
      LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'N', 'L', n, aa.data(), n, bb.data(), n, w.data());
  if (info > n)
  {
    throw NumericalError("GeneralizedEigenvalues: second matrix is not positive definite");
  }
  if (info != 0)
  {
    throw NumericalError("dsygvd failed with info = " + std::to_string(info));
  }
  return w;
}

Eigen::VectorXd SymmetricEigenvalues(const Eigen::MatrixXd &a)
{
  Require(a.rows() == a.cols(), "SymmetricEigenvalues: matrix must be square");
  Eigen::MatrixXd copy = a;
  return Syevd(copy, 'N');
}

TaggedVector FracApply(const SpectralPair &sp, double s, const TaggedVector &dual)
{
  return FracMap(sp, s)(dual);
}

TaggedVector FracApplyDualForm(const SpectralPair &sp, double s, const TaggedVector &coefficients)
{
  return FracDualFormMap(sp, s)(coefficients);
}

LinearMap FracMap(const SpectralPair &sp, double s)
{
  return LinearMap(sp.Tag(Rep::Dual), sp.Size(), sp.Tag(Rep::Coefficient), sp.Size(),
                   [&sp, s](const Eigen::VectorXd &x, Eigen::VectorXd &y) { y = sp.Apply(s, x); });
}

LinearMap FracDualFormMap(const SpectralPair &sp, double s)
{
  return LinearMap(sp.Tag(Rep::Coefficient), sp.Size(), sp.Tag(Rep::Dual), sp.Size(),
                   [&sp, s](const Eigen::VectorXd &x, Eigen::VectorXd &y)
                   { y = sp.ApplyDualForm(s, x); });
}

SpectralPair LambdaSpectrum(const AssembledLevel &a)
{
  return GeneralizedEig(Eigen::MatrixXd(a.lambda), a.mass_v, Space::V, a.level);
}

SpectralPair LaplaceSpectrum(const AssembledLevel &a)
{
  return GeneralizedEig(LaplaceDualForm(a), a.mass_s, Space::S, a.level);
}

double InfSupBeta(const AssembledLevel &a)
{
  const Eigen::MatrixXd form = InverseLambdaGradientForm(a);
  const Eigen::VectorXd d = Eigen::VectorXd(a.mass_s.diagonal());
  const Eigen::VectorXd inv_sqrt = d.array().rsqrt().matrix();
  Eigen::MatrixXd scaled = inv_sqrt.asDiagonal() * form * inv_sqrt.asDiagonal();
  const lapack_int n = static_cast<lapack_int>(scaled.rows());
  lapack_int found = 0;
  double w[1];
  double z[1];
  std::vector<lapack_int> ifail(n);
  const lapack_int info =
      LAPACKE_dsyevx(LAPACK_COL_MAJOR, 'N', 'I', 'L', n, scaled.data(), n, 0.0, 0.0, 1, 1,
                     2.0 * LAPACKE_dlamch('S'), &found, w, z, 1, ifail.data());
  if (info != 0 || found != 1)
  {
    throw NumericalError("InfSupBeta: dsyevx failed with info = " + std::to_string(info));
  }
  if (w[0] <= 0.0)
  {
    throw NumericalError("InfSupBeta: discrete gradient is not injective");
  }
  return std::sqrt(w[0]);
}

Eigen::MatrixXd SymmetricPower(const Eigen::MatrixXd &a, double s)
{
  Require(a.rows() == a.cols(), "SymmetricPower: matrix must be square");
  Eigen::MatrixXd v = 0.5 * (a + a.transpose());
  const Eigen::VectorXd w = Syevd(v, 'V');
  Eigen::VectorXd p(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
  {
    p[i] = std::pow(std::max(w[i], 0.0), s);
  }
  return v * p.asDiagonal() * v.transpose();
}

}  // namespace fracprec
