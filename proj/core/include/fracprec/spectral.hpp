#ifndef FRACPREC_SPECTRAL_HPP
#define FRACPREC_SPECTRAL_HPP

#include <Eigen/Dense>

#include "fracprec/fem.hpp"
#include "fracprec/tagged_vector.hpp"

namespace fracprec
{

// Eigenpairs of a symmetric-definite pencil A phi = lambda M phi, with
// ascending eigenvalues and M-orthonormal eigenvectors (Phi^T M Phi = I).
//
// For the operator T = M^{-1} A this gives every real power of T:
//   T^{-s} as a dual -> coefficient map:  Phi diag(lambda^{-s}) Phi^T
//   T^{s}  as a coefficient -> dual map:  M Phi diag(lambda^{s}) Phi^T M
// The two are mutually inverse for the same s, and s = 0 gives M^{-1} and M.
class SpectralPair
{
public:
  SpectralPair(Eigen::VectorXd eigenvalues, Eigen::MatrixXd vectors, SparseMatrix mass,
               Space space = Space::Euclidean, int level = 0);

  const Eigen::VectorXd &Eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd &Vectors() const { return vectors_; }
  const SparseMatrix &Mass() const { return mass_; }
  Eigen::Index Size() const { return eigenvalues_.size(); }
  double MinEigenvalue() const { return eigenvalues_[0]; }
  double MaxEigenvalue() const { return eigenvalues_[Size() - 1]; }
  Space SpaceKind() const { return space_; }
  int Level() const { return level_; }

  VectorTag Tag(Rep rep) const { return {space_, level_, rep}; }

  // Phi diag(lambda^{-s}) Phi^T d
  Eigen::VectorXd Apply(double s, const Eigen::VectorXd &dual) const;
  // M Phi diag(lambda^{s}) Phi^T M c
  Eigen::VectorXd ApplyDualForm(double s, const Eigen::VectorXd &coefficients) const;

  Eigen::MatrixXd Matrix(double s) const;
  Eigen::MatrixXd DualFormMatrix(double s) const;

private:
  Eigen::VectorXd Powers(double exponent) const;

  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd vectors_;
  SparseMatrix mass_;
  Space space_;
  int level_;
};

struct EigOptions
{
  // Residual test ||A phi - lambda M phi|| <= tol * lambda_max * ||M||_1 * ||phi||.
  double residual_tolerance = 1e-10;
  // Columns checked; all of them when the pencil is at most this large,
  // otherwise an evenly spaced sample of this many.
  Eigen::Index max_checked_columns = 1024;
};

// Dense symmetric-definite generalized eigensolve (LAPACK dsygvd, or a
// diagonal scaling plus dsyevd when M is diagonal). Throws NumericalError when
// M is not positive definite.
SpectralPair GeneralizedEig(const Eigen::MatrixXd &a, const SparseMatrix &m,
                            Space space = Space::Euclidean, int level = 0,
                            const EigOptions &options = {});
SpectralPair GeneralizedEig(const Eigen::MatrixXd &a, const Eigen::MatrixXd &m,
                            Space space = Space::Euclidean, int level = 0,
                            const EigOptions &options = {});

// Eigenvalues only, ascending.
Eigen::VectorXd GeneralizedEigenvalues(const Eigen::MatrixXd &a, const Eigen::MatrixXd &m);
Eigen::VectorXd SymmetricEigenvalues(const Eigen::MatrixXd &a);

// Tagged realizations. FracApply takes a dual vector and returns
// coefficients; FracApplyDualForm goes the other way.
TaggedVector FracApply(const SpectralPair &sp, double s, const TaggedVector &dual);
TaggedVector FracApplyDualForm(const SpectralPair &sp, double s, const TaggedVector &coefficients);
LinearMap FracMap(const SpectralPair &sp, double s);
LinearMap FracDualFormMap(const SpectralPair &sp, double s);

// Pencil (Lambda, M_V) on V.
SpectralPair LambdaSpectrum(const AssembledLevel &a);
// Pencil (D^T M_V^{-1} D, M_S) on S: the discrete Laplacian.
SpectralPair LaplaceSpectrum(const AssembledLevel &a);

// Discrete inf-sup constant: beta^2 is the smallest eigenvalue of the pencil
// (D^T Lambda^{-1} D, M_S).
double InfSupBeta(const AssembledLevel &a);

// A^s for a symmetric positive semidefinite matrix in the Euclidean inner
// product. Negative eigenvalues from round-off are clamped to zero, and
// 0^0 = 1.
Eigen::MatrixXd SymmetricPower(const Eigen::MatrixXd &a, double s);

}  // namespace fracprec

#endif  // FRACPREC_SPECTRAL_HPP
