#ifndef FRACPREC_AUXPREC_HPP
#define FRACPREC_AUXPREC_HPP

#include <optional>

#include "fracprec/amg.hpp"
#include "fracprec/fem.hpp"
#include "fracprec/spectral.hpp"

namespace fracprec
{

// Preconditioner for A_h^s, s in [-1, 0], built from an H(div) map of
// exponent 1 + s:
//
//   B = D^T  Inner  D,    Inner ~ Lambda^{-(1+s)} (dual -> coefficient on V)
//
// B takes S coefficient vectors to S dual vectors, the opposite orientation of
// an ordinary preconditioner; the system it preconditions must therefore map
// duals to coefficients.
class AuxSpacePreconditioner
{
public:
  // Inner map is Lambda^{-(1+s)} realized exactly by the spectral pair of
  // (Lambda, M_V) on the same level. `level` and `lambda` must outlive this.
  static AuxSpacePreconditioner Exact(const AssembledLevel &level, const SpectralPair &lambda,
                                      double s);
  // Inner map is the additive multigrid preconditioner with exponent 1 + s on
  // the finest level of `data`.
  static AuxSpacePreconditioner Multigrid(const MultigridData &data, double s);

  double Exponent() const { return s_; }
  Eigen::Index Size() const { return level_->NumS(); }

  // (S, coefficient) -> (S, dual)
  TaggedVector Apply(const TaggedVector &u) const;
  void ApplyRaw(const Eigen::VectorXd &u, Eigen::VectorXd &out) const;
  LinearMap AsMap() const;

private:
  AuxSpacePreconditioner(const AssembledLevel &level, double s);

  const AssembledLevel *level_;
  double s_;
  const SpectralPair *exact_ = nullptr;
  std::optional<AdditiveMultigrid> multigrid_;
};

// Condition numbers of D^T Lambda^{-(1+s)} D preconditioning A_h^s, from the
// full spectra of (Lambda, M_V) and of the discrete Laplacian. The exponent
// independent product Phi^T D Psi is formed once.
class ExactAuxSpectrum
{
public:
  ExactAuxSpectrum(const AssembledLevel &level, const SpectralPair &lambda,
                   const SpectralPair &laplace);

  // All eigenvalues of the preconditioned operator, ascending.
  Eigen::VectorXd Eigenvalues(double s) const;
  double Condition(double s) const;

private:
  Eigen::VectorXd lambda_eigs_;
  Eigen::VectorXd laplace_eigs_;
  Eigen::MatrixXd coupling_;  // Phi^T D Psi, N_V x N_S
};

// One-shot convenience wrapper around ExactAuxSpectrum.
double ExactCondition(const AssembledLevel &level, const SpectralPair &lambda,
                      const SpectralPair &laplace, double s);

}  // namespace fracprec

#endif  // FRACPREC_AUXPREC_HPP
