#ifndef FRACPREC_KRYLOV_HPP
#define FRACPREC_KRYLOV_HPP

#include <vector>

#include "fracprec/tagged_vector.hpp"

namespace fracprec
{

struct SolveReport
{
  int iterations = 0;
  // lambda_max / lambda_min of the Lanczos tridiagonal assembled from the CG
  // coefficients; 1 when no iteration was taken.
  double cond_estimate = 1.0;
  double lanczos_min = 1.0;
  double lanczos_max = 1.0;
  // <B r_k, r_k> / <B r_0, r_0>, starting with 1 for k = 0.
  std::vector<double> residual_history;
  bool converged = false;
};

struct PcgResult
{
  TaggedVector solution;
  SolveReport report;
};

// Preconditioned conjugate gradients in the duality pairing. `op` maps X to Y
// and `precond` maps Y back to X, where (X, Y) is (coefficient, dual) or
// (dual, coefficient) on one space and level. Stops when the relative
// preconditioned residual <B r_k, r_k> / <B r_0, r_0> drops to `tol` or after
// `max_iterations`. Throws NumericalError on non-positive curvature or a
// non-positive preconditioned residual.
PcgResult Pcg(const LinearMap &op, const LinearMap &precond, const TaggedVector &rhs,
              const TaggedVector &x0, double tol, int max_iterations);

// Extreme eigenvalues of the Lanczos tridiagonal built from CG scalars alpha_j
// (step lengths) and beta_j (residual ratios).
struct LanczosBounds
{
  double min = 1.0;
  double max = 1.0;
};
LanczosBounds LanczosExtremes(const std::vector<double> &alpha, const std::vector<double> &beta);

// lambda_max / lambda_min of the pencil (b, a), both symmetric maps with the
// same orientation, materialized column by column. `a` must be definite.
double PencilCondition(const LinearMap &b, const LinearMap &a);

}  // namespace fracprec

#endif  // FRACPREC_KRYLOV_HPP
