#ifndef FRACPREC_VERIFY_HPP
#define FRACPREC_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fracprec/amg.hpp"
#include "fracprec/fem.hpp"

namespace fracprec
{

// Outcome of one operator inequality or identity check. Inequalities are
// tested as eigenvalue statements: the worst violation is the most negative
// eigenvalue of the difference (or the excess over a pencil bound), scaled by
// the spectral radius of the operators involved. Identities report minus the
// relative residual.
struct InequalityReport
{
  std::string name;
  std::vector<double> grid;
  int trials = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> measured;

  void Record(double violation) { worst_violation = std::min(worst_violation, violation); }
  void Finish() { pass = worst_violation >= -tolerance; }
};

std::vector<double> UnitGrid(int steps = 10);

struct MatrixCheckOptions
{
  int trials = 200;
  int max_dim = 40;
  std::vector<double> grid = UnitGrid();
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
};

// T^T A^s T <= (T^T A T)^s for contractions T between spaces of different
// dimension and positive semidefinite A.
InequalityReport CheckJensen(const MatrixCheckOptions &options);

// A <= B implies A^s <= B^s for s in [0, 1].
InequalityReport CheckLoewnerHeinz(const MatrixCheckOptions &options);

// <Lambda_k^s P tau, P tau> <= <Lambda_{k-1}^s tau, tau> on every pair of
// consecutive levels, the adjoint form <Lambda_k^s P^s_k tau, P^s_k tau> <=
// <Lambda_h^s tau, tau>, and the failure of P^s_{k,k-1} to be a projection
// for s in (0, 1).
InequalityReport CheckNoninheritance(const Discretization &disc, const std::vector<double> &grid,
                                     double tolerance = 1e-9);

// Pencil (D^T Lambda^{-(1-t)} D, A_h^t) has its spectrum in [beta^{2(1-t)}, 1].
InequalityReport CheckAuxBounds(const AssembledLevel &level, const std::vector<double> &grid,
                                double tolerance = 1e-9);

// Lambda^s is the identity on curl C_h and acts as (I + A_h)^s on grad_h S_h.
InequalityReport CheckHelmholtzInvariance(const AssembledLevel &level,
                                          const std::vector<double> &grid,
                                          double tolerance = 1e-9);

// Lambda_k^s P^s_k = Q_k Lambda_h^s with P^s_k composed from two-level maps.
InequalityReport CheckProjectionIdentity(const Discretization &disc,
                                         const std::vector<double> &grid,
                                         double tolerance = 1e-10);

// Smoother upper bound R^s_k <= K0^{1-s} K1^s Lambda_k^{-s}, with K0 and K1
// the measured s = 0 and s = 1 constants, on every level above the coarsest.
InequalityReport CheckSmootherUpperBound(const MultigridData &data,
                                         const std::vector<double> &grid,
                                         double tolerance = 1e-8);

// Largest eigenvalue of the pencil ((R^s_k)^{-1}, Lambda_k^s) restricted to
// the Lambda_k^s-orthogonal complement of V_{k-1}: the stable decomposition
// constant of the smoother on level k.
double MeasureStableDecomposition(const MultigridData &data, int k, double s);

// Fractional power consistency on one level: semigroup composition and
// round trips between the dual and coefficient realizations.
InequalityReport CheckFractionalCalculus(const AssembledLevel &level,
                                         const std::vector<double> &grid, std::uint64_t seed,
                                         double tolerance = 1e-10);

void WriteReports(std::ostream &out, const std::vector<InequalityReport> &reports, bool csv);

}  // namespace fracprec

#endif  // FRACPREC_VERIFY_HPP
