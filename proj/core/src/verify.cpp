#include "fracprec/verify.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "fracprec/errors.hpp"
#include "fracprec/spectral.hpp"

namespace fracprec
{

std::vector<double> UnitGrid(int steps)
{
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i)
  {
    grid.push_back(static_cast<double>(i) / steps);
  }
  return grid;
}

namespace
{

using Rng = std::mt19937_64;

Eigen::MatrixXd Gaussian(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
  {
    for (Eigen::Index i = 0; i < rows; ++i)
    {
      g(i, j) = normal(rng);
    }
  }
  return g;
}

Eigen::MatrixXd RandomOrthogonal(Eigen::Index n, Rng &rng)
{
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Gaussian(n, n, rng));
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

// Symmetric positive semidefinite matrix with a known spectrum. Roughly one
// trial in four has exact zero eigenvalues.
struct KnownSpectrum
{
  Eigen::MatrixXd basis;
  Eigen::VectorXd values;

  Eigen::MatrixXd Power(double s) const
  {
    Eigen::VectorXd p(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i)
    {
      p[i] = std::pow(values[i], s);
    }
    return basis * p.asDiagonal() * basis.transpose();
  }
};

KnownSpectrum RandomSemidefinite(Eigen::Index n, Rng &rng)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  const bool singular = unit(rng) < 0.25;
  KnownSpectrum a{RandomOrthogonal(n, rng), Eigen::VectorXd(n)};
  const double scale = std::pow(10.0, log_scale(rng));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    a.values[i] = (singular && unit(rng) < 0.3) ? 0.0 : scale * std::pow(10.0, log_scale(rng));
  }
  return a;
}

// Contraction T: R^cols -> R^rows with singular values in [0, 1]; the largest
// equals 1 in half of the trials.
Eigen::MatrixXd RandomContraction(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index k = std::min(rows, cols);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(rows, cols);
  const bool tight = unit(rng) < 0.5;
  for (Eigen::Index i = 0; i < k; ++i)
  {
    sigma(i, i) = (tight && i == 0) ? 1.0 : unit(rng);
  }
  return RandomOrthogonal(rows, rng) * sigma * RandomOrthogonal(cols, rng).transpose();
}

double SpectralRadius(const Eigen::MatrixXd &sym)
{
  const Eigen::VectorXd w = SymmetricEigenvalues(sym);
  return std::max(std::abs(w[0]), std::abs(w[w.size() - 1]));
}

// Smallest eigenvalue of (upper - lower), relative to the larger spectral
// radius of the two sides.
double ScaledMinDifference(const Eigen::MatrixXd &upper, const Eigen::MatrixXd &lower)
{
  const Eigen::MatrixXd diff = upper - lower;
  const Eigen::MatrixXd sym = 0.5 * (diff + diff.transpose());
  const double scale = std::max({SpectralRadius(upper), SpectralRadius(lower), 1e-300});
  return SymmetricEigenvalues(sym)[0] / scale;
}

double RelativeResidual(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b)
{
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

Eigen::MatrixXd Symmetrized(const Eigen::MatrixXd &m) { return 0.5 * (m + m.transpose()); }

}  // namespace

InequalityReport CheckJensen(const MatrixCheckOptions &options)
{
  InequalityReport report;
  report.name = "jensen";
  report.grid = options.grid;
  report.tolerance = options.tolerance;
  Rng rng(options.seed);
  std::uniform_int_distribution<int> dim(1, options.max_dim);
  for (int trial = 0; trial < options.trials; ++trial)
  {
    const int rows = dim(rng);
    const int cols = dim(rng);
    const Eigen::MatrixXd t = RandomContraction(rows, cols, rng);
    const KnownSpectrum a = RandomSemidefinite(rows, rng);
    const Eigen::MatrixXd compressed = Symmetrized(t.transpose() * a.Power(1.0) * t);
    for (double s : options.grid)
    {
      const Eigen::MatrixXd lhs = Symmetrized(t.transpose() * a.Power(s) * t);
      report.Record(ScaledMinDifference(SymmetricPower(compressed, s), lhs));
    }
    ++report.trials;
  }
  report.Finish();
  return report;
}

InequalityReport CheckLoewnerHeinz(const MatrixCheckOptions &options)
{
  InequalityReport report;
  report.name = "loewner_heinz";
  report.grid = options.grid;
  report.tolerance = options.tolerance;
  Rng rng(options.seed + 1);
  std::uniform_int_distribution<int> dim(1, options.max_dim);
  for (int trial = 0; trial < options.trials; ++trial)
  {
    const int n = dim(rng);
    const int rank = std::uniform_int_distribution<int>(1, n)(rng);
    const KnownSpectrum a = RandomSemidefinite(n, rng);
    const Eigen::MatrixXd c = Gaussian(rank, n, rng) * std::sqrt(a.values.maxCoeff() + 1.0);
    const Eigen::MatrixXd b = Symmetrized(a.Power(1.0) + c.transpose() * c);
    for (double s : options.grid)
    {
      report.Record(ScaledMinDifference(SymmetricPower(b, s), a.Power(s)));
    }
    ++report.trials;
  }
  report.Finish();
  return report;
}

InequalityReport CheckNoninheritance(const Discretization &disc, const std::vector<double> &grid,
                                     double tolerance)
{
  InequalityReport report;
  report.name = "noninheritance";
  report.grid = grid;
  report.tolerance = tolerance;
  const int levels = disc.NumLevels();
  std::vector<SpectralPair> spectra;
  for (int k = 0; k < levels; ++k)
  {
    spectra.push_back(LambdaSpectrum(disc.levels[k]));
  }
  // chain[k] prolongs level k to the finest level.
  std::vector<Eigen::MatrixXd> chain(levels);
  chain[levels - 1] = Eigen::MatrixXd::Identity(disc.Finest().NumV(), disc.Finest().NumV());
  for (int k = levels - 2; k >= 0; --k)
  {
    chain[k] = chain[k + 1] * disc.prolongations[k].v;
  }

  double interior_defect = 0.0;
  double endpoint_defect = 0.0;
  for (double s : grid)
  {
    std::vector<Eigen::MatrixXd> forms;
    for (int k = 0; k < levels; ++k)
    {
      forms.push_back(spectra[k].DualFormMatrix(s));
    }
    for (int k = 1; k < levels; ++k)
    {
      const Eigen::MatrixXd p = Eigen::MatrixXd(disc.prolongations[k - 1].v);
      const Eigen::MatrixXd restricted = Symmetrized(p.transpose() * forms[k] * p);
      report.Record(ScaledMinDifference(forms[k - 1], restricted));

      // P^s_{k,k-1} = (Lambda_{k-1}^s)^{-1} P^T Lambda_k^s; its defect as a
      // projection onto V_{k-1}.
      const Eigen::MatrixXd two_level =
          forms[k - 1].ldlt().solve(p.transpose() * forms[k]);
      const Eigen::Index nc = p.cols();
      const double defect =
          (two_level * p - Eigen::MatrixXd::Identity(nc, nc)).norm() / std::sqrt(double(nc));
      if (s == 0.0 || s == 1.0)
      {
        endpoint_defect = std::max(endpoint_defect, defect);
      }
      else
      {
        interior_defect = interior_defect == 0.0 ? defect : std::min(interior_defect, defect);
      }
    }
    // Adjoint form through the full chain: L_J C L_k^{-1} C^T L_J <= L_J.
    for (int k = 0; k + 1 < levels; ++k)
    {
      const Eigen::MatrixXd cl = forms[levels - 1] * chain[k];
      const Eigen::MatrixXd lower = Symmetrized(cl * forms[k].ldlt().solve(cl.transpose()));
      report.Record(ScaledMinDifference(forms[levels - 1], lower));
    }
  }
  report.measured.emplace_back("projection_defect_endpoints", endpoint_defect);
  report.measured.emplace_back("projection_defect_interior_min", interior_defect);
  report.trials = static_cast<int>(grid.size()) * (levels - 1);
  report.Finish();
  // s = 0 and s = 1 give projections; interior exponents must not.
  const bool has_interior =
      std::any_of(grid.begin(), grid.end(), [](double s) { return s > 0.0 && s < 1.0; });
  if (endpoint_defect > tolerance || (has_interior && interior_defect < 1e-6))
  {
    report.pass = false;
  }
  return report;
}

InequalityReport CheckAuxBounds(const AssembledLevel &level, const std::vector<double> &grid,
                                double tolerance)
{
  InequalityReport report;
  report.name = "aux_bounds";
  report.grid = grid;
  report.tolerance = tolerance;
  const SpectralPair lambda = LambdaSpectrum(level);
  const SpectralPair laplace = LaplaceSpectrum(level);
  const double beta = InfSupBeta(level);
  report.measured.emplace_back("beta^-2", 1.0 / (beta * beta));
  const Eigen::MatrixXd grad = Eigen::MatrixXd(level.grad);
  for (double t : grid)
  {
    const Eigen::MatrixXd upper = Symmetrized(grad.transpose() * lambda.Matrix(1.0 - t) * grad);
    const Eigen::MatrixXd lower = laplace.DualFormMatrix(t);
    const Eigen::VectorXd w = GeneralizedEigenvalues(upper, lower);
    const double floor = std::pow(beta, 2.0 * (1.0 - t));
    report.Record(std::min(w[0] - floor, 1.0 - w[w.size() - 1]));
    ++report.trials;
  }
  report.Finish();
  return report;
}

InequalityReport CheckHelmholtzInvariance(const AssembledLevel &level,
                                          const std::vector<double> &grid, double tolerance)
{
  InequalityReport report;
  report.name = "helmholtz_invariance";
  report.grid = grid;
  report.tolerance = tolerance;
  const SpectralPair lambda = LambdaSpectrum(level);
  const SpectralPair laplace = LaplaceSpectrum(level);

  Eigen::SimplicialLDLT<SparseMatrix> mass(level.mass_v);
  const Eigen::MatrixXd curl = Eigen::MatrixXd(level.curl_coefficients);
  const Eigen::MatrixXd grad = mass.solve(Eigen::MatrixXd(level.grad));  // M_V^{-1} D
  const Eigen::MatrixXd mv = Eigen::MatrixXd(level.mass_v);
  const Eigen::MatrixXd ms = Eigen::MatrixXd(level.mass_s);

  // Eigenvalue 1 of (Lambda, M_V) has multiplicity dim curl C_h = N_C - 1.
  const Eigen::VectorXd &mu = lambda.Eigenvalues();
  const int ones = static_cast<int>(((mu.array() - 1.0).abs() < 1e-9).count());
  report.measured.emplace_back("unit_eigenvalue_multiplicity", ones);
  report.measured.emplace_back("dim_curl_space", level.NumC() - 1);
  report.Record(-(mu[0] < 1.0 - 1e-9 ? 1.0 : 0.0));
  report.Record(-(ones == level.NumC() - 1 ? 0.0 : 1.0));

  for (double s : grid)
  {
    // Lambda^s on coefficients: Phi diag(mu^s) Phi^T M_V.
    const Eigen::MatrixXd power = lambda.Matrix(-s) * mv;
    report.Record(-RelativeResidual(power * curl, curl));
    Eigen::VectorXd shifted = (laplace.Eigenvalues().array() + 1.0).pow(s).matrix();
    const Eigen::MatrixXd shifted_power =
        laplace.Vectors() * shifted.asDiagonal() * laplace.Vectors().transpose() * ms;
    report.Record(-RelativeResidual(power * grad, grad * shifted_power));
    ++report.trials;
  }
  report.Finish();
  return report;
}

InequalityReport CheckProjectionIdentity(const Discretization &disc,
                                         const std::vector<double> &grid, double tolerance)
{
  InequalityReport report;
  report.name = "projection_identity";
  report.grid = grid;
  report.tolerance = tolerance;
  const int levels = disc.NumLevels();
  std::vector<SpectralPair> spectra;
  for (int k = 0; k < levels; ++k)
  {
    spectra.push_back(LambdaSpectrum(disc.levels[k]));
  }
  for (double s : grid)
  {
    std::vector<Eigen::MatrixXd> forms;
    for (int k = 0; k < levels; ++k)
    {
      forms.push_back(spectra[k].DualFormMatrix(s));
    }
    // P^s_k composed from two-level maps, and Q_k Lambda_h^s via the chain.
    Eigen::MatrixXd composed = Eigen::MatrixXd::Identity(disc.Finest().NumV(), disc.Finest().NumV());
    Eigen::MatrixXd restricted = forms[levels - 1];
    for (int k = levels - 2; k >= 0; --k)
    {
      const Eigen::MatrixXd p = Eigen::MatrixXd(disc.prolongations[k].v);
      const Eigen::MatrixXd two_level = forms[k].ldlt().solve(p.transpose() * forms[k + 1]);
      composed = two_level * composed;
      restricted = p.transpose() * restricted;
      report.Record(-RelativeResidual(forms[k] * composed, restricted));
      ++report.trials;
    }
  }
  report.Finish();
  return report;
}

InequalityReport CheckSmootherUpperBound(const MultigridData &data,
                                         const std::vector<double> &grid, double tolerance)
{
  InequalityReport report;
  report.name = "smoother_upper_bound";
  report.grid = grid;
  report.tolerance = tolerance;
  const AdditiveMultigrid r0(data, 0.0);
  const AdditiveMultigrid r1(data, 1.0);
  for (int k = 1; k < data.NumLevels(); ++k)
  {
    const SpectralPair lambda = LambdaSpectrum(data.Disc().levels[k]);
    auto top = [&](const AdditiveMultigrid &r, double s)
    {
      const Eigen::VectorXd w =
          GeneralizedEigenvalues(Symmetrized(r.SmootherMatrix(k)), lambda.Matrix(s));
      return w[w.size() - 1];
    };
    const double k0 = top(r0, 0.0);
    const double k1 = top(r1, 1.0);
    const std::string suffix = "_level" + std::to_string(k);
    report.measured.emplace_back("K0" + suffix, k0);
    report.measured.emplace_back("K1" + suffix, k1);
    for (double s : grid)
    {
      const AdditiveMultigrid rs(data, s);
      const double bound = std::pow(k0, 1.0 - s) * std::pow(k1, s);
      report.Record(bound - top(rs, s));
      ++report.trials;
    }
  }
  report.Finish();
  return report;
}

double MeasureStableDecomposition(const MultigridData &data, int k, double s)
{
  Require(k >= 1 && k < data.NumLevels(), "MeasureStableDecomposition: level out of range");
  const Discretization &disc = data.Disc();
  const SpectralPair lambda = LambdaSpectrum(disc.levels[k]);
  const Eigen::MatrixXd form = lambda.DualFormMatrix(s);
  const Eigen::MatrixXd p = Eigen::MatrixXd(disc.prolongations[k - 1].v);

  // Basis of the Lambda^s-orthogonal complement of V_{k-1}: kernel of P^T L^s.
  const Eigen::MatrixXd constraint = p.transpose() * form;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraint, Eigen::ComputeFullV);
  const Eigen::Index rank = p.cols();
  const Eigen::MatrixXd z = svd.matrixV().rightCols(constraint.cols() - rank);

  const AdditiveMultigrid r(data, s);
  const Eigen::MatrixXd smoother = Symmetrized(r.SmootherMatrix(k));
  const Eigen::MatrixXd inverse = Symmetrized(smoother.inverse());
  const Eigen::VectorXd w = GeneralizedEigenvalues(Symmetrized(z.transpose() * inverse * z),
                                                   Symmetrized(z.transpose() * form * z));
  return w[w.size() - 1];
}

InequalityReport CheckFractionalCalculus(const AssembledLevel &level,
                                         const std::vector<double> &grid, std::uint64_t seed,
                                         double tolerance)
{
  InequalityReport report;
  report.name = "fractional_calculus";
  report.grid = grid;
  report.tolerance = tolerance;
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_vector = [&](Eigen::Index n)
  {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
      v[i] = unit(rng);
    }
    return v;
  };
  auto rel = [](const Eigen::VectorXd &a, const Eigen::VectorXd &b)
  { return (a - b).norm() / std::max(b.norm(), 1e-300); };

  const SpectralPair spectra[] = {LambdaSpectrum(level), LaplaceSpectrum(level)};
  const SparseMatrix *stiffness[] = {&level.lambda, nullptr};
  const Eigen::MatrixXd laplace = LaplaceDualForm(level);
  for (int which = 0; which < 2; ++which)
  {
    const SpectralPair &sp = spectra[which];
    const Eigen::Index n = sp.Size();
    const Eigen::VectorXd d = random_vector(n);
    const Eigen::VectorXd c = random_vector(n);

    // Endpoints against direct solves.
    const Eigen::VectorXd mass_solve = Eigen::MatrixXd(sp.Mass()).ldlt().solve(d);
    report.Record(-rel(sp.Apply(0.0, d), mass_solve));
    const Eigen::MatrixXd a =
        which == 0 ? Eigen::MatrixXd(*stiffness[0]) : laplace;
    report.Record(-rel(sp.Apply(1.0, d), a.ldlt().solve(d)));
    report.Record(-rel(sp.ApplyDualForm(1.0, c), a * c));
    report.Record(-rel(sp.ApplyDualForm(0.0, c), sp.Mass() * c));

    for (double s1 : grid)
    {
      report.Record(-rel(sp.Apply(s1, sp.ApplyDualForm(s1, c)), c));
      for (double s2 : grid)
      {
        // T^{-s2} (M T^{-s1} d) = T^{-(s1 + s2)} d
        const Eigen::VectorXd twice = sp.Apply(s2, sp.Mass() * sp.Apply(s1, d));
        report.Record(-rel(twice, sp.Apply(s1 + s2, d)));
        ++report.trials;
      }
    }
  }
  report.Finish();
  return report;
}

void WriteReports(std::ostream &out, const std::vector<InequalityReport> &reports, bool csv)
{
  std::ostringstream buf;
  buf << std::setprecision(6);
  if (csv)
  {
    buf << "check,trials,worst_violation,tolerance,pass\n";
    for (const auto &r : reports)
    {
      buf << r.name << "," << r.trials << "," << r.worst_violation << "," << r.tolerance << ","
          << (r.pass ? "pass" : "FAIL") << "\n";
    }
    for (const auto &r : reports)
    {
      for (const auto &[key, value] : r.measured)
      {
        buf << r.name << ":" << key << ",," << value << ",,\n";
      }
    }
  }
  else
  {
    buf << "| check | trials | worst violation | tolerance | result |\n";
    buf << "|---|---|---|---|---|\n";
    for (const auto &r : reports)
    {
      buf << "| " << r.name << " | " << r.trials << " | " << r.worst_violation << " | "
          << r.tolerance << " | " << (r.pass ? "pass" : "FAIL") << " |\n";
    }
    bool any = false;
    for (const auto &r : reports)
    {
      for (const auto &[key, value] : r.measured)
      {
        if (!any)
        {
          buf << "\nmeasured constants:\n";
          any = true;
        }
        buf << "  " << r.name << "." << key << " = " << value << "\n";
      }
    }
  }
  out << buf.str();
}

}  // namespace fracprec
