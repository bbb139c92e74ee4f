// Acceptance suite: reproduces the three published tables and runs the
// property checks, printing one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "fracprec/auxprec.hpp"
#include "fracprec/experiments.hpp"
#include "fracprec/krylov.hpp"
#include "fracprec/spectral.hpp"
#include "fracprec/verify.hpp"

namespace
{

using namespace fracprec;

struct Reference
{
  int iterations;
  double cond;
};

// Rows s = 0.0, 0.1, ..., 1.0; columns N = 208, 800, 3136.
const Reference kTable1[11][3] = {
    {{20, 4.9}, {21, 4.9}, {21, 4.9}},    {{20, 4.6}, {21, 4.9}, {22, 5.2}},
    {{22, 5.6}, {24, 6.2}, {25, 6.8}},    {{24, 6.6}, {26, 7.5}, {27, 8.1}},
    {{26, 8.0}, {28, 8.7}, {29, 9.2}},    {{27, 9.2}, {30, 9.8}, {30, 10.3}},
    {{29, 10.4}, {31, 10.9}, {31, 11.3}}, {{30, 11.6}, {32, 12.1}, {32, 12.4}},
    {{31, 13.0}, {33, 13.4}, {33, 13.5}}, {{32, 14.5}, {35, 14.9}, {34, 14.9}},
    {{33, 16.1}, {36, 16.5}, {36, 16.6}}};

// Rows s = -1.0, -0.9, ..., 0.0; columns N = 512, 2048, then beta^{-2(1+s)}.
const double kTable2[11][3] = {{1.000, 1.000, 1.000}, {1.005, 1.005, 1.005}, {1.010, 1.010, 1.010},
                               {1.015, 1.015, 1.015}, {1.020, 1.020, 1.020}, {1.025, 1.025, 1.025},
                               {1.030, 1.030, 1.030}, {1.035, 1.035, 1.035}, {1.040, 1.040, 1.041},
                               {1.045, 1.045, 1.046}, {1.050, 1.051, 1.051}};

// Rows s = -1.0, -0.9, ..., 0.0; columns N = 128, 512, 2048.
const Reference kTable3[11][3] = {
    {{18, 4.3}, {19, 4.4}, {20, 4.6}}, {{17, 3.7}, {19, 3.7}, {19, 3.7}},
    {{17, 3.2}, {18, 3.2}, {18, 3.2}}, {{17, 2.9}, {18, 2.9}, {18, 2.9}},
    {{17, 2.8}, {18, 3.0}, {18, 3.1}}, {{18, 3.2}, {19, 3.3}, {20, 3.4}},
    {{19, 3.6}, {21, 3.8}, {21, 3.8}}, {{19, 4.0}, {22, 4.2}, {22, 4.2}},
    {{20, 4.5}, {23, 4.8}, {24, 5.1}}, {{21, 5.1}, {25, 5.4}, {26, 6.1}},
    {{22, 5.8}, {27, 6.2}, {28, 7.4}}};

struct Outcome
{
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(const char *format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

// Compares a PCG table against reference values; prints every miss.
Outcome CompareSolveTable(const TableResult &r, const Reference (&ref)[11][3], int max_iter_diff,
                          double max_cond_rel)
{
  int misses = 0;
  double worst_rel = 0.0;
  int worst_iter = 0;
  for (std::size_t i = 0; i < 11; ++i)
  {
    for (std::size_t j = 0; j < 3; ++j)
    {
      const CellResult &c = r.Cell(i, j);
      const int diff = std::abs(c.iterations - ref[i][j].iterations);
      const double rel = std::abs(c.cond - ref[i][j].cond) / ref[i][j].cond;
      worst_iter = std::max(worst_iter, diff);
      worst_rel = std::max(worst_rel, rel);
      if (!c.converged || !c.error.empty() || diff > max_iter_diff || rel > max_cond_rel)
      {
        ++misses;
        std::printf("  miss s=%.1f N=%d: %d(%.1f) vs %d(%.1f)%s\n", c.s, c.size, c.iterations, c.cond,
                    ref[i][j].iterations, ref[i][j].cond, c.error.empty() ? "" : " error");
      }
    }
  }
  return {misses == 0, Fmt("%.0f of 33 cells outside tolerance; worst iteration gap %.0f, worst cond gap %.1f%%",
                           misses, worst_iter, 100.0 * worst_rel)};
}

Outcome Criterion1()
{
  const auto start = std::chrono::steady_clock::now();
  const TableResult r = RunTable(ExperimentConfig::Defaults(2));
  const double elapsed = Seconds(start);
  double worst_reference = 0.0;
  double worst_theory = 0.0;
  for (std::size_t i = 0; i < 11; ++i)
  {
    const double s = r.config.s_list[i];
    const double theory = std::pow(r.beta_minus2, 1.0 + s);
    worst_theory = std::max(worst_theory, std::abs(theory - kTable2[i][2]));
    for (std::size_t j = 0; j < 2; ++j)
    {
      const double cond = r.Cell(i, j).cond;
      worst_reference = std::max(worst_reference, std::abs(cond - kTable2[i][j]));
      worst_theory = std::max(worst_theory, std::max(0.0, cond - theory));
    }
  }
  const bool pass = worst_reference <= 0.002 && worst_theory <= 0.002 &&
                    std::abs(r.beta_minus2 - 1.051) <= 0.001 && elapsed < 60.0;
  return {pass, Fmt("beta^-2 = %.4f, max |cond - table| = %.4f, max gap to beta bound = %.4f, %.1f s",
                    r.beta_minus2, worst_reference, worst_theory, elapsed)};
}

// Largest spread (max - min) / mean over the sizes of any row.
double WorstSpread(const TableResult &r)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < r.config.s_list.size(); ++i)
  {
    double lo = INFINITY, hi = 0.0, sum = 0.0;
    for (std::size_t j = 0; j < r.config.sizes.size(); ++j)
    {
      const double c = r.Cell(i, j).cond;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      sum += c;
    }
    worst = std::max(worst, (hi - lo) / (sum / static_cast<double>(r.config.sizes.size())));
  }
  return worst;
}

Outcome Criterion5()
{
  MatrixCheckOptions options;
  options.trials = 200;
  options.tolerance = 1e-9;
  const Discretization disc(1, 3);
  const std::vector<double> grid = UnitGrid();
  const std::vector<InequalityReport> reports = {
      CheckJensen(options),
      CheckLoewnerHeinz(options),
      CheckNoninheritance(disc, grid, 1e-9),
      CheckAuxBounds(disc.Finest(), grid, 1e-9),
      CheckHelmholtzInvariance(disc.Finest(), grid, 1e-9)};
  bool pass = true;
  double worst = 0.0;
  for (const InequalityReport &r : reports)
  {
    pass = pass && r.pass;
    worst = std::min(worst, r.worst_violation);
    if (!r.pass)
    {
      std::printf("  %s failed: worst violation %.3g\n", r.name.c_str(), r.worst_violation);
    }
  }
  return {pass, Fmt("5 checks, %.0f matrix trials each, worst violation %.2g", options.trials, worst)};
}

Outcome Criterion6()
{
  bool pass = true;
  double worst = 0.0;
  for (int n : {1, 2, 4})
  {
    const AssembledLevel level = Assemble(BuildUniformMesh(n), 0);
    const InequalityReport r = CheckFractionalCalculus(level, UnitGrid(), 17, 1e-10);
    pass = pass && r.pass;
    worst = std::min(worst, r.worst_violation);
  }
  return {pass, Fmt("n = 1, 2, 4; worst relative residual %.2g", -worst)};
}

Outcome Criterion7()
{
  const AssembledLevel level = Assemble(BuildUniformMesh(32), 0);
  const SpectralPair lambda = LambdaSpectrum(level);
  const SpectralPair laplace = LaplaceSpectrum(level);
  const AuxSpacePreconditioner aux = AuxSpacePreconditioner::Exact(level, lambda, -1.0);
  const VectorTag dual = level.Tag(Space::S, Rep::Dual);
  const VectorTag coef = level.Tag(Space::S, Rep::Coefficient);
  TaggedVector x0 = TaggedVector::Zero(dual, level.NumS());
  for (Eigen::Index i = 0; i < x0.Size(); ++i)
  {
    x0.Values()[i] = std::sin(1.0 + 3.0 * static_cast<double>(i));
  }
  const PcgResult aux_solve = Pcg(FracMap(laplace, 1.0), aux.AsMap(), TaggedVector::Zero(coef, level.NumS()),
                                  x0, 1e-20, 50);

  ExperimentConfig single = ExperimentConfig::Defaults(1);
  single.levels = 1;
  single.s_list = {0.0};
  single.sizes = {208};
  const TableResult mg = RunTable(single);
  const CellResult &cell = mg.Cell(0, 0);

  const bool pass = aux_solve.report.converged && aux_solve.report.iterations <= 2 && cell.converged &&
                    cell.error.empty() && cell.iterations <= 2;
  return {pass, Fmt("aux s=-1 N=2048: %.0f iterations; H(div) s=0 J=1 N=208: %.0f iterations",
                    aux_solve.report.iterations, cell.iterations)};
}

void Report(const char *name, const std::function<Outcome()> &run, int &failures)
{
  Outcome o;
  try
  {
    o = run();
  }
  catch (const std::exception &e)
  {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass)
  {
    ++failures;
  }
  std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main()
{
  int failures = 0;
  Report("AC1 exact auxiliary space condition numbers", Criterion1, failures);

  TableResult table1;
  TableResult table3;
  Report("AC2 additive multigrid H(div) solves",
         [&] {
           table1 = RunTable(ExperimentConfig::Defaults(1));
           return CompareSolveTable(table1, kTable1, 3, 0.10);
         },
         failures);
  Report("AC3 auxiliary space multigrid solves",
         [&] {
           table3 = RunTable(ExperimentConfig::Defaults(3));
           return CompareSolveTable(table3, kTable3, 3, 0.15);
         },
         failures);
  Report("AC4 mesh independence",
         [&] {
           if (table1.cells.empty() || table3.cells.empty())
           {
             return Outcome{false, "tables unavailable"};
           }
           const double s1 = WorstSpread(table1);
           const double s3 = WorstSpread(table3);
           return Outcome{s1 < 0.35 && s3 < 0.35,
                          Fmt("worst spread %.1f%% (H(div)), %.1f%% (auxiliary)", 100.0 * s1, 100.0 * s3)};
         },
         failures);
  Report("AC5 operator inequalities", Criterion5, failures);
  Report("AC6 fractional calculus identities", Criterion6, failures);
  Report("AC7 exact endpoints", Criterion7, failures);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
