#include "fracprec/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "fracprec/amg.hpp"
#include "fracprec/auxprec.hpp"
#include "fracprec/errors.hpp"
#include "fracprec/krylov.hpp"
#include "fracprec/spectral.hpp"

namespace fracprec
{

namespace
{

std::vector<double> Steps(double from, double to)
{
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i)
  {
    out.push_back(std::round((from + (to - from) * i / 10.0) * 10.0) / 10.0);
  }
  return out;
}

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string Format(const char *fmt, double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

std::uint64_t CellSeed(std::uint64_t seed, int table, std::size_t row, std::size_t col)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(table), static_cast<std::uint32_t>(row),
                    static_cast<std::uint32_t>(col)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Eigen::VectorXd Uniform(Eigen::Index n, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    v[i] = dist(rng);
  }
  return v;
}

// Everything a table needs on one mesh, built once before the cells run.
struct Problem
{
  int n = 0;
  std::unique_ptr<Discretization> disc;
  std::unique_ptr<MultigridData> multigrid;
  std::optional<SpectralPair> lambda;
  std::optional<SpectralPair> laplace;
  std::unique_ptr<ExactAuxSpectrum> aux;
  double beta = 0.0;
};

std::unique_ptr<Problem> BuildProblem(int table, int n, int levels)
{
  auto p = std::make_unique<Problem>();
  p->n = n;
  p->disc = std::make_unique<Discretization>(n >> (levels - 1), levels);
  const AssembledLevel &fine = p->disc->Finest();
  if (table == 1 || table == 3)
  {
    p->multigrid = std::make_unique<MultigridData>(*p->disc);
  }
  if (table == 1 || table == 2)
  {
    p->lambda.emplace(LambdaSpectrum(fine));
  }
  if (table == 2 || table == 3)
  {
    p->laplace.emplace(LaplaceSpectrum(fine));
  }
  if (table == 2)
  {
    p->aux = std::make_unique<ExactAuxSpectrum>(fine, *p->lambda, *p->laplace);
    p->beta = InfSupBeta(fine);
  }
  return p;
}

void RunCell(const ExperimentConfig &config, const Problem &problem, CellResult &cell)
{
  const AssembledLevel &fine = problem.disc->Finest();
  if (config.table == 2)
  {
    cell.cond = problem.aux->Condition(cell.s);
    return;
  }

  const double tol = config.stop == StopRule::Norm ? config.tolerance * config.tolerance
                                                  : config.tolerance;
  std::mt19937_64 rng(cell.seed);
  std::optional<PcgResult> result;
  if (config.table == 1)
  {
    const AdditiveMultigrid precond(*problem.multigrid, cell.s);
    const LinearMap op = FracDualFormMap(*problem.lambda, cell.s);
    const Eigen::Index nv = fine.NumV();
    const TaggedVector x0(op.Domain(), Uniform(nv, rng));
    const TaggedVector rhs = config.rhs == RhsKind::Random
                                 ? TaggedVector(op.Range(), Uniform(nv, rng))
                                 : TaggedVector::Zero(op.Range(), nv);
    result = Pcg(op, precond.AsMap(), rhs, x0, tol, config.max_iterations);
  }
  else
  {
    const AuxSpacePreconditioner precond = AuxSpacePreconditioner::Multigrid(*problem.multigrid, cell.s);
    // A_h^s as a dual -> coefficient map.
    const LinearMap op = FracMap(*problem.laplace, -cell.s);
    const Eigen::Index ns = fine.NumS();
    const TaggedVector x0(op.Domain(), Uniform(ns, rng));
    const TaggedVector rhs = config.rhs == RhsKind::Random
                                 ? TaggedVector(op.Range(), Uniform(ns, rng))
                                 : TaggedVector::Zero(op.Range(), ns);
    result = Pcg(op, precond.AsMap(), rhs, x0, tol, config.max_iterations);
  }
  cell.iterations = result->report.iterations;
  cell.cond = result->report.cond_estimate;
  cell.converged = result->report.converged;
}

}  // namespace

ExperimentConfig ExperimentConfig::Defaults(int table)
{
  ExperimentConfig c;
  c.table = table;
  switch (table)
  {
  case 1:
    c.s_list = Steps(0.0, 1.0);
    c.sizes = {208, 800, 3136};
    c.tolerance = 1e-9;
    break;
  case 2:
    c.s_list = Steps(-1.0, 0.0);
    c.sizes = {512, 2048};
    c.tolerance = 0.0;
    break;
  case 3:
    c.s_list = Steps(-1.0, 0.0);
    c.sizes = {128, 512, 2048};
    c.tolerance = 1e-10;
    break;
  default:
    throw ContractViolation("unknown table " + std::to_string(table));
  }
  return c;
}

void ExperimentConfig::Validate() const
{
  Require(table >= 1 && table <= 3, "table must be 1, 2 or 3");
  Require(!s_list.empty(), "empty s list");
  Require(!sizes.empty(), "empty size list");
  Require(levels >= 1 && levels <= 12, "levels must lie in [1, 12]");
  Require(workers >= 1, "workers must be positive");
  Require(max_iterations >= 1, "max iterations must be positive");
  if (table != 2)
  {
    Require(tolerance > 0.0 && tolerance < 1.0, "tolerance must lie in (0, 1)");
  }
  for (double s : s_list)
  {
    if (table == 1)
    {
      Require(s >= 0.0 && s <= 1.0, "table 1 needs s in [0, 1], got " + Format("%g", s));
    }
    else
    {
      Require(s >= -1.0 && s <= 0.0, "tables 2 and 3 need s in [-1, 0], got " + Format("%g", s));
    }
  }
  for (int size : sizes)
  {
    CellsPerSide(table, size, levels);
  }
}

int CellsPerSide(int table, int size, int levels)
{
  Require(size > 0, "sizes must be positive");
  int n = -1;
  for (int m = 1; m <= 4096; m *= 2)
  {
    const long long dim = table == 1 ? 3LL * m * m + 2LL * m : 2LL * m * m;
    if (dim == size)
    {
      n = m;
      break;
    }
  }
  if (n < 0 && IsPowerOfTwo(size) && size <= 4096)
  {
    n = size;
  }
  Require(n > 0, "size " + std::to_string(size) + " is not " +
                     (table == 1 ? "dim V_h" : "dim S_h") +
                     " of a uniform mesh with a power of two cells per side");
  Require(n >= (1 << (levels - 1)), "size " + std::to_string(size) + " is too coarse for " +
                                        std::to_string(levels) + " levels");
  return n;
}

const CellResult &TableResult::Cell(std::size_t row, std::size_t col) const
{
  return cells.at(row * config.sizes.size() + col);
}

bool TableResult::AllConverged() const
{
  for (const auto &c : cells)
  {
    if (!c.converged || !c.error.empty())
    {
      return false;
    }
  }
  return true;
}

TableResult RunTable(const ExperimentConfig &config)
{
  config.Validate();
  TableResult result;
  result.config = config;

  std::vector<std::unique_ptr<Problem>> problems;
  for (int size : config.sizes)
  {
    problems.push_back(BuildProblem(config.table, CellsPerSide(config.table, size, config.levels),
                                    config.levels));
  }
  if (config.table == 2)
  {
    const double beta = problems.back()->beta;
    result.beta_minus2 = 1.0 / (beta * beta);
  }

  const std::size_t cols = config.sizes.size();
  for (std::size_t row = 0; row < config.s_list.size(); ++row)
  {
    for (std::size_t col = 0; col < cols; ++col)
    {
      CellResult cell;
      cell.s = config.s_list[row];
      cell.size = config.sizes[col];
      cell.seed = CellSeed(config.seed, config.table, row, col);
      result.cells.push_back(cell);
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]
  {
    for (std::size_t i = next++; i < result.cells.size(); i = next++)
    {
      CellResult &cell = result.cells[i];
      try
      {
        RunCell(config, *problems[i % cols], cell);
      }
      catch (const std::exception &e)
      {
        cell.converged = false;
        cell.error = e.what();
      }
    }
  };
  const int threads = std::min<int>(config.workers, static_cast<int>(result.cells.size()));
  if (threads <= 1)
  {
    worker();
  }
  else
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
    {
      pool.emplace_back(worker);
    }
    for (auto &t : pool)
    {
      t.join();
    }
  }
  return result;
}

void WriteTable(std::ostream &out, const TableResult &result)
{
  const ExperimentConfig &config = result.config;
  const bool exact = config.table == 2;
  std::ostringstream buf;
  if (config.format == OutputFormat::Csv)
  {
    buf << "table,s,N,iters,cond,seed,tol\n";
    for (const auto &c : result.cells)
    {
      buf << config.table << "," << Format("%g", c.s) << "," << c.size << ",";
      if (!c.error.empty())
      {
        buf << "error,,";
      }
      else
      {
        buf << (exact ? std::string() : std::to_string(c.iterations) + (c.converged ? "" : "+"))
            << "," << Format("%.6f", c.cond) << ",";
      }
      buf << c.seed << "," << Format("%g", config.tolerance) << "\n";
    }
    out << buf.str();
    return;
  }

  buf << "| s \\ N |";
  for (int size : config.sizes)
  {
    buf << " " << size << " |";
  }
  if (exact)
  {
    buf << " beta^-2(1+s) |";
  }
  buf << "\n|---|";
  for (std::size_t i = 0; i < config.sizes.size() + (exact ? 1 : 0); ++i)
  {
    buf << "---|";
  }
  buf << "\n";
  for (std::size_t row = 0; row < config.s_list.size(); ++row)
  {
    const double s = config.s_list[row];
    buf << "| " << Format("%.1f", s) << " |";
    for (std::size_t col = 0; col < config.sizes.size(); ++col)
    {
      const CellResult &c = result.Cell(row, col);
      buf << " ";
      if (!c.error.empty())
      {
        buf << "error";
      }
      else if (exact)
      {
        buf << Format("%.3f", c.cond);
      }
      else
      {
        buf << c.iterations << (c.converged ? "" : "+") << "(" << Format("%.1f", c.cond) << ")";
      }
      buf << " |";
    }
    if (exact)
    {
      buf << " " << Format("%.3f", std::pow(result.beta_minus2, 1.0 + s)) << " |";
    }
    buf << "\n";
  }
  for (const auto &c : result.cells)
  {
    if (!c.error.empty())
    {
      buf << "\ns = " << Format("%g", c.s) << ", N = " << c.size << ": " << c.error;
    }
  }
  out << buf.str();
}

std::vector<InequalityReport> RunProps(const PropsConfig &config)
{
  Require(config.trials >= 1, "props: trials must be positive");
  Require(config.levels >= 2, "props: need at least two levels");
  std::vector<InequalityReport> reports;
  MatrixCheckOptions matrix;
  matrix.trials = config.trials;
  matrix.grid = config.grid;
  matrix.seed = config.seed;
  reports.push_back(CheckJensen(matrix));
  reports.push_back(CheckLoewnerHeinz(matrix));

  const Discretization disc(config.coarse_cells, config.levels);
  const AssembledLevel &fine = disc.Finest();
  reports.push_back(CheckNoninheritance(disc, config.grid));
  reports.push_back(CheckAuxBounds(fine, config.grid));
  reports.push_back(CheckHelmholtzInvariance(fine, config.grid));
  reports.push_back(CheckProjectionIdentity(disc, config.grid));
  reports.push_back(CheckFractionalCalculus(fine, config.grid, config.seed));

  const MultigridData data(disc);
  reports.push_back(CheckSmootherUpperBound(data, config.grid));

  InequalityReport stable;
  stable.name = "stable_decomposition";
  stable.grid = config.grid;
  stable.pass = true;
  for (int k = 1; k < disc.NumLevels(); ++k)
  {
    for (double s : config.grid)
    {
      const double c = MeasureStableDecomposition(data, k, s);
      stable.measured.emplace_back("level" + std::to_string(k) + "_s" + Format("%g", s), c);
      stable.pass = stable.pass && std::isfinite(c) && c > 0.0;
      ++stable.trials;
    }
  }
  reports.push_back(stable);
  return reports;
}

}  // namespace fracprec
