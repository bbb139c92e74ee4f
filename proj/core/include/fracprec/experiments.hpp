#ifndef FRACPREC_EXPERIMENTS_HPP
#define FRACPREC_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracprec/verify.hpp"

namespace fracprec
{

enum class OutputFormat
{
  Markdown,
  Csv
};

// Right-hand side of the solved systems. With Zero the PCG iterate is the
// error itself, started from a random vector.
enum class RhsKind
{
  Zero,
  Random
};

// What the tolerance bounds. Ratio compares <B r_k, r_k> / <B r_0, r_0>
// directly; Norm compares its square root, the relative preconditioned
// residual in the norm induced by B.
enum class StopRule
{
  Norm,
  Ratio
};

struct ExperimentConfig
{
  int table = 1;  // 1, 2 or 3
  std::vector<double> s_list;
  // Finest sizes: dim V_h for table 1, dim S_h for tables 2 and 3.
  std::vector<int> sizes;
  int levels = 4;
  double tolerance = 1e-9;
  int max_iterations = 500;
  std::uint64_t seed = 20240101;
  OutputFormat format = OutputFormat::Markdown;
  RhsKind rhs = RhsKind::Zero;
  StopRule stop = StopRule::Norm;
  int workers = 1;

  static ExperimentConfig Defaults(int table);
  // Throws ContractViolation describing the first invalid field.
  void Validate() const;
};

// Cells per side n of the uniform mesh whose dim V_h (table 1) or dim S_h
// (tables 2, 3) equals `size`; plain n is accepted as well when it is a power
// of two that is at least 2^(levels - 1). Throws ContractViolation otherwise.
int CellsPerSide(int table, int size, int levels);

struct CellResult
{
  double s = 0.0;
  int size = 0;
  int iterations = 0;  // 0 for table 2
  double cond = 0.0;
  bool converged = true;
  std::uint64_t seed = 0;
  std::string error;  // non-empty when the cell threw
};

struct TableResult
{
  ExperimentConfig config;
  std::vector<CellResult> cells;  // row major in (s, size)
  // Table 2 only: beta^{-2} on the finest requested mesh.
  double beta_minus2 = 0.0;

  const CellResult &Cell(std::size_t row, std::size_t col) const;
  bool AllConverged() const;
};

TableResult RunTable(const ExperimentConfig &config);
void WriteTable(std::ostream &out, const TableResult &result);

struct PropsConfig
{
  std::vector<double> grid = UnitGrid();
  std::uint64_t seed = 1;
  int trials = 200;
  int coarse_cells = 1;
  int levels = 3;
};

std::vector<InequalityReport> RunProps(const PropsConfig &config);

}  // namespace fracprec

#endif  // FRACPREC_EXPERIMENTS_HPP
