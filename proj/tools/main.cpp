#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "fracprec/errors.hpp"
#include "fracprec/experiments.hpp"

namespace
{

struct TableOptions
{
  std::vector<double> s_list;
  std::vector<int> sizes;
  int levels = 4;
  double tol = 0.0;
  int maxit = 500;
  std::uint64_t seed = 20240101;
  std::string format = "markdown";
  std::string out;
  std::string rhs = "zero";
  std::string stop = "norm";
  int workers = 1;
};

const std::map<std::string, fracprec::OutputFormat> kFormats{
    {"markdown", fracprec::OutputFormat::Markdown}, {"csv", fracprec::OutputFormat::Csv}};
const std::map<std::string, fracprec::RhsKind> kRhs{{"zero", fracprec::RhsKind::Zero},
                                                   {"random", fracprec::RhsKind::Random}};

void AddCommon(CLI::App *cmd, TableOptions &o)
{
  cmd->add_option("--seed", o.seed, "Random seed for initial guesses");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"markdown", "csv"}));
  cmd->add_option("--out", o.out, "Write results to this file instead of stdout");
}

void AddTable(CLI::App *cmd, TableOptions &o)
{
  cmd->add_option("--s-list", o.s_list, "Fractional exponents")->delimiter(',');
  cmd->add_option("--sizes", o.sizes, "Finest problem sizes N (or cells per side n)")
      ->delimiter(',');
  cmd->add_option("--levels", o.levels, "Number of mesh levels J")->check(CLI::Range(1, 12));
  cmd->add_option("--tol", o.tol, "Relative PCG tolerance");
  cmd->add_option("--maxit", o.maxit, "PCG iteration limit")->check(CLI::PositiveNumber);
  cmd->add_option("--rhs", o.rhs, "Right-hand side")->check(CLI::IsMember({"zero", "random"}));
  cmd->add_option("--stop", o.stop, "Stop on the residual norm or on the squared ratio")
      ->check(CLI::IsMember({"norm", "ratio"}));
  cmd->add_option("--workers", o.workers, "Cells solved concurrently")
      ->check(CLI::PositiveNumber);
  AddCommon(cmd, o);
}

std::ostream &Output(const std::string &path, std::ofstream &file)
{
  if (path.empty())
  {
    return std::cout;
  }
  file.open(path);
  if (!file)
  {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  return file;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Multilevel preconditioners for fractional H(div) and Laplace problems"};
  app.require_subcommand(1);

  TableOptions opts;
  std::map<CLI::App *, int> tables;
  for (int t = 1; t <= 3; ++t)
  {
    auto *cmd = app.add_subcommand("table" + std::to_string(t),
                                   t == 1   ? "Additive multigrid for the fractional H(div) problem"
                                   : t == 2 ? "Exact auxiliary space condition numbers"
                                            : "Auxiliary space multigrid for A_h^s, s <= 0");
    AddTable(cmd, opts);
    tables[cmd] = t;
  }
  int trials = 200;
  auto *props = app.add_subcommand("props", "Operator inequality and identity checks");
  props->add_option("--trials", trials, "Randomized trials for matrix checks")
      ->check(CLI::PositiveNumber);
  AddCommon(props, opts);

  CLI11_PARSE(app, argc, argv);

  try
  {
    std::ofstream file;
    if (props->parsed())
    {
      fracprec::PropsConfig config;
      config.seed = opts.seed;
      config.trials = trials;
      const auto reports = fracprec::RunProps(config);
      fracprec::WriteReports(Output(opts.out, file), reports, opts.format == "csv");
      for (const auto &r : reports)
      {
        if (!r.pass)
        {
          return 1;
        }
      }
      return 0;
    }

    CLI::App *cmd = app.get_subcommands().front();
    const int table = tables.at(cmd);
    fracprec::ExperimentConfig config = fracprec::ExperimentConfig::Defaults(table);
    if (!opts.s_list.empty())
    {
      config.s_list = opts.s_list;
    }
    if (!opts.sizes.empty())
    {
      config.sizes = opts.sizes;
    }
    if (cmd->count("--tol") > 0)
    {
      config.tolerance = opts.tol;
    }
    config.levels = opts.levels;
    config.max_iterations = opts.maxit;
    config.seed = opts.seed;
    config.workers = opts.workers;
    config.format = kFormats.at(opts.format);
    config.rhs = kRhs.at(opts.rhs);
    config.stop = opts.stop == "norm" ? fracprec::StopRule::Norm : fracprec::StopRule::Ratio;
    try
    {
      config.Validate();
    }
    catch (const fracprec::ContractViolation &e)
    {
      std::cerr << "error: " << e.what() << "\n\n" << cmd->help();
      return 2;
    }
    const auto result = fracprec::RunTable(config);
    fracprec::WriteTable(Output(opts.out, file), result);
    return result.AllConverged() ? 0 : 1;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
