#include "dense_kernels.hpp"

#include <cblas.h>

#include "fracprec/errors.hpp"

namespace fracprec::dense
{

namespace
{

int Dim(Eigen::Index n) { return static_cast<int>(n); }

void MirrorLower(Eigen::MatrixXd &m)
{
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
}

}  // namespace

Eigen::MatrixXd TransposeTimes(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b)
{
  Require(a.rows() == b.rows(), "TransposeTimes: inner dimensions differ");
  Eigen::MatrixXd out(a.cols(), b.cols());
  if (out.size() == 0)
  {
    return out;
  }
  if (a.rows() == 0)
  {
    out.setZero();
    return out;
  }
  cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, Dim(a.cols()), Dim(b.cols()),
              Dim(a.rows()), 1.0, a.data(), Dim(a.rows()), b.data(), Dim(b.rows()), 0.0,
              out.data(), Dim(out.rows()));
  return out;
}

Eigen::MatrixXd ColumnGram(const Eigen::MatrixXd &a)
{
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.cols(), a.cols());
  if (out.size() == 0 || a.rows() == 0)
  {
    return out;
  }
  cblas_dsyrk(CblasColMajor, CblasLower, CblasTrans, Dim(a.cols()), Dim(a.rows()), 1.0,
              a.data(), Dim(a.rows()), 0.0, out.data(), Dim(out.rows()));
  MirrorLower(out);
  return out;
}

Eigen::MatrixXd RowGram(const Eigen::MatrixXd &a)
{
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows(), a.rows());
  if (out.size() == 0 || a.cols() == 0)
  {
    return out;
  }
  cblas_dsyrk(CblasColMajor, CblasLower, CblasNoTrans, Dim(a.rows()), Dim(a.cols()), 1.0,
              a.data(), Dim(a.rows()), 0.0, out.data(), Dim(out.rows()));
  MirrorLower(out);
  return out;
}

}  // namespace fracprec::dense
