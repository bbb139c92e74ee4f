#ifndef FRACPREC_DENSE_KERNELS_HPP
#define FRACPREC_DENSE_KERNELS_HPP

#include <Eigen/Dense>

// Large dense products routed through BLAS.
namespace fracprec::dense
{

// a^T b
Eigen::MatrixXd TransposeTimes(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b);
// a^T a, fully populated
Eigen::MatrixXd ColumnGram(const Eigen::MatrixXd &a);
// a a^T, fully populated
Eigen::MatrixXd RowGram(const Eigen::MatrixXd &a);

}  // namespace fracprec::dense

#endif  // FRACPREC_DENSE_KERNELS_HPP
