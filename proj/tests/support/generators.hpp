#ifndef FRACPREC_TESTS_GENERATORS_HPP
#define FRACPREC_TESTS_GENERATORS_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace fracprec::testing
{

class Gen
{
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double Uniform(double lo = -1.0, double hi = 1.0)
  {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Eigen::VectorXd Vector(Eigen::Index n)
  {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
      v[i] = Uniform();
    }
    return v;
  }

  Eigen::MatrixXd Matrix(Eigen::Index rows, Eigen::Index cols)
  {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
    {
      for (Eigen::Index i = 0; i < rows; ++i)
      {
        m(i, j) = Uniform();
      }
    }
    return m;
  }

  // Symmetric positive definite with eigenvalues in [lo, hi].
  Eigen::MatrixXd Spd(Eigen::Index n, double lo = 0.5, double hi = 4.0)
  {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Matrix(n, n));
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
      d[i] = Uniform(lo, hi);
    }
    const Eigen::MatrixXd m = q * d.asDiagonal() * q.transpose();
    return 0.5 * (m + m.transpose());
  }

  std::mt19937_64 &Engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline double RelativeError(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b)
{
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace fracprec::testing

#endif  // FRACPREC_TESTS_GENERATORS_HPP
