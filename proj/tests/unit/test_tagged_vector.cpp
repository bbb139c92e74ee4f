#include <gtest/gtest.h>

#include "fracprec/errors.hpp"
#include "fracprec/tagged_vector.hpp"

namespace fracprec
{
namespace
{

const VectorTag kCoef{Space::V, 2, Rep::Coefficient};
const VectorTag kDual{Space::V, 2, Rep::Dual};

TEST(TaggedVector, PairingNeedsOppositeRepresentations)
{
  const TaggedVector c(kCoef, Eigen::Vector3d(1, 2, 3));
  const TaggedVector d(kDual, Eigen::Vector3d(4, 5, 6));
  EXPECT_DOUBLE_EQ(Pairing(c, d), 32.0);
  EXPECT_DOUBLE_EQ(Pairing(d, c), 32.0);
  EXPECT_THROW(Pairing(c, c), ContractViolation);
  const TaggedVector other_level({Space::V, 1, Rep::Dual}, Eigen::Vector3d(4, 5, 6));
  EXPECT_THROW(Pairing(c, other_level), ContractViolation);
  const TaggedVector other_space({Space::S, 2, Rep::Dual}, Eigen::Vector3d(4, 5, 6));
  EXPECT_THROW(Pairing(c, other_space), ContractViolation);
  const TaggedVector shorter(kDual, Eigen::Vector2d(1, 1));
  EXPECT_THROW(Pairing(c, shorter), ContractViolation);
}

TEST(TaggedVector, ArithmeticKeepsTags)
{
  TaggedVector a(kCoef, Eigen::Vector2d(1, 2));
  const TaggedVector b(kCoef, Eigen::Vector2d(3, 5));
  const TaggedVector sum = a + b;
  EXPECT_EQ(sum.Tag(), kCoef);
  EXPECT_EQ(sum.Values(), Eigen::Vector2d(4, 7));
  EXPECT_EQ((b - a).Values(), Eigen::Vector2d(2, 3));
  EXPECT_EQ((2.0 * a).Values(), Eigen::Vector2d(2, 4));
  a.Axpy(-1.0, b);
  EXPECT_EQ(a.Values(), Eigen::Vector2d(-2, -3));
  const TaggedVector d(kDual, Eigen::Vector2d(1, 1));
  EXPECT_THROW(a += d, ContractViolation);
  EXPECT_THROW(a.Axpy(1.0, d), ContractViolation);
  EXPECT_EQ(TaggedVector::Zero(kDual, 3).Values(), Eigen::Vector3d::Zero());
}

TEST(TaggedVector, FlippedAndNames)
{
  EXPECT_EQ(Flipped(kCoef), kDual);
  EXPECT_EQ(Flipped(kDual), kCoef);
  EXPECT_NE(ToString(kCoef).find("V"), std::string::npos);
  EXPECT_NE(ToString(kCoef), ToString(kDual));
}

TEST(LinearMap, ChecksDomainAndStampsRange)
{
  const LinearMap twice(kCoef, 2, kDual, 2,
                        [](const Eigen::VectorXd &x, Eigen::VectorXd &y) { y = 2.0 * x; });
  const TaggedVector y = twice(TaggedVector(kCoef, Eigen::Vector2d(1, -1)));
  EXPECT_EQ(y.Tag(), kDual);
  EXPECT_EQ(y.Values(), Eigen::Vector2d(2, -2));
  EXPECT_THROW(twice(TaggedVector(kDual, Eigen::Vector2d(1, 1))), ContractViolation);
  EXPECT_THROW(twice(TaggedVector(kCoef, Eigen::Vector3d(1, 1, 1))), ContractViolation);
  EXPECT_EQ(twice.Materialize(), 2.0 * Eigen::MatrixXd::Identity(2, 2));
}

}  // namespace
}  // namespace fracprec
