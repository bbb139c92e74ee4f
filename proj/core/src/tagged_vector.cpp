#include "fracprec/tagged_vector.hpp"

#include <utility>

#include "fracprec/errors.hpp"

namespace fracprec
{

std::string ToString(Space space)
{
  switch (space)
  {
    case Space::S:
      return "S";
    case Space::V:
      return "V";
    case Space::C:
      return "C";
    case Space::Euclidean:
      return "R";
  }
  return "?";
}

std::string ToString(Rep rep)
{
  return rep == Rep::Coefficient ? "coefficient" : "dual";
}

std::string ToString(const VectorTag &tag)
{
  return "(" + ToString(tag.space) + ", level " + std::to_string(tag.level) + ", " +
         ToString(tag.rep) + ")";
}

VectorTag Flipped(const VectorTag &tag)
{
  return {tag.space, tag.level, tag.rep == Rep::Coefficient ? Rep::Dual : Rep::Coefficient};
}

TaggedVector::TaggedVector(VectorTag tag, Eigen::VectorXd values)
  : tag_(tag), values_(std::move(values))
{
}

TaggedVector TaggedVector::Zero(VectorTag tag, Eigen::Index size)
{
  return TaggedVector(tag, Eigen::VectorXd::Zero(size));
}

namespace
{

void RequireCompatible(const TaggedVector &a, const TaggedVector &b, const char *what)
{
  Require(a.Tag() == b.Tag(), std::string(what) + ": tag mismatch " + ToString(a.Tag()) +
                                  " vs " + ToString(b.Tag()));
  Require(a.Size() == b.Size(), std::string(what) + ": size mismatch");
}

}  // namespace

TaggedVector &TaggedVector::operator+=(const TaggedVector &other)
{
  RequireCompatible(*this, other, "operator+=");
  values_ += other.values_;
  return *this;
}

TaggedVector &TaggedVector::operator-=(const TaggedVector &other)
{
  RequireCompatible(*this, other, "operator-=");
  values_ -= other.values_;
  return *this;
}

TaggedVector &TaggedVector::operator*=(double alpha)
{
  values_ *= alpha;
  return *this;
}

void TaggedVector::Axpy(double alpha, const TaggedVector &x)
{
  RequireCompatible(*this, x, "Axpy");
  values_.noalias() += alpha * x.values_;
}

TaggedVector operator+(TaggedVector a, const TaggedVector &b)
{
  a += b;
  return a;
}

TaggedVector operator-(TaggedVector a, const TaggedVector &b)
{
  a -= b;
  return a;
}

TaggedVector operator*(double alpha, TaggedVector a)
{
  a *= alpha;
  return a;
}

double Pairing(const TaggedVector &a, const TaggedVector &b)
{
  Require(a.Tag().space == b.Tag().space && a.Tag().level == b.Tag().level,
          "Pairing: vectors live in different spaces " + ToString(a.Tag()) + " and " +
              ToString(b.Tag()));
  Require(a.Tag().rep != b.Tag().rep,
          "Pairing: needs one coefficient and one dual vector, got " + ToString(a.Tag()) +
              " twice");
  Require(a.Size() == b.Size(), "Pairing: size mismatch");
  return a.Values().dot(b.Values());
}

LinearMap::LinearMap(VectorTag domain, Eigen::Index domain_size, VectorTag range,
                     Eigen::Index range_size, Kernel kernel)
  : domain_(domain), domain_size_(domain_size), range_(range), range_size_(range_size),
    kernel_(std::move(kernel))
{
  Require(static_cast<bool>(kernel_), "LinearMap: empty kernel");
}

TaggedVector LinearMap::operator()(const TaggedVector &x) const
{
  Require(x.Tag() == domain_, "LinearMap: expected input " + ToString(domain_) + ", got " +
                                  ToString(x.Tag()));
  Require(x.Size() == domain_size_, "LinearMap: input size mismatch");
  TaggedVector y = TaggedVector::Zero(range_, range_size_);
  kernel_(x.Values(), y.Values());
  return y;
}

void LinearMap::ApplyRaw(const Eigen::VectorXd &x, Eigen::VectorXd &y) const
{
  y.setZero(range_size_);
  kernel_(x, y);
}

Eigen::MatrixXd LinearMap::Materialize() const
{
  Eigen::MatrixXd a(range_size_, domain_size_);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(domain_size_);
  Eigen::VectorXd col(range_size_);
  for (Eigen::Index j = 0; j < domain_size_; ++j)
  {
    e[j] = 1.0;
    ApplyRaw(e, col);
    a.col(j) = col;
    e[j] = 0.0;
  }
  return a;
}

}  // namespace fracprec
