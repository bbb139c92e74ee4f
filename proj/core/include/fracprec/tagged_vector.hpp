#ifndef FRACPREC_TAGGED_VECTOR_HPP
#define FRACPREC_TAGGED_VECTOR_HPP

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace fracprec
{

// Discrete spaces on a uniform triangulation:
//   S  piecewise constants (one value per triangle)
//   V  lowest order Raviart-Thomas (one flux per edge)
//   C  continuous piecewise linears (one value per vertex)
// Euclidean is plain R^n with the identity inner product, used by the
// matrix-level inequality checks.
enum class Space
{
  S,
  V,
  C,
  Euclidean
};

// A finite element function u = sum_i c_i phi_i is stored either by its
// coefficients c (Coefficient) or by the moments <u, phi_i> (Dual).
enum class Rep
{
  Coefficient,
  Dual
};

struct VectorTag
{
  Space space = Space::Euclidean;
  int level = 0;
  Rep rep = Rep::Coefficient;

  bool operator==(const VectorTag &) const = default;
};

std::string ToString(Space space);
std::string ToString(Rep rep);
std::string ToString(const VectorTag &tag);

VectorTag Flipped(const VectorTag &tag);

class TaggedVector
{
public:
  TaggedVector(VectorTag tag, Eigen::VectorXd values);

  static TaggedVector Zero(VectorTag tag, Eigen::Index size);

  const VectorTag &Tag() const { return tag_; }
  const Eigen::VectorXd &Values() const { return values_; }
  Eigen::VectorXd &Values() { return values_; }
  Eigen::Index Size() const { return values_.size(); }

  TaggedVector &operator+=(const TaggedVector &other);
  TaggedVector &operator-=(const TaggedVector &other);
  TaggedVector &operator*=(double alpha);

  // this += alpha * x
  void Axpy(double alpha, const TaggedVector &x);

private:
  VectorTag tag_;
  Eigen::VectorXd values_;
};

TaggedVector operator+(TaggedVector a, const TaggedVector &b);
TaggedVector operator-(TaggedVector a, const TaggedVector &b);
TaggedVector operator*(double alpha, TaggedVector a);

// The duality pairing <coefficient, dual>. Defined only for one coefficient
// vector and one dual vector of the same space and level.
double Pairing(const TaggedVector &a, const TaggedVector &b);

// A linear map between tagged vector spaces. Application checks the input tag
// and size and stamps the output tag.
class LinearMap
{
public:
  using Kernel = std::function<void(const Eigen::VectorXd &, Eigen::VectorXd &)>;

  LinearMap(VectorTag domain, Eigen::Index domain_size, VectorTag range,
            Eigen::Index range_size, Kernel kernel);

  TaggedVector operator()(const TaggedVector &x) const;

  const VectorTag &Domain() const { return domain_; }
  const VectorTag &Range() const { return range_; }
  Eigen::Index DomainSize() const { return domain_size_; }
  Eigen::Index RangeSize() const { return range_size_; }

  // Dense matrix of the map, built column by column.
  Eigen::MatrixXd Materialize() const;

  // Raw application without tag checks; for inner loops that already
  // validated their inputs.
  void ApplyRaw(const Eigen::VectorXd &x, Eigen::VectorXd &y) const;

private:
  VectorTag domain_;
  Eigen::Index domain_size_;
  VectorTag range_;
  Eigen::Index range_size_;
  Kernel kernel_;
};

}  // namespace fracprec

#endif  // FRACPREC_TAGGED_VECTOR_HPP
