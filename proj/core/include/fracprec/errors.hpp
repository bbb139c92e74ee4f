#ifndef FRACPREC_ERRORS_HPP
#define FRACPREC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracprec
{

// Misuse of an interface: mismatched vector representations, out-of-range
// levels, invalid sizes. Always a programming error on the caller's side.
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

// A numerical precondition failed at run time, e.g. a mass matrix that is not
// positive definite or a conjugate gradient run that meets negative curvature.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline void Require(bool condition, const std::string &message)
{
  if (!condition)
  {
    throw ContractViolation(message);
  }
}

}  // namespace fracprec

#endif  // FRACPREC_ERRORS_HPP
