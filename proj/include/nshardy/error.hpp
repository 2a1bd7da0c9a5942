#ifndef NSHARDY_ERROR_HPP
#define NSHARDY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nshardy {

/// Malformed input: wrong dimensions, out-of-range labels, bad permutations.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A state the algorithms guarantee cannot happen (e.g. an infeasible Hardy LP).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace nshardy

#endif  // NSHARDY_ERROR_HPP
