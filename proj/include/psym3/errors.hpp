#ifndef PSYM3_ERRORS_HPP
#define PSYM3_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psym3 {

// Expression source could not be parsed; `pos` is the byte offset of the
// offending token in the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

// Expression evaluated outside its mathematical domain (log of a
// non-positive value, pow with negative base and fractional exponent, ...).
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Point outside a chart's domain box, or a grid that leaves it.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Metric not positive definite / numerically singular at a point.
class SingularMetricError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An operation was asked for derivative data the jet does not carry.
class JetOrderError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad manifest, bad CLI arguments, unknown catalog name, ...
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Frame diagnostics refused a stencil (pattern lost, gauge flip, ...).
class FrameError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace psym3

#endif
