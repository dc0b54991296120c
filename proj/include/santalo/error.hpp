#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace santalo {

// Error taxonomy shared by the whole library.  The CLI maps kinds to exit
// codes: validation/domain/representation/io -> 1, convergence -> 2.
enum class ErrorKind {
  invalid_body,     // an input violates a representation invariant
  domain_error,     // arguments outside an operation's contract
  representation,   // operation unsupported for this body representation
  convergence,      // iterative solver exhausted its budget
  io_error,         // malformed file or unwritable output
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Convergence failures carry the best iterate found and its residual so a
// caller can decide whether the partial answer is still usable.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, std::vector<double> best_iterate,
                   double residual)
      : Error(ErrorKind::convergence, what),
        best_iterate_(std::move(best_iterate)),
        residual_(residual) {}
  const std::vector<double>& best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

private:
  std::vector<double> best_iterate_;
  double residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace santalo
