#pragma once

#include <stdexcept>
#include <string>

namespace fnets {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorKind {
  Usage,      // bad arguments or flag combinations
  Format,     // unparseable input
  Data,       // well-formed input with unusable values (NaN, Inf, ...)
  Dimension,  // sizes or index ranges that violate a precondition
  Numerical,  // non-convergence, non-finite intermediate values
  Solver,     // LP infeasible / unbounded / iteration cap
  Selection,  // a data-driven selection could not produce a value
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(ErrorKind::Usage, w) {}
};
struct FormatError : Error {
  explicit FormatError(const std::string& w) : Error(ErrorKind::Format, w) {}
};
struct DataError : Error {
  explicit DataError(const std::string& w) : Error(ErrorKind::Data, w) {}
};
struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error(ErrorKind::Dimension, w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};
struct SolverError : Error {
  explicit SolverError(const std::string& w) : Error(ErrorKind::Solver, w) {}
};
struct SelectionError : Error {
  explicit SelectionError(const std::string& w) : Error(ErrorKind::Selection, w) {}
};

/// CLI exit code for an error kind: 2 usage, 3 data, 4 numerical/solver.
int exit_code(ErrorKind kind) noexcept;

}  // namespace fnets
