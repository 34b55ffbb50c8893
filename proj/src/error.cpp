#include "fnets/error.hpp"

namespace fnets {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage:
      return 2;
    case ErrorKind::Format:
    case ErrorKind::Data:
    case ErrorKind::Dimension:
      return 3;
    case ErrorKind::Numerical:
    case ErrorKind::Solver:
    case ErrorKind::Selection:
      return 4;
  }
  return 4;
}

}  // namespace fnets
