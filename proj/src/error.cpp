#include "mdc/error.hpp"

namespace mdc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfiguration: return "invalid-configuration";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::EmptyGroup: return "empty-group";
    case ErrorKind::InvalidGrouping: return "invalid-grouping";
    case ErrorKind::DegenerateInstance: return "degenerate-instance";
    case ErrorKind::InvalidCodeParameters: return "invalid-code-parameters";
    case ErrorKind::UnachievableTarget: return "unachievable-target";
    case ErrorKind::UnsupportedCase: return "unsupported-case";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace mdc
