#include "disamb/error.h"

namespace disamb {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Usage: return "USAGE";
    case ErrorCategory::ModelMissing: return "MODEL_MISSING";
    case ErrorCategory::Data: return "DATA_ERROR";
    case ErrorCategory::Io: return "IO_ERROR";
    case ErrorCategory::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCategory::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

FormatError::FormatError(std::string source, std::size_t line, const std::string& what)
    : Error(ErrorCategory::Data, source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

}  // namespace disamb
