#ifndef DISAMB_ERROR_H
#define DISAMB_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace disamb {

// Coarse failure classes; the CLI maps them onto exit codes and prints the
// name as a machine-parsable prefix.
enum class ErrorCategory {
  Usage,
  ModelMissing,
  Data,
  Io,
  CapExceeded,
  Internal,
};

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Data error tied to a line of an input file (1-based).
class FormatError : public Error {
 public:
  FormatError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace disamb

#endif  // DISAMB_ERROR_H
