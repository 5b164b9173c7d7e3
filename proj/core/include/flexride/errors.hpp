#ifndef FLEXRIDE_ERRORS_HPP
#define FLEXRIDE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flexride {

/// Malformed input data (CSV rows, config files, solution files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem problems: missing paths, unwritable outputs.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal construction defects: bad index spaces, name collisions,
/// decoding a solution that contradicts the model.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// External solver failures: nonzero exit, unparseable or invalid solutions.
class SolveError : public std::runtime_error {
 public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

/// A cross-check between two independent computations disagreed.
class VerifyError : public std::runtime_error {
 public:
  explicit VerifyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace flexride

#endif
