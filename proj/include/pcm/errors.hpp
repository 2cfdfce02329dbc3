#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pcm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

enum class ViolationKind { NonPositive, NonReciprocal, BadDiagonal, AsymmetricMissing };

const char* to_string(ViolationKind kind);

struct Violation {
  int row = 0;  // 0-based
  int col = 0;
  ViolationKind kind = ViolationKind::NonPositive;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// The comparison graph is not connected, so neither optimal completion is
/// unique. Carries the components (0-based vertex lists) for diagnostics.
class DisconnectedGraph : public Error {
 public:
  explicit DisconnectedGraph(std::vector<std::vector<int>> components);
  const std::vector<std::vector<int>>& components() const { return components_; }

 private:
  std::vector<std::vector<int>> components_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class OrderTooSmall : public Error {
 public:
  using Error::Error;
};

class TooManyMissing : public Error {
 public:
  using Error::Error;
};

class PatternMismatch : public Error {
 public:
  using Error::Error;
};

class WrongOrder : public Error {
 public:
  using Error::Error;
};

}  // namespace pcm
