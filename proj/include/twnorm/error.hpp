#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twnorm {

/// Every failure mode a module can report. The numeric value doubles as the
/// CLI exit code, so entries are append-only.
enum class ErrorKind : int {
  EvenCharacteristic = 10,
  NotPrime = 11,
  NotNonResidue = 12,
  FieldMismatch = 13,
  ParseError = 14,
  ShapeMismatch = 20,
  Singular = 21,
  RootsOutsideSupportedExtension = 22,
  NoSquareRootInSupportedTower = 23,
  ZeroInput = 24,
  WrongField = 25,
  NotInSO = 30,
  RankTooLarge = 31,
  AnisotropicObstruction = 32,
  NotSemisimple = 33,
  NoSuitableFixedVector = 34,
  ConstraintViolated = 40,
  NotInBigCell = 41,
  DeflationFailed = 50,
  FieldTooSmall = 51,
  ConstructionFailed = 53,
  BudgetExceeded = 54,
  NotRegular = 55,
  NotASquare = 56,
  UnknownSuite = 60,
  IoError = 61,
  InvalidArgument = 62,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  /// Singular matrices carry their rank.
  Error(ErrorKind kind, const std::string& message, std::int64_t detail)
      : std::runtime_error(message), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::int64_t detail_ = -1;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace twnorm
