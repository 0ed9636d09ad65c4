#pragma once

#include <stdexcept>
#include <string>

namespace ordlab {

enum class ErrorKind {
  NegativeEntry,
  NotNormalized,
  NonFiniteScore,
  LengthMismatch,
  ZeroReference,
  IrrationalReference,
  StepBudgetExceeded,
  SolverScaleExceeded,
  IndexOutOfRange,
  NotARepresentation,
  RadixOutOfRange,
  NotMonotone,
  NotAntisymmetric,
  EmptySequence,
  ScaleExceeded,
  InvalidRealizer,
  EmptySubset,
  TargetOutOfRange,
  InfeasibleBound,
  EmptyFeasibleSet,
  NotIrreducible,
  NotStationary,
  NotStochastic,
  ZeroInitialMass,
  BadPathLength,
  HypothesisViolated,
  ZeroTargetMass,
  EmptySamples,
  TooFewSamples,
  NotDirected,
  NoSignChange,
  AlphabetMismatch,
  ParseError,
};

const char* error_kind_name(ErrorKind kind);

/// Domain error with a machine-readable kind; the CLI maps these to exit 1
/// and prints `kind_name: message` on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace ordlab
