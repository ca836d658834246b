#pragma once

#include <stdexcept>
#include <string>

namespace hinrisk {

// Broad failure classes; the CLI maps these to process exit codes.
enum class ErrorClass {
  Usage,     // bad flags / bad config
  Data,      // malformed or inconsistent input data
  Numeric,   // separation, singular information matrix, degenerate labels
  Internal,  // invariant violation inside the library
};

enum class Errc {
  // ingestion / graph
  UnknownType,
  DanglingEdge,
  DuplicateId,
  TypeMismatch,
  InvalidWindow,
  UnknownNode,
  // meta-path DSL
  SyntaxError,
  IncompatibleEndpoint,
  // naive bayes
  SingleClass,
  NoLabeledNodes,
  UnknownAttribute,
  MissingModel,
  // model fitting / evaluation
  SeparationDetected,
  SingularInformation,
  DegenerateLabels,
  EmptyWindow,
  // synthetic generation
  InfeasibleConfig,
  // misc
  ZeroDenominator,
  Usage,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

  ErrorClass error_class() const {
    switch (code_) {
      case Errc::Usage:
        return ErrorClass::Usage;
      case Errc::SeparationDetected:
      case Errc::SingularInformation:
      case Errc::DegenerateLabels:
        return ErrorClass::Numeric;
      case Errc::Internal:
        return ErrorClass::Internal;
      default:
        return ErrorClass::Data;
    }
  }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace hinrisk
