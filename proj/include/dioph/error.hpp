#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

enum class Errc {
  InsufficientPrecision,
  NonSymmetricResult,
  DependentVectors,
  ZeroVector,
  CriterionFails,
  PreconditionViolated,
  AdmissibilityViolation,
  NoSeedFound,
  SeedInvalid,
  FirstCoordinateZero,
  InsufficientTail,
  NotConverged,
  NoSignChange,
  DomainError,
  Inconclusive,
  NotFound,
  HypothesisFails,
  LinearAlgebraSingular,
  IntegralityFails,
  VolumeInequalityFails,
  SearchExhausted,
  InvalidArgument,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace dioph
