#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropkit {

/// Every domain failure the toolkit can report. The enumerator names are
/// also the machine-readable violation names printed by the CLI.
enum class Errc {
  DimensionMismatch,
  Unbounded,
  Empty,
  BadDimension,
  BadParams,
  NotGammaRational,
  NotFaceClosed,
  BadPairwiseIntersection,
  LatticeOverlap,
  CoverageGap,
  NotLatticeStable,
  NotCovered,
  LatticeMismatch,
  InconsistentOnFaces,
  MissingData,
  LatticeNotPreserved,
  UnknownCell,
  CarrierMismatch,
  NonInjectivePiece,
  TargetNotSubdivisional,
  DomainNotCovered,
  NotExpressible,
  NotSubdivisional,
  DegenerateWeighted,
  MissingWeight,
  EmptySupport,
  StabilizerNotTrivial,
  NoMeasure,
  NotSimple,
  NotDegenerateHere,
  NotSimpleFactor,
  Disconnected,
  GenusMismatch,
  InvalidSkeleton,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tropkit
