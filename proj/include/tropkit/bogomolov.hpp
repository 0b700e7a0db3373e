#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropkit/measure.hpp"
#include "tropkit/rank_calculus.hpp"

namespace tropkit {

struct PlaceTropData {
  std::string place;
  TropSubvariety x;
};

enum class VerdictKind { TropicallyTrivial, ContradictionWitness, Inconclusive, InconsistentInput };
std::string_view to_string(VerdictKind k);

struct Witness {
  std::string place;
  Polytope cell;                       // sigma inside (R^n)^N
  std::vector<std::size_t> factors;    // carrier ids of the N factor cells
  std::size_t dim_sigma = 0;
  std::size_t dim_alpha = 0;
  std::size_t N = 0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<Witness> witness;
  std::string tag;
};

/// Vacuously true for no places.
bool is_tropically_trivial(const std::vector<PlaceTropData>& data);

/// Throws StabilizerNotTrivial, NoMeasure, BadParams (N < 2).
Verdict find_contradiction(const PlaceTropData& x, std::size_t N);

/// Trivial data gives TropicallyTrivial; otherwise the first witness over the
/// places in order, else Inconclusive. Every place must have a trivial stabilizer.
Verdict bogomolov_check(const std::vector<PlaceTropData>& data, std::size_t N);

struct Finding {
  std::string tag;
  std::string simplex;  // empty when not tied to one simplex
  std::optional<std::size_t> cell;
  std::string message;
};

struct ConsistencyReport {
  std::vector<Finding> findings;
  bool clean() const { return findings.empty(); }
  Verdict verdict() const;
};

/// Checks strict supports of x.measure on sigma against the skeleton data.
/// Throws MissingData without provenance or measure.
ConsistencyReport validate_nondeg_consistency(const TropSubvariety& x, const Carrier& sigma, const NondegData& nd);
ConsistencyReport validate_nondeg_consistency(const TropSubvariety& x);

struct Inference {
  bool is_point = false;
  std::string text;
  std::string tag;
};

/// Throws NotSimple, NotDegenerateHere.
Inference simple_degenerate_inference(const AbelianProfile& profile, const PlaceTropData& x);

}  // namespace tropkit
